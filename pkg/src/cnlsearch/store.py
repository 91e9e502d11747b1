"""Embedded product catalog: CSV ingestion, inverted keyword index,
query execution with AND-then-OR fallback, and a TSV query log.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from datetime import datetime, timezone

from .lexicon import _WORD_RE
from .queries import StructuredQuery

CATALOG_HEADER = ["id", "name", "category", "description", "attributes"]


class CatalogError(ValueError):
    """Raised when a catalog file cannot be ingested."""


@dataclass(frozen=True)
class ProductRecord:
    id: int
    name: str
    category: str
    description: str
    attributes: tuple[tuple[str, str], ...]


class Catalog:
    def __init__(self):
        self.records: dict[int, ProductRecord] = {}

    def __len__(self) -> int:
        return len(self.records)

    def __contains__(self, record_id: int) -> bool:
        return record_id in self.records

    def __getitem__(self, record_id: int) -> ProductRecord:
        return self.records[record_id]


class InvertedIndex:
    """term -> ascending, duplicate-free posting list of record ids."""

    def __init__(self):
        self.postings: dict[str, list[int]] = {}

    def post(self, term: str, record_id: int) -> None:
        ids = self.postings.setdefault(term, [])
        if record_id not in ids:
            ids.append(record_id)
            ids.sort()

    def ids_matching(self, term: str) -> set[int]:
        # substring semantics, mirroring the LIKE '%term%' rendering
        out: set[int] = set()
        for key, ids in self.postings.items():
            if term in key:
                out.update(ids)
        return out


@dataclass(frozen=True)
class ResultItem:
    record_id: int
    name: str
    category: str
    score: int
    matched: str  # AND | OR


@dataclass(frozen=True)
class ResultSet:
    items: tuple[ResultItem, ...]
    query: StructuredQuery
    matched: str


def index_terms(record: ProductRecord) -> set[str]:
    """Lowercased words from name, category, description and attribute values."""
    text_fields = [record.name, record.category, record.description]
    text_fields.extend(value for _, value in record.attributes)
    terms: set[str] = set()
    for text in text_fields:
        terms.update(m.group(0).lower() for m in _WORD_RE.finditer(text))
    return terms


def _add_record(catalog: Catalog, index: InvertedIndex, record: ProductRecord) -> None:
    if record.id in catalog:
        raise CatalogError(f"duplicate record id {record.id}")
    catalog.records[record.id] = record
    for term in index_terms(record):
        index.post(term, record.id)


def ingest_catalog(source: str) -> tuple[Catalog, InvertedIndex]:
    """Load catalog CSV text and build the inverted index."""
    reader = csv.reader(io.StringIO(source))
    try:
        header = next(reader)
    except StopIteration:
        raise CatalogError("empty catalog file (missing header)")
    if header != CATALOG_HEADER:
        raise CatalogError(f"bad header {header!r}, expected {CATALOG_HEADER!r}")
    catalog = Catalog()
    index = InvertedIndex()
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CATALOG_HEADER):
            raise CatalogError(f"line {lineno}: expected {len(CATALOG_HEADER)} columns")
        raw_id, name, category, description, attrs_field = row
        try:
            record_id = int(raw_id)
        except ValueError:
            raise CatalogError(f"line {lineno}: non-integer id {raw_id!r}")
        if record_id <= 0:
            raise CatalogError(f"line {lineno}: id must be positive")
        if not name:
            raise CatalogError(f"line {lineno}: empty name")
        attributes = []
        if attrs_field:
            for pair in attrs_field.split("|"):
                key, sep, value = pair.partition("=")
                if not sep:
                    raise CatalogError(f"line {lineno}: bad attribute {pair!r}")
                attributes.append((key, value))
        record = ProductRecord(record_id, name, category, description,
                               tuple(attributes))
        if record_id in catalog:
            raise CatalogError(f"line {lineno}: duplicate record id {record_id}")
        _add_record(catalog, index, record)
    return catalog, index


def execute(q: StructuredQuery, catalog: Catalog, index: InvertedIndex) -> ResultSet:
    """AND pass over all terms; on empty intersection fall back to OR,
    scored by the number of matching terms, ties broken by ascending id.
    """
    per_term = [index.ids_matching(term) for term in q.terms]
    conj = set.intersection(*per_term) if per_term else set()
    if conj:
        items = tuple(
            ResultItem(rid, catalog[rid].name, catalog[rid].category,
                       len(q.terms), "AND")
            for rid in sorted(conj)
        )
        return ResultSet(items, q, "AND")
    union = set().union(*per_term) if per_term else set()
    scored = sorted(
        ((sum(1 for ids in per_term if rid in ids), rid) for rid in union),
        key=lambda pair: (-pair[0], pair[1]),
    )
    items = tuple(
        ResultItem(rid, catalog[rid].name, catalog[rid].category, score, "OR")
        for score, rid in scored
    )
    return ResultSet(items, q, "OR")


def update_index(catalog: Catalog, index: InvertedIndex,
                 new_records: list[ProductRecord]) -> tuple[Catalog, InvertedIndex]:
    """Append records and extend postings; duplicate ids are an error."""
    for record in new_records:
        _add_record(catalog, index, record)
    return catalog, index


def save_index_text(index: InvertedIndex) -> str:
    """Postings dump, one ``term<TAB>id,id,...`` line per term, sorted."""
    return "".join(
        f"{term}\t{','.join(str(i) for i in index.postings[term])}\n"
        for term in sorted(index.postings)
    )


def append_log(log_path: str, statement_id: int, terms: tuple[str, ...],
               matched: str, result_ids: list[int],
               relations: list[tuple[int, int]],
               now: datetime | None = None) -> None:
    """Append one TSV line recording an executed query and its relations."""
    ts = (now or datetime.now(timezone.utc)).isoformat(timespec="seconds")
    ts = ts.replace("+00:00", "Z")
    line = "\t".join([
        ts,
        str(statement_id),
        ",".join(terms),
        matched,
        ",".join(str(i) for i in result_ids),
        ";".join(f"{a}-{b}" for a, b in relations),
    ])
    try:
        with open(log_path, "a", encoding="utf-8", newline="") as fh:
            fh.write(line + "\n")
    except OSError as exc:
        raise OSError(f"cannot append query log {log_path!r}: {exc}") from exc
