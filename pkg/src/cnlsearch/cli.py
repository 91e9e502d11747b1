"""Command-line entry point: batch file mode, interactive REPL, output
format selection, and wiring of the pipeline modules.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from . import grammar as grammar_mod
from . import lexicon as lexicon_mod
from .grammar import ParseError, StatementAst, SymbolTable, TransitionGraph, parse
from .lexicon import Lexicon, tokenize
from .queries import StructuredQuery, generate_query, render_sql
from .responder import ResponseFrame, build_echo, present, prioritize, reconstruct
from .semantics import SemanticModel, build_model, export_triples, resolve
from .store import (Catalog, CatalogError, InvertedIndex, ResultSet,
                    append_log, execute, ingest_catalog, save_index_text)

PROMPT = "isoas> "

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARSE = 2


def sample_catalog_path() -> str:
    """Path of the sample catalog shipped with the package."""
    return str(resources.files("cnlsearch.data") / "sample_catalog.csv")


def _build_arg_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cnlsearch",
        description="Controlled-natural-language product search.",
    )
    p.add_argument("--catalog", help="product catalog CSV path")
    p.add_argument("--lexicon", help="lexicon file path (default: embedded)")
    p.add_argument("--grammar", help="grammar file path (default: embedded)")
    p.add_argument("--batch", help="statement file path (one statement per line)")
    p.add_argument("--format", choices=["text", "sql", "triples", "tsv"],
                   default="text")
    p.add_argument("--export-triples", metavar="PATH",
                   help="write the triple export to PATH")
    p.add_argument("--log", metavar="PATH", help="append query log lines to PATH")
    p.add_argument("--save-index", metavar="PATH",
                   help="dump the inverted index postings to PATH")
    p.add_argument("--explain", action="store_true",
                   help="print token table, class path, triple and SQL")
    p.add_argument("--dump-lexicon", action="store_true",
                   help="print the embedded lexicon file and exit")
    p.add_argument("--dump-grammar", action="store_true",
                   help="print the embedded grammar file and exit")
    p.add_argument("--override-jk", action="store_true",
                   help="permit pronoun -> J edges in a user-supplied grammar")
    return p


class Pipeline:
    """Loaded lexicon, grammar and catalog shared by batch and REPL modes."""

    def __init__(self, lex: Lexicon, graph: TransitionGraph,
                 catalog: Catalog, index: InvertedIndex):
        self.lexicon = lex
        self.graph = graph
        self.catalog = catalog
        self.index = index

    def parse_line(self, line: str) -> tuple[StatementAst, SymbolTable]:
        return parse(tokenize(line, self.lexicon), self.graph)


def _load_pipeline(args: argparse.Namespace) -> Pipeline:
    if args.lexicon:
        with open(args.lexicon, encoding="utf-8") as fh:
            lex = lexicon_mod.load_lexicon(fh.read())
    else:
        lex = lexicon_mod.default_lexicon()
    if args.grammar:
        with open(args.grammar, encoding="utf-8") as fh:
            graph = grammar_mod.load_graph(fh.read(), args.override_jk)
    else:
        graph = grammar_mod.default_graph()
    if not args.catalog:
        raise CatalogError("--catalog is required")
    with open(args.catalog, encoding="utf-8", newline="") as fh:
        catalog, index = ingest_catalog(fh.read())
    return Pipeline(lex, graph, catalog, index)


def _format_parse_error(label: str, err: ParseError) -> str:
    expected = ",".join(sorted(err.expected)) or "-"
    return (f"{label}: parse error: {err.kind} at {err.at[0]}..{err.at[1]}"
            f" (expected {{{expected}}}, found {err.found})")


def _explain(out, ast: StatementAst, table: SymbolTable,
             q: StructuredQuery, model: SemanticModel) -> None:
    out.write("tokens:\n")
    for row in table.rows:
        out.write(f"  {row.lexeme}\t{row.cls}\t{row.disposition}\n")
    path = []
    if ast.subject is not None:
        path.append(ast.subject.cls)
    if ast.auxiliary is not None:
        path.append(ast.auxiliary.cls)
    if ast.verb is not None:
        path.append(ast.verb.cls)
    path.append("K")
    out.write(f"path: START {' '.join(path)} END\n")
    stmt = model.statements[q.statement_id - 1]
    t = stmt.triple
    out.write(f"triple: ({t.subject}, {t.predicate}, {t.object})\n")
    out.write(f"sql: {render_sql(q)}\n")


def _emit(args: argparse.Namespace, out, model: SemanticModel,
          asts: list[StatementAst], tables: list[SymbolTable],
          queries: list[StructuredQuery], results: list[ResultSet]) -> None:
    if args.explain:
        for ast, table, q in zip(asts, tables, queries):
            _explain(out, ast, table, q, model)
    if args.format == "text":
        frames = [
            ResponseFrame(build_echo(ast), model.statements[i].agreement, rs)
            for i, (ast, rs) in enumerate(zip(asts, results))
        ]
        present([reconstruct(f) for f in prioritize(frames)], out)
    elif args.format == "sql":
        for q in queries:
            out.write(f"-- statement {q.statement_id}\n{render_sql(q)}\n")
    elif args.format == "triples":
        out.write(export_triples(model))
    else:  # tsv
        for rs in results:
            for item in rs.items:
                out.write(f"{rs.query.statement_id}\t{item.record_id}\t"
                          f"{item.name}\t{item.score}\t{item.matched}\n")


def _side_outputs(args: argparse.Namespace, pipe: Pipeline,
                  model: SemanticModel, results: list[ResultSet]) -> None:
    if args.export_triples:
        with open(args.export_triples, "w", encoding="utf-8", newline="") as fh:
            fh.write(export_triples(model))
    if args.log:
        for rs in results:
            sid = rs.query.statement_id
            rels = [(r.from_id, r.to_id) for r in model.relations
                    if sid in (r.from_id, r.to_id)]
            append_log(args.log, sid, rs.query.terms, rs.matched,
                       [item.record_id for item in rs.items], rels)
    if args.save_index:
        with open(args.save_index, "w", encoding="utf-8", newline="") as fh:
            fh.write(save_index_text(pipe.index))


def _run_statements(args: argparse.Namespace, pipe: Pipeline,
                    lines: list[tuple[str, str]], out, err) -> bool:
    """Run the pipeline over (label, statement) pairs; returns True when
    every statement parsed."""
    asts: list[StatementAst] = []
    tables: list[SymbolTable] = []
    ok = True
    for label, line in lines:
        try:
            ast, table = pipe.parse_line(line)
        except ParseError as exc:
            err.write(_format_parse_error(label, exc) + "\n")
            ok = False
            continue
        asts.append(ast)
        tables.append(table)
    model = resolve(build_model(asts))
    queries = generate_query(model)
    results = [execute(q, pipe.catalog, pipe.index) for q in queries]
    _emit(args, out, model, asts, tables, queries, results)
    _side_outputs(args, pipe, model, results)
    return ok


def run_batch(args: argparse.Namespace, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        pipe = _load_pipeline(args)
        with open(args.batch, encoding="utf-8") as fh:
            raw_lines = fh.read().splitlines()
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    lines = [
        (f"line {n}", line)
        for n, line in enumerate(raw_lines, start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    ok = _run_statements(args, pipe, lines, out, err)
    return EXIT_OK if ok else EXIT_PARSE


def run_repl(args: argparse.Namespace, stdin=None, out=None, err=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        pipe = _load_pipeline(args)
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CONFIG
    while True:
        out.write(PROMPT)
        out.flush()
        raw = stdin.readline()
        if raw == "":
            out.write("\n")
            return EXIT_OK
        line = raw.rstrip("\n")
        if line == ":quit":
            return EXIT_OK
        if not line.strip():
            continue
        _run_statements(args, pipe, [("input", line)], out, err)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_arg_parser().parse_args(argv)
    if args.dump_lexicon:
        sys.stdout.write(lexicon_mod.DEFAULT_LEXICON_TEXT)
        return EXIT_OK
    if args.dump_grammar:
        sys.stdout.write(grammar_mod.DEFAULT_GRAMMAR_TEXT)
        return EXIT_OK
    if args.batch:
        return run_batch(args)
    return run_repl(args)


if __name__ == "__main__":
    sys.exit(main())
