import time
from pathlib import Path

import pytest

from cnlsearch import default_graph, default_lexicon
from cnlsearch.cli import sample_catalog_path
from cnlsearch.store import ingest_catalog

FIXTURES = Path(__file__).parent / "fixtures"

SESSION_START = time.monotonic()


@pytest.fixture(scope="session")
def lex():
    return default_lexicon()


@pytest.fixture(scope="session")
def graph():
    return default_graph()


@pytest.fixture(scope="session")
def catalog_and_index():
    return ingest_catalog(Path(sample_catalog_path()).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
