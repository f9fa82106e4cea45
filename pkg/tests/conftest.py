import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bfpcert.generate import corpus as make_corpus  # noqa: E402
from bfpcert.io import load_chirotope  # noqa: E402

CATALOG_DIR = Path(os.environ.get("BFPCERT_CATALOG", Path(__file__).parent / "data" / "catalog"))
CORPUS_SEED = 0


def catalog_files():
    if not CATALOG_DIR.is_dir():
        return []
    return sorted(CATALOG_DIR.glob("*.chi"))


@pytest.fixture(scope="session")
def corpus():
    """Fifty seeded realizable (configuration, chirotope) pairs, r in {3, 4}, n <= 8."""
    return make_corpus(seed=CORPUS_SEED, count=50, ranks=(3, 4), max_n=8)


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Members cheap enough for per-pivot oracle loops."""
    return [(cfg, chi) for cfg, chi in corpus if chi.n <= 7]


@pytest.fixture(scope="session")
def catalog():
    files = catalog_files()
    return [(p.name, load_chirotope(p)) for p in files]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
