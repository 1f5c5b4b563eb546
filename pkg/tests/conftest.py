import pytest

from dtseq.catalog import load_fixtures, match_catalog
from dtseq.design import Dts
from dtseq.dts import enumerate_dts
from dtseq.sequencer import sequence_all

# acceptance criterion lines, printed in the terminal summary
CRITERIA: dict = {}


def paper_dts(v, triples):
    return Dts(v, tuple(triples))


D4_1 = [(0, 3, 2), (1, 2, 3), (2, 1, 0), (3, 0, 1)]
D4_2 = [(0, 3, 2), (1, 2, 3), (2, 0, 1), (3, 1, 0)]
D4_3 = [(0, 3, 2), (1, 2, 0), (2, 1, 3), (3, 0, 1)]
T4_BLOCKS = [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]


@pytest.fixture(scope="session")
def catalogs():
    return {v: enumerate_dts(v) for v in (4, 6, 7)}


@pytest.fixture(scope="session")
def fixtures():
    return {v: load_fixtures(v) for v in (4, 6, 7)}


@pytest.fixture(scope="session")
def fixtures_by_label(fixtures):
    return {f.label: f for v in fixtures for f in fixtures[v]}


@pytest.fixture(scope="session")
def reports(catalogs):
    return {v: {r.design_id: r for r in sequence_all(catalogs[v].items())} for v in catalogs}


@pytest.fixture(scope="session")
def diffs(catalogs, fixtures, reports):
    return {v: match_catalog(catalogs[v], fixtures[v], reports[v]) for v in catalogs}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, text = CRITERIA[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {text}")
