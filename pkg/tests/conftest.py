import sys
from pathlib import Path

import pytest

from lexlink.bidict import merge_directions, pairs_from_subentries, parse_bidict
from lexlink.fixtures import fixture_path, fixture_text
from lexlink.linker import CueDictionary
from lexlink.normalizer import Normalizer
from lexlink.taxonomy import load_taxonomy

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def worked_tax():
    return load_taxonomy(fixture_text("worked_taxonomy.tsv"))


@pytest.fixture(scope="session")
def entry_tax():
    return load_taxonomy(fixture_text("entry_taxonomy.tsv"))


@pytest.fixture(scope="session")
def four_tax():
    return load_taxonomy(fixture_text("four_subtrees_taxonomy.tsv"))


@pytest.fixture(scope="session")
def worked_md():
    ab = pairs_from_subentries(parse_bidict(fixture_text("worked_en_es.tsv")), headword_is_target=True)
    ba = pairs_from_subentries(parse_bidict(fixture_text("worked_es_en.tsv")), headword_is_target=False)
    return merge_directions(ab, ba)


@pytest.fixture(scope="session")
def entry_subentries():
    return parse_bidict(fixture_text("entry_fr_en.tsv"))


@pytest.fixture(scope="session")
def cue_subentries():
    return parse_bidict(fixture_text("cue_fr_en.tsv"))


@pytest.fixture(scope="session")
def cue_setup(entry_tax, cue_subentries):
    cues = CueDictionary(cue_subentries)
    return cues, Normalizer(entry_tax, cues)


@pytest.fixture(scope="session")
def entry_norm(entry_tax, entry_subentries):
    return Normalizer(entry_tax, CueDictionary(entry_subentries))


@pytest.fixture
def data_path():
    return fixture_path


# --- acceptance summary -----------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit-criterion test")
    config.addinivalue_line("markers", "criterion(n, description): numbered exit criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            n, desc = mark.args
            _criteria[item.nodeid] = [n, desc, None]


def pytest_runtest_logreport(report):
    entry = _criteria.get(report.nodeid)
    if entry is None:
        return
    if report.when == "call" or report.failed:
        if entry[2] is not False:
            entry[2] = report.passed


def pytest_terminal_summary(terminalreporter):
    ran = [e for e in _criteria.values() if e[2] is not None]
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for n, desc, ok in sorted(ran):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {desc}")
