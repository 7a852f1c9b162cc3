import re
from pathlib import Path

import pytest

from sentiflux import bundled_lexicon, read_lexicon

DATA = Path(__file__).parent / "data"

# Table 1 rows verbatim, in table order
TABLE1_ROWS = [
    "weaksubj\tabandoned\tadj\tn\tnegative",
    "weaksubj\tabandonment\tnoun\tn\tnegative",
    "weaksubj\tabandon\tverb\ty\tnegative",
    "strongsubj\tneeded\tverb\tn\tblindnegation",
    "strongsubj\trequire\tverb\tn\tblindnegation",
    "strongsubj\tnot\tadvb\tn\tnegation",
    "strongsubj\tneither\tconj\tn\tnegation",
    "strongsubj\tnor\tconj\tn\tnegation",
    "strongsubj\t:)\temoti\tn\tpositive",
    "strongsubj\t:(\temoti\tn\tnegative",
]
PROSE_ROWS = TABLE1_ROWS + [
    "strongsubj\tgood\tanypos\tn\tpositive",
    "strongsubj\tbetter\tadj\tn\tpositive",
]


@pytest.fixture(scope="session")
def table1():
    return read_lexicon(DATA / "table1.tsv", strict=True)


@pytest.fixture(scope="session")
def prose_lexicon():
    """Table 1 plus the two words used in the negation examples."""
    return read_lexicon(DATA / "prose.tsv", strict=True)


@pytest.fixture(scope="session")
def golden_lexicon():
    return read_lexicon(DATA / "golden_lexicon.tsv", strict=True)


@pytest.fixture(scope="session")
def demo_lexicon():
    return bundled_lexicon("demo")


# ---- acceptance reporting: one PASS/FAIL line per criterion ----------------

_criteria: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion this test checks")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    name = marker.args[0]
    detail = dict(item.user_properties).get("detail", "")
    xfail = item.get_closest_marker("xfail") is not None
    outcome = "PASS" if call.excinfo is None else "FAIL"
    if xfail:
        outcome = "XFAIL" if call.excinfo is not None else "XPASS"
    _criteria.setdefault(name, []).append((outcome, item.name, detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: (int(re.match(r"\d+", n).group()), n)):
        for outcome, test, detail in _criteria[name]:
            line = f"{outcome:<5}  criterion {name}  [{test}]"
            if detail:
                line += f"  {detail}"
            terminalreporter.write_line(line)
