import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from smallcancel.families import ExampleCF, LevelFamily  # noqa: E402


@pytest.fixture(scope="session")
def level3():
    return LevelFamily(28, 28, 3)


@pytest.fixture(scope="session")
def level3_modified():
    return LevelFamily(28, 28, 3, modified=True)


@pytest.fixture(scope="session")
def example20():
    return ExampleCF(20)


@pytest.fixture(scope="session")
def pair_14_15_hashed(example20):
    """Max pieces of {r14, r15} from the slow hashing reference (about 15 s)."""
    from brute import hashed_max_pieces

    return hashed_max_pieces([example20.relator(14), example20.relator(15)])


# one summary line per acceptance criterion, printed even when output is captured
_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number = marker.args[0]
    note = {"text": ""}
    yield note
    _CRITERIA.setdefault(number, ("", ""))
    _CRITERIA[number] = (_CRITERIA[number][0], note["text"])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[number] = ("PASS" if rep.passed else "FAIL", _CRITERIA.get(number, ("", ""))[1])
    elif rep.when == "teardown" and number in _CRITERIA and not _CRITERIA[number][1]:
        _CRITERIA[number] = (_CRITERIA[number][0], marker.kwargs.get("title", ""))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, text = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {status or 'NOT RUN'}  {text}")
