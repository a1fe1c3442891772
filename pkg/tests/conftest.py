import functools
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from protocork.graphs import enumerate_graphs, from_counts, validate  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, text = marker
    prev = _acceptance.get(number, ("PASS", text))[0]
    if report.when == "call" or report.failed:
        status = "PASS" if report.passed and prev == "PASS" else "FAIL"
        _acceptance[number] = (status, text)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = m.args


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        status, text = _acceptance[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {text}")


AKBULUT = {"n": 1, "edges": [[1, 1, 1], [1, 1, 1], [1, 1, -1]]}
SYM6 = {
    "n": 2,
    "edges": [[1, 1, 1], [2, 2, 1], [1, 2, 1], [1, 2, -1], [2, 1, 1], [2, 1, -1]],
}


@pytest.fixture
def akbulut():
    return validate(AKBULUT)


@pytest.fixture
def sym6():
    return validate(SYM6)


@functools.lru_cache(maxsize=None)
def corpus(n_max=2, e_max=6):
    """Every isomorphism class with n <= n_max and |E| <= e_max."""
    out = []
    for n in range(1, n_max + 1):
        if e_max >= n:
            out += enumerate_graphs(n, e_max)
    return tuple(out)


@st.composite
def graphs(draw, max_n=3, max_pairs=3):
    """Random valid graphs: a positive diagonal plus (+, -) pairs on random slots."""
    n = draw(st.integers(1, max_n))
    plus = [[int(i == j) for j in range(n)] for i in range(n)]
    minus = [[0] * n for _ in range(n)]
    for _ in range(draw(st.integers(0, max_pairs))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        plus[i][j] += 1
        minus[i][j] += 1
    return from_counts(plus, minus)


@st.composite
def symmetric_graphs(draw, max_n=3, max_pairs=2):
    n = draw(st.integers(1, max_n))
    plus = [[int(i == j) for j in range(n)] for i in range(n)]
    minus = [[0] * n for _ in range(n)]
    for _ in range(draw(st.integers(0, max_pairs))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        for a, b in {(i, j), (j, i)}:
            plus[a][b] += 1
            minus[a][b] += 1
    return from_counts(plus, minus)
