import pytest
from hypothesis import strategies as st

from hyperperm import DPermutation, OrderSet
from hyperperm.enumeration import all_hypertrees

# the worked example order set on F^3
C_EX = OrderSet.from_orders([
    ["---", "-+-", "+--", "++-"],
    ["---", "+--", "-+-", "++-"],
    ["---", "+--", "-+-", "++-"],
])


@st.composite
def dperms(draw, min_d=2, max_d=5, min_n=0, max_n=7):
    d = draw(st.integers(min_d, max_d))
    n = draw(st.integers(min_n, max_n))
    rows = [tuple(draw(st.permutations(range(1, n + 1)))) for _ in range(d - 1)]
    return DPermutation(tuple(rows))


@st.composite
def hypertrees(draw, d=None, max_n=6):
    d = d or draw(st.integers(2, 4))
    n = draw(st.integers(0, max_n))
    trees = list(all_hypertrees(d, n)) if (2 ** (d - 1)) ** n <= 10**4 else None
    if trees:
        return draw(st.sampled_from(trees))
    return _random_tree(draw, d, n)


def _random_tree(draw, d, n):
    from hyperperm import HyperTree
    if n == 0:
        return HyperTree(d)
    k = 2 ** (d - 1)
    cuts = sorted(draw(st.lists(st.integers(0, n - 1), min_size=k - 1, max_size=k - 1)))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n - 1])]
    return HyperTree(d, tuple(_random_tree(draw, d, s) for s in sizes))


@pytest.fixture
def c_ex():
    return C_EX


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
