import itertools

import pytest
from hypothesis import strategies as st

from depcross.ensembles import prufer_decode
from depcross.examples import example, example_sentences


@pytest.fixture(scope="session")
def sentences():
    return {e.sentence_id: e for e in example_sentences()}


@pytest.fixture(scope="session")
def counterexample():
    return example("minla_counterexample")


@st.composite
def trees(draw, min_n=1, max_n=9):
    """Random labeled trees via Prüfer sequences (uniform for a fixed n)."""
    n = draw(st.integers(min_n, max_n))
    if n <= 2:
        from depcross.tree import Tree
        return Tree(n, ((1, 2),) if n == 2 else ())
    seq = draw(st.lists(st.integers(1, n), min_size=n - 2, max_size=n - 2))
    return prufer_decode(seq, n)


@st.composite
def trees_with_arrangement(draw, min_n=1, max_n=9):
    from depcross.arrangement import LinearArrangement
    t = draw(trees(min_n, max_n))
    order = draw(st.permutations(range(1, t.n + 1)))
    return t, LinearArrangement.from_order(order)


def brute_crossings(arr, t):
    """Crossings straight from the covered/external definition, both orientations."""
    pos = arr.pi
    C = 0
    for (u, v), (s, w) in itertools.combinations(t.edges, 2):
        if len({u, v, s, w}) < 4:
            continue
        lo, hi = sorted((pos[u - 1], pos[v - 1]))
        inside = [lo < pos[x - 1] < hi for x in (s, w)]
        if inside[0] != inside[1]:
            C += 1
    return C


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
