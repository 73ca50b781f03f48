import random
import sys

import pytest
from hypothesis import strategies as st

from distspec import Hypergraph


@st.composite
def connected_hypergraphs(draw, min_n=2, max_n=8, max_rank=4, extra=True):
    """Random spanning hypertree on a shuffled vertex order, plus optional extra edges."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    edges = []
    placed = [order[0]]
    i = 1
    while i < n:
        size = min(draw(st.integers(2, max_rank)), n - i + 1)
        anchor = draw(st.sampled_from(placed))
        new = list(order[i:i + size - 1])
        edges.append([anchor] + new)
        placed.extend(new)
        i += size - 1
    if extra and n >= 2:
        for _ in range(draw(st.integers(0, n // 2))):
            size = draw(st.integers(2, min(max_rank, n)))
            edges.append(draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size,
                                       unique=True)))
    return Hypergraph(n, edges)


def random_hypertree(rng: random.Random, n: int, max_rank: int = 3) -> Hypergraph:
    order = list(range(n))
    rng.shuffle(order)
    edges, placed, i = [], [order[0]], 1
    while i < n:
        size = min(rng.randint(2, max_rank), n - i + 1)
        new = order[i:i + size - 1]
        edges.append([rng.choice(placed)] + new)
        placed.extend(new)
        i += size - 1
    return Hypergraph(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240607)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for number in sorted(lines):
            terminalreporter.write_line(lines[number])
