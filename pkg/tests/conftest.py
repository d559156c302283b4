import random

import pytest
from hypothesis import settings, strategies as st

from copsolve.graph import Graph, is_connected

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if connected:
        # thread a random spanning tree through so the draw is always connected
        order = draw(st.permutations(list(range(n))))
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            edges.append((min(order[i], order[j]), max(order[i], order[j])))
    return Graph.from_edges(n, set(edges))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    while True:
        g = random_graph(rng, n, p)
        if is_connected(g):
            return g


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
