"""Independent reference implementations used only by the tests.

Everything here is deliberately naive: dictionaries, brute force over subsets
and permutations, networkx where it already has the answer.
"""

from __future__ import annotations

import itertools

import networkx as nx

from copsolve.graph import Graph

INF = 10**9


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def naive_values(g: Graph, k: int):
    """Plies-to-capture for every (sorted cop tuple, robber), cops to move and
    robber to move, by repeated relaxation over dictionaries."""
    N = [sorted([v] + g.nbrs(v)) for v in range(g.n)]
    states = list(itertools.combinations_with_replacement(range(g.n), k))
    C = {(c, r): (0 if r in c else INF) for c in states for r in range(g.n)}
    R = dict(C)
    while True:
        changed = False
        for c in states:
            for r in range(g.n):
                if r in c:
                    continue
                best = min(R[(tuple(sorted(p)), r)] for p in itertools.product(*[N[x] for x in c]))
                v = min(INF, best + 1)
                if v < C[(c, r)]:
                    C[(c, r)], changed = v, True
        for c in states:
            for r in range(g.n):
                if r in c:
                    continue
                v = min(INF, 1 + max(C[(c, x)] for x in N[r]))
                if v < R[(c, r)]:
                    R[(c, r)], changed = v, True
        if not changed:
            return C, R


def naive_cop_number(g: Graph) -> int:
    for k in range(1, g.n + 1):
        C, _ = naive_values(g, k)
        if any(all(C[(c, r)] < INF for r in range(g.n)) for c in itertools.combinations_with_replacement(range(g.n), k)):
            return k
    return g.n


def is_induced_path_nx(h: nx.Graph, vertices) -> bool:
    sub = h.subgraph(vertices)
    return nx.is_connected(sub) and sub.number_of_edges() == len(vertices) - 1 and max(d for _, d in sub.degree()) <= 2


def brute_longest_induced_path(g: Graph) -> int:
    h = to_nx(g)
    best = 1
    for r in range(2, g.n + 1):
        if any(is_induced_path_nx(h, s) for s in itertools.combinations(range(g.n), r)):
            best = r
    return best


def brute_longest_path(g: Graph) -> int:
    best = 1

    def dfs(v: int, seen: set[int]) -> None:
        nonlocal best
        best = max(best, len(seen))
        for u in g.nbrs(v):
            if u not in seen:
                seen.add(u)
                dfs(u, seen)
                seen.discard(u)

    for v in range(g.n):
        dfs(v, {v})
    return best


def has_induced_copy(g: Graph, pattern: Graph) -> bool:
    matcher = nx.algorithms.isomorphism.GraphMatcher(to_nx(g), to_nx(pattern))
    return matcher.subgraph_is_isomorphic()
