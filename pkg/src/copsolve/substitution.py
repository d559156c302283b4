"""Clique substitution and checks of its structural lemmas."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .graph import MAX_ORDER, Graph, GraphError, encode_graph6, is_connected, iter_bits
from .subgraphs import freeness_profile, longest_path_order


@dataclass(frozen=True)
class SubstitutionResult:
    h: Graph
    origin: tuple[tuple[int, int], ...]  # vertex of h -> (v, u): the copy of edge vu inside K^v
    red_edges: frozenset[tuple[int, int]]
    source: Graph

    def to_json(self) -> str:
        return json.dumps(
            {
                "graph6": encode_graph6(self.h),
                "n": self.h.n,
                "origin": [list(p) for p in self.origin],
                "red_edges": sorted(list(e) for e in self.red_edges),
            }
        )


def clique_substitution(g: Graph) -> SubstitutionResult:
    """Replace each vertex v by a clique on tokens (v, u), u in N(v), and join (v,u)-(u,v)."""
    isolated = [v for v in range(g.n) if g.degree(v) == 0]
    if isolated:
        raise GraphError(f"isolated vertex {isolated[0]}: its clique would be empty")
    if not is_connected(g):
        raise GraphError("clique substitution requires a connected graph")
    origin = tuple((v, u) for v in range(g.n) for u in iter_bits(g.adj[v]))
    if len(origin) > MAX_ORDER:
        raise GraphError(f"substitution has {len(origin)} vertices, cap is {MAX_ORDER}")
    index = {p: i for i, p in enumerate(origin)}
    edges = []
    red = set()
    for v in range(g.n):
        tokens = [index[(v, u)] for u in iter_bits(g.adj[v])]
        edges += itertools.combinations(tokens, 2)
    for u, v in g.edges():
        a, b = index[(u, v)], index[(v, u)]
        edges.append((a, b))
        red.add((min(a, b), max(a, b)))
    return SubstitutionResult(Graph.from_edges(len(origin), edges), origin, frozenset(red), g)


def red_matching_is_perfect(r: SubstitutionResult) -> bool:
    hit = [0] * r.h.n
    for a, b in r.red_edges:
        if not r.h.has_edge(a, b) or r.origin[a][0] == r.origin[b][0]:
            return False
        hit[a] += 1
        hit[b] += 1
    if any(c != 1 for c in hit):
        return False
    # every other edge stays inside one clique K^v
    return all(
        (min(a, b), max(a, b)) in r.red_edges or r.origin[a][0] == r.origin[b][0] for a, b in r.h.edges()
    )


def contract_red_edges(r: SubstitutionResult) -> Graph:
    """Collapse each clique to a vertex; red edges become the edges between them.

    Uses only h and the clique partition induced by blue edges, not the origin labels.
    """
    h = r.h
    comp = [-1] * h.n
    blue = [0] * h.n
    for a, b in h.edges():
        if (min(a, b), max(a, b)) not in r.red_edges:
            blue[a] |= 1 << b
            blue[b] |= 1 << a
    count = 0
    for s in range(h.n):
        if comp[s] < 0:
            stack = [s]
            comp[s] = count
            while stack:
                x = stack.pop()
                for y in iter_bits(blue[x]):
                    if comp[y] < 0:
                        comp[y] = count
                        stack.append(y)
            count += 1
    return Graph.from_edges(count, {(min(comp[a], comp[b]), max(comp[a], comp[b])) for a, b in r.red_edges})


def verify_neighborhood_lemma(r: SubstitutionResult | Graph, source_degrees: list[int] | None = None) -> bool:
    """Each open neighbourhood splits into a clique of size deg(v)-1 plus one
    vertex, with no edges between the two parts.

    A bare graph may be passed (negative controls); then only the shape
    "cliques, at most two parts, one of them a singleton" is checked, unless
    per-vertex source degrees are supplied.
    """
    if isinstance(r, SubstitutionResult):
        h = r.h
        sizes = [r.source.degree(v) - 1 for v, _ in r.origin]
    else:
        h = r
        sizes = None if source_degrees is None else [d - 1 for d in source_degrees]
    for x in range(h.n):
        parts = _components(h, h.adj[x])
        if not all(_is_clique(h, m) for m in parts):
            return False
        counts = sorted(m.bit_count() for m in parts)
        if sizes is None:
            if not parts or len(parts) > 2 or counts[0] != 1:
                return False
        elif counts != sorted([1] + ([sizes[x]] if sizes[x] else [])):
            return False
    return True


def _components(h: Graph, mask: int) -> list[int]:
    parts = []
    rest = mask
    while rest:
        s = rest & -rest
        comp = s
        frontier = s
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= h.adj[v]
            frontier = nxt & mask & ~comp
            comp |= frontier
        parts.append(comp)
        rest &= ~comp
    return parts


def _is_clique(h: Graph, mask: int) -> bool:
    return all(mask & ~(h.adj[v] | 1 << v) == 0 for v in iter_bits(mask))


def verify_substitution_freeness(r: SubstitutionResult, p: int | None = None) -> dict[str, bool]:
    """Report of claw/butterfly/C4/C5-freeness and the induced path bound 2p."""
    if p is None:
        p = longest_path_order(r.source)
    prof = freeness_profile(r.h)
    return {
        "claw_free": prof.claw_free,
        "butterfly_free": prof.butterfly_free,
        "c4_free": prof.c4_free,
        "c5_free": prof.c5_free,
        "induced_path_le_2p": prof.longest_induced_path_order <= 2 * p,
    }
