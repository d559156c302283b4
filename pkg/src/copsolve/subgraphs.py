"""Forbidden induced subgraphs, induced/ordinary path orders, flails, saturation."""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Iterator
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph, GraphError, iter_bits, named_graph

HELD_KARP_MAX = 24


def contains_induced(g: Graph, h: Graph) -> dict[int, int] | None:
    """Find an induced copy of ``h`` in ``g``.

    Returns a map from vertices of ``h`` to vertices of ``g`` preserving both
    adjacency and non-adjacency, or ``None``.
    """
    if h.n > g.n:
        return None
    # place high-degree pattern vertices first, each next to an already placed one when possible
    order: list[int] = []
    remaining = set(range(h.n))
    while remaining:
        touching = [x for x in remaining if any(h.has_edge(x, y) for y in order)]
        pool = touching or list(remaining)
        x = max(pool, key=lambda v: (h.degree(v), -v))
        order.append(x)
        remaining.discard(x)
    hdeg = h.degrees()
    gdeg = g.degrees()
    ok_deg = [bits for bits in (sum(1 << v for v in range(g.n) if gdeg[v] >= d) for d in range(max(hdeg) + 1))]
    image = [0] * h.n

    def place(pos: int, used: int) -> bool:
        if pos == h.n:
            return True
        x = order[pos]
        cand = ok_deg[hdeg[x]] & ~used
        for y in order[:pos]:
            cand &= g.adj[image[y]] if h.has_edge(x, y) else ~g.adj[image[y]]
            if not cand:
                return False
        for v in iter_bits(cand):
            image[x] = v
            if place(pos + 1, used | 1 << v):
                return True
        return False

    if not place(0, 0):
        return None
    mapping = {x: image[x] for x in range(h.n)}
    for a, b in itertools.combinations(range(h.n), 2):
        if h.has_edge(a, b) != g.has_edge(mapping[a], mapping[b]):
            raise AssertionError("induced map failed to preserve adjacency")
    return mapping


def induced_paths(g: Graph, order: int) -> Iterator[tuple[int, ...]]:
    """Every ordered induced path with ``order`` vertices (both directions)."""

    def grow(path: list[int], blocked: int) -> Iterator[tuple[int, ...]]:
        if len(path) == order:
            yield tuple(path)
            return
        last = path[-1]
        for c in iter_bits(g.adj[last] & ~blocked):
            path.append(c)
            yield from grow(path, blocked | g.closed(last))
            path.pop()

    for s in range(g.n):
        yield from grow([s], 1 << s)


def longest_induced_path(g: Graph) -> tuple[int, ...]:
    """A longest induced path (DFS from each start, ascending labels, bitset pruning)."""
    best: list[int] = [0]
    path: list[int] = []
    full = g.full

    def grow(blocked: int) -> None:
        nonlocal best
        if len(path) > len(best):
            best = path.copy()
        last = path[-1]
        nxt_blocked = blocked | g.closed(last)
        cand = g.adj[last] & ~blocked
        if not cand:
            return
        if len(path) + 1 + (full & ~nxt_blocked).bit_count() <= len(best):
            return
        for c in iter_bits(cand):
            path.append(c)
            grow(nxt_blocked)
            path.pop()
            if len(best) == g.n:
                return

    for s in range(g.n):
        path.append(s)
        grow(1 << s)
        path.pop()
    return tuple(best)


def longest_induced_path_order(g: Graph) -> int:
    """Number of vertices of a longest induced path; ``g`` is P_k-free iff this is < k."""
    return len(longest_induced_path(g))


def has_induced_path(g: Graph, order: int) -> bool:
    return next(induced_paths(g, order), None) is not None


def longest_path_order(g: Graph) -> int:
    """Vertex count of a longest (not necessarily induced) path, by Held-Karp over subsets."""
    n = g.n
    if n > HELD_KARP_MAX:
        raise GraphError(f"exact longest path limited to n <= {HELD_KARP_MAX}, got {n}")
    size = 1 << n
    dp = np.zeros(size, dtype=np.uint32)  # dp[mask]: endpoints of Hamiltonian paths of G[mask]
    for v in range(n):
        dp[1 << v] = 1 << v
    masks = np.arange(size, dtype=np.uint32)
    pop = np.bitwise_count(masks)
    nbrs = [g.nbrs(v) for v in range(n)]
    best = 1
    for layer in range(1, n):
        cur = masks[(pop == layer)]
        cur = cur[dp[cur] != 0]
        if len(cur) == 0:
            break
        best = layer
        ends = dp[cur]
        for v in range(n):
            sel = cur[(ends >> np.uint32(v)) & np.uint32(1) == 1]
            if len(sel) == 0:
                continue
            for u in nbrs[v]:
                bit = np.uint32(1 << u)
                tgt = sel[(sel & bit) == 0] | bit
                dp[tgt] |= bit
    else:
        best = n if np.any(dp[masks[pop == n]]) else best
    return best


@dataclass(frozen=True)
class FreenessProfile:
    longest_induced_path_order: int
    claw_free: bool
    butterfly_free: bool
    c4_free: bool
    c5_free: bool
    e_free: bool

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @property
    def theorem12_class(self) -> bool:
        return self.claw_free and self.butterfly_free and self.c4_free and self.c5_free


@lru_cache(maxsize=None)
def pattern(name: str) -> Graph:
    if name == "c4":
        return named_graph("cycle", [4])
    if name == "c5":
        return named_graph("cycle", [5])
    return named_graph(name)


PATTERNS = {"claw": "claw", "butterfly": "butterfly", "c4": "c4", "c5": "c5", "e": "e_graph"}


def forbidden_witness(g: Graph, name: str) -> dict[int, int] | None:
    return contains_induced(g, pattern(PATTERNS[name]))


def freeness_profile(g: Graph) -> FreenessProfile:
    return FreenessProfile(
        longest_induced_path_order=longest_induced_path_order(g),
        **{f"{k}_free": forbidden_witness(g, k) is None for k in ("claw", "butterfly", "c4", "c5", "e")},
    )


# --- flails ---------------------------------------------------------------

@dataclass(frozen=True)
class FlailSpec:
    """Induced path u_1..u_{k+1} plus pendants v_1..v_t adjacent to u_{k+1}.

    ``S`` holds 1-based pairs (i, j) with u_i adjacent to v_j for i <= k.
    """

    k: int
    t: int
    path: tuple[int, ...]
    pendants: tuple[int, ...]
    S: frozenset[tuple[int, int]]


def is_flail(g: Graph, path: Iterable[int], pendants: Iterable[int]) -> FlailSpec | None:
    path, pendants = tuple(path), tuple(pendants)
    if len(path) < 2 or not pendants:
        return None
    if len(set(path) | set(pendants)) != len(path) + len(pendants):
        return None
    for a, b in itertools.combinations(range(len(path)), 2):
        if g.has_edge(path[a], path[b]) != (b == a + 1):
            return None
    tip = path[-1]
    if not all(g.has_edge(v, tip) for v in pendants):
        return None
    k = len(path) - 1
    S = frozenset(
        (i + 1, j + 1) for i in range(k) for j, v in enumerate(pendants) if g.has_edge(path[i], v)
    )
    return FlailSpec(k, len(pendants), path, pendants, S)


def enumerate_flails(g: Graph, k: int, t: int) -> Iterator[FlailSpec]:
    """Every induced (k, t, S)-flail of ``g``; pendant sets are listed in ascending order."""
    for path in induced_paths(g, k + 1):
        free = g.adj[path[-1]] & ~sum(1 << v for v in path)
        for pend in itertools.combinations(iter_bits(free), t):
            spec = is_flail(g, path, pend)
            assert spec is not None
            yield spec


def one_third_saturates(path_order: int, X: Iterable[int]) -> bool:
    """Whether index set ``X`` (1-based, over u_1..u_path_order) 1/3-saturates the path."""
    X = set(X)
    for i in range(1, path_order):
        if i in X or i + 1 in X:
            continue
        if i - 1 >= 1 and i + 2 <= path_order and i - 1 in X and i + 2 in X:
            continue
        return False
    return True


class FlailHypothesisError(ValueError):
    pass


LEMMAS = ("claw", "claw_butterfly", "e_free")


def check_flail_lemma(spec: FlailSpec, lemma: str) -> bool:
    """Evaluate the conclusion of a flail lemma on ``spec``.

    Raises :class:`FlailHypothesisError` naming the violated hypothesis.
    """
    S, k, t = spec.S, spec.k, spec.t
    if lemma not in LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}")
    need_k = 6 if lemma == "e_free" else 3
    if k < need_k:
        raise FlailHypothesisError(f"k >= {need_k} required, got k={k}")
    if lemma != "claw" and any((k, j) in S for j in range(1, t + 1)):
        raise FlailHypothesisError("pendant adjacent to u_k: {(k,j)} must be disjoint from S")
    if lemma == "claw":
        return all((i - 1, j) in S or (i + 1, j) in S for i, j in S if 1 < i < k)
    if lemma == "claw_butterfly":
        pinned = {i for i, j in S if (i - 1, j) in S}
        return all((i, q) in S or (i - 1, q) in S for i in pinned for q in range(1, t + 1))
    return all(
        (i - 1, j) in S or (i + 1, j) in S or (i - 2, j) in S for i, j in S if 3 <= i <= k - 3
    )


def lemma_applies(spec: FlailSpec, lemma: str) -> bool:
    try:
        check_flail_lemma(spec, lemma)
    except FlailHypothesisError:
        return False
    return True
