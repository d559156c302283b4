"""Undirected simple graphs over vertices 0..n-1 with int bitset adjacency.

Everything downstream (certifiers, solver, agents) works on :class:`Graph`,
which is immutable and hashable so it can key caches and cross process
boundaries in campaigns.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 128
INF = math.inf


class GraphError(ValueError):
    """Invalid graph data, parameters, or encodings."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside 1..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {u} has neighbours outside 0..{self.n - 1}")
            if row >> u & 1:
                raise GraphError(f"self-loop at {u}")
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"asymmetric edge {u}-{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def nbrs(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def closed(self, v: int) -> int:
        return self.adj[v] | 1 << v

    def closed_of(self, mask: int) -> int:
        out = mask
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def induced(self, vertices: list[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u in vertices for v in iter_bits(self.adj[u]) if v in index and index[u] < index[v]]
        return Graph.from_edges(len(vertices), edges)

    def relabel(self, perm: list[int]) -> Graph:
        """Graph whose vertex ``i`` is old vertex ``perm[i]``."""
        return self.induced(list(perm))

    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges}, g6={encode_graph6(self)!r})"


# --- named constructions -------------------------------------------------

ROBERTSON_LCF = (8, 4, 7, 4, 8, 5, 7, 4, 7, 8, 4, 5, 7, 8, 4, 8, 4, 8, 4)


def path_graph(t: int) -> Graph:
    if t < 1:
        raise GraphError("path needs t >= 1")
    return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])


def cycle_graph(t: int) -> Graph:
    if t < 3:
        raise GraphError("cycle needs t >= 3")
    return Graph.from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def complete_graph(t: int) -> Graph:
    if t < 1:
        raise GraphError("complete graph needs t >= 1")
    return Graph.from_edges(t, itertools.combinations(range(t), 2))


def star_graph(leaves: int) -> Graph:
    if leaves < 1:
        raise GraphError("star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    # Kneser K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
    pairs = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, j in itertools.combinations(range(10), 2) if not set(pairs[i]) & set(pairs[j])]
    return Graph.from_edges(10, edges)


def robertson_graph() -> Graph:
    edges = [(i, (i + 1) % 19) for i in range(19)]
    edges += [(i, (i + j) % 19) for i, j in enumerate(ROBERTSON_LCF)]
    g = Graph.from_edges(19, edges)
    if set(g.degrees()) != {4} or girth(g) != 5:
        raise GraphError("hard-coded Robertson adjacency is not the (4,5)-cage")
    return g


NAMED: dict[str, tuple[int, Callable[..., Graph]]] = {
    "path": (1, path_graph),
    "cycle": (1, cycle_graph),
    "complete": (1, complete_graph),
    "star": (1, star_graph),
    "claw": (0, lambda: star_graph(3)),
    # two triangles sharing vertex 0
    "butterfly": (0, lambda: Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])),
    # claw centre 0 with arms 0-1, 0-2-3, 0-4-5
    "e_graph": (0, lambda: Graph.from_edges(6, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)])),
    "petersen": (0, petersen_graph),
    "robertson": (0, robertson_graph),
    # hub 0 over the 4-cycle 1-2-3-4
    "wheel4": (0, lambda: Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 1), (0, 1), (0, 2), (0, 3), (0, 4)])),
}
_ALIASES = {"p": "path", "c": "cycle", "k": "complete", "e": "e_graph", "4-wheel": "wheel4", "wheel": "wheel4"}


def named_graph(name: str, params: Iterable[int] = ()) -> Graph:
    """Build a named construction, e.g. ``named_graph("cycle", [5])``."""
    key = _ALIASES.get(name.lower(), name.lower())
    if key not in NAMED:
        raise GraphError(f"unknown graph name {name!r}; known: {', '.join(sorted(NAMED))}")
    arity, build = NAMED[key]
    params = list(params)
    if len(params) != arity:
        raise GraphError(f"{key} takes {arity} integer parameter(s), got {len(params)}")
    return build(*params)


def parse_named(spec: str) -> Graph:
    """Parse ``"cycle:5"`` / ``"petersen"`` style constructor strings."""
    name, _, rest = spec.partition(":")
    try:
        params = [int(p) for p in rest.split(",") if p.strip()]
    except ValueError as exc:
        raise GraphError(f"bad parameters in {spec!r}") from exc
    return named_graph(name, params)


# --- graph6 ---------------------------------------------------------------

def _graph6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphError("graph6 order too large")


def encode_graph6(g: Graph) -> str:
    bits = [(g.adj[j] >> i) & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return _graph6_size(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphError("malformed header: empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise GraphError("malformed graph6: byte outside 63..126")
    if data[0] == 63:
        if len(data) < 4 or data[1] == 63:
            raise GraphError("malformed header: unsupported or truncated size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    if n == 0:
        raise GraphError("malformed header: zero-vertex graph")
    if n > MAX_ORDER:
        raise GraphError(f"graph6 order {n} exceeds cap {MAX_ORDER}")
    nbits = n * (n - 1) // 2
    if len(data) != (nbits + 5) // 6:
        raise GraphError(f"truncated or overlong payload: expected {(nbits + 5) // 6} bytes, got {len(data)}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if data[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6 and data[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise GraphError("malformed graph6: nonzero padding bits")
    return Graph(n, tuple(adj))


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m\\nu v\\n..."`` with 0-based vertices."""
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with 'n m'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError("edge list entries must be integer pairs") from exc
    if len(edges) != m:
        raise GraphError(f"edge list declares {m} edges but has {len(edges)}")
    return Graph.from_edges(n, edges)


def encode_edge_list(g: Graph) -> str:
    return "\n".join([f"{g.n} {g.num_edges}"] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


# --- metrics --------------------------------------------------------------

def bfs_layers(g: Graph, source: int, within: int | None = None) -> list[int]:
    """Distance layers from ``source`` as bitmasks, optionally inside ``within``."""
    allowed = g.full if within is None else within
    seen = 1 << source
    frontier = seen
    layers = [frontier]
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        nxt &= allowed & ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)
        frontier = nxt


def distances_from(g: Graph, source: int, within: int | None = None) -> list[float]:
    dist: list[float] = [INF] * g.n
    for d, layer in enumerate(bfs_layers(g, source, within)):
        for v in iter_bits(layer):
            dist[v] = d
    return dist


def distance(g: Graph, u: int, v: int, within: int | None = None) -> float:
    for d, layer in enumerate(bfs_layers(g, u, within)):
        if layer >> v & 1:
            return d
    return INF


def component_of(g: Graph, v: int, within: int) -> int:
    out = 0
    for layer in bfs_layers(g, v, within):
        out |= layer
    return out


def is_connected(g: Graph) -> bool:
    return component_of(g, 0, g.full) == g.full


def girth(g: Graph) -> float:
    best = INF
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            for w in iter_bits(g.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def independence_number(g: Graph) -> int:
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = size
            return
        # a vertex of degree <= 1 in the candidate set is always safe to take
        pick, pick_deg = -1, -1
        for v in iter_bits(cand):
            d = (g.adj[v] & cand).bit_count()
            if d <= 1:
                grow(cand & ~(g.adj[v] | 1 << v), size + 1)
                return
            if d > pick_deg:
                pick, pick_deg = v, d
        grow(cand & ~(g.adj[pick] | 1 << pick), size + 1)
        grow(cand & ~(1 << pick), size)

    grow(g.full, 0)
    return best


# --- enumeration ----------------------------------------------------------

ENUM_MAX = 8


@lru_cache(maxsize=None)
def _perms(k: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(k))), dtype=np.int8).reshape(-1, k)


def _refined_cells(g: Graph) -> list[list[int]]:
    color = g.degrees()
    while True:
        sig = [(color[v], tuple(sorted(color[w] for w in iter_bits(g.adj[v])))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(color)):
            break
        color = new
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(color[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(g: Graph) -> Graph:
    """Canonical relabelling: the lexicographically least adjacency code over
    every ordering consistent with the (isomorphism-invariant) colour refinement."""
    cells = _refined_cells(g)
    blocks = []
    for cell in cells:
        p = _perms(len(cell))
        blocks.append(np.asarray(cell, dtype=np.int64)[p])
    perms = blocks[0]
    for block in blocks[1:]:
        perms = np.concatenate(
            [np.repeat(perms, len(block), axis=0), np.tile(block, (len(perms), 1))], axis=1
        )
    a = g.matrix()
    iu, ju = np.triu_indices(g.n, 1)
    weights = (1 << np.arange(len(iu), dtype=np.int64))[::-1] if len(iu) else np.zeros(0, np.int64)
    best_code, best_perm = None, None
    for start in range(0, len(perms), 20000):
        chunk = perms[start:start + 20000]
        codes = a[chunk[:, iu], chunk[:, ju]].astype(np.int64) @ weights
        k = int(np.argmax(codes))
        if best_code is None or codes[k] > best_code:
            best_code, best_perm = codes[k], chunk[k]
    return g.relabel([int(v) for v in best_perm])


@lru_cache(maxsize=None)
def graphs_up_to_iso(n: int) -> tuple[Graph, ...]:
    """All graphs (connected or not) on ``n`` vertices, one per isomorphism class."""
    if n == 1:
        return (Graph(1, (0,)),)
    seen: dict[tuple[int, ...], Graph] = {}
    for h in graphs_up_to_iso(n - 1):
        for nb in range(1 << (n - 1)):
            adj = [row | ((nb >> u & 1) << (n - 1)) for u, row in enumerate(h.adj)] + [nb]
            c = canonical_form(Graph(n, tuple(adj)))
            seen.setdefault(c.adj, c)
    return tuple(sorted(seen.values(), key=lambda g: (g.num_edges, g.adj)))


def enumerate_connected_graphs(
    n: int, filter: Callable[[Graph], bool] | None = None, dedup: bool = True
) -> Iterator[Graph]:
    """Yield connected graphs on ``n`` vertices, up to isomorphism when ``dedup``.

    Without dedup every labelled graph is produced, which is only practical for
    small ``n``.
    """
    if not 1 <= n <= ENUM_MAX:
        raise GraphError(f"exhaustive enumeration supports 1 <= n <= {ENUM_MAX}, got {n}")
    if dedup:
        source: Iterable[Graph] = graphs_up_to_iso(n)
    else:
        pairs = list(itertools.combinations(range(n), 2))
        source = (
            Graph.from_edges(n, [p for i, p in enumerate(pairs) if code >> i & 1])
            for code in range(1 << len(pairs))
        )
    for g in source:
        if is_connected(g) and (filter is None or filter(g)):
            yield g


def connected_graphs_upto(n_max: int, filter: Callable[[Graph], bool] | None = None) -> list[Graph]:
    return [g for n in range(1, n_max + 1) for g in enumerate_connected_graphs(n, filter)]
