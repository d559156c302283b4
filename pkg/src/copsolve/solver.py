"""Exact k-cop games by retrograde value iteration over (cop multiset, robber, side).

Cops move simultaneously: a cop ply sends every cop to a vertex of its closed
neighbourhood, so several cops may share a vertex.  Capture is checked after
each ply (a robber stepping onto a cop is captured).  Values are plies until
capture under optimal play; ``UNREACHED`` marks robber wins.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import os
import struct
from dataclasses import dataclass
from math import comb
from pathlib import Path

import numpy as np

from .graph import INF, Graph, GraphError, is_connected

UNREACHED = np.int16(32000)
DEFAULT_MAX_STATES = 4_000_000
DEFAULT_MAX_MOVES = 60_000_000
_CHUNK_CELLS = 6_000_000


class StateSpaceError(MemoryError):
    pass


class CopNumberExceeded(RuntimeError):
    pass


def multisets(n: int, k: int) -> np.ndarray:
    """All sorted k-multisets of 0..n-1, row ``i`` having colex rank ``i``."""
    rows = np.array(list(itertools.combinations_with_replacement(range(n), k)), dtype=np.int64).reshape(-1, k)
    order = np.argsort(rank(rows, n))
    return rows[order]


def _binom_table(n: int, k: int) -> np.ndarray:
    top = n + k
    return np.array([[comb(a, b) for b in range(k + 1)] for a in range(top + 1)], dtype=np.int64)


def rank(sorted_rows: np.ndarray, n: int) -> np.ndarray:
    """Colex rank of sorted multisets (last axis), via a_i + i -> combination rank."""
    k = sorted_rows.shape[-1]
    table = _binom_table(n, k)
    shifted = sorted_rows + np.arange(k)
    out = np.zeros(sorted_rows.shape[:-1], dtype=np.int64)
    for i in range(k):
        out += table[shifted[..., i], i + 1]
    return out


def _padded_closed(g: Graph) -> np.ndarray:
    width = max(g.degree(v) for v in range(g.n)) + 1
    nb = np.empty((g.n, width), dtype=np.int64)
    for v in range(g.n):
        row = [v] + g.nbrs(v)
        nb[v] = row + [v] * (width - len(row))  # pad with "pass"; duplicates are harmless under min/max
    return nb


@dataclass
class SolveTable:
    g: Graph
    k: int
    cops: np.ndarray  # (M, k) sorted cop multisets, row = colex rank
    cop_val: np.ndarray  # (M, n) plies to capture, cops to move
    rob_val: np.ndarray  # (M, n) plies to capture, robber to move
    sweeps: int = 0

    def index(self, cops) -> int:
        return int(rank(np.sort(np.asarray(cops, dtype=np.int64))[None, :], self.g.n)[0])

    def value(self, cops, robber: int, to_move: str) -> float:
        arr = self.cop_val if to_move == "cops" else self.rob_val
        v = int(arr[self.index(cops), robber])
        return INF if v >= UNREACHED else v

    def cop_wins(self, cops, robber: int, to_move: str) -> bool:
        return self.value(cops, robber, to_move) < INF

    @property
    def cop_win_flags(self) -> tuple[np.ndarray, np.ndarray]:
        return self.cop_val < UNREACHED, self.rob_val < UNREACHED

    def placement_values(self) -> np.ndarray:
        """Worst-case plies for each cop placement over all robber placements."""
        return self.cop_val.max(axis=1)

    def best_placement(self) -> tuple[tuple[int, ...], float]:
        worst = self.placement_values()
        i = int(np.argmin(worst))
        val = int(worst[i])
        return tuple(int(x) for x in self.cops[i]), (INF if val >= UNREACHED else val)

    def state_count(self) -> int:
        return 2 * self.cop_val.size


class _Operator:
    def __init__(self, g: Graph, k: int, cops: np.ndarray, max_moves: int):
        self.g, self.k, self.cops = g, k, cops
        n = g.n
        self.nb = _padded_closed(g)
        width = self.nb.shape[1]
        per = width ** k
        if len(cops) * per > max_moves:
            raise StateSpaceError(f"cop move table needs {len(cops) * per} entries (cap {max_moves})")
        grids = np.stack(np.meshgrid(*[np.arange(width)] * k, indexing="ij"), axis=-1).reshape(-1, k)
        self.moves = np.empty((len(cops), per), dtype=np.int32)
        step = max(1, _CHUNK_CELLS // (per * k))
        for s in range(0, len(cops), step):
            c = cops[s:s + step]
            choices = self.nb[c]  # (B, k, width)
            picked = choices[:, np.arange(k)[None, :], grids]  # (B, per, k)
            picked.sort(axis=-1)
            self.moves[s:s + step] = rank(picked, n)
        self.occupied = np.zeros((len(cops), n), dtype=bool)
        for j in range(k):
            self.occupied[np.arange(len(cops)), cops[:, j]] = True
        self.row_step = max(1, _CHUNK_CELLS // (per * n))

    def cop_update(self, rob_val: np.ndarray) -> np.ndarray:
        out = np.empty_like(rob_val)
        for s in range(0, len(self.moves), self.row_step):
            out[s:s + self.row_step] = rob_val[self.moves[s:s + self.row_step]].min(axis=1)
        out = np.minimum(out.astype(np.int32) + 1, UNREACHED).astype(np.int16)
        out[self.occupied] = 0
        return out

    def robber_update(self, cop_val: np.ndarray) -> np.ndarray:
        out = cop_val[:, self.nb].max(axis=2)
        out = np.minimum(out.astype(np.int32) + 1, UNREACHED).astype(np.int16)
        out[self.occupied] = 0
        return out


def solve(
    g: Graph,
    k: int,
    max_states: int = DEFAULT_MAX_STATES,
    max_moves: int = DEFAULT_MAX_MOVES,
) -> SolveTable:
    """Solve the k-cop game on ``g`` by sweeping the backward-induction operator to its fixed point."""
    if k < 1:
        raise ValueError("need at least one cop")
    if not is_connected(g):
        raise GraphError("game solver requires a connected graph")
    m = comb(g.n + k - 1, k)
    states = 2 * m * g.n
    if states > max_states:
        raise StateSpaceError(f"state space has {states} states (C({g.n}+{k}-1,{k})*{g.n}*2), cap {max_states}")
    cops = multisets(g.n, k)
    op = _Operator(g, k, cops, max_moves)
    cop_val = np.full((m, g.n), UNREACHED, dtype=np.int16)
    rob_val = np.full((m, g.n), UNREACHED, dtype=np.int16)
    cop_val[op.occupied] = 0
    rob_val[op.occupied] = 0
    sweeps = 0
    while True:
        sweeps += 1
        new_cop = op.cop_update(rob_val)
        new_rob = op.robber_update(new_cop)
        if np.array_equal(new_cop, cop_val) and np.array_equal(new_rob, rob_val):
            break
        cop_val, rob_val = new_cop, new_rob
    return SolveTable(g, k, cops, cop_val, rob_val, sweeps)


def apply_operator(table: SolveTable) -> tuple[np.ndarray, np.ndarray]:
    """One more sweep of the induction operator (a finished table is a fixed point)."""
    op = _Operator(table.g, table.k, table.cops, DEFAULT_MAX_MOVES * 4)
    new_cop = op.cop_update(table.rob_val)
    return new_cop, op.robber_update(new_cop)


def is_k_cop_win(g: Graph, k: int, **kw) -> bool:
    return solve_cached(g, k, **kw).best_placement()[1] < INF


def cop_number(g: Graph, k_max: int = 4, **kw) -> int:
    """Least k <= k_max such that some cop placement wins against every robber placement."""
    if not is_connected(g):
        raise GraphError("cop number requires a connected graph")
    for k in range(1, k_max + 1):
        if solve_cached(g, k, **kw).best_placement()[1] < INF:
            return k
    raise CopNumberExceeded(f"cop number exceeds k_max={k_max}")


def capture_time(g: Graph, k: int, **kw) -> float:
    """Optimal plies to capture from the best placement (placement itself not counted)."""
    return solve_cached(g, k, **kw).best_placement()[1]


def optimal_robber_move(table: SolveTable, cops, robber: int) -> int:
    """Robber reply from a robber-to-move state: an escaping move if one exists
    (lowest vertex), otherwise the move that delays capture longest."""
    cops = tuple(sorted(cops))
    if robber in cops:
        raise ValueError("state is already a capture")
    i = table.index(cops)
    options = sorted([robber] + table.g.nbrs(robber))
    return _pick(table, i, options)


def optimal_robber_placement(table: SolveTable, cops) -> int:
    i = table.index(sorted(cops))
    return _pick(table, i, list(range(table.g.n)))


def _pick(table: SolveTable, i: int, options: list[int]) -> int:
    vals = [int(table.cop_val[i, r]) for r in options]
    return options[max(range(len(options)), key=lambda j: (vals[j], -options[j]))]


# --- dismantlability oracle -----------------------------------------------

def is_dismantlable(g: Graph) -> bool:
    """Classical cop-win test: repeatedly delete a corner (a vertex whose closed
    neighbourhood lies inside another's) until one vertex remains."""
    alive = g.full
    while alive & (alive - 1):
        for u in range(g.n):
            if not alive >> u & 1:
                continue
            nu = (g.adj[u] | 1 << u) & alive
            if any(v != u and nu & ~(g.adj[v] | 1 << v) == 0 for v in range(g.n) if nu >> v & 1):
                alive &= ~(1 << u)
                break
        else:
            return False
    return True


# --- table cache ----------------------------------------------------------

_MAGIC = b"CRTB"
_VERSION = 1


def cache_dir_default() -> Path | None:
    env = os.environ.get("COPSOLVE_CACHE")
    return Path(env) if env else None


def save_table(table: SolveTable, path: Path) -> None:
    """Binary dump: magic, version, n, k, graph6, flags bitstream, then int16 values."""
    from .graph import encode_graph6

    g6 = encode_graph6(table.g).encode()
    cop_flags, rob_flags = table.cop_win_flags
    flags = np.packbits(np.concatenate([cop_flags.ravel(), rob_flags.ravel()]))
    with open(path, "wb") as fh:
        fh.write(_MAGIC + struct.pack("<BHBH", _VERSION, table.g.n, table.k, len(g6)) + g6)
        fh.write(struct.pack("<I", table.sweeps))
        fh.write(flags.tobytes())
        fh.write(table.cop_val.astype("<i2").tobytes())
        fh.write(table.rob_val.astype("<i2").tobytes())


def load_table(path: Path) -> SolveTable:
    from .graph import parse_graph6

    data = Path(path).read_bytes()
    if data[:4] != _MAGIC:
        raise ValueError("not a solver table dump")
    version, n, k, glen = struct.unpack_from("<BHBH", data, 4)
    if version != _VERSION:
        raise ValueError(f"unsupported table version {version}")
    off = 4 + struct.calcsize("<BHBH")
    g = parse_graph6(data[off:off + glen].decode())
    off += glen
    (sweeps,) = struct.unpack_from("<I", data, off)
    off += 4
    m = comb(n + k - 1, k)
    nflags = (2 * m * n + 7) // 8
    flags = np.unpackbits(np.frombuffer(data, np.uint8, nflags, off))[: 2 * m * n]
    off += nflags
    cop_val = np.frombuffer(data, "<i2", m * n, off).reshape(m, n).astype(np.int16)
    rob_val = np.frombuffer(data, "<i2", m * n, off + 2 * m * n).reshape(m, n).astype(np.int16)
    if not np.array_equal(flags.astype(bool), np.concatenate([(cop_val < UNREACHED).ravel(), (rob_val < UNREACHED).ravel()])):
        raise ValueError("corrupt table dump: flags disagree with values")
    return SolveTable(g, k, multisets(n, k), cop_val, rob_val, sweeps)


_memo: dict[tuple[tuple[int, ...], int], SolveTable] = {}


def solve_cached(g: Graph, k: int, cache_dir: Path | str | None = None, memo: bool = True, **kw) -> SolveTable:
    """``solve`` with an in-process memo and an optional on-disk table cache."""
    key = (g.adj, k)
    if memo and key in _memo:
        return _memo[key]
    directory = Path(cache_dir) if cache_dir else cache_dir_default()
    table = None
    if directory is not None:
        from .graph import encode_graph6

        name = hashlib.sha1(encode_graph6(g).encode()).hexdigest()[:16] + f"_k{k}.crtb"
        path = directory / name
        if path.exists():
            table = load_table(path)
        else:
            table = solve(g, k, **kw)
            directory.mkdir(parents=True, exist_ok=True)
            save_table(table, path)
    if table is None:
        table = solve(g, k, **kw)
    if memo and table.cop_val.size <= 2_000_000:
        if len(_memo) > 512:
            _memo.clear()
        _memo[key] = table
    return table
