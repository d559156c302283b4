"""Deterministic cop agents.

An agent is a pure function of (graph, StrategyState, robber vertex): ``place``
gives the opening state, ``move`` gives the state after the cops' ply.  Every
agent first checks for an immediate capture; otherwise it follows its strategy
and asserts the strategy's invariants, raising :class:`InvariantViolation` if
one breaks (always an implementation bug, never a legal outcome).

Ties the strategies leave open are broken by lowest vertex / lowest cop id.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from .graph import Graph, GraphError, bits_of, component_of, distances_from, is_connected, iter_bits
from .solver import SolveTable, solve_cached
from .subgraphs import PATTERNS, contains_induced, longest_induced_path_order, one_third_saturates, pattern


class InvariantViolation(AssertionError):
    pass


class PreconditionError(GraphError):
    def __init__(self, message: str, witness: dict[int, int] | None = None, pattern_name: str | None = None):
        super().__init__(message)
        self.witness = witness
        self.pattern_name = pattern_name


@dataclass(frozen=True)
class StrategyState:
    cops: tuple[int, ...]
    phase: str
    path: tuple[int, ...] = ()
    roles: tuple[str, ...] = ()
    residue: int = 0
    turn: int = 0
    extra: tuple = ()
    note: str = ""

    def digest(self) -> int:
        return hash(self)


def capture_move(g: Graph, cops: tuple[int, ...], robber: int) -> tuple[int, ...] | None:
    for i, c in enumerate(cops):
        if c == robber or g.has_edge(c, robber):
            return cops[:i] + (robber,) + cops[i + 1:]
    return None


def is_induced_path(g: Graph, path: tuple[int, ...]) -> bool:
    if len(set(path)) != len(path):
        return False
    for a in range(len(path)):
        for b in range(a + 1, len(path)):
            if g.has_edge(path[a], path[b]) != (b == a + 1):
                return False
    return True


class CopAgent:
    name = "agent"

    def __init__(self, g: Graph, budget: int):
        if not is_connected(g):
            raise PreconditionError("agents play on connected graphs")
        self.g = g
        self.budget = budget

    def place(self) -> StrategyState:
        raise NotImplementedError

    def move(self, state: StrategyState, robber: int) -> StrategyState:
        caught = capture_move(self.g, state.cops, robber)
        if caught is not None:
            return replace(state, cops=caught, turn=state.turn + 1, note="capture")
        new = self.strategy_move(state, robber)
        if new.turn != state.turn + 1:
            new = replace(new, turn=state.turn + 1)
        if len(new.cops) != self.budget:
            raise InvariantViolation("cop count changed")
        for a, b in zip(state.cops, new.cops):
            if a != b and not self.g.has_edge(a, b):
                raise InvariantViolation(f"illegal cop move {a}->{b}")
        return new

    def strategy_move(self, state: StrategyState, robber: int) -> StrategyState:
        raise NotImplementedError


def _require_free(g: Graph, names: list[str], what: str) -> None:
    for name in names:
        hit = contains_induced(g, pattern(PATTERNS[name]))
        if hit is not None:
            verts = sorted(hit.values())
            raise PreconditionError(f"{what} requires {name}-free input; induced {name} on vertices {verts}", hit, name)


def _gyarfas_candidates(g: Graph, lead: int, alive: int, robber: int) -> list[int]:
    """Neighbours u of ``lead`` inside ``alive`` from which the robber is reachable
    inside ``alive`` without touching N[lead] other than u."""
    out = []
    closed_lead = g.closed(lead)
    for u in iter_bits(g.adj[lead] & alive):
        allowed = alive & ~(closed_lead & ~(1 << u))
        if component_of(g, u, allowed) >> robber & 1:
            out.append(u)
    return out


# --- induced-path chase with one cop per path vertex -----------------------

class GyarfasAgent(CopAgent):
    """Grows an induced path w_0 w_1 ... toward the robber and leaves one cop on
    every path vertex; the robber is confined to a component of G - N[path]
    that shrinks every round.  Uses (induced path order) - 1 cops."""

    name = "gyarfas"

    def __init__(self, g: Graph):
        lip = longest_induced_path_order(g)
        super().__init__(g, max(1, lip - 1))
        self.lip = lip

    def place(self) -> StrategyState:
        return StrategyState(cops=(0,) * self.budget, phase="step1", path=(0,), roles=("lead",) * self.budget)

    def strategy_move(self, state: StrategyState, robber: int) -> StrategyState:
        g, path = self.g, state.path
        if not is_induced_path(g, path):
            raise InvariantViolation(f"path {path} is not induced")
        guarded = g.closed_of(bits_of(path))
        if guarded >> robber & 1:
            raise InvariantViolation("robber inside guarded region without being adjacent to a cop")
        territory = component_of(g, robber, g.full & ~guarded)
        earlier = g.closed_of(bits_of(path[:-1]))
        options = [u for u in iter_bits(g.adj[path[-1]] & ~earlier) if g.adj[u] & territory]
        if not options:
            raise InvariantViolation("no neighbour of the path tip touches the robber territory")
        i = len(path) - 1
        if i + 1 >= self.budget:
            raise InvariantViolation("path longer than the cop budget allows")
        u = options[0]
        cops = tuple(path[j] if j < i + 1 else u for j in range(self.budget))
        roles = tuple("station" if j <= i else "lead" for j in range(self.budget))
        return StrategyState(cops, "step1", path + (u,), roles, guarded, state.turn + 1)


# --- shared Step 1 for the two theorem strategies --------------------------

UP, DOWN, DDOWN = 0, 1, 2


class _TheoremAgent(CopAgent):
    spacing = 3

    def __init__(self, g: Graph, forbidden: list[str]):
        _require_free(g, forbidden, self.name)
        lip = longest_induced_path_order(g)
        self.k = lip + 1
        self.m = max(1, math.ceil((self.k - 1) / self.spacing))
        super().__init__(g, self.m + 3)

    def place(self) -> StrategyState:
        roles = ("up", "down", "Ddown") + tuple(f"C{j}" for j in range(self.m))
        return StrategyState(cops=(0,) * self.budget, phase="step1", path=(0,), roles=roles, residue=0)

    def _step1_positions(self, wpath: tuple[int, ...]) -> tuple[int, ...]:
        t = len(wpath) - 1
        at = lambda idx: wpath[max(0, idx)]
        return (wpath[t], wpath[0], wpath[0]) + tuple(at(t - self.spacing * j) for j in range(self.m))

    def _step1_advance(self, state: StrategyState, robber: int) -> StrategyState:
        g, wpath = self.g, state.path
        if state.cops != self._step1_positions(wpath):
            raise InvariantViolation("step 1 cops off their stations")
        if not is_induced_path(g, wpath):
            raise InvariantViolation(f"step 1 path {wpath} is not induced")
        alive = g.full & ~state.residue
        if not alive >> robber & 1:
            raise InvariantViolation("robber outside the residual graph G_i during step 1")
        lead = wpath[-1]
        options = _gyarfas_candidates(g, lead, alive, robber)
        if not options:
            raise InvariantViolation("no Gyarfas extension toward the robber")
        u = options[0]
        new_path = wpath + (u,)
        residue = state.residue | (g.closed(lead) & ~(1 << u))
        return replace(state, cops=self._step1_positions(new_path), path=new_path, residue=residue, turn=state.turn + 1, note="")


# --- (P_k, claw, butterfly, C4, C5)-free graphs: cops on every third vertex --

@dataclass(frozen=True)
class _Step2:
    wpath: tuple[int, ...]
    labels: tuple[int, ...]  # per cop: 0 lead, j>0 train index, -1 up, -2 down, -3 spare
    i: int  # lead sits on u_i before this turn
    prev_robber: int  # r_{i-1}
    endgame: bool = False


class Theorem12Agent(_TheoremAgent):
    """Cops on every third vertex of a Gyarfas path; switch to a fresh path once the
    robber is at distance 2, and intercept through flails when it touches the path."""

    name = "theorem12"
    spacing = 3

    def __init__(self, g: Graph):
        super().__init__(g, ["claw", "butterfly", "c4", "c5"])

    def strategy_move(self, state: StrategyState, robber: int) -> StrategyState:
        if state.phase == "step1":
            dist = distances_from(self.g, robber)
            D = min(dist[c] for c in state.cops)
            if D >= 3:
                return self._step1_advance(state, robber)
            state = self._enter_step2(state, robber, dist)
        return self._step2_move(state, robber)

    def _enter_step2(self, state: StrategyState, robber: int, dist) -> StrategyState:
        g, m, wpath = self.g, self.m, state.path
        t = len(wpath) - 1
        if dist[wpath[0]] == 2:
            chosen = DDOWN
        elif dist[wpath[t]] == 2:
            chosen = 3
        else:
            chosen = next(3 + j for j in range(1, m) if dist[state.cops[3 + j]] == 2)
        labels = [-3] * self.budget
        labels[UP], labels[DOWN] = -1, -2
        labels[chosen] = 0
        if chosen == DDOWN:
            for j in range(1, m + 1):
                labels[3 + m - j] = j
        else:
            i = chosen - 3
            M = min(i, m - 1 - i)
            for j in range(1, M + 1):
                labels[3 + i - j] = 2 * j - 1
                labels[3 + i + j] = 2 * j
            # past the nearer end only one side has cops left; labels stay contiguous
            for j in range(M + 1, m):
                if i - j >= 0:
                    labels[3 + i - j] = M + j
                elif i + j < m:
                    labels[3 + i + j] = M + j
        u0 = state.cops[chosen]
        roles = tuple(_label_name(x) for x in labels)
        info = _Step2(wpath, tuple(labels), 0, -1)
        return StrategyState(state.cops, "step2", (u0,), roles, 0, state.turn, (info,), "")

    def _step2_move(self, state: StrategyState, robber: int) -> StrategyState:
        g = self.g
        info: _Step2 = state.extra[0]
        if info.endgame:
            raise InvariantViolation("interception did not produce a capture")
        upath, i, cops = state.path, info.i, state.cops
        if not is_induced_path(g, upath):
            raise InvariantViolation(f"step 2 path {upath} is not induced")
        if state.residue >> robber & 1:
            raise InvariantViolation("robber inside deleted neighbourhoods H_i")
        lead_id = info.labels.index(0)
        if i == 0:
            common = g.adj[upath[0]] & g.adj[robber]
            if not common or g.has_edge(upath[0], robber):
                raise InvariantViolation("step 2 must start at distance exactly 2")
            target = (common & -common).bit_length() - 1
        else:
            target = info.prev_robber
            if not g.has_edge(upath[i], target):
                raise InvariantViolation("lead cannot follow the robber's previous vertex")
        windex = {v: idx for idx, v in enumerate(info.wpath)}
        q = windex[upath[0]]
        nxt = list(cops)
        nxt[lead_id] = target
        for cid, lab in enumerate(info.labels):
            if lab == 0:
                continue
            pos = cops[cid]
            if lab > 0 and i >= 3 * lab:
                if pos != upath[i - 3 * lab]:
                    raise InvariantViolation(f"train cop {lab} not on u_{i - 3 * lab}")
                nxt[cid] = upath[i + 1 - 3 * lab]
            elif pos == upath[0] and (lab < 0 or i >= 0):
                nxt[cid] = pos
            else:
                if pos not in windex:
                    raise InvariantViolation("walking cop left the old path")
                p = windex[pos]
                nxt[cid] = info.wpath[p + (q > p) - (q < p)]
        if i >= 3:
            staying = [c for c in range(self.budget) if cops[c] == upath[0] and nxt[c] == upath[0]]
            if not staying:
                raise InvariantViolation("no cop holds u_0 (claim 1)")
            on_path = {idx + 1 for idx, v in enumerate(upath) if v in cops}
            if not one_third_saturates(len(upath), on_path):
                raise InvariantViolation("cops do not 1/3-saturate the path (claim 2)")
        endgame = False
        if i >= 1:
            plan = self._intercept(state, robber, info.prev_robber, nxt, lead_id)
            if plan is not None:
                nxt, endgame = plan, True
            elif i >= 3 and self._signal(robber, info.prev_robber, upath):
                raise InvariantViolation("robber can touch the path but no interception exists")
        residue = state.residue | (g.closed(upath[i]) & ~(1 << target)) if i >= 0 else state.residue
        new_info = replace(info, i=i + 1, prev_robber=robber, endgame=endgame)
        return StrategyState(tuple(nxt), "endgame" if endgame else "step2", upath + (target,), state.roles, residue, state.turn + 1, (new_info,), "intercept" if endgame else "")

    def _signal(self, robber: int, prev: int, upath) -> list[int]:
        g = self.g
        ring = g.closed(robber) & ~g.closed(prev)
        touch = bits_of(upath)
        return [v for v in iter_bits(ring) if g.adj[v] & touch]

    def _intercept(self, state, robber, prev, planned, lead_id) -> list[int] | None:
        g = self.g
        upath, cops = state.path, state.cops
        signal = self._signal(robber, prev, upath)
        if not signal:
            return None
        need = g.closed(robber)

        def covers(pos: list[int]) -> bool:
            return need & ~g.closed_of(bits_of(pos)) == 0

        for v in signal:
            for cid in range(self.budget):
                if cid != lead_id and g.closed(v) >> cops[cid] & 1:
                    pos = list(cops)
                    pos[lead_id] = planned[lead_id]
                    pos[cid] = v
                    if covers(pos):
                        return pos
        occupied = bits_of(cops)
        for v in signal:
            for a in range(1, len(upath) - 2):
                ua, ub = upath[a], upath[a + 1]
                if not (g.has_edge(v, ua) and g.has_edge(v, ub)) or occupied >> ua & 1 or occupied >> ub & 1:
                    continue
                left = [c for c in range(self.budget) if c != lead_id and cops[c] == upath[a - 1]]
                right = [c for c in range(self.budget) if c != lead_id and cops[c] == upath[a + 2]]
                if left and right:
                    pos = list(cops)
                    pos[lead_id] = planned[lead_id]
                    pos[left[0]], pos[right[0]] = ua, ub
                    if covers(pos):
                        return pos
        return None


def _label_name(x: int) -> str:
    return {0: "lead", -1: "up", -2: "down", -3: "spare"}.get(x, f"L{x}")


# --- (P_k, E)-free graphs: cops on every second vertex ---------------------

@dataclass(frozen=True)
class _Step2E:
    wpath: tuple[int, ...]
    target: int  # index q of the w-path vertex the cops converge on (u_1 = w_q)
    arrived: tuple[bool, ...]
    i: int
    prev_robber: int


class Theorem15Agent(_TheoremAgent):
    """Cops on every second vertex of a Gyarfas path until the robber touches it;
    then every cop converges on the touched vertex and a train of cops covers
    u_1, u_2, u_{i-1} and every second vertex back from the lead."""

    name = "theorem15"
    spacing = 2

    def __init__(self, g: Graph):
        super().__init__(g, ["e"])

    def strategy_move(self, state: StrategyState, robber: int) -> StrategyState:
        if state.phase == "step1":
            touched = [q for q, w in enumerate(state.path) if self.g.has_edge(w, robber)]
            if not touched:
                return self._step1_advance(state, robber)
            state = self._enter_step2(state, touched[0])
        return self._step2_move(state, robber)

    def _enter_step2(self, state: StrategyState, q: int) -> StrategyState:
        wpath, cops = state.path, state.cops
        if wpath[q] in cops or q + 1 >= len(wpath) or q == 0:
            raise InvariantViolation("touched path vertex should hold or neighbour cops")
        lead = [c for c in range(3, self.budget) if cops[c] == wpath[q + 1]]
        star = [c for c in range(3, self.budget) if cops[c] == wpath[q - 1]] + [c for c in (DDOWN, DOWN) if cops[c] == wpath[q - 1]]
        if not lead or not star:
            raise InvariantViolation("no cops on both sides of the touched path vertex")
        roles = ["walk"] * self.budget
        roles[UP], roles[DOWN] = "up", "down"
        roles[lead[0]], roles[star[0]] = "lead", "star"
        info = _Step2E(wpath, q, (False,) * self.budget, 0, -1)
        return StrategyState(cops, "step2", (wpath[q + 1],), tuple(roles), 0, state.turn, (info,), "")

    def required(self, i: int) -> set[int]:
        """Path indices that must hold a cop before the cops move with the lead on u_i."""
        want = {1, 2, i - 1} | {i - 2 * j for j in range(i // 2 + 1)}
        return {x for x in want if 1 <= x <= i}

    def _step2_move(self, state: StrategyState, robber: int) -> StrategyState:
        g = self.g
        info: _Step2E = state.extra[0]
        upath, i, cops = state.path, info.i, state.cops
        lead_id = state.roles.index("lead")
        if not is_induced_path(g, upath[1:]):
            raise InvariantViolation(f"step 2 path {upath[1:]} is not induced")
        if 1 <= i <= self.k - 2:
            held = {upath.index(c) for c, a in zip(cops, info.arrived) if a and c in upath[1:]}
            held |= {i}
            missing = self.required(i) - held
            if missing:
                raise InvariantViolation(f"path positions {sorted(missing)} lack a cop")
        q = info.target
        target = info.wpath[q] if i == 0 else info.prev_robber
        if not g.has_edge(upath[i], target):
            raise InvariantViolation("lead cannot reach its next path vertex")
        nxt = list(cops)
        arrived = list(info.arrived)
        nxt[lead_id] = target
        arrived[lead_id] = True
        windex = {v: idx for idx, v in enumerate(info.wpath)}
        movers = []
        for cid in range(self.budget):
            if cid == lead_id:
                continue
            if info.arrived[cid]:
                movers.append(cid)
                continue
            p = windex.get(cops[cid])
            if p is None:
                raise InvariantViolation("walking cop left the old path")
            p += (q > p) - (q < p)
            nxt[cid] = info.wpath[p]
            arrived[cid] = p == q
        if i >= 1:
            new_path = upath + (target,)
            # indices along u-path; arrivals this turn land on u_1
            want = self.required(i + 1) - {i + 1}
            fresh = [c for c in range(self.budget) if arrived[c] and not info.arrived[c] and c != lead_id]
            if fresh:
                want.discard(1)
            plan = _cover(want, {c: new_path.index(cops[c]) for c in movers}, i)
            if plan is None:
                raise InvariantViolation(f"cannot cover path positions {sorted(want)}")
            for cid, idx in plan.items():
                nxt[cid] = new_path[idx]
        new_info = replace(info, arrived=tuple(arrived), i=i + 1, prev_robber=robber)
        return StrategyState(tuple(nxt), "step2", upath + (target,), state.roles, 0, state.turn + 1, (new_info,), "")


def _cover(targets: set[int], at: dict[int, int], top: int) -> dict[int, int] | None:
    """Move cops along the path (one step, indices 1..top) so every target index
    holds a cop.  Low targets prefer a cop already there; the rest prefer a cop
    stepping forward.  Unassigned cops stay."""
    plan: dict[int, int] = {}
    order = sorted(targets, reverse=True)

    def prefs(y: int) -> list[int]:
        steps = (0, -1, 1) if y <= 2 else (-1, 0, 1)
        out = []
        for d in steps:
            out += sorted(c for c, x in at.items() if x == y + d)
        return out

    match: dict[int, int] = {}  # target -> cop

    def augment(y: int, seen: set[int]) -> bool:
        owner_of = {cc: t for t, cc in match.items()}
        cands = prefs(y)
        for c in [c for c in cands if c not in owner_of] + [c for c in cands if c in owner_of]:
            if c in seen:
                continue
            seen.add(c)
            if c not in owner_of or augment(owner_of[c], seen):
                match[y] = c
                return True
        return False

    for y in order:
        if not augment(y, set()):
            return None
    for y, c in match.items():
        plan[c] = y
    for c, x in at.items():
        plan.setdefault(c, x)
    return plan


# --- solver-backed reference agent -----------------------------------------

class TableAgent(CopAgent):
    """Optimal cops read off a solved table (for tiny graphs and controls)."""

    name = "table"

    def __init__(self, g: Graph, k: int, table: SolveTable | None = None):
        super().__init__(g, k)
        self.table = table or solve_cached(g, k)

    def place(self) -> StrategyState:
        cops, _ = self.table.best_placement()
        return StrategyState(tuple(cops), "play")

    def strategy_move(self, state: StrategyState, robber: int) -> StrategyState:
        g, t = self.g, self.table
        options = [sorted([c] + g.nbrs(c)) for c in state.cops]
        best = min(itertools.product(*options), key=lambda combo: (t.value(combo, robber, "robber"), combo))
        return replace(state, cops=tuple(best), turn=state.turn + 1)


class IdleAgent(CopAgent):
    """Negative control: cops never move."""

    name = "idle"

    def __init__(self, g: Graph, k: int = 1):
        super().__init__(g, k)

    def place(self) -> StrategyState:
        return StrategyState((0,) * self.budget, "idle")

    def strategy_move(self, state: StrategyState, robber: int) -> StrategyState:
        return replace(state, turn=state.turn + 1)


AGENTS = {"gyarfas": GyarfasAgent, "theorem12": Theorem12Agent, "theorem15": Theorem15Agent}


def make_agent(name: str, g: Graph) -> CopAgent:
    if name not in AGENTS:
        raise ValueError(f"unknown agent {name!r}; choose from {sorted(AGENTS)}")
    return AGENTS[name](g)
