"""Games between a cop agent and a robber policy, replayable records, and
exhaustive validation of an agent against every robber."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .agents import CopAgent, InvariantViolation, StrategyState
from .graph import Graph, bits_of, distances_from, encode_graph6
from .solver import SolveTable, optimal_robber_move, optimal_robber_placement, solve_cached


def default_turn_cap(g: Graph) -> int:
    return 4 * g.n * g.n


# --- robber policies -------------------------------------------------------

class RobberPolicy:
    name = "robber"

    def place(self, g: Graph, cops: tuple[int, ...]) -> int:
        raise NotImplementedError

    def move(self, g: Graph, cops: tuple[int, ...], robber: int) -> int:
        raise NotImplementedError


class OptimalRobber(RobberPolicy):
    """Plays from a solved table for the agent's cop budget."""

    name = "optimal"

    def __init__(self, table: SolveTable):
        self.table = table

    def place(self, g, cops):
        return optimal_robber_placement(self.table, cops)

    def move(self, g, cops, robber):
        return optimal_robber_move(self.table, cops, robber)


class GreedyRobber(RobberPolicy):
    """Maximises distance to the nearest cop; ties go to the lowest vertex."""

    name = "greedy"

    @staticmethod
    def _gap(g: Graph, cops, v: int) -> float:
        d = distances_from(g, v)
        return min(d[c] for c in cops)

    def place(self, g, cops):
        return max(range(g.n), key=lambda v: (self._gap(g, cops, v), -v))

    def move(self, g, cops, robber):
        return max([robber] + g.nbrs(robber), key=lambda v: (self._gap(g, cops, v), -v))


class ScriptedRobber(RobberPolicy):
    """Placement then moves from a list; stays put once the script runs out."""

    name = "scripted"

    def __init__(self, moves: list[int]):
        if not moves:
            raise ValueError("script needs at least a placement")
        self.moves = list(moves)
        self.pos = 0

    def place(self, g, cops):
        self.pos = 1
        return self.moves[0]

    def move(self, g, cops, robber):
        if self.pos >= len(self.moves):
            return robber
        v = self.moves[self.pos]
        self.pos += 1
        if v != robber and not g.has_edge(v, robber):
            raise ValueError(f"scripted move {robber}->{v} is not along an edge")
        return v


def make_robber(name: str, agent: CopAgent, script: list[int] | None = None) -> RobberPolicy:
    if name == "optimal":
        return OptimalRobber(solve_cached(agent.g, agent.budget))
    if name == "greedy":
        return GreedyRobber()
    if name == "scripted":
        return ScriptedRobber(script or [])
    raise ValueError(f"unknown robber policy {name!r}")


# --- records ---------------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class GameRecord:
    header: dict
    plies: list[dict] = field(default_factory=list)
    outcome: dict = field(default_factory=dict)

    @property
    def captured(self) -> bool:
        return self.outcome.get("result") == "capture"

    @property
    def capture_ply(self) -> int | None:
        return self.outcome.get("ply") if self.captured else None

    def robber_script(self) -> list[int]:
        return [p["robber"] for p in self.plies if p["mover"] == "robber"]

    def to_jsonl(self) -> str:
        lines = [_dumps({"type": "header", **self.header})]
        lines += [_dumps({"type": "ply", **p}) for p in self.plies]
        lines.append(_dumps({"type": "outcome", **self.outcome}))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> GameRecord:
        header, plies, outcome = {}, [], {}
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            kind = obj.pop("type")
            if kind == "header":
                header = obj
            elif kind == "ply":
                plies.append(obj)
            elif kind == "outcome":
                outcome = obj
            else:
                raise ValueError(f"unknown record line type {kind!r}")
        return cls(header, plies, outcome)


def simulate(agent: CopAgent, robber: RobberPolicy, turn_cap: int | None = None) -> GameRecord:
    """Play one game.  Plies count cop and robber moves; placements are ply 0."""
    g = agent.g
    cap = default_turn_cap(g) if turn_cap is None else turn_cap
    rec = GameRecord({"graph6": encode_graph6(g), "agent": agent.name, "budget": agent.budget, "robber": robber.name, "turn_cap": cap})

    def log(ply: int, mover: str, st: StrategyState, r: int) -> None:
        rec.plies.append({"ply": ply, "mover": mover, "cops": list(st.cops), "robber": r, "phase": st.phase, "note": st.note})

    try:
        state = agent.place()
    except InvariantViolation as e:
        rec.outcome = {"result": "invariant_violation", "ply": 0, "message": str(e)}
        return rec
    r = robber.place(g, state.cops)
    log(0, "robber", state, r)
    ply = 0
    if r in state.cops:
        rec.outcome = {"result": "capture", "ply": 0}
        return rec
    for _ in range(cap):
        ply += 1
        try:
            state = agent.move(state, r)
        except InvariantViolation as e:
            rec.outcome = {"result": "invariant_violation", "ply": ply, "message": str(e)}
            return rec
        log(ply, "cops", state, r)
        if r in state.cops:
            rec.outcome = {"result": "capture", "ply": ply}
            return rec
        ply += 1
        r = robber.move(g, state.cops, r)
        log(ply, "robber", state, r)
        if r in state.cops:
            rec.outcome = {"result": "capture", "ply": ply}
            return rec
    rec.outcome = {"result": "turn_cap", "ply": ply}
    return rec


def replay(record: GameRecord | str, agent_factory) -> GameRecord:
    """Re-run a record with a scripted robber; ``agent_factory(graph)`` rebuilds the agent."""
    from .graph import parse_graph6

    if isinstance(record, str):
        record = GameRecord.from_jsonl(record)
    g = parse_graph6(record.header["graph6"])
    out = simulate(agent_factory(g), ScriptedRobber(record.robber_script()), record.header["turn_cap"])
    out.header["robber"] = record.header["robber"]
    return out


# --- exhaustive validation -------------------------------------------------

@dataclass
class ValidationResult:
    ok: bool
    explored: int
    witness: GameRecord | None = None
    reason: str = ""


class MemoOverflow(MemoryError):
    pass


def adversarial_validate(agent: CopAgent, turn_cap: int | None = None, max_nodes: int = 5_000_000) -> ValidationResult:
    """Explore every robber placement and reply; the agent passes if every line
    ends in capture within ``turn_cap`` cop turns without an invariant failure.

    Nodes are (state before the cops move, robber); subtrees proven to end in
    capture are memoised by the state's full value.  On failure the robber's
    line is replayed into a GameRecord witness.
    """
    g = agent.g
    cap = default_turn_cap(g) if turn_cap is None else turn_cap
    start = agent.place()
    proven: set[tuple[StrategyState, int]] = set()
    explored = 0

    def fail(line: list[int], reason: str) -> ValidationResult:
        rec = simulate(agent, ScriptedRobber(line), cap)
        return ValidationResult(False, explored, rec, reason)

    def expand(state: StrategyState, r: int):
        """Children of a node, or None when the cops capture this turn."""
        new = agent.move(state, r)
        if r in new.cops:
            return None
        guard = g.closed_of(bits_of(new.cops))
        return [(new, v) for v in sorted([r] + g.nbrs(r)) if not guard >> v & 1]

    for r0 in range(g.n):
        if r0 in start.cops:
            continue
        line = [r0]
        stack: list[tuple[tuple[StrategyState, int], list]] = []
        node = (start, r0)
        while True:
            if node not in proven:
                explored += 1
                if explored > max_nodes:
                    raise MemoOverflow(f"validation explored more than {max_nodes} states")
                if node[0].turn >= cap:
                    return fail(line, "turn cap reached")
                try:
                    kids = expand(*node)
                except InvariantViolation as e:
                    return fail(line, f"invariant violation: {e}")
                if kids:
                    stack.append((node, kids))
                    node = kids.pop(0)
                    line.append(node[1])
                    continue
                proven.add(node)
            # climb until a frame has unexplored children
            while stack and not stack[-1][1]:
                done, _ = stack.pop()
                proven.add(done)
                line.pop()
            if not stack:
                break
            node = stack[-1][1].pop(0)
            line[-1] = node[1]
    return ValidationResult(True, explored)
