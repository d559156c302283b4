"""Command-line front end: ``copsolve <command> ...``.

Graphs come from a positional argument (a file, ``-`` for stdin, or a literal
graph6 string) or from ``--named`` (``petersen``, ``cycle:5``, ...).  Files may
hold one graph6 per line or a single edge list.  Output is JSON unless
``--pretty``.  Exit codes: 0 success, 1 check failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .agents import AGENTS, PreconditionError, make_agent
from .campaigns import CAMPAIGNS, InfeasibleCampaign, run_campaign
from .graph import Graph, GraphError, encode_graph6, parse_edge_list, parse_graph6, parse_named
from .play import GameRecord, RobberPolicy, make_robber, replay, simulate
from .solver import CopNumberExceeded, StateSpaceError, cache_dir_default, cop_number, capture_time
from .subgraphs import freeness_profile
from .substitution import clique_substitution

OK, CHECK_FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def read_graphs(source: str | None, named: str | None) -> list[Graph]:
    if named:
        return [parse_named(named)]
    if source is None:
        raise UsageError("give a graph file, '-', a graph6 string, or --named")
    if source == "-":
        text = sys.stdin.read()
    elif Path(source).exists():
        text = Path(source).read_text()
    else:
        return [parse_graph6(source)]
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if lines and len(lines[0].split()) == 2:
        return [parse_edge_list("\n".join(lines))]
    return [parse_graph6(ln) for ln in lines]


def _emit(obj, pretty: bool) -> None:
    print(json.dumps(obj, indent=2 if pretty else None, sort_keys=True))


def cmd_copnum(args) -> int:
    cache = args.cache_dir or cache_dir_default()
    for g in read_graphs(args.graph, args.named):
        c = cop_number(g, k_max=args.k_max, cache_dir=cache)
        _emit({"graph": encode_graph6(g), "n": g.n, "cop_number": c, "capture_time": capture_time(g, c, cache_dir=cache)}, args.pretty)
    return OK


def cmd_freeness(args) -> int:
    for g in read_graphs(args.graph, args.named):
        prof = json.loads(freeness_profile(g).to_json())
        _emit({"graph": encode_graph6(g), "n": g.n, **prof}, args.pretty)
    return OK


def cmd_cliquesub(args) -> int:
    for g in read_graphs(args.graph, args.named):
        r = clique_substitution(g)
        _emit({"source": encode_graph6(g), **json.loads(r.to_json()), "red_matching_size": len(r.red_edges)}, args.pretty)
    return OK


def cmd_verify(args) -> int:
    report = run_campaign(args.campaign, args.n_max, jobs=args.jobs, turn_cap=args.turn_cap, unsafe=args.unsafe)
    text = report.to_json(pretty=args.pretty)
    if args.out:
        Path(args.out).write_text(text + "\n")
        _emit({"campaign": report.campaign, "summary": report.summary, "report": args.out}, args.pretty)
    else:
        print(text)
    return OK if report.ok else CHECK_FAILED


def _precondition(e: PreconditionError) -> int:
    print(json.dumps({"error": str(e), "pattern": e.pattern_name, "witness": e.witness and sorted(e.witness.values())}), file=sys.stderr)
    return CHECK_FAILED


def cmd_simulate(args) -> int:
    (g,) = read_graphs(args.graph, args.named)[:1]
    try:
        agent = make_agent(args.agent, g)
    except PreconditionError as e:
        return _precondition(e)
    script = [int(x) for x in args.script.split(",")] if args.script else None
    if args.robber == "scripted" and not script:
        raise UsageError("--robber scripted needs --script")
    rec = simulate(agent, make_robber(args.robber, agent, script), args.turn_cap)
    text = rec.to_jsonl()
    if args.record:
        Path(args.record).write_text(text)
    sys.stdout.write(text)
    return OK if rec.captured else CHECK_FAILED


def cmd_replay(args) -> int:
    text = Path(args.record).read_text()
    rec = GameRecord.from_jsonl(text)
    again = replay(rec, AGENTS[rec.header["agent"]])
    same = again.to_jsonl() == text
    _emit({"identical": same, "outcome": again.outcome}, args.pretty)
    return OK if same else CHECK_FAILED


class _TerminalRobber(RobberPolicy):
    """Reads the robber's moves from a stream, one vertex per line."""

    name = "human"

    def __init__(self, stream, out):
        self.stream, self.out = stream, out

    def _ask(self, prompt: str, allowed: list[int]) -> int:
        while True:
            self.out.write(f"{prompt} {allowed}: ")
            self.out.flush()
            line = self.stream.readline()
            if not line:
                return allowed[0]
            try:
                v = int(line.strip())
            except ValueError:
                continue
            if v in allowed:
                return v
            self.out.write(f"{v} is not allowed\n")

    def place(self, g, cops):
        self.out.write(f"cops at {list(cops)}\n")
        return self._ask("place robber", list(range(g.n)))

    def move(self, g, cops, robber):
        self.out.write(f"cops at {list(cops)}, robber at {robber}\n")
        return self._ask("move robber", sorted([robber] + g.nbrs(robber)))


def cmd_play(args) -> int:
    (g,) = read_graphs(args.graph, args.named)[:1]
    try:
        agent = make_agent(args.agent, g)
    except PreconditionError as e:
        return _precondition(e)
    sys.stdout.write(f"graph {encode_graph6(g)}: {g.n} vertices, edges {g.edges()}\n")
    rec = simulate(agent, _TerminalRobber(sys.stdin, sys.stdout), args.turn_cap)
    sys.stdout.write(f"{rec.outcome['result']} at ply {rec.outcome['ply']}\n")
    if args.record:
        Path(args.record).write_text(rec.to_jsonl())
    return OK if rec.captured else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="copsolve", description="Cops and robbers: exact solver, strategies, and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("graph", nargs="?", help="file, '-' for stdin, or a graph6 string")
        sp.add_argument("--named", help="named construction, e.g. petersen or cycle:5")
        sp.add_argument("--pretty", action="store_true")
        return sp

    sp = graph_cmd("copnum", "exact cop number and capture time")
    sp.add_argument("--k-max", type=int, default=4)
    sp.add_argument("--cache-dir", help="solver table cache (default: $COPSOLVE_CACHE)")
    sp.set_defaults(func=cmd_copnum)

    graph_cmd("freeness", "forbidden induced subgraphs and longest induced path").set_defaults(func=cmd_freeness)
    graph_cmd("cliquesub", "clique substitution as graph6 plus metadata").set_defaults(func=cmd_cliquesub)

    sp = sub.add_parser("verify", help="run a verification campaign")
    sp.add_argument("campaign", choices=sorted(CAMPAIGNS))
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--turn-cap", type=int)
    sp.add_argument("--unsafe", action="store_true", help="ignore the campaign's feasibility bound")
    sp.add_argument("--out", help="write the report here instead of stdout")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=cmd_verify)

    for name, func, help in (("simulate", cmd_simulate, "play one game, JSON-lines trace"), ("play", cmd_play, "play the robber at the terminal")):
        sp = graph_cmd(name, help)
        sp.add_argument("--agent", choices=sorted(AGENTS), default="gyarfas")
        sp.add_argument("--turn-cap", type=int)
        sp.add_argument("--record", help="also write the JSON-lines record here")
        if name == "simulate":
            sp.add_argument("--robber", choices=["optimal", "greedy", "scripted"], default="optimal")
            sp.add_argument("--script", help="comma-separated placement then moves")
        sp.set_defaults(func=func)

    sp = sub.add_parser("replay", help="re-run a stored record and compare byte for byte")
    sp.add_argument("record")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, InfeasibleCampaign, ValueError, OSError) as e:
        print(f"copsolve: error: {e}", file=sys.stderr)
        return USAGE
    except (CopNumberExceeded, StateSpaceError) as e:
        print(f"copsolve: {e}", file=sys.stderr)
        return CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
