"""Verification campaigns over enumerated graph populations.

Each campaign maps a per-graph check over a deterministic population and
collects the outcomes into a :class:`CampaignReport`.  Work fans out to a
process pool when ``jobs > 1``; results are reassembled in population order so
reports are identical across runs and job counts.
"""

from __future__ import annotations

import json
import math
import random
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .agents import AGENTS, PreconditionError
from .graph import Graph, encode_graph6, enumerate_connected_graphs, parse_graph6
from .play import adversarial_validate
from .solver import cop_number, is_k_cop_win
from .subgraphs import (
    enumerate_flails,
    check_flail_lemma,
    forbidden_witness,
    freeness_profile,
    lemma_applies,
    longest_path_order,
)
from .substitution import (
    clique_substitution,
    contract_red_edges,
    red_matching_is_perfect,
    verify_neighborhood_lemma,
    verify_substitution_freeness,
)


class InfeasibleCampaign(ValueError):
    pass


@dataclass(frozen=True)
class CampaignSpec:
    name: str
    description: str
    n_max_bound: int
    check: Callable[[str, dict], dict]
    population: Callable[[int], list[tuple[str, dict]]]


@dataclass
class CampaignReport:
    campaign: str
    population: dict
    results: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.summary.get("failed", 0) == 0

    def to_json(self, pretty: bool = False) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2 if pretty else None)

    def finalize(self) -> CampaignReport:
        passed = sum(r["ok"] for r in self.results)
        self.summary = {"total": len(self.results), "passed": passed, "failed": len(self.results) - passed}
        self.failures = [r for r in self.results if not r["ok"]]
        return self


# --- populations -----------------------------------------------------------

def _connected(n_max: int, n_min: int = 1, where: Callable[[Graph], bool] | None = None) -> list[tuple[str, dict]]:
    out = []
    for n in range(n_min, n_max + 1):
        for g in enumerate_connected_graphs(n):
            if where is None or where(g):
                out.append((encode_graph6(g), {}))
    return out


def _free_of(*names: str) -> Callable[[Graph], bool]:
    return lambda g: all(forbidden_witness(g, x) is None for x in names)


def lemma44_population(n_max: int, seed: int = 44, per_class: int = 2) -> list[tuple[str, dict]]:
    """All connected iso classes up to min(n_max, 5); at n = 6 every class plus
    seeded random relabelings, ``per_class`` labeled graphs per class."""
    pop = _connected(min(n_max, 5), n_min=1)
    rng = random.Random(seed)
    for n in range(6, n_max + 1):
        for g in enumerate_connected_graphs(n):
            pop.append((encode_graph6(g), {}))
            for _ in range(per_class - 1):
                perm = list(range(n))
                rng.shuffle(perm)
                pop.append((encode_graph6(g.relabel(perm)), {"relabeled": True}))
    return pop


def _agent_population(agent: str, names: tuple[str, ...], substitutions_upto: int = 0):
    def build(n_max: int) -> list[tuple[str, dict]]:
        pop = [(g6, {"agent": agent}) for g6, _ in _connected(n_max, where=_free_of(*names) if names else None)]
        for n in range(2, min(substitutions_upto, n_max) + 1):
            for g in enumerate_connected_graphs(n):
                pop.append((encode_graph6(clique_substitution(g).h), {"agent": agent, "source": encode_graph6(g)}))
        return pop

    return build


# --- per-graph checks ------------------------------------------------------

def _flail_check(lemma: str) -> Callable[[str, dict], dict]:
    def check(g6: str, meta: dict) -> dict:
        g = parse_graph6(g6)
        checked, bad = 0, None
        for k in range(3, g.n - 1):
            for t in range(1, g.n - k):
                for spec in enumerate_flails(g, k, t):
                    if not lemma_applies(spec, lemma):
                        continue
                    checked += 1
                    if not check_flail_lemma(spec, lemma):
                        bad = {"path": list(spec.path), "pendants": list(spec.pendants), "S": sorted(spec.S)}
                        break
                if bad:
                    break
            if bad:
                break
        return {"ok": bad is None, "flails_checked": checked, **({"counterexample": bad} if bad else {})}

    return check


def _lemma41(g6: str, meta: dict) -> dict:
    g = parse_graph6(g6)
    if g.n < 2:
        return {"ok": True, "skipped": "single vertex"}
    r = clique_substitution(g)
    fr = verify_substitution_freeness(r, p=0)
    checks = {
        "neighbourhood": verify_neighborhood_lemma(r),
        "red_perfect_matching": red_matching_is_perfect(r),
        "contraction_recovers_source": contract_red_edges(r) == g,
        "claw_free": fr["claw_free"],
        "butterfly_free": fr["butterfly_free"],
    }
    return {"ok": all(checks.values()), "h": encode_graph6(r.h), **checks}


def _lemma42(g6: str, meta: dict) -> dict:
    g = parse_graph6(g6)
    if g.n < 2:
        return {"ok": True, "skipped": "single vertex"}
    r = clique_substitution(g)
    checks = {x: forbidden_witness(r.h, x) is None for x in ("c4", "c5")}
    return {"ok": all(checks.values()), "h": encode_graph6(r.h), **{f"{x}_free": v for x, v in checks.items()}}


def _lemma43(g6: str, meta: dict) -> dict:
    g = parse_graph6(g6)
    if g.n < 2:
        return {"ok": True, "skipped": "single vertex"}
    r = clique_substitution(g)
    p = longest_path_order(g)
    lip = freeness_profile(r.h).longest_induced_path_order
    return {"ok": lip <= 2 * p, "longest_path_order": p, "h_induced_path_order": lip}


def _lemma44(g6: str, meta: dict) -> dict:
    g = parse_graph6(g6)
    c = cop_number(g, k_max=g.n)
    if g.n < 2 or c == 1:
        return {"ok": True, "cop_number": c}
    h = clique_substitution(g).h
    # c(H) >= c(G) iff H is not (c(G)-1)-cop-win
    below = is_k_cop_win(h, c - 1)
    return {"ok": not below, "cop_number": c, "h_n": h.n, f"h_{c - 1}_cop_win": below}


def _thm14(g6: str, meta: dict) -> dict:
    g = parse_graph6(g6)
    p = longest_path_order(g)
    bound = math.ceil(2 * p / 3) + 3
    c = cop_number(g, k_max=g.n)
    return {"ok": c <= bound, "cop_number": c, "longest_path_order": p, "bound": bound}


def _agent_check(g6: str, meta: dict) -> dict:
    g = parse_graph6(g6)
    try:
        agent = AGENTS[meta["agent"]](g)
    except PreconditionError as e:
        return {"ok": False, "precondition": str(e)}
    res = adversarial_validate(agent, meta.get("turn_cap"))
    out = {"ok": res.ok, "budget": agent.budget, "explored": res.explored}
    if "source" in meta:
        out["source"] = meta["source"]
    if not res.ok:
        out["reason"] = res.reason
        out["witness"] = res.witness.to_jsonl()
    return out


CAMPAIGNS: dict[str, CampaignSpec] = {
    "lemma31": CampaignSpec("lemma31", "flail conclusion on claw-free graphs", 7, _flail_check("claw"), lambda n: _connected(n, where=_free_of("claw"))),
    "lemma32": CampaignSpec(
        "lemma32", "flail conclusion on (claw, butterfly)-free graphs", 7, _flail_check("claw_butterfly"), lambda n: _connected(n, where=_free_of("claw", "butterfly"))
    ),
    "lemma51": CampaignSpec("lemma51", "flail conclusion on E-free graphs", 8, _flail_check("e_free"), lambda n: _connected(n, where=_free_of("e"))),
    "lemma41": CampaignSpec("lemma41", "substitution neighbourhoods, red matching, contraction", 7, _lemma41, _connected),
    "lemma42": CampaignSpec("lemma42", "substitutions are (C4, C5)-free", 7, _lemma42, _connected),
    "lemma43": CampaignSpec("lemma43", "induced paths of a substitution vs longest path of the source", 7, _lemma43, _connected),
    "lemma44": CampaignSpec("lemma44", "cop number does not drop under substitution", 6, _lemma44, lemma44_population),
    "thm12": CampaignSpec(
        "thm12", "claw/butterfly/C4/C5-free agent captures every robber", 8, _agent_check, _agent_population("theorem12", ("claw", "butterfly", "c4", "c5"), substitutions_upto=5)
    ),
    "thm14": CampaignSpec("thm14", "cop number vs longest path bound", 7, _thm14, _connected),
    "thm15": CampaignSpec("thm15", "E-free agent captures every robber", 8, _agent_check, _agent_population("theorem15", ("e",))),
    "sivaraman": CampaignSpec("sivaraman", "induced-path agent with k-2 cops captures every robber", 8, _agent_check, _agent_population("gyarfas", ())),
}


def _run_one(args: tuple[str, str, dict]) -> dict:
    name, g6, meta = args
    return {"graph6": g6, **{k: v for k, v in meta.items() if k != "turn_cap"}, **CAMPAIGNS[name].check(g6, meta)}


def run_campaign(name: str, n_max: int, jobs: int = 1, turn_cap: int | None = None, unsafe: bool = False) -> CampaignReport:
    if name not in CAMPAIGNS:
        raise ValueError(f"unknown campaign {name!r}; choose from {sorted(CAMPAIGNS)}")
    spec = CAMPAIGNS[name]
    if n_max > spec.n_max_bound and not unsafe:
        raise InfeasibleCampaign(f"{name}: n_max={n_max} exceeds feasibility bound {spec.n_max_bound} (use --unsafe)")
    pop = spec.population(n_max)
    tasks = []
    for g6, meta in pop:
        if turn_cap is not None:
            meta = {**meta, "turn_cap": turn_cap}
        tasks.append((name, g6, meta))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=8))
    else:
        results = [_run_one(t) for t in tasks]
    population = {"n_max": n_max, "filter": spec.description, "count": len(pop)}
    return CampaignReport(name, population, results).finalize()
