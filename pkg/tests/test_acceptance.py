"""Acceptance criteria, one test each.

Every test appends a PASS/FAIL line (with timings against the stated limits)
that is printed in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` to get just those lines.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, random_connected, random_graph  # noqa: E402

from copsolve.agents import GyarfasAgent, Theorem12Agent, Theorem15Agent  # noqa: E402
from copsolve.campaigns import run_campaign  # noqa: E402
from copsolve.graph import MAX_ORDER, cycle_graph, encode_graph6, parse_graph6, petersen_graph, robertson_graph  # noqa: E402
from copsolve.play import GameRecord, GreedyRobber, make_robber, replay, simulate  # noqa: E402
from copsolve.solver import apply_operator, cop_number, solve  # noqa: E402
from copsolve.subgraphs import longest_induced_path_order  # noqa: E402
from copsolve.substitution import clique_substitution  # noqa: E402


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def _campaigns(names_and_n) -> tuple[bool, list[str], float]:
    notes, ok, total = [], True, 0.0
    for name, n_max, unsafe in names_and_n:
        with Timer() as t:
            rep = run_campaign(name, n_max, unsafe=unsafe)
        total += t.seconds
        ok &= rep.ok
        extra = sum(r.get("flails_checked", 0) for r in rep.results)
        flails = f", {extra} flails" if name.startswith("lemma3") or name == "lemma51" else ""
        notes.append(f"{name}(n<={n_max}) {rep.summary['passed']}/{rep.summary['total']}{flails}")
    return ok, notes, total


def test_criterion_1_exact_cop_numbers(monkeypatch, tmp_path):
    monkeypatch.delenv("COPSOLVE_CACHE", raising=False)
    results = []
    for name, g, want, limit in (("C4", cycle_graph(4), 2, 1), ("Petersen", petersen_graph(), 3, 10), ("Robertson", robertson_graph(), 4, 1800)):
        with Timer() as t:
            got = cop_number(g, k_max=want + 1, memo=False, cache_dir=tmp_path)
        results.append((name, got == want and t.seconds < limit, f"c({name})={got} in {t.seconds:.2f}s (<{limit}s)"))
    # second query is served from the on-disk table cache
    with Timer() as cached:
        again = cop_number(robertson_graph(), k_max=5, memo=False, cache_dir=tmp_path)
    ok = all(r[1] for r in results) and again == 4
    record(1, ok, "; ".join(r[2] for r in results) + f"; cached Robertson re-query {cached.seconds:.2f}s")
    assert ok


def test_criterion_2_robertson_induced_path():
    with Timer() as t:
        lip = longest_induced_path_order(robertson_graph())
    ok = lip >= 11 and t.seconds < 60
    record(2, ok, f"longest induced path of Robertson = {lip} (>= 11) in {t.seconds:.2f}s (<60s)")
    assert ok


def test_criterion_3_substitution_suite():
    ok, notes, total = _campaigns([("lemma41", 6, False), ("lemma42", 6, False), ("lemma43", 6, False)])
    ok &= total < 300
    record(3, ok, "; ".join(notes) + f"; {total:.1f}s (<300s)")
    assert ok


def test_criterion_4_substitution_keeps_cop_number():
    with Timer() as t:
        rep = run_campaign("lemma44", 6)
    at6 = sum(1 for r in rep.results if parse_graph6(r["graph6"]).n == 6)
    ok = rep.ok and at6 >= 200 and t.seconds < 1200
    record(4, ok, f"c(G) <= c(H): {rep.summary['passed']}/{rep.summary['total']} graphs ({at6} at n=6) in {t.seconds:.1f}s (<1200s)")
    assert ok


@pytest.mark.slow
def test_criterion_5_flail_lemmas():
    # the E-free lemma needs k >= 6, i.e. at least 8 vertices, so n <= 7 is vacuous; n = 8 is added to exercise it
    ok, notes, total = _campaigns([("lemma31", 7, False), ("lemma32", 7, False), ("lemma51", 7, False), ("lemma51", 8, False)])
    ok &= total < 900
    record(5, ok, "; ".join(notes) + f"; {total:.1f}s (<900s)")
    assert ok


def test_criterion_6_strategy_validation():
    ok, notes, total = _campaigns([("sivaraman", 7, False), ("thm12", 7, False), ("thm15", 7, False)])
    ok &= total < 3600
    record(6, ok, "; ".join(notes) + f" (thm12 includes substitutions of n<=5); turn cap 4n^2; {total:.1f}s (<3600s)")
    assert ok


def test_criterion_7_longest_path_bound():
    ok, notes, total = _campaigns([("thm14", 6, False)])
    record(7, ok, "c(G) <= ceil(2p/3)+3: " + "; ".join(notes) + f"; {total:.1f}s")
    assert ok


def test_criterion_8_determinism_and_plumbing(tmp_path):
    rng = random.Random(2024)
    fuzz_bad = 0
    for i in range(10_000):
        n = rng.randint(1, 20) if i % 10 else rng.randint(21, MAX_ORDER)
        g = random_graph(rng, n, rng.random())
        text = encode_graph6(g)
        if parse_graph6(text) != g or encode_graph6(parse_graph6(text)) != text:
            fuzz_bad += 1

    replay_bad, games = 0, 0
    cases = [
        (GyarfasAgent, petersen_graph()),
        (GyarfasAgent, robertson_graph()),
        (Theorem12Agent, clique_substitution(petersen_graph()).h),
        (Theorem12Agent, clique_substitution(cycle_graph(7)).h),
        (Theorem15Agent, cycle_graph(9)),
    ]
    for cls, g in cases:
        agent = cls(g)
        robbers = [GreedyRobber()] + ([make_robber("optimal", agent)] if agent.budget <= 4 else [])
        for robber in robbers:
            path = tmp_path / f"{games}.jsonl"
            path.write_text(simulate(agent, robber).to_jsonl())
            stored = path.read_text()
            games += 1
            if replay(GameRecord.from_jsonl(stored), cls).to_jsonl() != stored:
                replay_bad += 1

    idem_bad = 0
    for _ in range(50):
        g = random_connected(rng, rng.randint(2, 10), rng.choice([0.2, 0.35, 0.6]))
        t = solve(g, rng.randint(1, 3 if g.n <= 8 else 2))
        cop, rob = apply_operator(t)
        if not (np.array_equal(cop, t.cop_val) and np.array_equal(rob, t.rob_val)):
            idem_bad += 1

    ok = fuzz_bad == 0 and replay_bad == 0 and idem_bad == 0
    record(8, ok, f"graph6 fuzz 10000 cases, {fuzz_bad} failures; {games} stored games replayed, {replay_bad} mismatches; fixed point re-applied on 50 tables, {idem_bad} changed")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
