"""Seeded random stress test for the cop strategies.

Draws random connected graphs, keeps the ones meeting an agent's
preconditions, and validates the agent against every robber.  Prints the
first failure as a replayable game record.

    python scripts/stress_agents.py --agent theorem15 --seconds 120 --seed 1
"""

import argparse
import collections
import random
import time

from copsolve.agents import AGENTS, PreconditionError
from copsolve.graph import Graph, encode_graph6, is_connected
from copsolve.play import adversarial_validate
from copsolve.substitution import clique_substitution


def draw(rng, agent, n_lo, n_hi):
    n = rng.randint(n_lo, n_hi)
    p = rng.choice([0.2, 0.3, 0.45, 0.6])
    g = Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])
    if agent == "theorem12" and is_connected(g):
        # claw-free inputs are rare at random; substitution produces them
        g = clique_substitution(g).h
        if g.n > 60:
            return None
    return g if is_connected(g) else None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--agent", choices=sorted(AGENTS), default="theorem15")
    ap.add_argument("--seconds", type=float, default=60)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--n-min", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=12)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    budgets = collections.Counter()
    t0 = time.perf_counter()
    while time.perf_counter() - t0 < args.seconds:
        g = draw(rng, args.agent, args.n_min, args.n_max)
        if g is None:
            continue
        try:
            agent = AGENTS[args.agent](g)
        except PreconditionError:
            continue
        budgets[agent.budget] += 1
        res = adversarial_validate(agent)
        if not res.ok:
            print("FAIL", encode_graph6(g), res.reason)
            if res.witness is not None:
                print(res.witness.to_jsonl())
            raise SystemExit(1)
    print(f"{sum(budgets.values())} graphs validated, budgets {sorted(budgets.items())}")


if __name__ == "__main__":
    main()
