import json

import pytest

from copsolve.campaigns import CAMPAIGNS, InfeasibleCampaign, lemma44_population, run_campaign
from copsolve.graph import parse_graph6


@pytest.mark.parametrize("name", sorted(CAMPAIGNS))
def test_every_campaign_passes_at_small_n(name):
    report = run_campaign(name, 5)
    assert report.ok, report.failures[:1]
    assert report.summary["total"] == report.summary["passed"] + report.summary["failed"] == len(report.results)


def test_reports_are_deterministic_and_job_independent():
    a = run_campaign("thm15", 5).to_json()
    b = run_campaign("thm15", 5).to_json()
    c = run_campaign("thm15", 5, jobs=2).to_json()
    assert a == b == c
    assert json.loads(a)["campaign"] == "thm15"


def test_feasibility_bound():
    with pytest.raises(InfeasibleCampaign):
        run_campaign("lemma44", 7)
    with pytest.raises(ValueError):
        run_campaign("nosuch", 3)


def test_lemma44_population_is_seeded():
    pop = lemma44_population(6)
    assert pop == lemma44_population(6)
    assert sum(1 for g6, _ in pop if parse_graph6(g6).n == 6) >= 200


def test_failures_carry_witnesses(monkeypatch):
    # break the E-free agent's budget so some games escape, and check the report explains why
    from copsolve import agents

    class Starved(agents.Theorem15Agent):
        def __init__(self, g):
            super().__init__(g)
            self.budget = 1

        def place(self):
            return agents.StrategyState((0,), "idle")

        def strategy_move(self, state, robber):
            return state

    monkeypatch.setitem(agents.AGENTS, "theorem15", Starved)
    report = run_campaign("thm15", 4)
    assert not report.ok
    bad = report.failures[0]
    assert "witness" in bad and bad["witness"].startswith('{"agent"')
    assert report.summary["failed"] == len(report.failures)
