"""Rebuild a run's final population, budgets and trust from ``events.jsonl``.

The replay never re-runs the swarm. It re-derives trust from the logged vote
tallies and budgets from the logged rankings, using only the resolved
configuration echoed in the first ``init`` event, and checks each derived
value against what the run logged. Structural audits (barrier order,
pruning and spawning causality, vote conservation, self-vote ban) are
collected along the way.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .lifecycle import selection_sets
from .review import settle_trust, VoteTally

BARRIER_RANK = {
    "init": 0,
    "move": 1,
    "explore": 1,
    "vote_tally": 2,
    "trust_update": 3,
    "best_update": 4,
    "budget_update": 5,
    "prune": 6,
    "spawn": 7,
    "extinction": 8,
    "summary": 9,
}


class ReplayMismatch(Exception):
    pass


@dataclass
class ReplayResult:
    population: set[int] = field(default_factory=set)
    budgets: dict[int, int] = field(default_factory=dict)
    trust: dict[int, float] = field(default_factory=dict)
    lineage: dict[int, int] = field(default_factory=dict)
    status: str | None = None
    iterations: int = 0
    births: int = 0
    deaths: int = 0
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def read_events(path: str | Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _ids(mapping: dict) -> dict[int, object]:
    return {int(k): v for k, v in mapping.items()}


def replay(events: Iterable[dict]) -> ReplayResult:
    events = list(events)
    if not events or events[0]["kind"] != "init" or events[0]["lab"] is not None:
        raise ReplayMismatch("log does not start with the configuration event")
    cfg = events[0]["payload"]["config"]
    decay = cfg["review.decay"]
    cap = cfg["review.cap"] if cfg["review.cap_enabled"] else None
    reviewers, budget_per_reviewer = cfg["review.reviewers"], cfg["review.vote_budget"]
    q = cfg["lifecycle.selection_fraction"]
    b_init, b_max = cfg["lifecycle.initial_budget"], cfg["lifecycle.max_budget"]
    n_max = cfg["lifecycle.population_cap"]

    res = ReplayResult()
    last_key = (-1, -1)

    def problem(msg: str) -> None:
        res.problems.append(msg)

    for ev in events[1:]:
        t, kind, lab, p = ev["iteration"], ev["kind"], ev["lab"], ev["payload"]
        key = (t, BARRIER_RANK[kind])
        if key < last_key:
            problem(f"iteration {t}: {kind} out of barrier order")
        last_key = key
        res.iterations = max(res.iterations, t)

        if kind == "init":
            res.population.add(lab)
            res.budgets[lab] = p["budget"]
            res.trust[lab] = 0.0
            res.lineage[lab] = lab
        elif kind == "vote_tally":
            votes = _ids(p["votes"])
            if set(votes) != res.population:
                problem(f"iteration {t}: tally covers {sorted(votes)} not the living labs")
            total = sum(votes.values())
            if len(res.population) >= budget_per_reviewer + 1 and total != reviewers * budget_per_reviewer:
                problem(f"iteration {t}: {total} votes cast, expected {reviewers * budget_per_reviewer}")
            for ballot in p["ballots"]:
                if ballot["employer"] in ballot["voted"]:
                    problem(f"iteration {t}: reviewer {ballot['reviewer']} voted for its employer")
            tally = VoteTally(t, votes)
            res.trust = settle_trust(res.trust, tally, decay, cap)
        elif kind == "trust_update":
            logged = _ids(p["trust"])
            if logged != res.trust:
                problem(f"iteration {t}: replayed trust differs from logged trust")
        elif kind == "budget_update":
            order = p["ranking"]
            if set(order) != res.population:
                problem(f"iteration {t}: ranking does not cover the living labs")
            gainers, losers = selection_sets(order, q)
            for i in gainers:
                res.budgets[i] = min(b_max, res.budgets[i] + 1)
            for i in losers:
                res.budgets[i] = max(0, res.budgets[i] - 1)
            if _ids(p["budgets"]) != {i: res.budgets[i] for i in order}:
                problem(f"iteration {t}: replayed budgets differ from logged budgets")
        elif kind == "prune":
            if res.budgets.get(lab) != 0:
                problem(f"iteration {t}: lab {lab} pruned with budget {res.budgets.get(lab)}")
            res.population.discard(lab)
            res.budgets.pop(lab, None)
            res.trust.pop(lab, None)
            res.deaths += 1
        elif kind == "spawn":
            parent = p["parent"]
            if res.budgets.get(parent) != b_max:
                problem(f"iteration {t}: parent {parent} spawned at budget {res.budgets.get(parent)}")
            if lab in res.lineage:
                problem(f"iteration {t}: lab id {lab} reused")
            res.budgets[parent] = b_init
            res.population.add(lab)
            res.budgets[lab] = p["budget"]
            res.trust[lab] = 0.0
            res.lineage[lab] = res.lineage[parent]
            res.births += 1
            if len(res.population) > n_max:
                problem(f"iteration {t}: population {len(res.population)} above cap")
        elif kind == "summary":
            res.status = p["status"]
            if _ids(p["budgets"]) != res.budgets:
                problem("final budgets differ from the run summary")
            if _ids(p["trust"]) != res.trust:
                problem("final trust differs from the run summary")
            if p["final_population"] != len(res.population):
                problem("final population differs from the run summary")
    return res


def explore_frequencies(events: Iterable[dict]) -> dict[int, tuple[int, int]]:
    """Per iteration: (explore actions, all actions) over labs not on explorer duty."""
    counts: dict[int, list[int]] = defaultdict(lambda: [0, 0])
    for ev in events:
        if ev["kind"] in ("move", "explore") and not ev["payload"]["explorer"]:
            c = counts[ev["iteration"]]
            c[1] += 1
            if ev["kind"] == "explore":
                c[0] += 1
    return {t: (c[0], c[1]) for t, c in sorted(counts.items())}


def lineage_fitness(events: Iterable[dict]) -> tuple[list[float], list[float]]:
    """Mean fitness percentile (1 = best) per founding lineage, split by fate.

    Returns ``(surviving, extinct)`` lists with one value per lineage.
    Percentiles come from the rankings in ``budget_update`` events.
    """
    lineage: dict[int, int] = {}
    scores: dict[int, list[float]] = defaultdict(list)
    alive: set[int] = set()
    for ev in events:
        kind, lab, p = ev["kind"], ev["lab"], ev["payload"]
        if kind == "init" and lab is not None:
            lineage[lab] = lab
            alive.add(lab)
        elif kind == "spawn":
            lineage[lab] = lineage[p["parent"]]
            alive.add(lab)
        elif kind == "prune":
            alive.discard(lab)
        elif kind == "budget_update":
            order = p["ranking"]
            n = len(order)
            if n < 2:
                continue
            for pos, i in enumerate(order):
                scores[lineage[i]].append(1.0 - pos / (n - 1))
    surviving_lineages = {lineage[i] for i in alive}
    surviving, extinct = [], []
    for root, vals in sorted(scores.items()):
        mean = sum(vals) / len(vals)
        (surviving if root in surviving_lineages else extinct).append(mean)
    return surviving, extinct
