"""Experiment orchestration.

One run is an initial publication round (iteration 0) followed by
iterations 1..T, each executed in a fixed barrier order:

1. collective state -> decoded coefficients and exploration rate
2. every lab acts (explore or swarm move), its claim is evaluated and
   recorded in the registry
3. votes mode only: reviewers vote, trust decays/accumulates, cap applied
4. fitness and personal/swarm best updates (archive in multi-objective runs)
5. budgets, pruning, spawning, explorer rotation
6. metrics row; the iteration's events are flushed

Labs act on the snapshot taken at step 1, so influence from this
iteration's discoveries reaches other labs at the next iteration.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .behaviors import CATALOG, Action, BehaviorCatalog, Snapshot
from .config import RunConfig, load_config
from .core import LabState, SwarmBest, SwarmRegistry, collective_state, position_variance
from .engine import ParetoArchive, decode_coefficients, exploration_rate, update_bests, update_pareto_best
from .errors import ExtinctionEvent
from .landscape import evaluate, reference_error
from .lifecycle import assign_explorers, prune_and_spawn, update_budgets
from .metrics import (
    CSV_COLUMNS,
    IterationMetrics,
    camp_count,
    consensus_variance,
    detect_camps,
    mean_pairwise_distance,
    rank_correlation,
)
from .review import ReviewerPool, cast_votes, fitness, normalize_qualities, ranking, settle_trust
from .rng import StreamBank

log = logging.getLogger(__name__)

EVENT_KINDS = ("init", "move", "explore", "vote_tally", "trust_update", "budget_update",
               "prune", "spawn", "best_update", "extinction", "summary")

ACTION_EVENT = {"pso_move": "move", "hold": "move", "explore_move": "explore"}


def _plain(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return [float(v) for v in value.tolist()]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def encode_event(iteration: int, kind: str, lab: int | None, payload: dict[str, Any]) -> str:
    """One event as a single-line JSON object with sorted keys."""
    if kind not in EVENT_KINDS:
        raise ValueError(f"unknown event kind {kind!r}")
    record = {"iteration": iteration, "kind": kind, "lab": lab, "payload": _plain(payload)}
    return json.dumps(record, sort_keys=True, separators=(",", ":"), allow_nan=False)


class EventLog:
    """Append-only JSON-lines log, buffered until the iteration barrier."""

    def __init__(self, path: Path | None = None):
        self.path = path
        self.lines: list[str] = []
        self._pending: list[str] = []
        self._fh = open(path, "w", encoding="utf-8", newline="\n") if path is not None else None

    def write_event(self, iteration: int, kind: str, lab: int | None = None, **payload) -> None:
        self._pending.append(encode_event(iteration, kind, lab, payload))

    def flush(self) -> None:
        if self._fh is not None and self._pending:
            self._fh.write("".join(line + "\n" for line in self._pending))
            self._fh.flush()
        self.lines.extend(self._pending)
        self._pending.clear()

    def close(self) -> None:
        self.flush()
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


@dataclass
class RunSummary:
    status: str
    iterations_completed: int
    final_best_quality: float | None
    best_hidden_error: float | None
    final_population: int
    total_births: int
    total_deaths: int
    final_camp_count: int
    final_hypervolume: float | None
    budgets: dict[int, int] = field(default_factory=dict)
    trust: dict[int, float] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(_plain(asdict(self)), sort_keys=True, indent=2) + "\n"


class Simulation:
    """A single seeded run. ``run()`` may be called once."""

    def __init__(self, config: RunConfig, out_dir: str | Path | None = None,
                 catalog: BehaviorCatalog = CATALOG):
        self.config = config
        self.landscape = config.make_landscape()
        self.bounds = self.landscape.bounds
        self.T = config.iterations
        self.params = config.engine
        self.life = config.lifecycle
        self.streams = StreamBank(config.seed)
        self.registry = SwarmRegistry(config.dim, self.bounds, self.life.population_cap)
        self.behavior = catalog.get(config.behavior)
        self.pool = ReviewerPool(config.review.reviewers, config.review.vote_budget,
                                 config.review.beta, config.review.noise)
        self.cap = config.review.cap if config.review.cap_enabled else None
        self.mode = config.mode
        self.swarm_best: SwarmBest | None = None
        self.archive: ParetoArchive | None = None
        if self.mode == "multi_objective":
            self.archive = ParetoArchive(self.params.archive_capacity, self.landscape.worst_point())
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.initial_variance = 0.0
        self.metrics: list[IterationMetrics] = []
        self.tallies: list = []
        self.total_births = 0
        self.total_deaths = 0
        self.status = "pending"
        self.t = 0
        self._scores: dict[int, Any] = {}
        self._tally = None
        self._rho: float | None = None

    # --- helpers -------------------------------------------------------

    @property
    def labs(self) -> dict[int, LabState]:
        return self.registry.labs

    def hidden_error(self, position) -> float | None:
        if self.landscape.optimum is None:
            return None
        return reference_error(self.landscape, evaluate(self.landscape, position))

    def _snapshot(self, t: int) -> Snapshot:
        living = self.registry.living()
        gbest = self.swarm_best
        state = collective_state(living, t, self.initial_variance, gbest)
        w, c1, c2 = decode_coefficients(state, self.params, t, self.T)
        eps = exploration_rate(self.params, t, self.T)
        archive = tuple(p.copy() for p in self.archive.positions()) if self.archive is not None else ()
        return Snapshot(
            iteration=t, w=w, c1=c1, c2=c2, epsilon=eps, params=self.params, bounds=self.bounds,
            swarm_best=None if gbest is None else gbest.position.copy(), archive=archive,
        )

    def _initial_pbest(self, lab: LabState) -> None:
        if self.mode == "reference":
            lab.pbest_quality = -reference_error(self.landscape, evaluate(self.landscape, lab.position))
        elif self.mode == "multi_objective":
            lab.pbest_objectives = evaluate(self.landscape, lab.position)
        lab.pbest_iteration = lab.born

    # --- barrier stages ----------------------------------------------

    def _act(self, t: int, snapshot: Snapshot) -> None:
        for lab in self.registry.living():
            action: Action = self.behavior(lab, snapshot, self.streams.lab(lab.lab_id))
            lab.position = np.array(action.position, dtype=float)
            lab.velocity = np.array(action.velocity, dtype=float)
            self.events.write_event(
                t, ACTION_EVENT[action.kind], lab.lab_id,
                action=action.kind, explorer=lab.explorer,
                position=lab.position, velocity=lab.velocity,
            )

    def _publish(self, t: int) -> None:
        for lab in self.registry.living():
            lab.objectives = evaluate(self.landscape, lab.position)
            self.registry.record_claim(lab.lab_id, lab.position,
                                       {"iteration": t, "kind": "objectives", "value": lab.objectives.tolist()})

    def _review(self, t: int) -> None:
        living = self.registry.living()
        ids = [lab.lab_id for lab in living]
        raw = [-float(np.sum(lab.objectives)) for lab in living]
        tally = cast_votes(
            self.pool, ids, normalize_qualities(raw), [lab.trust for lab in living],
            [self.streams.reviewer(r) for r in range(self.pool.reviewer_count)], t,
        )
        self.events.write_event(
            t, "vote_tally", None, votes=tally.votes,
            ballots=[{"reviewer": r, "employer": e, "voted": v} for r, e, v in tally.ballots],
        )
        trust = settle_trust({lab.lab_id: lab.trust for lab in living}, tally,
                             self.config.review.decay, self.cap)
        for lab in living:
            lab.trust = trust[lab.lab_id]
        shares = tally.shares()
        for lab in living:
            self.registry.add_evidence(lab.lab_id, {"iteration": t, "kind": "vote_share",
                                                    "value": shares[lab.lab_id]})
        self.events.write_event(t, "trust_update", None, trust=trust,
                                capped=self.cap is not None and self.cap * len(living) > 1.0)
        self._tally = tally
        self.tallies.append(tally)
        if self.landscape.optimum is not None:
            # diagnostic only: reviewers never see the reference
            truth = [-reference_error(self.landscape, lab.objectives) for lab in living]
            self._rho = rank_correlation([shares[i] for i in ids], truth)

    def _score_and_track(self, t: int) -> None:
        living = self.registry.living()
        ids = [lab.lab_id for lab in living]
        objs = [lab.objectives for lab in living]
        self._scores = fitness(self.mode, ids, objs, self.landscape, self._tally)
        if self.mode == "multi_objective":
            for lab in living:
                if update_pareto_best(lab, lab.objectives, t):
                    self.events.write_event(t, "best_update", lab.lab_id, scope="personal",
                                            objectives=lab.objectives, position=lab.position)
            changed = False
            for lab in living:
                changed |= self.archive.insert(lab.position, lab.objectives, lab.lab_id, t)
            if changed:
                self.events.write_event(t, "best_update", None, scope="archive", size=len(self.archive),
                                        hypervolume=self.archive.hypervolume())
            return
        if self.mode == "votes":
            # vote shares are relative to this round's competition, so the
            # community's best claim is the most-cited claim of this round
            self.swarm_best = None
        previous = self.swarm_best
        for lab in living:
            improved, self.swarm_best = update_bests(lab, self._scores[lab.lab_id], self.swarm_best, t)
            if improved:
                self.events.write_event(t, "best_update", lab.lab_id, scope="personal",
                                        quality=lab.pbest_quality, position=lab.pbest_position)
        if self.swarm_best is not previous:
            self.events.write_event(t, "best_update", self.swarm_best.lab_id, scope="swarm",
                                    quality=self.swarm_best.quality, position=self.swarm_best.position)

    def _select(self, t: int) -> tuple[int, int]:
        order = ranking(self._scores)
        gainers, losers = update_budgets(self.labs, order, self.life)
        self.events.write_event(t, "budget_update", None, ranking=order, gainers=gainers, losers=losers,
                                budgets={i: self.labs[i].budget for i in order})
        try:
            report = prune_and_spawn(self.registry, self.life, self.streams.get("lifecycle"), t)
        except ExtinctionEvent as exc:
            for lab_id in exc.report.pruned:
                self.events.write_event(t, "prune", lab_id, budget=0)
            self.total_deaths += len(exc.report.pruned)
            raise
        for lab_id in report.pruned:
            self.events.write_event(t, "prune", lab_id, budget=0)
        for parent, child, pos in report.spawned:
            lab = self.labs[child]
            self._initial_pbest(lab)
            self.events.write_event(t, "spawn", child, parent=parent, lineage=lab.lineage,
                                    position=pos, budget=lab.budget)
        self.total_deaths += len(report.pruned)
        self.total_births += len(report.spawned)
        return len(report.spawned), len(report.pruned)

    def _measure(self, t: int, births: int, deaths: int) -> IterationMetrics:
        living = self.registry.living()
        positions = {lab.lab_id: lab.position for lab in living}
        camps = detect_camps(positions, self.config.link_threshold)
        rho = self._rho
        best = None if self.swarm_best is None else self.swarm_best.quality
        hv = self.archive.hypervolume() if self.archive is not None else None
        row = IterationMetrics(
            iteration=t,
            population=len(living),
            consensus_variance=consensus_variance(list(positions.values())),
            mean_pairwise_distance=mean_pairwise_distance(list(positions.values())),
            camp_count=camp_count(camps),
            best_quality=best,
            vote_truth_rho=rho,
            hypervolume=hv,
            births=births,
            deaths=deaths,
            camp_assignment=camps,
        )
        self.metrics.append(row)
        return row

    def _barrier(self) -> None:
        self.registry.sync_trust()
        self.events.flush()

    # --- driver ----------------------------------------------------------

    def _initialize(self) -> None:
        self.events.write_event(0, "init", None, config=self.config.to_flat(with_output=False))
        rng = self.streams.get("init")
        lo, hi = self.bounds
        for _ in range(self.life.initial_population):
            pos = lo + (hi - lo) * rng.random(self.config.dim)
            lab_id = self.registry.register_lab(pos, self.life.initial_budget)
            self.events.write_event(0, "init", lab_id, position=pos, budget=self.life.initial_budget)
        flagged = set(assign_explorers(sorted(self.labs), self.life.explorer_fraction, 0))
        for lab in self.labs.values():
            lab.explorer = lab.lab_id in flagged
        self.initial_variance = position_variance([lab.position for lab in self.registry.living()])
        self._publish(0)
        if self.mode == "votes":
            self._review(0)
        self._score_and_track(0)
        self._measure(0, 0, 0)
        self._barrier()

    def _step(self, t: int) -> None:
        snapshot = self._snapshot(t)
        self._act(t, snapshot)
        self._publish(t)
        if self.mode == "votes":
            self._review(t)
        self._score_and_track(t)
        births, deaths = self._select(t)
        self._measure(t, births, deaths)
        self._barrier()

    def run(self) -> RunSummary:
        if self.status != "pending":
            raise RuntimeError("a Simulation runs only once")
        if self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        self.events = EventLog(self.out_dir / "events.jsonl" if self.out_dir is not None else None)
        self.status = "running"
        try:
            self._initialize()
            for t in range(1, self.T + 1):
                self.t = t
                self._step(t)
            self.status = "completed"
        except ExtinctionEvent as exc:
            log.warning("run ended early: %s", exc)
            self.status = "extinct"
            self.events.write_event(self.t, "extinction", None, message=str(exc))
        summary = self.summary()
        self.events.write_event(self.t, "summary", None, **asdict(summary))
        self.events.close()
        if self.out_dir is not None:
            (self.out_dir / "metrics.csv").write_text(self.metrics_csv(), encoding="utf-8")
            (self.out_dir / "summary.json").write_text(summary.to_json(), encoding="utf-8")
        return summary

    def summary(self) -> RunSummary:
        last = self.metrics[-1] if self.metrics else None
        best = self.swarm_best
        return RunSummary(
            status=self.status,
            iterations_completed=self.t,
            final_best_quality=None if best is None else best.quality,
            best_hidden_error=None if best is None else self.hidden_error(best.position),
            final_population=self.registry.population,
            total_births=self.total_births,
            total_deaths=self.total_deaths,
            final_camp_count=0 if self.status == "extinct" or last is None else last.camp_count,
            final_hypervolume=None if self.archive is None else self.archive.hypervolume(),
            budgets={lab.lab_id: lab.budget for lab in self.registry.living()},
            trust={lab.lab_id: lab.trust for lab in self.registry.living()},
        )

    def metrics_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.metrics:
            writer.writerow(row.row())
        return buf.getvalue()


def run(config: RunConfig | str | dict, out_dir: str | Path | None = None,
        catalog: BehaviorCatalog = CATALOG) -> RunSummary:
    if not isinstance(config, RunConfig):
        config = load_config(config, catalog)
    return Simulation(config, out_dir, catalog).run()
