"""Swarm dynamics: coefficient decoding, velocity/position updates,
exploration moves, best tracking and the multi-objective archive."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import CollectiveState, LabState, SwarmBest
from .errors import DimensionMismatch, EmptySwarm
from .pareto import crowding_distance, dominates, exclusive_contributions_2d, hypervolume_2d


@dataclass(frozen=True)
class SwarmParams:
    inertia_min: float = 0.4
    inertia_max: float = 0.9
    coeff_min: float = 0.5
    coeff_max: float = 2.5
    v_max: float | None = None          # default 0.5 * (hi - lo)
    epsilon_start: float = 0.5
    epsilon_end: float = 0.05
    explore_scale: float | None = None  # default 0.1 * (hi - lo)
    archive_capacity: int = 50

    def resolved(self, width: float) -> "SwarmParams":
        return replace(
            self,
            v_max=0.5 * width if self.v_max is None else self.v_max,
            explore_scale=0.1 * width if self.explore_scale is None else self.explore_scale,
        )

    def problems(self) -> list[tuple[str, str]]:
        out = []
        if self.inertia_min > self.inertia_max:
            out.append(("engine.inertia_min", "must not exceed engine.inertia_max"))
        if self.coeff_min > self.coeff_max:
            out.append(("engine.coeff_min", "must not exceed engine.coeff_max"))
        if not 0.0 <= self.epsilon_end <= self.epsilon_start <= 1.0:
            out.append(("engine.epsilon_start", "need 0 <= epsilon_end <= epsilon_start <= 1"))
        if self.v_max is not None and self.v_max <= 0:
            out.append(("engine.v_max", "must be positive"))
        if self.explore_scale is not None and self.explore_scale < 0:
            out.append(("engine.explore_scale", "must be non-negative"))
        if self.archive_capacity < 1:
            out.append(("engine.archive_capacity", "must be >= 1"))
        return out


def consensus_level(state: CollectiveState) -> float:
    """1 - min(1, variance / initial variance); 1 means full agreement."""
    if state.population < 1:
        raise EmptySwarm("no living labs")
    if state.initial_variance <= 0:
        return 1.0 if state.position_variance <= 0 else 0.0
    return 1.0 - min(1.0, state.position_variance / state.initial_variance)


def decode_coefficients(state: CollectiveState, params: SwarmParams, t: int, T: int) -> tuple[float, float, float]:
    """Return ``(w, c1, c2)`` for iteration ``t`` of ``T``.

    Cognitive pull dominates while positions are spread out and hands over
    to social pull as the swarm agrees; inertia decays linearly in time.
    """
    if T < 1 or not 0 <= t <= T:
        raise ValueError(f"need 0 <= t <= T and T >= 1, got t={t}, T={T}")
    kappa = consensus_level(state)
    span = params.coeff_max - params.coeff_min
    c1 = params.coeff_min + span * (1.0 - kappa)
    c2 = params.coeff_min + span * kappa
    w = params.inertia_max - (params.inertia_max - params.inertia_min) * (t / T)
    return w, c1, c2


def exploration_rate(params: SwarmParams, t: int, T: int) -> float:
    if T < 1 or not 0 <= t <= T:
        raise ValueError(f"need 0 <= t <= T and T >= 1, got t={t}, T={T}")
    return params.epsilon_start + (params.epsilon_end - params.epsilon_start) * (t / T)


def velocity_update(lab: LabState, global_best, w: float, c1: float, c2: float, rng,
                    v_max: float = np.inf) -> np.ndarray:
    x = lab.position
    g = np.asarray(global_best, dtype=float)
    if not (x.shape == lab.velocity.shape == lab.pbest_position.shape == g.shape):
        raise DimensionMismatch("position, velocity, personal best and swarm best differ in length")
    r1 = rng.random(x.shape[0])
    r2 = rng.random(x.shape[0])
    v = w * lab.velocity + c1 * r1 * (lab.pbest_position - x) + c2 * r2 * (g - x)
    return np.clip(v, -v_max, v_max)


def position_update(lab: LabState, new_velocity, bounds: tuple[float, float]) -> tuple[np.ndarray, np.ndarray]:
    """Move by ``new_velocity`` with absorbing walls.

    Returns ``(position, velocity)``; any coordinate that hit a wall has its
    velocity zeroed.
    """
    v = np.array(new_velocity, dtype=float)
    if v.shape != lab.position.shape:
        raise DimensionMismatch("velocity length differs from position")
    lo, hi = bounds
    raw = lab.position + v
    x = np.clip(raw, lo, hi)
    v[x != raw] = 0.0
    return x, v


def explore_move(lab: LabState, params: SwarmParams, bounds: tuple[float, float], rng) -> np.ndarray:
    """Gaussian jump around the current claim; the caller resets velocity."""
    delta = rng.normal(0.0, 1.0, size=lab.position.shape[0]) * params.explore_scale
    lo, hi = bounds
    return np.clip(lab.position + delta, lo, hi)


def update_bests(lab: LabState, quality: float, swarm_best: SwarmBest | None,
                 iteration: int) -> tuple[bool, SwarmBest | None]:
    """Scalar (higher is better) personal and swarm best bookkeeping.

    Only strict improvements replace an incumbent. Calling this in ascending
    lab id order within an iteration gives lower ids priority on ties.
    Mutates ``lab``; returns ``(personal_improved, swarm_best)``.
    """
    improved = lab.pbest_quality is None or quality > lab.pbest_quality
    if improved:
        lab.pbest_quality = float(quality)
        lab.pbest_position = lab.position.copy()
        lab.pbest_iteration = iteration
    if swarm_best is None or quality > swarm_best.quality:
        swarm_best = SwarmBest(lab.position.copy(), float(quality), lab.lab_id, iteration)
    return improved, swarm_best


def update_pareto_best(lab: LabState, objectives: np.ndarray, iteration: int) -> bool:
    """Personal best for multi-objective runs: replaced only on dominance."""
    if lab.pbest_objectives is None or dominates(objectives, lab.pbest_objectives):
        lab.pbest_objectives = np.array(objectives, dtype=float)
        lab.pbest_position = lab.position.copy()
        lab.pbest_iteration = iteration
        return True
    return False


@dataclass(frozen=True)
class ArchiveEntry:
    position: np.ndarray
    objectives: np.ndarray
    lab_id: int
    iteration: int


class ParetoArchive:
    """Bounded elitist archive of non-dominated claims.

    With two objectives the member adding the least exclusive hypervolume is
    evicted on overflow, which keeps archive hypervolume non-decreasing under
    one-at-a-time insertion. Otherwise the most crowded member goes.
    """

    def __init__(self, capacity: int = 50, reference_point=None):
        self.capacity = capacity
        self.reference_point = None if reference_point is None else np.asarray(reference_point, dtype=float)
        self.entries: list[ArchiveEntry] = []
        self._hv: float | None = None

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def objectives(self) -> np.ndarray:
        if not self.entries:
            return np.zeros((0, 0))
        return np.array([e.objectives for e in self.entries])

    def insert(self, position, objectives, lab_id: int, iteration: int) -> bool:
        f = np.asarray(objectives, dtype=float)
        if self.entries:
            objs = self.objectives
            if np.any(np.all(objs <= f, axis=1)):  # dominated or duplicated
                return False
            beaten = np.all(f <= objs, axis=1) & np.any(f < objs, axis=1)
            self.entries = [e for e, gone in zip(self.entries, beaten) if not gone]
        self.entries.append(ArchiveEntry(np.array(position, dtype=float), f, lab_id, iteration))
        self._hv = None
        if len(self.entries) > self.capacity:
            self._evict()
        return True

    def _evict(self) -> None:
        objs = self.objectives
        crowd = crowding_distance(objs)
        if objs.shape[1] == 2 and self.reference_point is not None:
            contrib = exclusive_contributions_2d(objs, self.reference_point)
            victim = min(range(len(objs)), key=lambda i: (contrib[i], crowd[i], i))
        else:
            victim = min(range(len(objs)), key=lambda i: (crowd[i], i))
        del self.entries[victim]

    def hypervolume(self) -> float:
        if not self.entries:
            return 0.0
        if self._hv is None:
            self._hv = hypervolume_2d(self.objectives, self.reference_point)
        return self._hv

    def positions(self) -> list[np.ndarray]:
        return [e.position for e in self.entries]
