"""Budget-driven natural selection: labs that rank well grow, labs that rank
poorly shrink, broke labs are pruned and saturated labs spawn children."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import LabState, SwarmRegistry
from .errors import CapExceeded, ExtinctionEvent


@dataclass(frozen=True)
class LifecycleParams:
    initial_budget: int = 3
    max_budget: int = 6
    selection_fraction: float = 0.25
    population_cap: int = 64
    initial_population: int = 20
    explorer_fraction: float = 0.1
    spawn_scale: float | None = None  # default 0.05 * (hi - lo)

    def resolved(self, width: float) -> "LifecycleParams":
        if self.spawn_scale is not None:
            return self
        return replace(self, spawn_scale=0.05 * width)

    def problems(self) -> list[tuple[str, str]]:
        out = []
        if self.initial_budget < 1:
            out.append(("lifecycle.initial_budget", "must be >= 1"))
        if self.initial_budget > self.max_budget:
            out.append(("lifecycle.max_budget", "must be >= lifecycle.initial_budget"))
        if not 0.0 <= self.selection_fraction <= 0.5:
            out.append(("lifecycle.selection_fraction", "must lie in [0, 0.5]"))
        if self.initial_population < 1:
            out.append(("lifecycle.initial_population", "must be >= 1"))
        if self.initial_population > self.population_cap:
            out.append(("lifecycle.initial_population", "must not exceed lifecycle.population_cap"))
        if not 0.0 <= self.explorer_fraction < 1.0:
            out.append(("lifecycle.explorer_fraction", "must lie in [0, 1)"))
        if self.spawn_scale is not None and self.spawn_scale <= 0:
            out.append(("lifecycle.spawn_scale", "must be positive"))
        return out


@dataclass
class LifecycleReport:
    pruned: list[int] = field(default_factory=list)
    # (parent, child, child position)
    spawned: list[tuple[int, int, np.ndarray]] = field(default_factory=list)
    explorers: list[int] = field(default_factory=list)


def selection_sets(ranking: list[int], fraction: float) -> tuple[list[int], list[int]]:
    k = math.floor(fraction * len(ranking))
    if k == 0:
        return [], []
    return list(ranking[:k]), list(ranking[-k:])


def update_budgets(labs: dict[int, LabState], ranking: list[int], params: LifecycleParams) -> tuple[list[int], list[int]]:
    """Top quantile gains a credit (up to the max), bottom quantile loses one.

    ``ranking`` lists every living lab best first. Returns ``(gainers, losers)``.
    """
    gainers, losers = selection_sets(ranking, params.selection_fraction)
    for i in gainers:
        labs[i].budget = min(params.max_budget, labs[i].budget + 1)
    for i in losers:
        labs[i].budget = max(0, labs[i].budget - 1)
    return gainers, losers


def assign_explorers(lab_ids: list[int], fraction: float, t: int) -> list[int]:
    """Rotating duty: the floor(fraction*N) ids with smallest ``(id + t) mod N``."""
    n = len(lab_ids)
    k = math.floor(fraction * n)
    if k == 0:
        return []
    chosen = sorted(sorted(lab_ids), key=lambda i: (i + t) % n)[:k]
    return sorted(chosen)


def prune_and_spawn(registry: SwarmRegistry, params: LifecycleParams, rng: np.random.Generator,
                    t: int) -> LifecycleReport:
    """Prune broke labs, let saturated labs spawn, then rotate explorer duty.

    Raises ``ExtinctionEvent`` (after pruning) if nobody survives.
    """
    report = LifecycleReport()
    for lab in registry.living():
        if lab.budget == 0:
            registry.remove_lab(lab.lab_id, t)
            report.pruned.append(lab.lab_id)
    if registry.population == 0:
        exc = ExtinctionEvent(f"all labs pruned at iteration {t}")
        exc.report = report
        raise exc

    lo, hi = registry.lo, registry.hi
    for parent in registry.living():
        if parent.budget < params.max_budget:
            continue
        if registry.population >= registry.population_cap:
            break
        offset = rng.normal(0.0, 1.0, size=registry.dimension) * params.spawn_scale
        child_pos = np.clip(parent.position + offset, lo, hi)
        try:
            child = registry.register_lab(child_pos, params.initial_budget, parent=parent.lab_id, born=t)
        except CapExceeded:  # pragma: no cover - guarded above
            break
        parent.budget = params.initial_budget
        report.spawned.append((parent.lab_id, child, child_pos))

    living = sorted(registry.labs)
    report.explorers = assign_explorers(living, params.explorer_fraction, t)
    flagged = set(report.explorers)
    for i in living:
        registry.labs[i].explorer = i in flagged
    return report
