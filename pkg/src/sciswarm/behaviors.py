"""Lab behaviors: what a lab does with its turn.

A behavior is any callable ``(lab, snapshot, rng) -> Action``. It sees only
its own state and an immutable snapshot of the community, which keeps labs
decentralized: there is no channel between labs except the snapshot. The
default behavior is the swarm update; other decision procedures (for
instance one backed by a language model) can be registered under a name
and selected with the ``lab.behavior`` config key.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

from .core import LabState
from .engine import SwarmParams, explore_move, position_update, velocity_update
from .errors import DuplicateName

ACTION_KINDS = ("pso_move", "explore_move", "hold")


@dataclass(frozen=True)
class Snapshot:
    iteration: int
    w: float
    c1: float
    c2: float
    epsilon: float
    params: SwarmParams
    bounds: tuple[float, float]
    swarm_best: np.ndarray | None = None
    archive: tuple[np.ndarray, ...] = ()


@dataclass(frozen=True)
class Action:
    kind: str
    position: np.ndarray
    velocity: np.ndarray


class LabBehavior(Protocol):
    def __call__(self, lab: LabState, snapshot: Snapshot, rng: np.random.Generator) -> Action: ...


def social_target(lab: LabState, snapshot: Snapshot, rng: np.random.Generator) -> np.ndarray:
    """Swarm best, or a uniformly drawn archive member in multi-objective runs."""
    if snapshot.archive:
        return snapshot.archive[int(rng.integers(len(snapshot.archive)))]
    if snapshot.swarm_best is not None:
        return snapshot.swarm_best
    return lab.position


def pso_action(lab: LabState, snapshot: Snapshot, rng: np.random.Generator,
               c1: float | None = None, c2: float | None = None) -> Action:
    target = social_target(lab, snapshot, rng)
    v = velocity_update(
        lab, target, snapshot.w,
        snapshot.c1 if c1 is None else c1,
        snapshot.c2 if c2 is None else c2,
        rng, snapshot.params.v_max,
    )
    x, v = position_update(lab, v, snapshot.bounds)
    return Action("pso_move", x, v)


def default_behavior(lab: LabState, snapshot: Snapshot, rng: np.random.Generator) -> Action:
    # u is drawn for every lab so a lab's stream does not depend on its duty roster
    u = rng.random()
    if lab.explorer or u < snapshot.epsilon:
        x = explore_move(lab, snapshot.params, snapshot.bounds, rng)
        return Action("explore_move", x, np.zeros_like(x))
    return pso_action(lab, snapshot, rng)


def hold_behavior(lab: LabState, snapshot: Snapshot, rng: np.random.Generator) -> Action:
    return Action("hold", lab.position.copy(), np.zeros_like(lab.position))


class BehaviorCatalog:
    def __init__(self, behaviors: dict[str, Callable] | None = None):
        self._behaviors: dict[str, Callable] = dict(behaviors or {})

    def register(self, name: str, behavior: Callable) -> "BehaviorCatalog":
        if name in self._behaviors:
            raise DuplicateName(f"behavior {name!r} already registered")
        self._behaviors[name] = behavior
        return self

    def get(self, name: str) -> Callable:
        return self._behaviors[name]

    def __contains__(self, name: str) -> bool:
        return name in self._behaviors

    def names(self) -> list[str]:
        return sorted(self._behaviors)

    def copy(self) -> "BehaviorCatalog":
        return BehaviorCatalog(self._behaviors)


def register_behavior(catalog: BehaviorCatalog, name: str, behavior: Callable) -> BehaviorCatalog:
    return catalog.register(name, behavior)


CATALOG = BehaviorCatalog({"default": default_behavior, "hold": hold_behavior})
