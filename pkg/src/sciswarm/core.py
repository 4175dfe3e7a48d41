"""Domain types and the swarm registry.

The registry is the public record of every lab: what it currently claims,
the evidence it has accumulated, and how much the community trusts it.
Claims live directly in the numeric claim space (identity embedding); the
``embed`` hook is where a text embedder would be plugged in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import CapExceeded, DimensionMismatch, EmptySwarm, OutOfBounds, UnknownLab

LabId = int


def identity_embedding(claim) -> np.ndarray:
    return np.asarray(claim, dtype=float)


@dataclass
class LabState:
    lab_id: LabId
    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    budget: int
    pbest_quality: float | None = None
    pbest_objectives: np.ndarray | None = None
    pbest_iteration: int = 0
    trust: float = 0.0
    explorer: bool = False
    lineage: LabId = -1
    parent: LabId | None = None
    born: int = 0
    objectives: np.ndarray | None = None

    def __post_init__(self):
        if self.lineage < 0:
            self.lineage = self.lab_id


@dataclass
class RegistryRecord:
    lab_id: LabId
    claim: np.ndarray
    evidence: list[dict[str, Any]] = field(default_factory=list)
    trust: float = 0.0
    alive: bool = True
    died: int | None = None


@dataclass(frozen=True)
class SwarmBest:
    position: np.ndarray
    quality: float
    lab_id: LabId
    iteration: int


@dataclass(frozen=True)
class CollectiveState:
    iteration: int
    position_variance: float
    initial_variance: float
    trust_concentration: float
    population: int
    global_best: SwarmBest | None = None


def position_variance(positions) -> float:
    """Mean squared Euclidean distance to the centroid."""
    pts = np.asarray(positions, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if len(pts) == 0:
        raise EmptySwarm("no positions")
    centroid = pts.mean(axis=0)
    return float(np.mean(np.sum((pts - centroid) ** 2, axis=1)))


def trust_concentration(trusts) -> float:
    t = np.asarray(trusts, dtype=float)
    if len(t) == 0:
        raise EmptySwarm("no labs")
    total = t.sum()
    if total <= 0:
        return 1.0 / len(t)
    return float(t.max() / total)


class SwarmRegistry:
    """Single-writer store of living labs and all (living or dead) records."""

    def __init__(self, dimension: int, bounds: tuple[float, float], population_cap: int,
                 embed: Callable[[Any], np.ndarray] = identity_embedding):
        self.dimension = dimension
        self.lo, self.hi = bounds
        self.population_cap = population_cap
        self.embed = embed
        self.labs: dict[LabId, LabState] = {}
        self.records: dict[LabId, RegistryRecord] = {}
        self._next_id = 0

    @property
    def population(self) -> int:
        return len(self.labs)

    def living(self) -> list[LabState]:
        """Living labs in ascending id order."""
        return [self.labs[i] for i in sorted(self.labs)]

    def _check_position(self, pos: np.ndarray) -> None:
        if pos.shape != (self.dimension,):
            raise DimensionMismatch(f"expected length {self.dimension}, got {pos.shape}")
        if np.any(pos < self.lo) or np.any(pos > self.hi):
            raise OutOfBounds(f"position outside [{self.lo}, {self.hi}]")

    def register_lab(self, initial_position, initial_budget: int, *, parent: LabId | None = None,
                     born: int = 0) -> LabId:
        if self.population + 1 > self.population_cap:
            raise CapExceeded(f"population cap {self.population_cap} reached")
        pos = self.embed(initial_position).copy()
        self._check_position(pos)
        lab_id = self._next_id
        self._next_id += 1
        lineage = self.labs[parent].lineage if parent is not None and parent in self.labs else lab_id
        self.labs[lab_id] = LabState(
            lab_id=lab_id,
            position=pos,
            velocity=np.zeros(self.dimension),
            pbest_position=pos.copy(),
            budget=int(initial_budget),
            lineage=lineage,
            parent=parent,
            born=born,
        )
        self.records[lab_id] = RegistryRecord(lab_id=lab_id, claim=pos.copy())
        return lab_id

    def record_claim(self, lab_id: LabId, claim, evidence_entry: dict[str, Any] | None = None) -> None:
        rec = self._living_record(lab_id)
        pos = self.embed(claim).copy()
        self._check_position(pos)
        rec.claim = pos
        if evidence_entry is not None:
            self.add_evidence(lab_id, evidence_entry)

    def add_evidence(self, lab_id: LabId, entry: dict[str, Any]) -> None:
        rec = self._living_record(lab_id)
        if rec.evidence and entry["iteration"] < rec.evidence[-1]["iteration"]:
            raise ValueError("evidence must be appended in iteration order")
        rec.evidence.append(dict(entry))

    def remove_lab(self, lab_id: LabId, iteration: int) -> LabState:
        rec = self._living_record(lab_id)
        lab = self.labs.pop(lab_id)
        rec.trust = lab.trust
        rec.alive = False
        rec.died = iteration
        return lab

    def sync_trust(self) -> None:
        for lab in self.labs.values():
            self.records[lab.lab_id].trust = lab.trust

    def _living_record(self, lab_id: LabId) -> RegistryRecord:
        rec = self.records.get(lab_id)
        if rec is None or not rec.alive:
            raise UnknownLab(f"lab {lab_id} is not alive")
        return rec


def collective_state(labs: list[LabState], t: int, initial_variance: float,
                     global_best: SwarmBest | None = None) -> CollectiveState:
    if not labs:
        raise EmptySwarm("no living labs")
    return CollectiveState(
        iteration=t,
        position_variance=position_variance([lab.position for lab in labs]),
        initial_variance=initial_variance,
        trust_concentration=trust_concentration([lab.trust for lab in labs]),
        population=len(labs),
        global_best=global_best,
    )
