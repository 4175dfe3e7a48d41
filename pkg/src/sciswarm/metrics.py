"""Emergent-behavior measurements over iteration snapshots."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import position_variance
from .errors import EmptySwarm
from .pareto import hypervolume_2d  # noqa: F401  (public here as well)

CSV_COLUMNS = (
    "iteration",
    "population",
    "consensus_variance",
    "mean_pairwise_distance",
    "camp_count",
    "best_quality",
    "vote_truth_rho",
    "hypervolume",
    "births",
    "deaths",
)


@dataclass
class IterationMetrics:
    iteration: int
    population: int
    consensus_variance: float
    mean_pairwise_distance: float
    camp_count: int
    best_quality: float | None
    vote_truth_rho: float | None
    hypervolume: float | None
    births: int
    deaths: int
    camp_assignment: dict[int, int] = field(default_factory=dict)

    def row(self) -> list[str]:
        return [_cell(getattr(self, c)) for c in CSV_COLUMNS]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _as_array(positions) -> np.ndarray:
    pts = np.asarray(positions, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def consensus_variance(positions) -> float:
    if len(positions) == 0:
        raise EmptySwarm("no positions")
    return position_variance(positions)


def _distances(pts: np.ndarray) -> np.ndarray:
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def mean_pairwise_distance(positions) -> float:
    pts = _as_array(positions)
    n = len(pts)
    if n < 2:
        return 0.0
    iu = np.triu_indices(n, k=1)
    return float(_distances(pts)[iu].mean())


def default_link_threshold(explore_scale: float, dimension: int) -> float:
    return 0.5 * explore_scale * math.sqrt(dimension)


def detect_camps(positions, link_threshold: float) -> dict[int, int]:
    """Single-linkage camps: connected components of the ``<= threshold`` graph.

    ``positions`` is either a mapping lab id -> position or a sequence (ids
    are then the indices). Camps are numbered 0, 1, ... in order of the
    smallest lab id each contains.
    """
    if link_threshold <= 0:
        raise ValueError("link_threshold must be positive")
    if isinstance(positions, Mapping):
        ids = sorted(positions)
        pts = _as_array([positions[i] for i in ids]) if ids else np.zeros((0, 1))
    else:
        ids = list(range(len(positions)))
        pts = _as_array(positions) if ids else np.zeros((0, 1))
    n = len(ids)
    if n == 0:
        return {}
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    linked = _distances(pts) <= link_threshold
    for a in range(n):
        for b in np.nonzero(linked[a, a + 1:])[0] + a + 1:
            ra, rb = find(a), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    camp_of_root: dict[int, int] = {}
    out = {}
    for k in range(n):  # ids ascending, so first sighting is the smallest member
        root = find(k)
        if root not in camp_of_root:
            camp_of_root[root] = len(camp_of_root)
        out[ids[k]] = camp_of_root[root]
    return out


def camp_count(assignment: dict[int, int]) -> int:
    return len(set(assignment.values()))


def average_ranks(values) -> np.ndarray:
    """1-based ranks; tied values share the mean of their positions."""
    v = np.asarray(values, dtype=float)
    order = np.argsort(v, kind="stable")
    ranks = np.empty(len(v))
    k = 0
    while k < len(v):
        j = k
        while j + 1 < len(v) and v[order[j + 1]] == v[order[k]]:
            j += 1
        ranks[order[k:j + 1]] = (k + j) / 2.0 + 1.0
        k = j + 1
    return ranks


def rank_correlation(a, b) -> float | None:
    """Spearman's rho as ``1 - 6 sum d^2 / (N (N^2 - 1))``.

    Returns ``None`` when undefined (fewer than two labs or a constant list).
    """
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if len(x) != len(y):
        raise ValueError("lists differ in length")
    n = len(x)
    if n < 2 or np.all(x == x[0]) or np.all(y == y[0]):
        return None
    d = average_ranks(x) - average_ranks(y)
    return float(1.0 - 6.0 * np.sum(d * d) / (n * (n * n - 1)))
