"""Synthetic objective landscapes with hidden ground truth.

All objectives are minimized. ``sphere`` and ``rastrigin`` are single
objective with a known optimum of 0 at the origin; ``two_wells`` has two
competing wells at (-1, 0, ...) and (+1, 0, ...) and no single ideal point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoReference, OutOfBounds, UnknownLandscape

LANDSCAPES = ("sphere", "rastrigin", "two_wells")


@dataclass(frozen=True)
class Landscape:
    name: str
    dimension: int
    bounds: tuple[float, float]
    objective_count: int
    optimum: tuple[float, ...] | None = None

    @property
    def width(self) -> float:
        return self.bounds[1] - self.bounds[0]

    def without_reference(self) -> "Landscape":
        return Landscape(self.name, self.dimension, self.bounds, self.objective_count, None)

    def worst_point(self) -> np.ndarray:
        """Componentwise maximum of each objective over the box (two_wells only)."""
        if self.name != "two_wells":
            raise NotImplementedError(self.name)
        lo, hi = self.bounds
        a, b = _wells(self.dimension)
        worst = []
        for centre in (a, b):
            worst.append(float(np.sum(np.maximum((lo - centre) ** 2, (hi - centre) ** 2))))
        return np.array(worst)


def _wells(dimension: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.zeros(dimension)
    b = np.zeros(dimension)
    a[0], b[0] = -1.0, 1.0
    return a, b


def make_landscape(name: str, dimension: int) -> Landscape:
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    if name == "sphere" or name == "rastrigin":
        return Landscape(name, dimension, (-5.12, 5.12), 1, (0.0,))
    if name == "two_wells":
        return Landscape(name, dimension, (-3.0, 3.0), 2, None)
    raise UnknownLandscape(name)


def evaluate(landscape: Landscape, position) -> np.ndarray:
    x = np.asarray(position, dtype=float)
    if x.shape != (landscape.dimension,):
        raise DimensionMismatch(f"expected length {landscape.dimension}, got {x.shape}")
    lo, hi = landscape.bounds
    if np.any(x < lo) or np.any(x > hi):
        raise OutOfBounds(f"{x} outside [{lo}, {hi}]")
    if landscape.name == "sphere":
        return np.array([float(np.sum(x * x))])
    if landscape.name == "rastrigin":
        d = landscape.dimension
        return np.array([float(10.0 * d + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))])
    a, b = _wells(landscape.dimension)
    return np.array([float(np.sum((x - a) ** 2)), float(np.sum((x - b) ** 2))])


def reference_error(landscape: Landscape, objective_vector) -> float:
    """Euclidean distance from an objective vector to the known optimum."""
    if landscape.optimum is None:
        raise NoReference(f"{landscape.name} has no reference solution in this configuration")
    f = np.asarray(objective_vector, dtype=float)
    opt = np.asarray(landscape.optimum, dtype=float)
    if f.shape != opt.shape:
        raise DimensionMismatch("objective vector length differs from optimum")
    return float(np.linalg.norm(f - opt))
