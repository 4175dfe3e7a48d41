"""Pareto dominance utilities (minimization throughout)."""

from __future__ import annotations

import numpy as np

from .errors import BadReference, DimensionMismatch, Unsupported


def dominates(a, b) -> bool:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def dominance_matrix(vectors) -> np.ndarray:
    """``out[i, j]`` is True iff vector i dominates vector j."""
    f = np.asarray(vectors, dtype=float)
    if f.ndim != 2:
        f = f.reshape(len(f), -1)
    le = np.all(f[:, None, :] <= f[None, :, :], axis=2)
    lt = np.any(f[:, None, :] < f[None, :, :], axis=2)
    return le & lt


def pareto_ranks(vectors) -> list[int]:
    """Non-dominated sorting; rank 0 is the first front."""
    n = len(vectors)
    if n == 0:
        return []
    dom = dominance_matrix(vectors)
    remaining = np.ones(n, dtype=bool)
    ranks = np.zeros(n, dtype=int)
    level = 0
    while remaining.any():
        # members not dominated by any other remaining member
        front = remaining & ~np.any(dom[remaining], axis=0)
        ranks[front] = level
        remaining &= ~front
        level += 1
    return ranks.tolist()


def nondominated_indices(vectors) -> list[int]:
    if len(vectors) == 0:
        return []
    return np.nonzero(~np.any(dominance_matrix(vectors), axis=0))[0].tolist()


def crowding_distance(vectors) -> np.ndarray:
    """NSGA-II crowding distance; boundary points get ``inf``."""
    f = np.asarray(vectors, dtype=float)
    n = len(f)
    if n == 0:
        return np.zeros(0)
    dist = np.zeros(n)
    if n <= 2:
        dist[:] = np.inf
        return dist
    for m in range(f.shape[1]):
        order = np.argsort(f[:, m], kind="stable")
        span = f[order[-1], m] - f[order[0], m]
        dist[order[0]] = dist[order[-1]] = np.inf
        if span <= 0:
            continue
        for k in range(1, n - 1):
            dist[order[k]] += (f[order[k + 1], m] - f[order[k - 1], m]) / span
    return dist


def _check_2d(front, reference_point) -> tuple[np.ndarray, np.ndarray]:
    ref = np.asarray(reference_point, dtype=float)
    pts = np.asarray(front, dtype=float).reshape(-1, len(ref)) if len(front) else np.zeros((0, len(ref)))
    if len(ref) != 2 or (len(pts) and pts.shape[1] != 2):
        raise Unsupported("hypervolume is implemented for two objectives only")
    if len(pts) and np.any(pts > ref):
        raise BadReference("a front point exceeds the reference point")
    return pts, ref


def hypervolume_2d(front, reference_point) -> float:
    """Area dominated by ``front`` and bounded by ``reference_point``.

    Sorted sweep: order by the first objective and add one rectangular strip
    per point, ``(gap to next f1) * (ref2 - f2)``.
    """
    pts, ref = _check_2d(front, reference_point)
    if len(pts) == 0:
        return 0.0
    pts = pts[nondominated_indices(pts)]
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]
    area = 0.0
    for k in range(len(pts)):
        next_f1 = pts[k + 1, 0] if k + 1 < len(pts) else ref[0]
        area += (next_f1 - pts[k, 0]) * (ref[1] - pts[k, 1])
    return float(area)


def exclusive_contributions_2d(front, reference_point) -> np.ndarray:
    """Area each point of a mutually non-dominated 2-D front adds on its own."""
    pts, ref = _check_2d(front, reference_point)
    n = len(pts)
    out = np.zeros(n)
    if n == 0:
        return out
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    for rank, i in enumerate(order):
        right = pts[order[rank + 1], 0] if rank + 1 < n else ref[0]
        upper = pts[order[rank - 1], 1] if rank > 0 else ref[1]
        out[i] = (right - pts[i, 0]) * (upper - pts[i, 1])
    return out
