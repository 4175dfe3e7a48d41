"""Independent reference computations used to freeze expected values.

Nothing here imports sciswarm; everything is plain Python so the checks do
not share code paths with the implementation they verify.
"""

import math
import random


def brute_dominates(a, b):
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def brute_pareto_ranks(vectors):
    """Peel fronts with an O(N^2) pairwise scan per front."""
    remaining = set(range(len(vectors)))
    ranks = [None] * len(vectors)
    level = 0
    while remaining:
        front = [i for i in remaining
                 if not any(brute_dominates(vectors[j], vectors[i]) for j in remaining if j != i)]
        for i in front:
            ranks[i] = level
        remaining -= set(front)
        level += 1
    return ranks


def grid_hypervolume(front, ref, resolution=1000):
    """Fraction of grid cell centres dominated by the front, times box area."""
    if not front:
        return 0.0
    lo1 = min(p[0] for p in front)
    lo2 = min(p[1] for p in front)
    w = (ref[0] - lo1) / resolution
    h = (ref[1] - lo2) / resolution
    # for each column, the lowest f2 among points with f1 <= x covers [that f2, ref2]
    pts = sorted(front)
    hits = 0
    for i in range(resolution):
        x = lo1 + (i + 0.5) * w
        best_f2 = min((p[1] for p in pts if p[0] <= x), default=None)
        if best_f2 is None:
            continue
        # count centres y with best_f2 <= y
        k = math.floor((ref[1] - best_f2) / h + 0.5)
        hits += max(0, min(resolution, k))
    return hits * w * h


def definition_ranks(values):
    """Average 1-based ranks by counting smaller and equal elements."""
    out = []
    for v in values:
        less = sum(1 for u in values if u < v)
        equal = sum(1 for u in values if u == v)
        out.append(less + (equal + 1) / 2)
    return out


def spearman_by_definition(a, b):
    n = len(a)
    ra, rb = definition_ranks(a), definition_ranks(b)
    s = 0.0
    for x, y in zip(ra, rb):
        s += (x - y) ** 2
    return 1 - 6 * s / (n * (n * n - 1))


def pso_velocity(x, v, p, g, w, c1, c2, r1, r2, v_max):
    out = []
    for j in range(len(x)):
        vj = w * v[j] + c1 * r1[j] * (p[j] - x[j]) + c2 * r2[j] * (g[j] - x[j])
        out.append(max(-v_max, min(v_max, vj)))
    return out


def absorbing_step(x, v, lo, hi):
    pos, vel = [], []
    for xj, vj in zip(x, v):
        raw = xj + vj
        c = max(lo, min(hi, raw))
        pos.append(c)
        vel.append(vj if c == raw else 0.0)
    return pos, vel


def centroid_variance(points):
    n = len(points)
    d = len(points[0])
    c = [sum(p[j] for p in points) / n for j in range(d)]
    return sum(sum((p[j] - c[j]) ** 2 for j in range(d)) for p in points) / n


def mean_pairwise(points):
    n = len(points)
    if n < 2:
        return 0.0
    total, pairs = 0.0, 0
    for i in range(n):
        for j in range(i + 1, n):
            total += math.dist(points[i], points[j])
            pairs += 1
    return total / pairs


def bfs_components(points, threshold):
    """Connected components of the <= threshold graph, as sorted id lists."""
    n = len(points)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in range(n):
                if not seen[b] and math.dist(points[a], points[b]) <= threshold:
                    seen[b] = True
                    stack.append(b)
        comps.append(sorted(comp))
    return sorted(comps)


def plain_pso_sphere(dim=10, n=20, iters=200, seed=42):
    """Textbook global-best PSO (constant w=0.729, c1=c2=1.49445) on the sphere.

    Returns (initial best error, final best error). Used to check that the
    "< 1 % of initial error" threshold is a reasonable bar for this budget.
    """
    rng = random.Random(seed)
    lo, hi = -5.12, 5.12
    f = lambda x: sum(c * c for c in x)
    xs = [[rng.uniform(lo, hi) for _ in range(dim)] for _ in range(n)]
    vs = [[0.0] * dim for _ in range(n)]
    pb = [list(x) for x in xs]
    pf = [f(x) for x in xs]
    gi = min(range(n), key=lambda i: pf[i])
    g, gf = list(pb[gi]), pf[gi]
    initial = gf
    vmax = 0.5 * (hi - lo)
    for _ in range(iters):
        for i in range(n):
            for j in range(dim):
                v = (0.729 * vs[i][j] + 1.49445 * rng.random() * (pb[i][j] - xs[i][j])
                     + 1.49445 * rng.random() * (g[j] - xs[i][j]))
                vs[i][j] = max(-vmax, min(vmax, v))
                xs[i][j] = max(lo, min(hi, xs[i][j] + vs[i][j]))
            fx = f(xs[i])
            if fx < pf[i]:
                pf[i], pb[i] = fx, list(xs[i])
                if fx < gf:
                    gf, g = fx, list(xs[i])
    return initial, gf
