"""Citation-style voting by a shared pool of reviewer agents, trust
bookkeeping, dominance capping and the per-mode fitness functions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySwarm, InvalidCap, ModeMismatch
from .landscape import Landscape, reference_error
from .pareto import crowding_distance, dominates, pareto_ranks  # noqa: F401  (re-exported)

MODES = ("reference", "votes", "multi_objective")


@dataclass(frozen=True)
class ReviewerPool:
    reviewer_count: int = 20
    vote_budget: int = 2
    conformity_bias: float = 0.0
    noise_amplitude: float = 0.05

    def employers(self, lab_ids: list[int]) -> list[int]:
        """Round-robin reviewer -> employing lab over the living labs."""
        ids = sorted(lab_ids)
        return [ids[r % len(ids)] for r in range(self.reviewer_count)]


@dataclass
class VoteTally:
    iteration: int
    votes: dict[int, int]
    ballots: list[tuple[int, int, list[int]]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.votes.values())

    def shares(self) -> dict[int, float]:
        total = self.total
        if total == 0:
            return {k: 0.0 for k in self.votes}
        return {k: v / total for k, v in self.votes.items()}


def normalize_qualities(raw) -> np.ndarray:
    """Min-max to [0, 1] with 1 the best; a constant input maps to 0.5."""
    q = np.asarray(raw, dtype=float)
    lo, hi = q.min(), q.max()
    if hi == lo:
        return np.full(len(q), 0.5)
    return (q - lo) / (hi - lo)


def trust_shares(trusts) -> np.ndarray:
    t = np.asarray(trusts, dtype=float)
    total = t.sum()
    if total <= 0:
        return np.full(len(t), 1.0 / len(t))
    return t / total


def cast_votes(pool: ReviewerPool, lab_ids: list[int], qualities, trusts, rngs, t: int) -> VoteTally:
    """Each reviewer approves its top ``vote_budget`` labs by perceived score.

    ``qualities`` are already normalized to [0, 1]; ``trusts`` give the
    popularity term. ``rngs[r]`` is reviewer ``r``'s stream; it is consumed
    for one noise draw per living lab even when the noise amplitude is 0.
    """
    if not lab_ids:
        raise EmptySwarm("no labs to review")
    order = np.argsort(lab_ids, kind="stable")
    ids = [int(lab_ids[i]) for i in order]
    q = np.asarray(qualities, dtype=float)[order]
    pop = trust_shares(np.asarray(trusts, dtype=float)[order])
    beta = pool.conformity_bias
    eta = pool.noise_amplitude
    votes = {i: 0 for i in ids}
    ballots = []
    for r, employer in enumerate(pool.employers(ids)):
        noise = rngs[r].uniform(-eta, eta, size=len(ids))
        perceived = (1.0 - beta) * q + beta * pop + noise
        ranked = sorted(range(len(ids)), key=lambda k: (-perceived[k], ids[k]))
        chosen = [ids[k] for k in ranked if ids[k] != employer][: pool.vote_budget]
        for lab in chosen:
            votes[lab] += 1
        ballots.append((r, employer, chosen))
    return VoteTally(t, votes, ballots)


def apply_dominance_cap(trusts, cap: float) -> np.ndarray:
    """Limit every lab's share of total trust to ``cap``.

    Excess trust flows to the uncapped labs in proportion to their pre-cap
    trust (uniformly when they all have none), repeated until nobody is over.
    A single lab is left untouched.
    """
    t = np.asarray(trusts, dtype=float)
    n = len(t)
    if n <= 1:
        return t.copy()
    if cap <= 1.0 / n:
        raise InvalidCap(f"cap {cap} is infeasible for {n} labs")
    total = t.sum()
    if total <= 0 or t.max() <= cap * total:
        return t.copy()
    # water-fill on shares so tiny totals cannot underflow
    share = t / total
    capped = np.zeros(n, dtype=bool)
    out = share.copy()
    while True:
        free = ~capped
        remaining = 1.0 - cap * capped.sum()
        base = share[free].sum()
        if base > 0:
            out[free] = remaining * (share[free] / base)
        else:
            out[free] = remaining / free.sum()
        out[capped] = cap
        over = free & (out > cap)
        if not over.any():
            return out * total
        capped |= over


def settle_trust(trusts: dict[int, float], tally: VoteTally, decay: float,
                 cap: float | None = None) -> dict[int, float]:
    """Decay old trust, add this iteration's votes, then apply the cap.

    The cap is skipped when it is infeasible for the current population
    (``cap <= 1/N``), which includes the single-lab case.
    """
    ids = sorted(tally.votes)
    new = np.array([decay * trusts.get(i, 0.0) + tally.votes[i] for i in ids])
    if cap is not None and cap * len(ids) > 1.0:
        new = apply_dominance_cap(new, cap)
    return {i: float(v) for i, v in zip(ids, new)}


def multi_objective_keys(objectives) -> list[tuple[int, float]]:
    """Higher-is-better sort keys ``(-pareto_rank, crowding)`` within each front."""
    ranks = pareto_ranks(objectives)
    f = np.asarray(objectives, dtype=float)
    crowd = np.zeros(len(f))
    for level in set(ranks):
        members = [i for i, r in enumerate(ranks) if r == level]
        crowd[members] = crowding_distance(f[members])
    return [(-ranks[i], float(crowd[i])) for i in range(len(f))]


def fitness(mode: str, lab_ids: list[int], objectives=None, landscape: Landscape | None = None,
            tally: VoteTally | None = None) -> dict[int, object]:
    """Per-lab quality in the given mode; higher (or lexicographically larger) is better."""
    if mode == "reference":
        if objectives is None or landscape is None:
            raise ModeMismatch("reference fitness needs objective vectors and a landscape")
        return {i: -reference_error(landscape, f) for i, f in zip(lab_ids, objectives)}
    if mode == "votes":
        if tally is None:
            raise ModeMismatch("votes fitness needs a vote tally")
        shares = tally.shares()
        return {i: shares.get(i, 0.0) for i in lab_ids}
    if mode == "multi_objective":
        if objectives is None:
            raise ModeMismatch("multi-objective fitness needs objective vectors")
        return dict(zip(lab_ids, multi_objective_keys(objectives)))
    raise ModeMismatch(f"unknown fitness mode {mode!r}")


def ranking(scores: dict[int, object]) -> list[int]:
    """Lab ids best first; ties go to the lower id."""
    return sorted(sorted(scores), key=lambda i: scores[i], reverse=True)
