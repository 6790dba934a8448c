"""The four optimisation criteria and the weighted objective.

For a bijective permutation of k = 2b + n jobs:

* S - number of interrupted job pairs: pairs whose two ends sit more than
  one position apart, so one end waits in storage.
* M - peak storage load: the largest number of pairs that are "open" at any
  single position (one end plugged strictly before it, the other strictly
  after).
* L - longest storage residence, in jobs: max over pairs of (gap between the
  two ends) - 1.
* N - number of violated soft atomic precedences.

The weighted objective k^3*S + k^2*M + k*L + N separates the criteria into
non-overlapping value bands whenever N < k, so minimising it optimises
(S, M, L, N) lexicographically. All arithmetic is exact: Python integers do
not overflow, which covers the k <= 1000 operating range and beyond.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import Instance, Permutation


@dataclass(frozen=True)
class CostBreakdown:
    S: int
    M: int
    L: int
    N: int
    objective: int


def objective(S: int, M: int, L: int, N: int, k: int) -> int:
    """k^3*S + k^2*M + k*L + N, exactly."""
    if min(S, M, L, N) < 0:
        raise ValueError("criteria must be non-negative")
    if k < 0:
        raise ValueError("k must be non-negative")
    return k ** 3 * S + k ** 2 * M + k * L + N


def _s_from_pos(inst: Instance, pos: Sequence[int]) -> int:
    b = inst.b
    if b == 0:
        return 0
    count = 0
    for i in range(1, b + 1):
        if abs(pos[i] - pos[i + b]) > 1:
            count += 1
    return count


def _m_from_pos(inst: Instance, pos: Sequence[int]) -> int:
    # Sweep over positions with a difference array: pair (lo, hi) holds one
    # end in storage at every position strictly between lo and hi. The max
    # over positions equals the max over jobs of the defining count, because
    # positions and jobs are in bijection.
    b = inst.b
    if b == 0:
        return 0
    k = inst.k
    diff = [0] * (k + 2)
    for i in range(1, b + 1):
        lo, hi = pos[i], pos[i + b]
        if lo > hi:
            lo, hi = hi, lo
        if hi - lo > 1:
            diff[lo + 1] += 1
            diff[hi] -= 1
    peak = 0
    load = 0
    for x in range(1, k + 1):
        load += diff[x]
        if load > peak:
            peak = load
    return peak


def _l_from_pos(inst: Instance, pos: Sequence[int]) -> int:
    b = inst.b
    if b == 0:
        return 0
    return max(abs(pos[i] - pos[i + b]) - 1 for i in range(1, b + 1))


def _n_from_pos(inst: Instance, pos: Sequence[int]) -> int:
    count = 0
    for i, j in inst.soft_atomic:
        if pos[i] > pos[j]:
            count += 1
    return count


def cost_s(inst: Instance, perm: Permutation) -> int:
    return _s_from_pos(inst, perm._pos)


def cost_m(inst: Instance, perm: Permutation) -> int:
    return _m_from_pos(inst, perm._pos)


def cost_l(inst: Instance, perm: Permutation) -> int:
    return _l_from_pos(inst, perm._pos)


def cost_n(inst: Instance, perm: Permutation) -> int:
    return _n_from_pos(inst, perm._pos)


def breakdown(inst: Instance, perm: Permutation) -> CostBreakdown:
    """All four criteria plus the weighted objective."""
    pos = perm._pos
    s = _s_from_pos(inst, pos)
    m = _m_from_pos(inst, pos)
    l = _l_from_pos(inst, pos)
    n = _n_from_pos(inst, pos)
    return CostBreakdown(s, m, l, n, objective(s, m, l, n, inst.k))


def edge_cost_s(inst: Instance, perm: Permutation) -> int:
    """S recomputed as a sum of tour edge costs.

    The edge leaving position x costs 1 exactly when the job at x is a
    two-sided end whose partner is neither already plugged nor plugged at
    x + 1; each interrupted pair contributes that cost once, at its earlier
    end, so the sum equals ``cost_s`` on every bijection.
    """
    tour = perm.tour
    pos = perm._pos
    b = inst.b
    two_sided = 2 * b
    total = 0
    for x in range(1, inst.k):  # the final position has no outgoing edge
        u = tour[x - 1]
        if u <= two_sided:
            p = pos[u + b if u <= b else u - b]
            if p > x + 1:
                total += 1
    return total
