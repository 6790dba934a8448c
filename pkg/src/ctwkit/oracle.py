"""Exhaustive ground truth for small inputs.

``enumerate_solutions`` walks every permutation of an instance's jobs,
counts the valid ones and reports the exact optimum together with *all*
optimal permutations. ``brute_mas`` solves maximum acyclic subgraph exactly
by trying every vertex ordering. Both refuse inputs beyond a small size
guard; they exist to certify other components, not to scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .costs import _m_from_pos, objective
from .digraph import DiGraph
from .model import Instance, Permutation

DEFAULT_LIMIT_K = 10
DEFAULT_LIMIT_V = 10


@dataclass(frozen=True)
class OracleResult:
    valid_count: int
    enumerated: int
    optimal_objective: int | None
    optimal_solutions: tuple[Permutation, ...]


def enumerate_solutions(inst: Instance, limit_k: int = DEFAULT_LIMIT_K) -> OracleResult:
    """Exact census and optimum by enumerating all k! permutations.

    Permutations are visited in lexicographic tour order, so the reported
    optimal set is deterministic. Raises ValueError when k exceeds the
    guard.
    """
    k = inst.k
    if k > limit_k:
        raise ValueError(
            f"instance has k={k} jobs; exhaustive enumeration is limited to k<={limit_k}"
        )
    b = inst.b
    atomic = inst.atomic
    disjunctive = inst.disjunctive
    soft = inst.soft_atomic
    ds = tuple((i, i + b if i <= b else i - b) for i in inst.direct_successors)
    pairs = tuple((i, i + b) for i in range(1, b + 1))

    pos = [0] * (k + 1)
    enumerated = 0
    valid_count = 0
    best: int | None = None
    best_tours: list[tuple[int, ...]] = []

    for tour in itertools.permutations(range(1, k + 1)):
        enumerated += 1
        for x, job in enumerate(tour, start=1):
            pos[job] = x

        ok = True
        for i, j in atomic:
            if pos[i] >= pos[j]:
                ok = False
                break
        if ok:
            for a1, b1, a2, b2 in disjunctive:
                if pos[a1] >= pos[b1] and pos[a2] >= pos[b2]:
                    ok = False
                    break
        if ok:
            for i, j in ds:
                pj = pos[j]
                pi = pos[i]
                if pj != pi + 1 and pj >= pi:
                    ok = False
                    break
        if not ok:
            continue
        valid_count += 1

        s = 0
        l = 0
        for i, j in pairs:
            gap = pos[i] - pos[j]
            if gap < 0:
                gap = -gap
            if gap > 1:
                s += 1
            if gap - 1 > l:
                l = gap - 1
        m = _m_from_pos(inst, pos) if b else 0
        n = 0
        for i, j in soft:
            if pos[i] > pos[j]:
                n += 1
        obj = objective(s, m, l, n, k)
        if best is None or obj < best:
            best = obj
            best_tours = [tour]
        elif obj == best:
            best_tours.append(tour)

    return OracleResult(
        valid_count=valid_count,
        enumerated=enumerated,
        optimal_objective=best,
        optimal_solutions=tuple(Permutation(t) for t in best_tours),
    )


def brute_mas(g: DiGraph, limit_v: int = DEFAULT_LIMIT_V) -> int:
    """Maximum number of edges of ``g`` that fit an acyclic subgraph.

    Every maximal acyclic edge set is consistent with some linear order of
    the vertices, so trying all n! orders and counting forward edges is
    exact (and far smaller than trying all edge subsets).
    """
    n = g.vertex_count
    if n > limit_v:
        raise ValueError(f"graph has {n} vertices; brute force is limited to {limit_v}")
    edges = tuple(g.edges)
    if not edges:
        return 0
    total = len(edges)
    best = 0
    pos = [0] * (n + 1)
    for order in itertools.permutations(range(1, n + 1)):
        for x, v in enumerate(order):
            pos[v] = x
        kept = 0
        for u, v in edges:
            if pos[u] < pos[v]:
                kept += 1
        if kept > best:
            best = kept
            if best == total:
                break
    return best
