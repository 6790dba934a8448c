"""Seeded random instance generator.

Satisfiable instances are built around a hidden planted permutation: hard
constraints are only sampled when the plant satisfies them, so at least one
valid solution exists by construction. Soft constraints skip that filter on
purpose -- violated soft precedences are what make the cost side of the
problem hard. Unsatisfiable instances additionally inject a directed cycle
into the hard atomic set, which the precheck (and any exhaustive method)
must recognise.

All sampling is count-based: a density p over a domain of size D yields
round(p * D) distinct draws, taken through an index bijection so that
generation stays O(sample size) even for k in the tens of thousands.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .model import Instance, Permutation


class GenMode(Enum):
    SATISFIABLE = "satisfiable"
    UNSATISFIABLE = "unsatisfiable"
    DS_ONLY = "ds-only"
    ATOMIC_ONLY = "atomic-only"


@dataclass(frozen=True)
class GenParams:
    """Knobs for one generated instance.

    Densities are fractions of the respective sampling domains: unordered
    job pairs for atomic/soft constraints, (pair, third job) combinations
    for disjunctive ones. ``ds_count`` asks for that many constrained cable
    ends; in SATISFIABLE mode fewer may be emitted when the plant leaves
    fewer consistent choices. ATOMIC_ONLY requires b = 0.
    """

    b: int = 0
    n: int = 0
    p_atomic: float = 0.15
    p_soft: float = 0.05
    p_disjunctive: float = 0.10
    ds_count: int = 0
    seed: int = 0
    mode: GenMode = GenMode.SATISFIABLE

    def __post_init__(self):
        if self.b < 0 or self.n < 0:
            raise ValueError("b and n must be non-negative")
        for name in ("p_atomic", "p_soft", "p_disjunctive"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")
        if self.ds_count < 0 or self.ds_count > 2 * self.b:
            raise ValueError(f"ds_count must lie in 0..2b = 0..{2 * self.b}")
        if self.mode is GenMode.ATOMIC_ONLY and self.b != 0:
            raise ValueError("ATOMIC_ONLY requires b = 0")
        if self.mode is GenMode.UNSATISFIABLE and self.b * 2 + self.n < 2:
            raise ValueError("UNSATISFIABLE needs at least two jobs for a cycle")

    @property
    def k(self) -> int:
        return 2 * self.b + self.n


def _pair_from_index(idx: int, k: int) -> tuple[int, int]:
    # Bijection from 0..k(k-1)/2-1 onto unordered pairs (u, v), u < v.
    u = 1
    span = k - 1
    while idx >= span:
        idx -= span
        u += 1
        span -= 1
    return (u, u + 1 + idx)


def generate_planted(params: GenParams) -> tuple[Instance, Permutation | None]:
    """Generate an instance together with its planted solution.

    The plant is a valid solution for SATISFIABLE, ATOMIC_ONLY and DS_ONLY
    modes and None for UNSATISFIABLE. Deterministic per seed.
    """
    rng = random.Random(params.seed)
    k, b = params.k, params.b
    mode = params.mode

    jobs = list(range(1, k + 1))
    if mode is GenMode.DS_ONLY:
        tour = []
        for i in range(1, b + 1):
            tour.extend((i, i + b))
        tour.extend(range(2 * b + 1, k + 1))
        plant = Permutation(tuple(tour))
    else:
        shuffled = jobs[:]
        rng.shuffle(shuffled)
        plant = Permutation(tuple(shuffled))
    pos = plant._pos

    atomic: list[tuple[int, int]] = []
    soft: list[tuple[int, int]] = []
    disjunctive: list[tuple[int, int, int, int]] = []
    ds: list[int] = []

    if mode is not GenMode.DS_ONLY:
        total_pairs = k * (k - 1) // 2
        m_atomic = round(params.p_atomic * total_pairs)
        m_soft = 0 if mode is GenMode.ATOMIC_ONLY else round(params.p_soft * total_pairs)
        chosen = rng.sample(range(total_pairs), min(m_atomic + m_soft, total_pairs))
        for which, idx in enumerate(chosen):
            u, v = _pair_from_index(idx, k)
            if which < m_atomic:
                atomic.append((u, v) if pos[u] < pos[v] else (v, u))
            else:
                soft.append((u, v) if rng.random() < 0.5 else (v, u))

    if mode in (GenMode.SATISFIABLE, GenMode.UNSATISFIABLE) and b > 0 and k > 2:
        total_combos = b * (k - 2)
        m_disj = round(params.p_disjunctive * total_combos)
        for idx in rng.sample(range(total_combos), m_disj):
            i = idx // (k - 2) + 1
            off = idx % (k - 2)
            # off-th job when both pair ends are skipped (i < i+b always)
            l = off + 1
            if l >= i:
                l += 1
            if l >= i + b:
                l += 1
            j = i + b
            shape = rng.random()
            if shape < 0.5:
                d = (l, i, l, j)
            elif shape < 0.75:
                d = (l, i, j, l)
            else:
                d = (l, j, i, l)
            if pos[d[0]] < pos[d[1]] or pos[d[2]] < pos[d[3]]:
                disjunctive.append(d)

        if params.ds_count:
            consistent = [
                i
                for i in range(1, 2 * b + 1)
                if pos[i + b if i <= b else i - b] == pos[i] + 1
                or pos[i + b if i <= b else i - b] < pos[i]
            ]
            rng.shuffle(consistent)
            ds = consistent[: params.ds_count]
    elif mode is GenMode.DS_ONLY and params.ds_count:
        ds = rng.sample(range(1, 2 * b + 1), params.ds_count)

    if mode is GenMode.UNSATISFIABLE:
        length = rng.randint(2, min(4, k))
        cycle = rng.sample(jobs, length)
        injected = {
            (cycle[x], cycle[(x + 1) % length]) for x in range(length)
        }
        atomic = sorted(set(atomic) | injected)
        soft = [c for c in soft if c not in injected]
        plant = None

    inst = Instance(
        k=k,
        b=b,
        atomic=tuple(sorted(set(atomic))),
        soft_atomic=tuple(sorted(set(soft))),
        disjunctive=tuple(sorted(set(disjunctive))),
        direct_successors=tuple(sorted(ds)),
    )
    return inst, plant


def generate(params: GenParams) -> Instance:
    return generate_planted(params)[0]


# ---------------------------------------------------------------------------
# Desk-scale benchmark suites


def certification_suite(seed: int = 0, count: int = 200) -> list[tuple[str, GenParams]]:
    """Small instances (k <= 8) across all modes for exhaustive certification.

    Roughly 60% satisfiable mixed, 15% unsatisfiable, 15% atomic-only and
    10% successor-only; at least 20 unsatisfiable at the default count.
    """
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        roll = idx % 20
        if roll < 12:
            mode = GenMode.SATISFIABLE
            b = rng.randint(0, 3)
            n = rng.randint(0 if b else 1, 8 - 2 * b)
            params = GenParams(
                b=b,
                n=n,
                p_atomic=rng.choice((0.1, 0.2, 0.35)),
                p_soft=rng.choice((0.0, 0.1, 0.2)),
                p_disjunctive=rng.choice((0.0, 0.15, 0.3)),
                ds_count=rng.randint(0, 2 * b) if b else 0,
                seed=seed * 100_003 + idx,
                mode=mode,
            )
        elif roll < 15:
            b = rng.randint(0, 3)
            n = rng.randint(max(0, 2 - 2 * b), 8 - 2 * b)
            params = GenParams(
                b=b,
                n=n,
                p_atomic=rng.choice((0.1, 0.25)),
                p_soft=0.1,
                p_disjunctive=0.15,
                ds_count=rng.randint(0, 2 * b) if b else 0,
                seed=seed * 100_003 + idx,
                mode=GenMode.UNSATISFIABLE,
            )
        elif roll < 18:
            params = GenParams(
                b=0,
                n=rng.randint(1, 8),
                p_atomic=rng.choice((0.15, 0.3, 0.5)),
                seed=seed * 100_003 + idx,
                mode=GenMode.ATOMIC_ONLY,
            )
        else:
            b = rng.randint(1, 4)
            n = rng.randint(0, 8 - 2 * b)
            params = GenParams(
                b=b,
                n=n,
                ds_count=rng.randint(1, 2 * b),
                seed=seed * 100_003 + idx,
                mode=GenMode.DS_ONLY,
            )
        out.append((f"C{idx:03d}", params))
    return out


def anytime_suite(seed: int = 0, count: int = 50,
                  k_range: tuple[int, int] = (20, 50)) -> list[tuple[str, GenParams]]:
    """Mid-size satisfiable instances for time-limited runs."""
    rng = random.Random(seed ^ 0x5EED)
    lo, hi = k_range
    out = []
    for idx in range(count):
        k = rng.randint(lo, hi)
        b = rng.randint(k // 4, k // 2)
        n = k - 2 * b
        params = GenParams(
            b=b,
            n=n,
            p_atomic=rng.choice((0.08, 0.12, 0.18)),
            p_soft=rng.choice((0.01, 0.02)),
            p_disjunctive=rng.choice((0.05, 0.1)),
            ds_count=rng.randint(0, b),
            seed=seed * 99_991 + idx,
            mode=GenMode.SATISFIABLE,
        )
        out.append((f"T{idx:03d}", params))
    return out
