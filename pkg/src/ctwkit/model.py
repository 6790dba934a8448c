"""Domain model for cable tree wiring instances and candidate solutions.

An instance schedules k = 2b + n cable-end insertion jobs on one machine:
jobs 1..b and b+1..2b are the paired ends of the b two-sided cables (job i
pairs with i+b), jobs 2b+1..2b+n belong to one-sided cables. A candidate
solution is a permutation of the k jobs. Hard constraints restrict the
permutation:

* atomic precedence (i, j): job i must take an earlier position than job j;
* disjunctive: at least one of two atomic precedences must hold;
* direct successor, given as a paired-cable end i: the partner end must be
  plugged immediately after i, or anywhere before it (short cables that
  cannot wait in storage).

Soft atomic constraints use the same (before, after) shape but only
contribute to the cost of a solution, never to its validity.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import NamedTuple, Sequence

from . import digraph
from .errors import InstanceError


class AtomicConstraint(NamedTuple):
    """Job ``before`` must be executed before job ``after``."""

    before: int
    after: int


class DisjunctiveConstraint(NamedTuple):
    """(c1before < c1after) or (c2before < c2after) on positions.

    The generic 4-tuple covers both syntactic shapes that occur in practice
    (a shared left-hand job, or the pair ends appearing on opposite sides).
    """

    c1before: int
    c1after: int
    c2before: int
    c2after: int

    def disjuncts(self) -> tuple[AtomicConstraint, AtomicConstraint]:
        return (
            AtomicConstraint(self.c1before, self.c1after),
            AtomicConstraint(self.c2before, self.c2after),
        )


def partner(i: int, b: int) -> int:
    """The other end of the two-sided cable that end ``i`` belongs to.

    Only jobs 1..2b have a partner; partner(partner(i)) == i.
    """
    if not 1 <= i <= 2 * b:
        raise ValueError(f"job {i} is not a two-sided cable end (b={b})")
    return i + b if i <= b else i - b


@dataclass(frozen=True)
class Instance:
    """An immutable problem statement.

    ``direct_successors`` lists constrained ends i (each must be <= 2b); the
    entry i stands for the constraint on the pair (i, partner(i)).
    """

    k: int
    b: int
    atomic: tuple[AtomicConstraint, ...] = ()
    soft_atomic: tuple[AtomicConstraint, ...] = ()
    disjunctive: tuple[DisjunctiveConstraint, ...] = ()
    direct_successors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "atomic", tuple(AtomicConstraint(*c) for c in self.atomic)
        )
        object.__setattr__(
            self, "soft_atomic", tuple(AtomicConstraint(*c) for c in self.soft_atomic)
        )
        object.__setattr__(
            self,
            "disjunctive",
            tuple(DisjunctiveConstraint(*c) for c in self.disjunctive),
        )
        object.__setattr__(
            self, "direct_successors", tuple(int(i) for i in self.direct_successors)
        )
        self._check()

    def _check(self):
        if self.b < 0 or self.k < 0:
            raise InstanceError(f"negative size: k={self.k}, b={self.b}")
        if 2 * self.b > self.k:
            raise InstanceError(f"b={self.b} exceeds k/2 (k={self.k})")
        for name in ("atomic", "soft_atomic"):
            for c in getattr(self, name):
                self._check_job(c.before, name)
                self._check_job(c.after, name)
                if c.before == c.after:
                    raise InstanceError(f"{name} constraint {c} relates a job to itself")
        for d in self.disjunctive:
            for j in d:
                self._check_job(j, "disjunctive")
            if d.c1before == d.c1after or d.c2before == d.c2after:
                raise InstanceError(f"disjunctive constraint {d} has a trivial disjunct")
        for i in self.direct_successors:
            if not 1 <= i <= 2 * self.b:
                raise InstanceError(
                    f"direct successor entry {i} is not a two-sided cable end (b={self.b})"
                )
        for name in ("atomic", "soft_atomic", "disjunctive", "direct_successors"):
            entries = getattr(self, name)
            if len(set(entries)) != len(entries):
                raise InstanceError(f"duplicate entries in {name}")
        overlap = set(self.atomic) & set(self.soft_atomic)
        if overlap:
            raise InstanceError(
                f"constraints both hard and soft: {sorted(overlap)}"
            )

    def _check_job(self, j: int, where: str):
        if not 1 <= j <= self.k:
            raise InstanceError(f"job {j} in {where} is outside 1..{self.k}")

    @property
    def n(self) -> int:
        """Number of one-sided cables."""
        return self.k - 2 * self.b

    def partner(self, i: int) -> int:
        return partner(i, self.b)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, i + self.b) for i in range(1, self.b + 1))

    def canonical(self) -> "Instance":
        """Equal instance with every constraint list sorted ascending."""
        return Instance(
            k=self.k,
            b=self.b,
            atomic=tuple(sorted(self.atomic)),
            soft_atomic=tuple(sorted(self.soft_atomic)),
            disjunctive=tuple(sorted(self.disjunctive)),
            direct_successors=tuple(sorted(self.direct_successors)),
        )


@dataclass(frozen=True)
class Permutation:
    """A candidate solution, stored as the tour (job at position 1, 2, ...).

    The dual view -- position of each job -- is derived once and cached.
    A Permutation may hold a non-bijective tour (e.g. read from a defective
    solution file); ``validate`` reports that instead of the constructor
    rejecting it.
    """

    tour: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "tour", tuple(int(j) for j in self.tour))

    @classmethod
    def from_tour(cls, jobs: Sequence[int]) -> "Permutation":
        return cls(tuple(jobs))

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> "Permutation":
        """Build from the job -> position map (positions[i-1] is job i's slot).

        Raises ValueError when the map is not invertible.
        """
        k = len(positions)
        tour = [0] * k
        for job, p in enumerate(positions, start=1):
            if not 1 <= p <= k or tour[p - 1] != 0:
                raise ValueError(f"position map is not a bijection at job {job}")
            tour[p - 1] = job
        return cls(tuple(tour))

    def __len__(self) -> int:
        return len(self.tour)

    @cached_property
    def _pos(self) -> tuple[int, ...]:
        # index = job id (entry 0 unused); meaningful only for bijective tours
        pos = [0] * (len(self.tour) + 1)
        for x, job in enumerate(self.tour, start=1):
            if 1 <= job < len(pos):
                pos[job] = x
        return tuple(pos)

    def position_of(self, job: int) -> int:
        return self._pos[job]

    def job_at(self, position: int) -> int:
        return self.tour[position - 1]

    def positions_by_job(self) -> tuple[int, ...]:
        """positions_by_job()[i-1] is the position of job i."""
        return self._pos[1:]

    def is_bijection(self) -> bool:
        k = len(self.tour)
        return sorted(self.tour) == list(range(1, k + 1))


class ViolationKind(Enum):
    NOT_BIJECTIVE = "not-bijective"
    ATOMIC = "atomic"
    DISJUNCTIVE = "disjunctive"
    DIRECT_SUCCESSOR = "direct-successor"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: object

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.detail}"


def validate(inst: Instance, perm: Permutation) -> list[Violation]:
    """All hard-constraint violations of ``perm``; empty list means valid.

    Soft atomic constraints never appear here -- they are a cost, not a
    validity condition. Raises ValueError when the permutation length does
    not match the instance.
    """
    if len(perm) != inst.k:
        raise ValueError(f"permutation has length {len(perm)}, instance has k={inst.k}")
    out: list[Violation] = []
    if not perm.is_bijection():
        out.append(Violation(ViolationKind.NOT_BIJECTIVE, tuple(perm.tour)))
        return out
    pos = perm._pos
    for c in inst.atomic:
        if pos[c.before] >= pos[c.after]:
            out.append(Violation(ViolationKind.ATOMIC, c))
    for d in inst.disjunctive:
        if not (pos[d.c1before] < pos[d.c1after] or pos[d.c2before] < pos[d.c2after]):
            out.append(Violation(ViolationKind.DISJUNCTIVE, d))
    for i in inst.direct_successors:
        j = inst.partner(i)
        if not (pos[j] == pos[i] + 1 or pos[j] < pos[i]):
            out.append(Violation(ViolationKind.DIRECT_SUCCESSOR, i))
    return out


def satisfies(inst: Instance, pos: Sequence[int]) -> bool:
    """Fast hard-constraint check against a position array (index = job id).

    ``pos`` must describe a bijection; this is the hot path used by the
    exhaustive enumerator and agrees with ``validate`` by construction
    (property-tested).
    """
    for i, j in inst.atomic:
        if pos[i] >= pos[j]:
            return False
    for a1, b1, a2, b2 in inst.disjunctive:
        if pos[a1] >= pos[b1] and pos[a2] >= pos[b2]:
            return False
    b = inst.b
    for i in inst.direct_successors:
        j = i + b if i <= b else i - b
        pj, pi = pos[j], pos[i]
        if pj != pi + 1 and pj >= pi:
            return False
    return True


def hard_atomic_graph(inst: Instance) -> digraph.DiGraph:
    """Constraint graph over jobs: one edge per hard atomic precedence.

    Parallel duplicates collapse because edges form a set.
    """
    return digraph.DiGraph(
        inst.k, frozenset((c.before, c.after) for c in inst.atomic)
    )
