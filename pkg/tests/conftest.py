import random

import pytest

from ctwkit import Instance
from ctwkit.generate import GenMode, GenParams, generate_planted


@pytest.fixture
def five_job() -> Instance:
    """k=5, b=2 reference instance: pairs (1,3) and (2,4), one-sided job 5.

    Hard order 3<4, 4<1, 5<4; one disjunction (2<5 or 2<1); pair end 4
    carries a direct successor constraint. Exactly 8 of the 120
    permutations are valid; the optimum is 160.
    """
    return Instance(
        k=5,
        b=2,
        atomic=[(3, 4), (4, 1), (5, 4)],
        disjunctive=[(2, 5, 2, 1)],
        direct_successors=[4],
    )


def random_params(rng: random.Random, mode: GenMode, max_k: int = 7,
                  seed: int | None = None) -> GenParams:
    """Feasible parameters for a small instance of the given mode."""
    if mode is GenMode.ATOMIC_ONLY:
        b, n = 0, rng.randint(1, max_k)
    elif mode is GenMode.DS_ONLY:
        b = rng.randint(1, max_k // 2)
        n = rng.randint(0, max_k - 2 * b)
    else:
        b = rng.randint(0, max_k // 2)
        lo = 2 if (mode is GenMode.UNSATISFIABLE and b == 0) else (1 if b == 0 else 0)
        n = rng.randint(lo, max(lo, max_k - 2 * b))
    return GenParams(
        b=b,
        n=n,
        p_atomic=rng.choice((0.1, 0.25, 0.4)),
        p_soft=rng.choice((0.0, 0.1, 0.25)),
        p_disjunctive=rng.choice((0.0, 0.15, 0.3)),
        ds_count=rng.randint(0, 2 * b),
        seed=rng.randrange(2 ** 30) if seed is None else seed,
        mode=mode,
    )


def random_instance(rng: random.Random, mode: GenMode = GenMode.SATISFIABLE,
                    max_k: int = 7):
    return generate_planted(random_params(rng, mode, max_k))
