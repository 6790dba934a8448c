import random

import pytest

from ctwkit import (
    breakdown,
    ds_only_solve,
    emit_dat,
    enumerate_solutions,
    unsat_precheck,
    validate,
)
from ctwkit.generate import (
    GenMode,
    GenParams,
    anytime_suite,
    certification_suite,
    generate,
    generate_planted,
)

from conftest import random_params


def test_planted_solution_is_valid():
    rng = random.Random(103)
    for _ in range(150):
        params = random_params(rng, GenMode.SATISFIABLE, max_k=12)
        inst, plant = generate_planted(params)
        assert plant is not None
        assert validate(inst, plant) == []


def test_unsatisfiable_mode_injects_detectable_cycle():
    rng = random.Random(107)
    for _ in range(60):
        params = random_params(rng, GenMode.UNSATISFIABLE, max_k=7)
        inst, plant = generate_planted(params)
        assert plant is None
        assert unsat_precheck(inst) is not None
        assert enumerate_solutions(inst).valid_count == 0


def test_ds_only_mode_matches_linear_solver():
    inst = generate(GenParams(b=3, n=0, ds_count=4, seed=5, mode=GenMode.DS_ONLY))
    assert inst.atomic == () and inst.soft_atomic == () and inst.disjunctive == ()
    assert len(inst.direct_successors) == 4
    perm = ds_only_solve(inst)
    assert validate(inst, perm) == []
    assert breakdown(inst, perm).objective == 0


def test_atomic_only_mode_is_a_dag_instance():
    inst = generate(GenParams(b=0, n=10, p_atomic=0.5, seed=9, mode=GenMode.ATOMIC_ONLY))
    assert inst.b == 0
    assert inst.soft_atomic == () and inst.disjunctive == ()
    assert unsat_precheck(inst) is None


def test_parameter_validation():
    with pytest.raises(ValueError):
        GenParams(b=1, n=0, ds_count=3)  # ds_count > 2b
    with pytest.raises(ValueError):
        GenParams(b=1, n=0, mode=GenMode.ATOMIC_ONLY)  # needs b = 0
    with pytest.raises(ValueError):
        GenParams(b=0, n=1, mode=GenMode.UNSATISFIABLE)  # no room for a cycle
    with pytest.raises(ValueError):
        GenParams(b=0, n=2, p_atomic=1.5)
    with pytest.raises(ValueError):
        GenParams(b=-1, n=2)


def test_same_seed_same_bytes():
    params = GenParams(b=3, n=2, p_atomic=0.3, p_soft=0.2, p_disjunctive=0.25,
                       ds_count=2, seed=77)
    assert emit_dat(generate(params)) == emit_dat(generate(params))


def test_different_seeds_differ():
    base = dict(b=3, n=2, p_atomic=0.3, p_soft=0.2, p_disjunctive=0.25, ds_count=2)
    a = emit_dat(generate(GenParams(seed=1, **base)))
    b = emit_dat(generate(GenParams(seed=2, **base)))
    assert a != b


def test_disjunctive_shapes_follow_the_two_syntactic_forms():
    rng = random.Random(109)
    for _ in range(50):
        params = random_params(rng, GenMode.SATISFIABLE, max_k=10)
        inst, _ = generate_planted(params)
        triples = set()
        for d in inst.disjunctive:
            ends = {d.c1before, d.c1after, d.c2before, d.c2after}
            pair_start = next(
                i for i in sorted(ends) if i <= inst.b and i + inst.b in ends
            )
            j = pair_start + inst.b
            l = (ends - {pair_start, j}).pop()
            d1 = (l, pair_start, l, j)
            d2a = (l, pair_start, j, l)
            d2b = (l, j, pair_start, l)
            assert tuple(d) in (d1, d2a, d2b)
            # at most one constraint per (pair, third) triple
            key = (pair_start, l)
            assert key not in triples
            triples.add(key)


def test_soft_density_keeps_expected_violations_below_k():
    rng = random.Random(113)
    total_n = 0
    count = 0
    for seed in range(40):
        params = GenParams(b=5, n=5, p_atomic=0.1, p_soft=0.05,
                           p_disjunctive=0.05, seed=seed)
        inst, plant = generate_planted(params)
        total_n += breakdown(inst, plant).N
        count += 1
    assert total_n / count < 15  # E[N] stays well below k at default-ish density


def test_certification_suite_composition():
    suite = certification_suite(seed=0)
    assert len(suite) == 200
    names = [name for name, _ in suite]
    assert names == sorted(names)
    unsat = sum(1 for _, p in suite if p.mode is GenMode.UNSATISFIABLE)
    assert unsat >= 20
    for _, params in suite:
        assert params.k <= 8
        inst = generate(params)
        assert inst.k == params.k


def test_anytime_suite_composition():
    suite = anytime_suite(seed=0)
    assert len(suite) == 50
    for _, params in suite:
        assert 20 <= params.k <= 50
        assert params.mode is GenMode.SATISFIABLE
