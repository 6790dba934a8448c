import itertools
import random

import pytest

from ctwkit import (
    Instance,
    Permutation,
    ResultState,
    SearchState,
    SolverConfig,
    breakdown,
    enumerate_solutions,
    solve,
    validate,
)
from ctwkit.generate import GenMode, GenParams, generate

from conftest import random_instance


def best_completion_objective(inst, prefix):
    """Exhaustive minimum objective over valid completions of a prefix."""
    remaining = [j for j in range(1, inst.k + 1) if j not in set(prefix)]
    best = None
    for tail in itertools.permutations(remaining):
        perm = Permutation(tuple(prefix) + tail)
        if validate(inst, perm):
            continue
        obj = breakdown(inst, perm).objective
        if best is None or obj < best:
            best = obj
    return best


def test_reference_instance_solved_to_optimality(five_job):
    result = solve(five_job)
    assert result.state is ResultState.OPTIMAL
    perm, bd = result.best
    assert bd.objective == 160
    assert validate(five_job, perm) == []
    assert result.stats.proven_lower_bound == 160


def test_contradiction_is_unsatisfiable_via_precheck():
    result = solve(Instance(k=2, b=0, atomic=[(1, 2), (2, 1)]))
    assert result.state is ResultState.UNSATISFIABLE
    assert result.best is None
    assert result.stats.nodes_expanded == 0


def test_disjunctive_only_unsat_needs_exhaustion():
    inst = Instance(k=2, b=1, disjunctive=[(1, 2, 1, 2), (2, 1, 2, 1)])
    result = solve(inst)
    assert result.state is ResultState.UNSATISFIABLE
    assert result.stats.nodes_expanded > 0


def test_degenerate_sizes():
    result = solve(Instance(k=0, b=0))
    assert result.state is ResultState.OPTIMAL
    assert result.best[0] == Permutation(())
    assert result.best[1].objective == 0

    result = solve(Instance(k=1, b=0))
    assert result.state is ResultState.OPTIMAL
    assert result.best[0] == Permutation((1,))
    assert result.best[1].objective == 0


def test_extend_candidates_reference_cases(five_job):
    st = SearchState.from_prefix(five_job, [])
    cands = st.extend_candidates()
    assert set(cands) == {2, 3, 5}  # 4 and 1 wait for predecessors
    assert cands == [3, 5, 2]  # urgency order: most unplaced successors first

    st = SearchState.from_prefix(five_job, [5, 3, 4])
    assert st.extend_candidates() == [2]  # successor constraint forces the partner

    st = SearchState.from_prefix(five_job, [5, 3, 4, 2, 1])
    assert st.extend_candidates() == []


def test_lower_bound_reference_cases(five_job):
    assert SearchState.from_prefix(five_job, []).lower_bound() == 0
    # open pair whose placed end is still last: nothing committed
    assert SearchState.from_prefix(five_job, [3]).lower_bound() == 0
    # job 3's partner can no longer be adjacent: S and L and M committed
    st = SearchState.from_prefix(five_job, [3, 5])
    assert st.lower_bound() == 155
    assert st.lower_bound() >= 130


def test_lower_bound_admissible_against_exhaustive_completion():
    rng = random.Random(73)
    checked = 0
    for _ in range(50):
        inst, plant = random_instance(rng, max_k=6)
        if plant is None or inst.k == 0:
            continue
        # prefixes of a valid permutation are consistent search states
        depth = rng.randint(0, inst.k - 1)
        prefix = list(plant.tour[:depth])
        st = SearchState.from_prefix(inst, prefix)
        lb = st.lower_bound()
        best = best_completion_objective(inst, prefix)
        assert best is not None  # the plant itself completes it
        assert lb <= best
        checked += 1
    assert checked >= 30


def test_leaf_bound_equals_objective():
    rng = random.Random(79)
    for _ in range(40):
        inst, plant = random_instance(rng, max_k=6)
        if plant is None:
            continue
        st = SearchState.from_prefix(inst, list(plant.tour))
        assert st.lower_bound() == breakdown(inst, plant).objective


def test_matches_oracle_on_mixed_instances():
    rng = random.Random(83)
    mismatches = 0
    for trial in range(60):
        mode = rng.choice(
            (GenMode.SATISFIABLE, GenMode.UNSATISFIABLE, GenMode.ATOMIC_ONLY, GenMode.DS_ONLY)
        )
        inst, _ = random_instance(rng, mode, max_k=7)
        oracle_result = enumerate_solutions(inst)
        bb = solve(inst)
        if oracle_result.valid_count == 0:
            if bb.state is not ResultState.UNSATISFIABLE:
                mismatches += 1
        else:
            if bb.state is not ResultState.OPTIMAL:
                mismatches += 1
            elif bb.best[1].objective != oracle_result.optimal_objective:
                mismatches += 1
    assert mismatches == 0


def test_determinism():
    inst = generate(GenParams(b=4, n=2, p_atomic=0.2, p_soft=0.1,
                              p_disjunctive=0.2, ds_count=2, seed=123))
    first = solve(inst, SolverConfig(time_limit_ms=60_000))
    second = solve(inst, SolverConfig(time_limit_ms=60_000))
    assert first.state == second.state
    assert first.best[0] == second.best[0]
    assert first.best[1] == second.best[1]
    assert first.stats.nodes_expanded == second.stats.nodes_expanded
    assert first.stats.proven_lower_bound == second.stats.proven_lower_bound


def test_node_limit_never_claims_unsatisfiable():
    # satisfiable but large: a tiny node budget must stop, not conclude
    inst = generate(GenParams(b=8, n=4, p_atomic=0.15, p_disjunctive=0.1, seed=7))
    result = solve(inst, SolverConfig(node_limit=3))
    assert result.state in (ResultState.SUBOPTIMAL, ResultState.UNSOLVED)
    assert result.state is not ResultState.UNSATISFIABLE
    if result.best is not None:
        assert validate(inst, result.best[0]) == []


def test_incumbent_improves_with_budget():
    inst = generate(GenParams(b=10, n=2, p_atomic=0.1, p_soft=0.05,
                              p_disjunctive=0.05, seed=11))
    objectives = []
    for budget in (50, 500, 5000, 50000):
        result = solve(inst, SolverConfig(node_limit=budget))
        if result.best is not None:
            objectives.append(result.best[1].objective)
            assert validate(inst, result.best[0]) == []
    assert objectives, "no budget produced an incumbent"
    assert objectives == sorted(objectives, reverse=True) or len(set(objectives)) == 1
    # larger budgets never worsen the incumbent
    for earlier, later in zip(objectives, objectives[1:]):
        assert later <= earlier


def test_suboptimal_incumbent_validates_under_time_limit():
    inst = generate(GenParams(b=14, n=4, p_atomic=0.12, p_soft=0.02,
                              p_disjunctive=0.08, ds_count=3, seed=31))
    result = solve(inst, SolverConfig(time_limit_ms=300))
    assert result.state in (ResultState.SUBOPTIMAL, ResultState.UNSOLVED)
    if result.best is not None:
        perm, bd = result.best
        assert validate(inst, perm) == []
        assert breakdown(inst, perm) == bd
        assert result.stats.proven_lower_bound <= bd.objective


def test_proven_bound_is_sound():
    rng = random.Random(89)
    for trial in range(20):
        inst, _ = random_instance(rng, GenMode.SATISFIABLE, max_k=7)
        truth = enumerate_solutions(inst).optimal_objective
        limited = solve(inst, SolverConfig(node_limit=4))
        if limited.stats.proven_lower_bound is not None and truth is not None:
            assert limited.stats.proven_lower_bound <= truth


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(time_limit_ms=0)
    with pytest.raises(ValueError):
        SolverConfig(node_limit=0)
