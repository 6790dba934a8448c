import random

import pytest

from ctwkit import (
    DiGraph,
    Instance,
    Permutation,
    breakdown,
    brute_mas,
    enumerate_solutions,
    validate,
)


def test_census_of_reference_instance(five_job):
    result = enumerate_solutions(five_job)
    assert result.enumerated == 120
    assert result.valid_count == 8


def test_reference_optimum_and_ties(five_job):
    # exhaustively derived: two permutations reach the optimum 160
    result = enumerate_solutions(five_job)
    assert result.optimal_objective == 160
    assert [p.tour for p in result.optimal_solutions] == [
        (5, 3, 2, 4, 1),
        (5, 3, 4, 2, 1),
    ]
    for perm in result.optimal_solutions:
        assert validate(five_job, perm) == []
        assert breakdown(five_job, perm).objective == 160


def test_contradictory_instance_has_no_solutions():
    inst = Instance(k=2, b=0, atomic=[(1, 2), (2, 1)])
    result = enumerate_solutions(inst)
    assert result.valid_count == 0
    assert result.optimal_objective is None
    assert result.optimal_solutions == ()


def test_empty_instance_census():
    result = enumerate_solutions(Instance(k=0, b=0))
    assert result.enumerated == 1  # 0! permutations: the empty one
    assert result.valid_count == 1
    assert result.optimal_objective == 0
    assert result.optimal_solutions == (Permutation(()),)


def test_size_guard():
    with pytest.raises(ValueError, match="k<=10"):
        enumerate_solutions(Instance(k=11, b=0))
    # a custom guard is honoured
    enumerate_solutions(Instance(k=4, b=0), limit_k=4)
    with pytest.raises(ValueError):
        enumerate_solutions(Instance(k=5, b=0), limit_k=4)


def test_optimal_set_is_lexicographically_ordered():
    # with no constraints and b=0 every permutation is optimal at cost 0
    result = enumerate_solutions(Instance(k=3, b=0))
    tours = [p.tour for p in result.optimal_solutions]
    assert tours == sorted(tours)
    assert len(tours) == 6


def test_brute_mas_three_cycle():
    g = DiGraph(3, frozenset({(1, 2), (2, 3), (3, 1)}))
    assert brute_mas(g) == 2


def test_brute_mas_dag_keeps_everything():
    g = DiGraph(4, frozenset({(1, 2), (1, 3), (2, 4), (3, 4)}))
    assert brute_mas(g) == 4


def test_brute_mas_complete_digraph_on_three_vertices():
    edges = {(u, v) for u in range(1, 4) for v in range(1, 4) if u != v}
    g = DiGraph(3, frozenset(edges))
    # any linear order keeps exactly one direction of each of the 3 pairs
    assert brute_mas(g) == 3


def test_brute_mas_guard():
    with pytest.raises(ValueError):
        brute_mas(DiGraph(11, frozenset()))


def test_brute_mas_matches_greedy_free_cases():
    rng = random.Random(59)
    for _ in range(30):
        n = rng.randint(1, 5)
        pool = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
        edges = frozenset(rng.sample(pool, rng.randint(0, len(pool))))
        g = DiGraph(n, edges)
        best = brute_mas(g)
        assert 0 <= best <= len(edges)
        # a maximum acyclic subgraph always keeps at least half the arcs:
        # either direction class of any linear order does
        assert 2 * best >= len(edges)
