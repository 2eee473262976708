"""Hitting-set engine: greedy, exact branching, kernel rules, file formats."""

import random
from itertools import combinations

import pytest

from mintco import (
    CapExceeded,
    HsInstance,
    hits_all,
    hs_branch_exact,
    hs_greedy_frequency,
    hs_greedy_setwise,
    hs_reduce_rules,
)
from mintco.hitting import (
    emit_hs_instance,
    emit_hs_solution,
    parse_hs_instance,
    parse_hs_solution,
)

from oracles import brute_hs_exists, brute_hs_opt, random_hs

TRIANGLE = HsInstance.build(4, [[1, 2], [2, 3], [1, 3]])


def test_greedy_setwise_triangle():
    sol = hs_greedy_setwise(TRIANGLE)
    # frozen: brute force over the 8 subsets of {1,2,3} gives optimum 2
    assert brute_hs_opt(TRIANGLE.n_elements, TRIANGLE.sets) == 2
    assert sol.chosen == (1, 2)
    assert sol.cost == 2


def test_greedy_setwise_single_set_worst_case():
    inst = HsInstance.build(3, [[1, 2]])
    assert hs_greedy_setwise(inst).cost == 2  # ratio equals the set size


def test_greedy_setwise_disjoint_singletons():
    inst = HsInstance.build(4, [[1], [2], [3]])
    assert hs_greedy_setwise(inst).chosen == (1, 2, 3)


def test_greedy_frequency_examples():
    assert hs_greedy_frequency(HsInstance.build(4, [[1, 2], [1, 3]])).chosen == (1,)
    assert hs_greedy_frequency(HsInstance.build(3, [[1], [2]])).chosen == (1, 2)


def test_greedy_frequency_at_least_opt_on_random():
    rng = random.Random(3)
    inst = random_hs(9, 20, 3, rng)
    exact = hs_branch_exact(inst)
    sol = hs_greedy_frequency(inst)
    assert hits_all(inst, sol.chosen)
    assert sol.cost >= exact.cost


def test_branch_exact_triangle_and_budget():
    assert hs_branch_exact(TRIANGLE).cost == 2
    assert hs_branch_exact(TRIANGLE, budget=1) is None
    assert hs_branch_exact(TRIANGLE, budget=2).cost == 2


def test_branch_exact_nothing_to_hit():
    assert hs_branch_exact(HsInstance.build(5, [])).cost == 0


def test_empty_set_is_infeasible():
    bad = HsInstance.build(3, [[0], []])
    for solver in (hs_greedy_setwise, hs_greedy_frequency, hs_branch_exact):
        with pytest.raises(ValueError):
            solver(bad)


def test_branch_node_cap():
    with pytest.raises(CapExceeded):
        hs_branch_exact(TRIANGLE, max_nodes=1)


def test_branch_matches_exhaustive_search():
    rng = random.Random(17)
    for _ in range(60):
        inst = random_hs(rng.randint(1, 10), rng.randint(1, 10), 4, rng)
        assert hs_branch_exact(inst).cost == brute_hs_opt(inst.n_elements, inst.sets)


def test_branch_budget_matches_exhaustive_existence():
    rng = random.Random(23)
    for _ in range(40):
        inst = random_hs(rng.randint(1, 9), rng.randint(1, 8), 3, rng)
        for k in range(4):
            got = hs_branch_exact(inst, budget=k)
            assert (got is not None) == brute_hs_exists(inst.n_elements, inst.sets, k)
            if got is not None:
                assert got.cost <= k and hits_all(inst, got.chosen)


def test_solutions_always_hit():
    rng = random.Random(31)
    for _ in range(30):
        inst = random_hs(rng.randint(1, 10), rng.randint(1, 12), 4, rng)
        for solver in (hs_greedy_setwise, hs_greedy_frequency, hs_branch_exact):
            chosen = solver(inst).chosen
            assert all(set(chosen) & set(s) for s in inst.sets)


def test_setwise_ratio_bound():
    rng = random.Random(41)
    for _ in range(40):
        inst = random_hs(rng.randint(2, 9), rng.randint(1, 10), 4, rng)
        greedy = hs_greedy_setwise(inst).cost
        exact = hs_branch_exact(inst).cost
        assert greedy <= inst.max_set_size * exact


def test_rules_superset_deletion():
    inst = HsInstance.build(4, [[1, 2], [1, 2, 3]])
    kernel, forced, trace = hs_reduce_rules(inst, k=3)
    # the superset {1,2,3} is dropped; element domination then shrinks {1,2}
    assert any(t.startswith("R1") for t in trace)
    assert kernel.sets == ((1,),)
    assert forced == [1]


def test_rules_sunflower_pigeonhole():
    inst = HsInstance.build(5, [[1, 2], [1, 3], [1, 4]])
    kernel, forced, trace = hs_reduce_rules(inst, k=2)
    assert kernel.sets == ((1,),)
    assert forced == [1]


def test_rules_fixed_point_when_nothing_applies():
    # pairwise-incomparable sets AND element occurrence patterns
    inst = HsInstance.build(3, [[0, 1], [1, 2], [0, 2]])
    kernel, forced, trace = hs_reduce_rules(inst, k=2)
    assert kernel == inst
    assert forced == [] and trace == []


def test_rules_disjoint_overflow_marks_infeasible():
    # more pairwise-disjoint sets than k: no hitting set of size <= k
    inst = HsInstance.build(6, [[0, 1], [2, 3], [4, 5]])
    kernel, _, _ = hs_reduce_rules(inst, k=2)
    assert kernel.has_empty_set


def test_kernel_preserves_small_solutions():
    rng = random.Random(57)
    for _ in range(100):
        inst = random_hs(rng.randint(2, 12), rng.randint(1, 12), 4, rng)
        for k in range(5):
            kernel, _, _ = hs_reduce_rules(inst, k)
            assert kernel.n_sets <= inst.n_sets
            assert sum(map(len, kernel.sets)) <= sum(map(len, inst.sets))
            original_has = hs_branch_exact(inst, budget=k) is not None
            if kernel.has_empty_set:
                kernel_has = False
            else:
                kernel_has = hs_branch_exact(kernel, budget=k) is not None
            assert kernel_has == original_has


def test_kernel_then_branch_equals_branch_directly():
    rng = random.Random(71)
    for _ in range(100):
        inst = random_hs(rng.randint(2, 12), rng.randint(1, 10), 4, rng)
        direct = hs_branch_exact(inst).cost
        kernel, _, _ = hs_reduce_rules(inst, k=direct)
        assert hs_branch_exact(kernel).cost == direct


def test_hs_file_roundtrip():
    rng = random.Random(83)
    inst = random_hs(7, 9, 4, rng)
    assert parse_hs_instance(emit_hs_instance(inst)) == inst
    assert parse_hs_solution(emit_hs_solution([4, 1, 6])) == [1, 4, 6]
    with pytest.raises(ValueError):
        parse_hs_instance("p hs 2 1\ns 1 5\n")
