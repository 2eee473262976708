"""Solver portfolio: special cases, exact solvers, approximation, dispatch."""

import pytest

from mintco import (
    CapExceeded,
    Instance,
    PreconditionError,
    gen_from_vc,
    gen_random,
    greedy_component_merge,
    preprocess_dominated,
    small_topic_threshold,
    solve_approx_hs,
    solve_auto,
    solve_exact_enum,
    solve_exact_hs,
    solve_star_disjoint,
    solve_trivial_pairs,
    upper_bound_spanning,
    validate_solution,
)
from mintco.reductions import Graph

from oracles import brute_tco_opt, tco_feasible


def test_trivial_pairs_examples():
    inst = Instance.build(3, [[0, 1], [1, 2]])
    report = solve_trivial_pairs(inst)
    assert sorted(report.overlay.edges) == [(0, 1), (1, 2)]
    assert report.optimal
    assert solve_trivial_pairs(Instance.build(2, [[0, 1], [0, 1]])).cost == 1
    assert solve_trivial_pairs(Instance.build(3, [[0], [], [2]])).cost == 0


def test_trivial_pairs_precondition():
    with pytest.raises(PreconditionError):
        solve_trivial_pairs(Instance.build(3, [[0, 1, 2]]))


def test_trivial_pairs_matches_brute_force():
    for seed in range(30):
        inst = gen_random(6, 4, 0, 2, seed)
        report = solve_trivial_pairs(inst)
        assert validate_solution(inst, report.overlay).feasible
        assert report.cost == brute_tco_opt(inst)


def test_star_examples():
    inst = Instance.build(4, [[0, 1, 2], [0, 3]])
    report = solve_star_disjoint(inst)
    assert report.cost == 3 and report.optimal
    single = Instance.build(5, [[0, 1, 2, 3, 4]])
    assert solve_star_disjoint(single).cost == 4


def test_star_precondition_witness():
    # both users follow both topics, so they share two topics
    inst = Instance.build(2, [[0, 1], [0, 1]])
    with pytest.raises(PreconditionError) as err:
        solve_star_disjoint(inst)
    assert "0" in str(err.value) and "1" in str(err.value)


def test_star_matches_brute_force_and_bound():
    cases = [
        Instance.build(4, [[0, 1, 2], [0, 3]]),
        Instance.build(6, [[0, 1, 2], [3, 4, 5]]),
        Instance.build(5, [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]),
        Instance.build(5, [[0, 1, 2], [2, 3, 4]]),
    ]
    for inst in cases:
        report = solve_star_disjoint(inst)
        expected = sum(max(len(a) - 1, 0) for a in inst.audiences)
        assert report.cost == expected
        assert validate_solution(inst, report.overlay).feasible
        assert report.cost == brute_tco_opt(inst)


def test_exact_enum_examples():
    assert solve_exact_enum(Instance.build(3, [[0, 1, 2]])).cost == 2
    # frozen: brute-force VC optimum of K3 is 2, so the gadget optimum is 2 + 2*3
    k3, _ = gen_from_vc(Graph.build(3, [(0, 1), (1, 2), (0, 2)]))
    assert solve_exact_enum(k3).cost == 8


def test_exact_enum_cap():
    inst = gen_random(8, 5, 3, 5, 2)
    with pytest.raises(CapExceeded):
        solve_exact_enum(inst, cap=3)


def test_exact_solvers_agree_and_match_brute_force():
    for seed in range(40):
        inst = gen_random(5, 3, 2, 4, seed)
        enum_cost = solve_exact_enum(inst).cost
        hs_cost = solve_exact_hs(inst).cost
        assert enum_cost == hs_cost == brute_tco_opt(inst)


def test_exact_hs_examples():
    assert solve_exact_hs(Instance.build(3, [[0, 1, 2]])).cost == 2
    pairs = Instance.build(4, [[0, 1], [2, 3]])
    report = solve_exact_hs(pairs)
    assert report.cost == 2 and report.optimal


def test_exact_hs_budget():
    inst = Instance.build(3, [[0, 1, 2]])
    assert solve_exact_hs(inst, budget=1) is None
    assert solve_exact_hs(inst, budget=2).cost == 2


def test_exact_cost_splits_over_domination():
    for seed in range(25):
        inst = gen_random(6, 3, 1, 4, seed)
        red = preprocess_dominated(inst)
        whole = solve_exact_hs(inst).cost
        part = solve_exact_hs(red.reduced).cost
        assert whole == part + red.n_removed
        assert solve_exact_enum(inst).cost == whole


def test_approx_feasible_and_ratio():
    for d in (3, 4):
        bound = (d // 2) * ((d + 1) // 2)
        for seed in range(40):
            inst = gen_random(7, 3, 2, d, seed)
            report = solve_approx_hs(inst)
            assert not report.optimal
            assert validate_solution(inst, report.overlay).feasible
            assert report.cost <= bound * solve_exact_hs(inst).cost


def test_approx_triangle_upper_bound():
    report = solve_approx_hs(Instance.build(3, [[0, 1, 2]]))
    assert report.cost <= 3


def test_greedy_examples():
    assert greedy_component_merge(Instance.build(3, [[0, 1, 2]])).cost == 2
    # frozen by hand-simulation: (0,1) merges components in both topics
    nested = Instance.build(4, [[0, 1, 2, 3], [0, 1]])
    report = greedy_component_merge(nested)
    assert sorted(report.overlay.edges) == [(0, 1), (0, 2), (0, 3)]


def test_greedy_feasible_and_at_least_exact():
    ratios = []
    for seed in range(25):
        inst = gen_random(6, 3, 2, 4, seed)
        report = greedy_component_merge(inst)
        assert validate_solution(inst, report.overlay).feasible
        exact = solve_exact_hs(inst).cost
        assert report.cost >= exact
        if exact:
            ratios.append(report.cost / exact)
    assert max(ratios) >= 1.0


def test_exact_below_spanning_bound():
    for seed in range(25):
        inst = gen_random(6, 4, 2, 4, seed)
        exact = solve_exact_hs(inst).cost
        spanning = upper_bound_spanning(inst).cost
        assert exact <= spanning <= sum(max(len(a) - 1, 0) for a in inst.audiences)


def test_small_topic_threshold_values():
    # frozen: direct evaluation of the epsilon formula, binary logs
    assert small_topic_threshold(2**16) == 1
    assert small_topic_threshold(2**256) == 3
    assert small_topic_threshold(16) == 0
    with pytest.raises(ValueError):
        small_topic_threshold(15)


def test_auto_dispatch_routes():
    trivial = Instance.build(3, [[0, 1], [1, 2]])
    assert solve_auto(trivial).notes == "auto route=trivial-pairs"
    star = Instance.build(4, [[0, 1, 2], [0, 3]])
    assert solve_auto(star).notes == "auto route=star-disjoint"
    exact = Instance.build(4, [[0, 1, 2], [0, 1, 3]])
    report = solve_auto(exact)
    assert report.notes == "auto route=exact-hs" and report.optimal
    big = gen_random(30, 30, 10, 14, 1)
    report = solve_auto(big)
    assert report.notes == "auto route=approx-hs" and not report.optimal
    assert validate_solution(big, report.overlay).feasible


def test_auto_greedy_comparison_flag():
    inst = Instance.build(4, [[0, 1, 2], [0, 1, 3]])
    report = solve_auto(inst, include_greedy=True)
    assert "greedy-cm cost=" in report.notes


def test_all_solvers_outputs_feasible():
    solvers = [solve_exact_enum, solve_exact_hs, solve_approx_hs, greedy_component_merge]
    for seed in range(15):
        inst = gen_random(6, 4, 2, 4, seed)
        for solve in solvers:
            report = solve(inst)
            assert validate_solution(inst, report.overlay).feasible
            assert tco_feasible(inst, report.overlay.edges)
