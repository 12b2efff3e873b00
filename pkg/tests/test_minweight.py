"""Tests for the exact minimum-weight solver (cost-scaling free, flow based)."""

import numpy as np

from divmatch import (
    DegreeBounds,
    EnumerationBudget,
    INFEASIBLE,
    Instance,
    OBJECTIVE_WEIGHT,
    OPTIMAL,
    brute_force,
    check_matching,
    is_feasible_bounds,
    solve_min_weight,
    total_weight,
)
from conftest import random_instance


class TestKnownAnswers:
    def test_two_by_two_perfect_matching_tie(self):
        # Both perfect matchings cost 5; the solver must settle the tie
        # deterministically on the lexicographically smallest edge set.
        weights = np.array([[1.0, 2.0], [3.0, 4.0]])
        bounds = DegreeBounds.broadcast(2, 2, 1, 1, 1, 1)
        inst = Instance(weights, np.array([0, 1]), 2, bounds)
        rep = solve_min_weight(inst)
        assert rep.status == OPTIMAL
        assert rep.matching.edges == ((0, 0), (1, 1))
        np.testing.assert_allclose(rep.total_weight, 5.0)

    def test_empty_lower_bounds_select_nothing(self):
        weights = np.array([[0.5, 0.25], [0.75, 1.0]])
        bounds = DegreeBounds.broadcast(2, 2, 0, 2, 0, 2)
        inst = Instance(weights, np.array([0, 1]), 2, bounds)
        rep = solve_min_weight(inst)
        assert rep.status == OPTIMAL
        assert rep.matching.edges == ()
        np.testing.assert_allclose(rep.total_weight, 0.0)

    def test_saturated_right_node_takes_all_lefts(self):
        weights = np.array([[0.9], [0.1], [0.4]])
        bounds = DegreeBounds.broadcast(3, 1, 0, 1, 3, 3)
        inst = Instance(weights, np.array([0, 0, 0]), 1, bounds)
        rep = solve_min_weight(inst)
        assert rep.matching.edges == ((0, 0), (1, 0), (2, 0))


class TestOracleAgreement:
    def test_matches_brute_force_weight(self):
        rng = np.random.default_rng(211)
        budget = EnumerationBudget(max_subsets=1 << 16, max_wall_s=60.0)
        checked = 0
        for _ in range(80):
            inst = random_instance(rng, max_m=4, max_n=4, max_cells=14)
            oracle = brute_force(inst, OBJECTIVE_WEIGHT, budget)
            rep = solve_min_weight(inst)
            assert rep.status == oracle.status
            if rep.status != OPTIMAL:
                continue
            checked += 1
            np.testing.assert_allclose(
                rep.total_weight, oracle.total_weight, rtol=0, atol=1e-9)
            ok, violations = check_matching(inst, rep.matching)
            assert ok, violations
        assert checked >= 30

    def test_infeasible_agrees_with_flow_check(self):
        rng = np.random.default_rng(212)
        seen_infeasible = 0
        for _ in range(120):
            inst = random_instance(rng)
            feasible, _ = is_feasible_bounds(inst)
            rep = solve_min_weight(inst)
            if feasible:
                assert rep.status == OPTIMAL
            else:
                assert rep.status == INFEASIBLE
                assert rep.matching is None
                seen_infeasible += 1
        assert seen_infeasible >= 5


class TestStructuralProperties:
    def test_no_slack_edges_above_lower_bounds(self):
        # With strictly positive weights and free left side, the optimum
        # never selects more than the right lower bounds require.
        rng = np.random.default_rng(221)
        for _ in range(40):
            inst = random_instance(rng, right_constrained=True)
            rep = solve_min_weight(inst)
            assert rep.status == OPTIMAL
            assert len(rep.matching.edges) == sum(inst.bounds.r_lo)

    def test_tightening_lower_bounds_never_cheapens(self):
        rng = np.random.default_rng(222)
        for _ in range(30):
            inst = random_instance(rng, right_constrained=True)
            rep = solve_min_weight(inst)
            grown = tuple(min(lo + 1, inst.m) for lo in inst.bounds.r_lo)
            bounds2 = DegreeBounds.broadcast(
                inst.m, inst.n, 0, inst.n, grown,
                tuple(max(hi, lo) for hi, lo in zip(inst.bounds.r_hi, grown)))
            inst2 = Instance(inst.weights, inst.clusters, inst.k, bounds2)
            rep2 = solve_min_weight(inst2)
            assert rep2.status == OPTIMAL
            assert rep2.total_weight >= rep.total_weight - 1e-9

    def test_deterministic_across_runs(self):
        rng = np.random.default_rng(223)
        for _ in range(20):
            inst = random_instance(rng)
            first = solve_min_weight(inst)
            second = solve_min_weight(inst)
            assert first.status == second.status
            if first.matching is not None:
                assert first.matching.edges == second.matching.edges

    def test_report_fields_populated(self):
        rng = np.random.default_rng(224)
        inst = random_instance(rng, right_constrained=True)
        rep = solve_min_weight(inst)
        assert rep.algorithm == "min_weight"
        assert rep.wall_time >= 0.0
        assert "augmentations" in rep.telemetry
        np.testing.assert_allclose(
            rep.total_weight, total_weight(inst, rep.matching), rtol=1e-12)
