"""Tests for the instance model: bounds, validation, matchings, file I/O."""

import itertools

import numpy as np
import pytest

from divmatch import (
    DegreeBounds,
    Instance,
    InstanceError,
    Matching,
    MatchingError,
    check_matching,
    is_feasible_bounds,
    load_instance,
    load_matching,
    save_instance,
    save_matching,
    transform_max_to_min,
)
from conftest import random_instance


def tiny_instance():
    weights = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    clusters = np.array([0, 0, 1])
    bounds = DegreeBounds.broadcast(3, 2, 0, 2, 1, 3)
    return Instance(weights, clusters, 2, bounds)


class TestDegreeBounds:
    def test_broadcast_scalars(self):
        b = DegreeBounds.broadcast(3, 2, 0, 2, 1, 3)
        assert b.l_lo == (0, 0, 0)
        assert b.l_hi == (2, 2, 2)
        assert b.r_lo == (1, 1)
        assert b.r_hi == (3, 3)

    def test_broadcast_sequences(self):
        b = DegreeBounds.broadcast(2, 2, [0, 1], [1, 2], (0, 0), (2, 1))
        assert b.l_lo == (0, 1)
        assert b.r_hi == (2, 1)

    def test_rejects_inverted_interval(self):
        with pytest.raises(InstanceError):
            DegreeBounds.broadcast(2, 2, 2, 1, 0, 2)

    def test_rejects_negative_lower(self):
        with pytest.raises(InstanceError):
            DegreeBounds.broadcast(2, 2, -1, 1, 0, 2)

    def test_rejects_wrong_length(self):
        with pytest.raises(InstanceError):
            DegreeBounds.broadcast(3, 2, [0, 0], 2, 1, 3)


class TestInstanceValidation:
    def test_accepts_valid(self):
        inst = tiny_instance()
        assert inst.m == 3 and inst.n == 2 and inst.k == 2

    def test_rejects_negative_weight(self):
        with pytest.raises(InstanceError):
            Instance(np.array([[-1.0, 2.0]]), np.array([0]), 1,
                     DegreeBounds.broadcast(1, 2, 0, 2, 0, 1))

    def test_rejects_nonfinite_weight(self):
        for bad in (np.nan, np.inf):
            with pytest.raises(InstanceError):
                Instance(np.array([[bad, 2.0]]), np.array([0]), 1,
                         DegreeBounds.broadcast(1, 2, 0, 2, 0, 1))

    def test_rejects_cluster_id_out_of_range(self):
        with pytest.raises(InstanceError):
            Instance(np.ones((2, 2)), np.array([0, 2]), 2,
                     DegreeBounds.broadcast(2, 2, 0, 2, 0, 2))

    def test_rejects_unused_cluster_id(self):
        with pytest.raises(InstanceError):
            Instance(np.ones((2, 2)), np.array([0, 0]), 2,
                     DegreeBounds.broadcast(2, 2, 0, 2, 0, 2))

    def test_rejects_upper_bound_above_degree_cap(self):
        with pytest.raises(InstanceError):
            Instance(np.ones((2, 2)), np.array([0, 1]), 2,
                     DegreeBounds.broadcast(2, 2, 0, 3, 0, 2))

    def test_immutable(self):
        inst = tiny_instance()
        with pytest.raises(AttributeError):
            inst.k = 5
        with pytest.raises(ValueError):
            inst.weights[0, 0] = 99.0

    def test_equality_and_hash(self):
        a, b = tiny_instance(), tiny_instance()
        assert a == b
        assert hash(a) == hash(b)


class TestMatching:
    def test_sorts_edges(self):
        match = Matching([(2, 1), (0, 0), (1, 1)])
        assert match.edges == ((0, 0), (1, 1), (2, 1))

    def test_rejects_duplicates(self):
        with pytest.raises(MatchingError):
            Matching([(0, 0), (0, 0)])

    def test_rejects_negative_index(self):
        with pytest.raises(MatchingError):
            Matching([(-1, 0)])

    def test_degrees(self):
        match = Matching([(0, 0), (0, 1), (2, 1)])
        deg_l, deg_r = match.degrees(3, 2)
        np.testing.assert_array_equal(deg_l, [2, 0, 1])
        np.testing.assert_array_equal(deg_r, [1, 2])

    def test_degrees_rejects_out_of_range(self):
        match = Matching([(0, 5)])
        with pytest.raises(MatchingError):
            match.degrees(3, 2)


class TestFeasibility:
    def test_matches_exhaustive_search(self):
        # Independent check: the flow-based feasibility test must agree
        # with literally trying every subset of edges.
        rng = np.random.default_rng(101)
        for _ in range(80):
            inst = random_instance(rng, max_m=3, max_n=4, max_cells=12)
            cells = inst.m * inst.n
            found = False
            for code in range(1 << cells):
                edges = [(b // inst.n, b % inst.n)
                         for b in range(cells) if code >> b & 1]
                deg_l = np.zeros(inst.m, dtype=int)
                deg_r = np.zeros(inst.n, dtype=int)
                for i, j in edges:
                    deg_l[i] += 1
                    deg_r[j] += 1
                ok = (np.all(deg_l >= inst.bounds.l_lo)
                      and np.all(deg_l <= inst.bounds.l_hi)
                      and np.all(deg_r >= inst.bounds.r_lo)
                      and np.all(deg_r <= inst.bounds.r_hi))
                if ok:
                    found = True
                    break
            feasible, why = is_feasible_bounds(inst)
            assert feasible == found, why

    def test_diagnostic_names_overloaded_side(self):
        bounds = DegreeBounds.broadcast(2, 2, 0, 1, 2, 2)
        inst = Instance(np.ones((2, 2)), np.array([0, 0]), 1, bounds)
        feasible, why = is_feasible_bounds(inst)
        assert not feasible
        assert why != ""


class TestCheckMatching:
    def test_reports_violations(self):
        inst = tiny_instance()
        ok, violations = check_matching(inst, Matching([(0, 0)]))
        assert not ok
        assert any("right" in v for v in violations)

    def test_accepts_feasible(self):
        inst = tiny_instance()
        ok, violations = check_matching(inst, Matching([(0, 0), (1, 1)]))
        assert ok and violations == []

    def test_relaxing_bounds_preserves_feasibility(self):
        rng = np.random.default_rng(77)
        for _ in range(40):
            inst = random_instance(rng)
            m, n = inst.m, inst.n
            code = int(rng.integers(0, 1 << (m * n)))
            edges = [(b // n, b % n) for b in range(m * n) if code >> b & 1]
            match = Matching(edges)
            ok, _ = check_matching(inst, match)
            if not ok:
                continue
            relaxed = DegreeBounds.broadcast(m, n, 0, n, 0, m)
            loose = Instance(inst.weights, inst.clusters, inst.k, relaxed)
            ok2, violations = check_matching(loose, match)
            assert ok2, violations


class TestSerialization:
    def test_round_trip_exact(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            inst = random_instance(rng)
            back = load_instance(save_instance(inst))
            assert back == inst
            np.testing.assert_array_equal(back.weights, inst.weights)

    def test_scalar_bounds_broadcast_on_load(self):
        doc = ('{"m": 1, "n": 2, "weights": [[1.0, 2.0]], "clusters": [0], '
               '"k": 1, '
               '"bounds": {"L_lo": 0, "L_hi": 2, "R_lo": 0, "R_hi": 1}}')
        inst = load_instance(doc)
        assert inst.bounds.l_hi == (2,)
        assert inst.bounds.r_hi == (1, 1)

    def test_missing_field_is_named(self):
        with pytest.raises(InstanceError, match="bounds"):
            load_instance('{"m": 1, "n": 1, "weights": [[1.0]], '
                          '"clusters": [0], "k": 1}')

    def test_bad_json_is_located(self):
        with pytest.raises(InstanceError, match="line 1"):
            load_instance("{not json")

    def test_matching_round_trip(self):
        match = Matching([(1, 0), (0, 1)])
        assert load_matching(save_matching(match)).edges == match.edges


class TestMaxToMin:
    def test_flips_ordering(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            inst = random_instance(rng)
            flipped = transform_max_to_min(inst)
            np.testing.assert_allclose(
                flipped.weights, inst.weights.max() - inst.weights)
            assert flipped.bounds == inst.bounds
            assert np.all(flipped.weights >= 0.0)
            # The heaviest original edge becomes the cheapest.
            heavy = np.unravel_index(np.argmax(inst.weights),
                                     inst.weights.shape)
            np.testing.assert_allclose(flipped.weights[heavy], 0.0)


class TestEdgeEnumerationOrder:
    def test_lexicographic_pairs(self):
        # Edge (i, j) lives at flat slot i * n + j everywhere in the
        # package; spot check the convention on a 2 x 3 grid.
        n = 3
        flat = [(b // n, b % n) for b in range(6)]
        assert flat == list(itertools.product(range(2), range(3)))
