"""Closed-form analytics: frozen reference values and structural invariants.

Expected values marked "brute force" were computed with the independent
oracle named next to them (recurrence iteration, direct summation, scalar
bisection on the defining equation) and frozen here.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groverlab import analytics
from groverlab.analytics import (
    amplitudes,
    averaged_success,
    optimal_iterations,
    optimal_stopping,
    shape,
    success_probability,
    trig_sum,
    z_constant,
)


def recurrence_pair(n, t, j):
    """Independent oracle: iterate the two-term recurrence j times."""
    k = l = 1 / math.sqrt(n)
    for _ in range(j):
        k, l = ((n - 2 * t) * k + 2 * (n - t) * l) / n, ((n - 2 * t) * l - 2 * t * k) / n
    return k, l


shapes_nontrivial = st.integers(2, 4096).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n - 1))
)


class TestShape:
    def test_quarter_table(self):
        assert shape(4, 1).angle == pytest.approx(math.pi / 6, abs=1e-15)

    def test_empty_solution_set(self):
        assert shape(977, 0).angle == 0.0

    def test_full_solution_set(self):
        assert shape(64, 64).angle == pytest.approx(math.pi / 2, abs=1e-15)

    def test_large_sparse(self):
        s = shape(2**20, 1)
        assert s.angle == pytest.approx(9.765627e-4, abs=1e-10)
        assert math.sin(s.angle) ** 2 * s.N == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n,t", [(0, 0), (-3, 0), (5, -1), (5, 6)])
    def test_rejects_bad_arguments(self, n, t):
        with pytest.raises(ValueError):
            shape(n, t)

    @given(st.integers(1, 10**9).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
    def test_angle_identity(self, nt):
        n, t = nt
        s = shape(n, t)
        assert 0 <= s.angle <= math.pi / 2
        assert math.sin(s.angle) ** 2 == pytest.approx(t / n, abs=1e-12)


class TestAmplitudes:
    def test_certainty_after_one_iteration(self):
        pair = amplitudes(shape(4, 1), 1)
        assert pair.k == pytest.approx(1.0, abs=1e-15)
        assert pair.l == pytest.approx(0.0, abs=1e-15)

    def test_uniform_at_zero_iterations(self):
        pair = amplitudes(shape(77, 13), 0)
        assert pair.k == pytest.approx(1 / math.sqrt(77), abs=1e-15)
        assert pair.l == pytest.approx(1 / math.sqrt(77), abs=1e-15)

    def test_matches_recurrence_small_case(self):
        pair = amplitudes(shape(8, 1), 2)
        k, l = recurrence_pair(8, 1, 2)
        assert pair.k == pytest.approx(k, abs=1e-12)
        assert pair.l == pytest.approx(l, abs=1e-12)

    def test_rejects_empty_solution_set(self):
        with pytest.raises(ValueError):
            amplitudes(shape(8, 0), 1)

    def test_full_table_convention(self):
        pair = amplitudes(shape(9, 9), 3)
        assert pair.l == 0.0
        assert 9 * pair.k**2 == pytest.approx(1.0, abs=1e-12)

    def test_recurrence_equivalence_sampled(self):
        rng = np.random.default_rng(1)
        for _ in range(150):
            n = int(rng.integers(2, 4097))
            t = int(rng.integers(1, n + 1))
            j = int(rng.integers(0, 501))
            pair = amplitudes(shape(n, t), j)
            k, l = recurrence_pair(n, t, j)
            assert abs(pair.k - k) < 1e-10
            assert abs(pair.l - l) < 1e-10

    @given(shapes_nontrivial, st.integers(0, 2000))
    @settings(max_examples=200)
    def test_normalization(self, nt, j):
        n, t = nt
        pair = amplitudes(shape(n, t), j)
        assert t * pair.k**2 + (n - t) * pair.l**2 == pytest.approx(1.0, abs=1e-12)


class TestSuccessProbability:
    def test_certainty_case(self):
        assert success_probability(shape(4, 1), 1) == pytest.approx(1.0, abs=1e-15)

    @given(st.integers(1, 10**6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
    def test_uniform_measurement_at_zero(self, nt):
        n, t = nt
        assert success_probability(shape(n, t), 0) == pytest.approx(t / n, abs=1e-12)

    def test_early_stopping_point(self):
        assert success_probability(shape(2**20, 1), 596) == pytest.approx(0.8442, abs=1e-4)


class TestOptimalIterations:
    def test_large_sparse(self):
        assert optimal_iterations(shape(2**20, 1)) == 804

    def test_quarter_table(self):
        assert optimal_iterations(shape(4, 1)) == 1

    @pytest.mark.parametrize("n", [16, 64, 256])
    def test_quarter_density_independent_of_size(self, n):
        assert optimal_iterations(shape(n, n // 4)) == 1

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            optimal_iterations(shape(10, 0))

    def test_failure_bound_sampled(self):
        rng = np.random.default_rng(2)
        for _ in range(300):
            n = int(rng.integers(2, 4097))
            t = int(rng.integers(1, max(2, 3 * n // 4 + 1)))
            s = shape(n, t)
            m = optimal_iterations(s)
            assert 1 - success_probability(s, m) <= t / n + 1e-12


class TestNonMonotonicity:
    @pytest.mark.parametrize("n", [256, 1024, 4096, 2**17, 2**20])
    def test_dip_at_sqrt_2n(self, n):
        s = shape(n, 1)
        assert success_probability(s, round(math.sqrt(2 * n))) <= 0.095 + 0.01

    @pytest.mark.parametrize("n", [256, 1024, 4096, 2**17, 2**20])
    def test_near_zero_at_twice_optimal(self, n):
        s = shape(n, 1)
        j = math.floor(math.pi / (2 * s.angle))
        assert success_probability(s, j) <= 4 / n


class TestAveragedSuccess:
    @given(shapes_nontrivial)
    def test_single_draw_is_uniform_measurement(self, nt):
        n, t = nt
        assert averaged_success(shape(n, t), 1) == pytest.approx(t / n, abs=1e-12)

    def test_frozen_value(self):
        # brute force: mean of sin^2((2j+1) asin(1/4)) over j = 0..3
        value = averaged_success(shape(16, 1), 4)
        assert value == pytest.approx(0.6012306213378906, abs=1e-12)
        assert value == pytest.approx(0.6011, abs=5e-4)

    def test_matches_brute_force_mean(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            n = int(rng.integers(2, 2049))
            t = int(rng.integers(1, n))
            m = int(rng.integers(1, 501))
            s = shape(n, t)
            j = np.arange(m)
            brute = float(np.mean(np.sin((2 * j + 1) * s.angle) ** 2))
            assert abs(averaged_success(s, m) - brute) < 1e-10

    @given(shapes_nontrivial, st.integers(1, 2000))
    @settings(max_examples=200)
    def test_quarter_floor(self, nt, m):
        n, t = nt
        s = shape(n, t)
        if m >= 1 / math.sin(2 * s.angle):
            assert averaged_success(s, m) >= 0.25

    @pytest.mark.parametrize("t", [0, 16])
    def test_rejects_degenerate_shapes(self, t):
        with pytest.raises(ValueError):
            averaged_success(shape(16, t), 4)


class TestTrigSum:
    def test_two_terms_cancel(self):
        assert trig_sum(math.pi / 4, 2) == pytest.approx(0.0, abs=1e-15)

    def test_single_term(self):
        assert trig_sum(0.1, 1) == pytest.approx(math.cos(0.1), abs=1e-15)

    def test_direct_sum(self):
        direct = sum(math.cos((2 * j + 1) * 0.3) for j in range(5))
        assert trig_sum(0.3, 5) == pytest.approx(direct, abs=1e-12)

    def test_identity_on_random_inputs(self):
        rng = np.random.default_rng(4)
        for _ in range(1000):
            alpha = float(rng.uniform(0.01, math.pi - 0.01))
            m = int(rng.integers(1, 1001))
            direct = float(np.cos((2 * np.arange(m) + 1) * alpha).sum())
            assert abs(trig_sum(alpha, m) - direct) < 1e-10

    @pytest.mark.parametrize("alpha", [0.0, math.pi, -math.pi, 2 * math.pi])
    def test_rejects_multiples_of_pi(self, alpha):
        with pytest.raises(ValueError):
            trig_sum(alpha, 3)


class TestOptimalStopping:
    def test_large_sparse_plan(self):
        plan = optimal_stopping(shape(2**20, 1))
        assert plan.j_star == 596
        assert plan.success_prob == pytest.approx(0.8442, abs=1e-4)
        assert plan.expected_iterations == pytest.approx(706, abs=0.5)

    def test_sparse_limit_constants(self):
        plan = optimal_stopping(shape(10**8, 1))
        root = math.sqrt(10**8)
        assert plan.j_star / root == pytest.approx(0.58278, abs=1e-3)
        assert plan.expected_iterations / root == pytest.approx(0.69003, abs=1e-3)

    def test_expected_iterations_identity(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(8, 100000))
            t = int(rng.integers(1, n))
            plan = optimal_stopping(shape(n, t))
            assert plan.j_star >= 1
            assert plan.expected_iterations == pytest.approx(
                plan.j_star / plan.success_prob, abs=1e-9
            )

    def test_beats_or_matches_neighbors(self):
        # integer minimizer of E among candidates: check against a local scan
        for n, t in [(2**20, 1), (4096, 1), (1 << 14, 3), (512, 5)]:
            s = shape(n, t)
            plan = optimal_stopping(s)
            cost = plan.expected_iterations
            for j in (plan.j_star - 1, plan.j_star + 1):
                if j >= 1:
                    assert cost <= j / success_probability(s, j) + 1e-9

    def test_dense_shapes_have_a_plan(self):
        # no first-branch root here; the scan fallback still returns j >= 1
        for n, t in [(10, 5), (16, 9), (100, 30), (8, 7)]:
            plan = optimal_stopping(shape(n, t))
            assert plan.j_star >= 1
            assert 0 < plan.success_prob <= 1

    @pytest.mark.parametrize("t", [0, 32])
    def test_rejects_degenerate_shapes(self, t):
        with pytest.raises(ValueError):
            optimal_stopping(shape(32, t))


class TestZConstant:
    def test_value(self):
        assert z_constant() == pytest.approx(2.33112, abs=1e-5)

    def test_success_probability_limit(self):
        z = z_constant()
        assert math.sin(z / 2) ** 2 == pytest.approx(0.84458, abs=1e-5)

    def test_expected_cost_slope(self):
        z = z_constant()
        assert z / (4 * math.sin(z / 2) ** 2) == pytest.approx(0.69003, abs=1e-5)

    def test_solves_defining_equation(self):
        z = z_constant()
        assert math.tan(z / 2) == pytest.approx(z, abs=1e-8)
