"""Statevector simulator: exactness, operator independence, accounting, snapshots."""

import math

import numpy as np
import pytest

from groverlab import analytics
from groverlab.simulator import (
    DiffusionOperator,
    OracleSpec,
    StateVector,
    apply_diffusion,
    apply_phase_flip,
    collapsed_simulate,
    grover_iterate,
    load_statevector,
    measure,
    save_statevector,
    success_curve,
    uniform_state,
)


def random_diffusion(n: int, rng: np.random.Generator) -> DiffusionOperator:
    """Random unitary whose first column is the uniform vector: a Householder
    reflection mapping e0 to it, times a random unitary fixing e0."""
    u = np.full(n, 1 / math.sqrt(n), dtype=np.complex128)
    e0 = np.zeros(n, dtype=np.complex128)
    e0[0] = 1.0
    v = e0 - u
    norm = np.linalg.norm(v)
    house = np.eye(n, dtype=np.complex128)
    if norm > 1e-14:
        v = v / norm
        house -= 2.0 * np.outer(v, v.conj())
    z = rng.standard_normal((n - 1, n - 1)) + 1j * rng.standard_normal((n - 1, n - 1))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    block = np.eye(n, dtype=np.complex128)
    block[1:, 1:] = q
    return DiffusionOperator.custom(house @ block)


class TestUniformState:
    def test_amplitudes(self):
        state = uniform_state(5)
        np.testing.assert_allclose(state.amplitudes, np.full(5, 1 / math.sqrt(5)), atol=1e-15)

    def test_degenerate_dimension(self):
        assert uniform_state(1).amplitudes[0] == pytest.approx(1.0)

    def test_normalized(self):
        assert abs(uniform_state(2**10).norm() - 1.0) < 1e-12

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            uniform_state(0)


class TestPhaseFlip:
    def test_flips_marked_sign(self):
        state = apply_phase_flip(uniform_state(4), {2})
        np.testing.assert_allclose(state.amplitudes, [0.5, 0.5, -0.5, 0.5], atol=1e-15)

    def test_empty_set_is_identity(self):
        state = uniform_state(6)
        before = state.amplitudes.copy()
        apply_phase_flip(state, ())
        np.testing.assert_array_equal(state.amplitudes, before)

    def test_involution(self):
        rng = np.random.default_rng(0)
        amps = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        amps /= np.linalg.norm(amps)
        state = StateVector(amps.copy())
        apply_phase_flip(state, {1, 5})
        apply_phase_flip(state, {1, 5})
        np.testing.assert_allclose(state.amplitudes, amps, atol=1e-15)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            apply_phase_flip(uniform_state(4), {4})

    def test_oracle_accounting(self):
        oracle = OracleSpec(4, (2,))
        apply_phase_flip(uniform_state(4), oracle)
        assert oracle.query_count == 1


class TestDiffusion:
    def test_fixed_point_of_equal_amplitudes(self):
        state = uniform_state(9)
        before = state.amplitudes.copy()
        apply_diffusion(state)
        np.testing.assert_allclose(state.amplitudes, before, atol=1e-15)

    def test_certainty_case(self):
        state = apply_phase_flip(uniform_state(4), {2})
        apply_diffusion(state)
        np.testing.assert_allclose(state.amplitudes, [0, 0, 1, 0], atol=1e-14)

    @pytest.mark.parametrize("make_op", [
        DiffusionOperator.exact_dft,
        lambda n: random_diffusion(n, np.random.default_rng(7)),
    ])
    def test_fast_path_equals_matrix_path(self, make_op):
        rng = np.random.default_rng(1)
        amps = rng.standard_normal(7) + 1j * rng.standard_normal(7)
        amps /= np.linalg.norm(amps)
        fast = StateVector(amps.copy())
        slow = StateVector(amps.copy())
        op = make_op(7)
        apply_diffusion(fast)
        apply_diffusion(slow, op, via_matrix=True)
        np.testing.assert_allclose(fast.amplitudes, slow.amplitudes, atol=1e-9)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            apply_diffusion(uniform_state(4), DiffusionOperator.exact_dft(5))


class TestDiffusionOperator:
    @pytest.mark.parametrize("n", [2, 8, 64])
    def test_walsh_hadamard_valid(self, n):
        op = DiffusionOperator.walsh_hadamard(n)
        m = op.matrix
        np.testing.assert_allclose(m.conj().T @ m, np.eye(n), atol=1e-10)
        np.testing.assert_allclose(m[:, 0], np.full(n, 1 / math.sqrt(n)), atol=1e-10)

    @pytest.mark.parametrize("n", [2, 5, 6, 7, 31])
    def test_exact_dft_valid(self, n):
        op = DiffusionOperator.exact_dft(n)
        m = op.matrix
        np.testing.assert_allclose(m.conj().T @ m, np.eye(n), atol=1e-10)
        np.testing.assert_allclose(m[:, 0], np.full(n, 1 / math.sqrt(n)), atol=1e-10)

    def test_walsh_hadamard_rejects_non_power(self):
        with pytest.raises(ValueError):
            DiffusionOperator.walsh_hadamard(6)

    def test_custom_rejects_non_uniform_first_column(self):
        with pytest.raises(ValueError):
            DiffusionOperator.custom(np.eye(4, dtype=complex))

    def test_custom_rejects_non_unitary(self):
        bad = np.full((4, 4), 0.5, dtype=complex)
        with pytest.raises(ValueError):
            DiffusionOperator.custom(bad)


class TestGroverIterate:
    def test_certainty_measurement(self):
        oracle = OracleSpec(4, (2,))
        state = grover_iterate(uniform_state(4), oracle)
        assert measure(state, np.random.default_rng(0)) == 2
        assert oracle.query_count == 2

    @pytest.mark.parametrize("n,solutions", [(8, (3,)), (6, (1, 4))])
    def test_matches_closed_form(self, n, solutions):
        oracle = OracleSpec(n, solutions)
        op = DiffusionOperator.exact_dft(n)
        s = analytics.shape(n, len(solutions))
        state = uniform_state(n)
        for j in range(11):
            pair = analytics.amplitudes(s, j)
            for i in range(n):
                want = pair.k if oracle.contains(i) else pair.l
                assert abs(state.amplitudes[i] - want) < 1e-10
            grover_iterate(state, oracle, op)

    def test_operator_independence_via_matrices(self):
        rng = np.random.default_rng(11)
        for n in (4, 16, 64):
            t = int(rng.integers(1, n // 2 + 1))
            marks = tuple(int(i) for i in rng.choice(n, size=t, replace=False))
            operators = [DiffusionOperator.exact_dft(n), random_diffusion(n, rng)]
            if n & (n - 1) == 0:
                operators.append(DiffusionOperator.walsh_hadamard(n))
            results = []
            for op in operators:
                state = uniform_state(n)
                oracle = OracleSpec(n, marks)
                for _ in range(8):
                    grover_iterate(state, oracle, op, via_matrix=True)
                results.append(state.amplitudes)
            for other in results[1:]:
                np.testing.assert_allclose(results[0], other, atol=1e-9)

    def test_two_dimensional_invariance(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            n = int(rng.integers(3, 200))
            t = int(rng.integers(1, n))
            oracle = OracleSpec.random(n, t, rng)
            state = uniform_state(n)
            for _ in range(50):
                grover_iterate(state, oracle)
            on = state.amplitudes[oracle.indices]
            mask = np.ones(n, dtype=bool)
            mask[oracle.indices] = False
            assert np.ptp(on.real) < 1e-10 and np.max(np.abs(on.imag)) < 1e-10
            if mask.any():
                off = state.amplitudes[mask]
                assert np.ptp(off.real) < 1e-10 and np.max(np.abs(off.imag)) < 1e-10

    def test_norm_preserved_over_long_runs(self):
        state = uniform_state(37)
        oracle = OracleSpec(37, (1, 5, 20))
        for _ in range(10_000):
            grover_iterate(state, oracle)
        assert abs(state.norm() - 1.0) <= 1e-8

    def test_query_accounting(self):
        oracle = OracleSpec(64, (7, 9))
        state = uniform_state(64)
        for j in range(1, 101):
            grover_iterate(state, oracle)
            assert oracle.query_count == 2 * j


class TestMeasure:
    def test_point_mass(self):
        amps = np.zeros(5, dtype=complex)
        amps[3] = 1.0
        rng = np.random.default_rng(0)
        assert all(measure(StateVector(amps), rng) == 3 for _ in range(10))

    def test_uniform_frequencies(self):
        rng = np.random.default_rng(1)
        state = uniform_state(4)
        counts = np.bincount([measure(state, rng) for _ in range(100_000)], minlength=4)
        np.testing.assert_allclose(counts / 100_000, 0.25, atol=0.01)

    def test_matches_success_probability(self):
        # theta = pi/6 shape: certainty after the optimal single iteration
        s = analytics.shape(16, 4)
        oracle = OracleSpec(16, (0, 3, 9, 14))
        state = uniform_state(16)
        for _ in range(analytics.optimal_iterations(s)):
            grover_iterate(state, oracle)
        rng = np.random.default_rng(2)
        hits = sum(oracle.contains(measure(state, rng)) for _ in range(2000))
        p = analytics.success_probability(s, analytics.optimal_iterations(s))
        sigma = math.sqrt(max(p * (1 - p), 1e-12) / 2000)
        assert hits / 2000 == pytest.approx(p, abs=max(3 * sigma, 1e-9))

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            measure(StateVector(np.array([0.5, 0.5], dtype=complex)), np.random.default_rng(0))


class TestCollapsedSimulate:
    def test_certainty_case(self):
        pair = collapsed_simulate(analytics.shape(4, 1), 1)
        assert pair.k == pytest.approx(1.0, abs=1e-14)
        assert pair.l == pytest.approx(0.0, abs=1e-14)

    def test_zero_iterations_is_uniform(self):
        pair = collapsed_simulate(analytics.shape(900, 30), 0)
        assert pair.k == pytest.approx(1 / 30, abs=1e-15)
        assert pair.l == pytest.approx(1 / 30, abs=1e-15)

    def test_matches_full_statevector(self):
        s = analytics.shape(1024, 3)
        oracle = OracleSpec(1024, (5, 100, 1000))
        state = uniform_state(1024)
        for _ in range(50):
            grover_iterate(state, oracle)
        pair = collapsed_simulate(s, 50)
        assert abs(state.amplitudes[5] - pair.k) < 1e-9
        assert abs(state.amplitudes[0] - pair.l) < 1e-9

    def test_rejects_empty_solution_set(self):
        with pytest.raises(ValueError):
            collapsed_simulate(analytics.shape(8, 0), 1)

    def test_success_curve_matches_closed_form(self):
        s = analytics.shape(512, 7)
        curve = success_curve(s, 100)
        for j in (0, 1, 17, 100):
            assert curve[j] == pytest.approx(analytics.success_probability(s, j), abs=1e-10)

    def test_success_curve_empty_solution_set(self):
        assert np.all(success_curve(analytics.shape(64, 0), 20) == 0.0)


class TestSnapshot:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(3)
        amps = rng.standard_normal(13) + 1j * rng.standard_normal(13)
        amps /= np.linalg.norm(amps)
        state = StateVector(amps)
        path = tmp_path / "state.glab"
        save_statevector(state, path)
        loaded = load_statevector(path)
        np.testing.assert_array_equal(loaded.amplitudes, state.amplitudes)

    def test_golden_bytes(self, tmp_path):
        # N=4, solution {2}, one iteration: exactly e_2
        oracle = OracleSpec(4, (2,))
        state = grover_iterate(uniform_state(4), oracle)
        path = tmp_path / "golden.glab"
        save_statevector(state, path)
        expected = (
            b"GLAB"
            + (1).to_bytes(4, "little")
            + (4).to_bytes(8, "little")
            + np.array([0, 0, 0, 0, 1, 0, 0, 0], dtype="<f8").tobytes()
        )
        assert path.read_bytes() == expected

    def test_rejects_bad_magic(self, tmp_path):
        path = tmp_path / "bad.glab"
        path.write_bytes(b"NOPE" + bytes(12))
        with pytest.raises(ValueError):
            load_statevector(path)

    def test_rejects_truncation(self, tmp_path):
        state = uniform_state(4)
        path = tmp_path / "trunc.glab"
        save_statevector(state, path)
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(ValueError):
            load_statevector(path)
