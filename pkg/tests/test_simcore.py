import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import DensityOracle, circuit_unitary
from shadowlab.simcore import (
    Circuit,
    Conditional,
    Gate,
    Measure,
    NoiseModel,
    PauliString,
    Reset,
    StateVector,
    apply_gate,
    cx,
    cz,
    expectation,
    fidelity,
    h,
    haar_single_qubit,
    ket,
    pauli_exp,
    pauli_twirl,
    run_circuit,
    run_circuit_batch,
    ry,
    sample_counts,
    u1,
    u_from_zyz,
    x,
    zero_state,
    zyz_angles,
)


def cluster_ring(n):
    c = Circuit(n)
    for q in range(n):
        c.append(h(q))
    for q in range(n):
        c.append(cz(q, (q + 1) % n))
    return c


class TestApplyGate:
    def test_x_flips_zero(self):
        out = apply_gate(ket("0"), x(0))
        assert abs(out.amplitudes[1] - 1.0) < 1e-12

    def test_cx_truth_table(self):
        out = apply_gate(ket("10"), cx(1, 0))
        assert abs(out.amplitudes[0b11] - 1.0) < 1e-12

    def test_cluster_matches_dense_oracle(self):
        n = 4
        circ = cluster_ring(n)
        u = circuit_unitary(circ, n)
        expected = u @ zero_state(n).amplitudes
        state = zero_state(n)
        for g in circ.gates():
            state = apply_gate(state, g)
        assert np.max(np.abs(state.amplitudes - expected)) < 1e-10
        assert abs(expectation(state, PauliString("ZXZI")) - 1.0) < 1e-10

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            apply_gate(ket("0"), x(3))

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            u1(0, np.array([[1.0, 0.1], [0.0, 1.0]]))

    @settings(max_examples=20, deadline=None)
    @given(st.integers(2, 5), st.randoms(use_true_random=False))
    def test_norm_preserved(self, n, pyrandom):
        rng = np.random.default_rng(pyrandom.randint(0, 2**31))
        state = zero_state(n)
        for _ in range(6):
            kind = rng.integers(0, 3)
            if kind == 0:
                state = apply_gate(state, u1(int(rng.integers(0, n)), haar_single_qubit(rng)))
            elif kind == 1:
                a, b = rng.choice(n, size=2, replace=False)
                state = apply_gate(state, cx(int(a), int(b)))
            else:
                a, b = rng.choice(n, size=2, replace=False)
                state = apply_gate(state, cz(int(a), int(b)))
        assert abs(np.sum(np.abs(state.amplitudes) ** 2) - 1.0) < 1e-10


class TestRunCircuit:
    def test_noiseless_bell(self):
        state, _ = run_circuit(zero_state(2), Circuit(2, [h(0), cx(0, 1)]))
        assert abs(expectation(state, PauliString("ZZ")) - 1.0) < 1e-12

    def test_zero_noise_matches_apply_gate(self):
        rng = np.random.default_rng(7)
        n = 3
        circ = Circuit(n, [h(0), cx(0, 1), ry(2, 0.3), cz(1, 2)])
        traj, _ = run_circuit(zero_state(n), circ, NoiseModel(), rng)
        direct = zero_state(n)
        for g in circ.gates():
            direct = apply_gate(direct, g)
        assert np.array_equal(traj.amplitudes, direct.amplitudes)

    def test_full_single_qubit_depolarizing(self):
        # X then certain Pauli error: <Z> averages to 1/3 over trajectories
        rng = np.random.default_rng(11)
        circ = Circuit(1, [x(0)])
        noise = NoiseModel(p_single=1.0)
        batch = 30000
        psi = np.zeros((batch, 2), dtype=np.complex128)
        psi[:, 0] = 1.0
        run_circuit_batch(psi, circ, noise, rng)
        vals = np.einsum("bi,bi->b", psi.conj(), psi * np.array([1.0, -1.0])).real
        oracle = DensityOracle(1)
        oracle.run(circ, p_single=1.0, p_two=0.0)
        target = oracle.expectation("Z")
        assert abs(target - 1.0 / 3.0) < 1e-12
        stderr = vals.std(ddof=1) / np.sqrt(batch)
        assert abs(vals.mean() - target) < 5 * stderr

    @pytest.mark.parametrize("p_single,p_two", [(0.05, 0.1), (0.2, 0.3)])
    def test_trajectory_channel_agreement(self, p_single, p_two):
        rng = np.random.default_rng(23)
        n = 3
        circ = Circuit(n, [h(0), cx(0, 1), ry(2, 0.7), cx(1, 2), cz(0, 2)])
        noise = NoiseModel(p_single=p_single, p_two=p_two)
        batch = 20000
        psi = np.zeros((batch, 1 << n), dtype=np.complex128)
        psi[:, 0] = 1.0
        run_circuit_batch(psi, circ, noise, rng)
        oracle = DensityOracle(n)
        oracle.run(circ, p_single, p_two)
        for letters in ("ZZI", "XIX", "IYZ"):
            p = PauliString(letters)
            from shadowlab.simcore.pauli import expectation_batch

            vals = expectation_batch(psi, p).real
            target = oracle.expectation(letters)
            stderr = vals.std(ddof=1) / np.sqrt(batch)
            assert abs(vals.mean() - target) < 5 * max(stderr, 1e-6)

    def test_condition_before_measure_rejected(self):
        circ = Circuit(1)
        circ.append(Conditional(x(0), "m"))
        with pytest.raises(ValueError):
            run_circuit(zero_state(1), circ)

    def test_measure_and_conditional_correction(self):
        # collapse |+> and flip conditioned on the record: deterministic |0>
        rng = np.random.default_rng(3)
        circ = Circuit(1, [h(0), Measure((0,), ("m",)), Conditional(x(0), "m", 1)])
        for _ in range(10):
            state, bits = run_circuit(zero_state(1), circ, rng=rng)
            assert abs(state.amplitudes[0] - 1.0) < 1e-12 or abs(state.amplitudes[0] + 1.0) < 1e-12
            assert bits["m"] in (0, 1)

    def test_forced_measurement(self):
        circ = Circuit(1, [h(0), Measure((0,), ("m",), forced=(1,))])
        state, bits = run_circuit(zero_state(1), circ, rng=np.random.default_rng(0))
        assert bits["m"] == 1
        assert abs(abs(state.amplitudes[1]) - 1.0) < 1e-12

    def test_forced_impossible_outcome_rejected(self):
        circ = Circuit(1, [Measure((0,), ("m",), forced=(1,))])
        with pytest.raises(ValueError):
            run_circuit(zero_state(1), circ, rng=np.random.default_rng(0))

    def test_reset(self):
        circ = Circuit(1, [x(0), Reset(0)])
        state, _ = run_circuit(zero_state(1), circ, rng=np.random.default_rng(0))
        assert abs(state.amplitudes[0] - 1.0) < 1e-12


class TestExpectation:
    def test_basic_values(self):
        assert expectation(ket("0"), PauliString("Z")) == pytest.approx(1.0)
        plus = apply_gate(ket("0"), h(0))
        assert expectation(plus, PauliString("Z")) == pytest.approx(0.0, abs=1e-12)

    def test_cluster_stabilizer(self):
        n = 4
        state = zero_state(n)
        for g in cluster_ring(n).gates():
            state = apply_gate(state, g)
        stab = PauliString.from_sites(n, {3: "Z", 0: "X", 1: "Z"})
        assert expectation(state, stab) == pytest.approx(1.0, abs=1e-10)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            expectation(ket("00"), PauliString("Z"))


class TestSampleCounts:
    def test_deterministic_one(self):
        counts = sample_counts(ket("1"), 100, np.random.default_rng(0))
        assert counts == {"1": 100}

    def test_full_readout_flip(self):
        counts = sample_counts(ket("1"), 100, np.random.default_rng(0), NoiseModel(p_m=1.0))
        assert counts == {"0": 100}

    def test_plus_state_binomial(self):
        plus = apply_gate(ket("0"), h(0))
        counts = sample_counts(plus, 10**6, np.random.default_rng(42))
        frac = counts["1"] / 10**6
        assert abs(frac - 0.5) < 0.002

    def test_global_depolarizing_uniform(self):
        rng = np.random.default_rng(5)
        counts = sample_counts(ket("00"), 40000, rng, NoiseModel(p_global=1.0))
        for label in ("00", "01", "10", "11"):
            assert abs(counts[label] / 40000 - 0.25) < 0.02

    def test_invalid_shots(self):
        with pytest.raises(ValueError):
            sample_counts(ket("0"), 0, np.random.default_rng(0))


class TestHaar:
    def test_unitarity(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            u = haar_single_qubit(rng)
            assert np.max(np.abs(u.conj().T @ u - np.eye(2))) < 1e-12

    def test_first_and_second_moments(self):
        rng = np.random.default_rng(2024)
        samples = 10**5
        vals = np.empty(samples)
        for i in range(samples):
            u = haar_single_qubit(rng)
            vals[i] = abs(u[0, 0]) ** 2
        assert abs(vals.mean() - 0.5) < 0.01
        assert abs((vals**2).mean() - 1.0 / 3.0) < 0.01

    def test_zyz_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            u = haar_single_qubit(rng)
            rec = u_from_zyz(*zyz_angles(u))
            # equality up to global phase
            phase = u[np.unravel_index(np.argmax(np.abs(u)), u.shape)]
            phase /= rec[np.unravel_index(np.argmax(np.abs(u)), u.shape)]
            assert np.max(np.abs(u - phase * rec)) < 1e-12


class TestTwirl:
    class _FixedRng:
        def __init__(self, value):
            self.value = value

        def integers(self, lo, hi):
            return self.value

    def test_identity_twirl_unchanged(self):
        circ = Circuit(2, [cx(0, 1)])
        out = pauli_twirl(circ, self._FixedRng(0))  # P = II
        assert len(out.ops) == 1

    def test_xi_conjugation_rule(self):
        from shadowlab.simcore.twirl import _conjugation_table

        table = _conjugation_table(cx(0, 1).dense())
        assert table["XI"] == "XX"  # X on control propagates to target
        # oracle: direct 4x4 conjugation
        g = cx(0, 1).dense()
        xi = np.kron(np.eye(2), np.array([[0, 1], [1, 0]]))
        xx = np.kron(np.array([[0, 1], [1, 0]]), np.array([[0, 1], [1, 0]]))
        assert np.max(np.abs(g @ xi @ g.conj().T - xx)) < 1e-12

    def test_non_clifford_rejected(self):
        circ = Circuit(2, [pauli_exp((0, 1), "XY", 0.3)])
        with pytest.raises(ValueError):
            pauli_twirl(circ, np.random.default_rng(0))

    def test_twirl_equivalence_100_circuits(self):
        rng = np.random.default_rng(17)
        n = 3
        for _ in range(100):
            circ = Circuit(n)
            for _ in range(5):
                kind = rng.integers(0, 3)
                if kind == 0:
                    circ.append(u1(int(rng.integers(0, n)), haar_single_qubit(rng)))
                else:
                    a, b = rng.choice(n, size=2, replace=False)
                    circ.append(cx(int(a), int(b)) if kind == 1 else cz(int(a), int(b)))
            twirled = pauli_twirl(circ, rng)
            u0 = circuit_unitary(circ, n)
            u1m = circuit_unitary(twirled, n)
            phase = np.trace(u0.conj().T @ u1m) / (1 << n)
            assert abs(abs(phase) - 1.0) < 1e-10
            assert np.max(np.abs(u1m - phase * u0)) < 1e-10


class TestStateVector:
    def test_norm_invariant(self):
        with pytest.raises(ValueError):
            StateVector(1, np.array([1.0, 1.0]))

    def test_max_qubits(self):
        with pytest.raises(ValueError):
            StateVector(21)

    def test_fidelity(self):
        assert fidelity(ket("0"), ket("1")) == pytest.approx(0.0)
        assert fidelity(ket("0"), ket("0")) == pytest.approx(1.0)


class TestBackendParity:
    """Compiled kernels must agree with the numpy fallback."""

    def _random_psi(self, rng, batch, n):
        psi = rng.standard_normal((batch, 1 << n)) + 1j * rng.standard_normal((batch, 1 << n))
        return np.ascontiguousarray(psi)

    def test_gate_kernels(self):
        from shadowlab._core import fallback, kernels

        if kernels.IMPL == "numpy":
            pytest.skip("compiled extension not built")
        rng = np.random.default_rng(0)
        psi = self._random_psi(rng, 4, 5)
        u = haar_single_qubit(rng)
        u4 = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
        for name, args in [
            ("apply_1q", (3, u)),
            ("apply_2q", (1, 4, u4)),
            ("apply_cx", (2, 0)),
            ("apply_cz", (4, 1)),
        ]:
            a, b = psi.copy(), psi.copy()
            getattr(kernels, name)(a, *args)
            getattr(fallback, name)(b, *args)
            assert np.max(np.abs(a - b)) < 1e-12, name
        us = np.stack([haar_single_qubit(rng) for _ in range(4)])
        a, b = psi.copy(), psi.copy()
        kernels.apply_1q_distinct(a, 2, us)
        fallback.apply_1q_distinct(b, 2, us)
        assert np.max(np.abs(a - b)) < 1e-12

    def test_sampling_and_gram_kernels(self):
        from shadowlab._core import fallback, kernels

        if kernels.IMPL == "numpy":
            pytest.skip("compiled extension not built")
        rng = np.random.default_rng(1)
        psi = self._random_psi(rng, 6, 4)
        uniforms = rng.random(6)
        out_a = np.zeros(6, dtype=np.int64)
        out_b = np.zeros(6, dtype=np.int64)
        kernels.born_sample(psi, uniforms, out_a)
        fallback.born_sample(psi.copy(), uniforms, out_b)
        assert np.array_equal(out_a, out_b)

        rows_a = rng.standard_normal((7, 3, 2)) + 1j * rng.standard_normal((7, 3, 2))
        rows_b = rng.standard_normal((5, 3, 2)) + 1j * rng.standard_normal((5, 3, 2))
        ga = np.zeros((7, 5))
        gb = np.zeros((7, 5))
        kernels.overlap_gram(np.ascontiguousarray(rows_a), np.ascontiguousarray(rows_b), ga)
        fallback.overlap_gram(rows_a, rows_b, gb)
        assert np.max(np.abs(ga - gb)) < 1e-10

    def test_covariance_kernels(self):
        from shadowlab._core import fallback, kernels

        if kernels.IMPL == "numpy":
            pytest.skip("compiled extension not built")
        rng = np.random.default_rng(2)
        raw = rng.standard_normal((3, 8, 8))
        m = raw - raw.transpose(0, 2, 1)
        o = np.linalg.qr(rng.standard_normal((4, 4)))[0]
        a, b = m.copy(), m.copy()
        kernels.rotate_block(a, 2, np.ascontiguousarray(o))
        fallback.rotate_block(b, 2, o)
        assert np.max(np.abs(a - b)) < 1e-12
