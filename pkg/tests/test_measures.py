import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_density, random_xstate
from werner_ou.errors import DomainError, PositivityError
from werner_ou.evolution import averaged_state, evolve_deterministic, WernerParams, werner_state
from werner_ou.linalg import IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z, partial_trace
from werner_ou.measures import (
    DEFAULT_PAIR,
    MeasureRecord,
    concurrence_wootters,
    concurrence_xstate,
    entanglement_witness,
    measure_state,
    measurement_pair,
    post_measurement_state,
    uncertainty_sides,
    von_neumann_entropy,
)
from werner_ou.noise import Coupling, NoiseParams

BELL = werner_state(1.0)
MIXED = np.eye(4, dtype=complex) / 4


def xstate(p: float, gamma: float) -> np.ndarray:
    rho = werner_state(p)
    rho[0, 3] = rho[3, 0] = p / 2 * gamma
    return rho


def concurrence_bruteforce(rho: np.ndarray) -> float:
    """Independent spin-flip concurrence: general eigensolver on rho @ rho_tilde."""
    yy = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))
    nus = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)
    nus = np.sort(np.abs(nus.real))[::-1]
    s = np.sqrt(nus)
    return max(0.0, float(s[0] - s[1] - s[2] - s[3]))


class TestEntropy:
    def test_maximally_mixed(self):
        assert von_neumann_entropy(MIXED) == pytest.approx(2.0, abs=1e-12)

    def test_pure_state(self):
        assert von_neumann_entropy(BELL) == pytest.approx(0.0, abs=1e-10)

    def test_werner_half(self):
        # -0.625 log2 0.625 - 3 * 0.125 log2 0.125
        assert von_neumann_entropy(werner_state(0.5)) == pytest.approx(
            1.5487949406953987, abs=1e-12)

    def test_single_qubit(self):
        assert von_neumann_entropy(IDENTITY_2 / 2) == pytest.approx(1.0, abs=1e-13)

    def test_positivity_error(self):
        with pytest.raises(PositivityError):
            von_neumann_entropy(np.diag([0.6, 0.4, 1e-8, -1e-8]).astype(complex))

    @given(st.integers(0, 5_000))
    def test_range(self, seed):
        s = von_neumann_entropy(random_density(seed))
        assert 0.0 <= s <= 2.0


class TestPostMeasurement:
    def test_z_on_bell(self):
        expected = np.diag([0.5, 0, 0, 0.5]).astype(complex)
        assert np.abs(post_measurement_state(BELL, PAULI_Z) - expected).max() < 1e-14

    def test_x_on_bell(self):
        # (|00>+|11>)/sqrt(2) = (|++>+|-->)/sqrt(2); dephasing in the x basis
        # leaves diag 1/4 plus corners 1/4 on both anti-diagonal pairs
        expected = np.full((4, 4), 0.0, dtype=complex)
        expected[np.arange(4), np.arange(4)] = 0.25
        expected[0, 3] = expected[3, 0] = expected[1, 2] = expected[2, 1] = 0.25
        assert np.abs(post_measurement_state(BELL, PAULI_X) - expected).max() < 1e-14

    def test_mixed_fixed_point(self):
        assert np.abs(post_measurement_state(MIXED, PAULI_Z) - MIXED).max() < 1e-15

    @given(st.integers(0, 5_000), st.sampled_from(["x", "y", "z"]))
    def test_trace_and_hermiticity_preserved(self, seed, axis):
        obs = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}[axis]
        rho = random_density(seed)
        out = post_measurement_state(rho, obs)
        assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
        assert np.abs(out - out.conj().T).max() < 1e-12

    def test_degenerate_observable(self):
        with pytest.raises(DomainError):
            post_measurement_state(BELL, IDENTITY_2)


class TestMeasurementPair:
    def test_default_complementarity(self):
        assert DEFAULT_PAIR.c == 0.5

    def test_parallel_pair(self):
        assert measurement_pair(PAULI_Z, PAULI_Z).c == pytest.approx(1.0, abs=1e-12)

    def test_eigenvalue_check(self):
        with pytest.raises(DomainError):
            measurement_pair(2 * PAULI_Z, PAULI_X)


class TestUncertaintySides:
    def test_bell(self):
        left, right, tight = uncertainty_sides(BELL)
        assert abs(left) < 1e-9 and abs(right) < 1e-9 and abs(tight) < 1e-9

    def test_maximally_mixed(self):
        left, right, tight = uncertainty_sides(MIXED)
        assert left == pytest.approx(2.0, abs=1e-9)
        assert right == pytest.approx(2.0, abs=1e-9)
        assert tight == pytest.approx(0.0, abs=1e-9)

    def test_werner_half_regression(self):
        # frozen from an independent LAPACK-based evaluation of the same pipeline
        left, right, tight = uncertainty_sides(werner_state(0.5))
        assert left == pytest.approx(1.6225562489182659, abs=1e-9)
        assert right == pytest.approx(1.5487949406953987, abs=1e-9)
        assert tight == pytest.approx(0.0737613082228672, abs=1e-9)
        assert left >= right - 1e-9

    @given(st.integers(0, 2_000))
    def test_bound_holds_on_random_states(self, seed):
        left, right, _ = uncertainty_sides(random_density(seed))
        assert left >= right - 1e-9

    @given(st.integers(0, 2_000))
    def test_bound_holds_on_random_xstates(self, seed):
        left, right, _ = uncertainty_sides(random_xstate(seed))
        assert left >= right - 1e-9

    @given(st.floats(0, 1), st.floats(0.001, 1))
    def test_memory_marginal_entropy_is_one(self, p, gamma):
        rho = xstate(p, gamma)
        assert von_neumann_entropy(partial_trace(rho, keep=2)) == pytest.approx(1.0, abs=1e-12)


class TestConcurrence:
    def test_bell(self):
        assert concurrence_wootters(BELL) == pytest.approx(1.0, abs=1e-9)

    @given(st.floats(0, 1))
    def test_werner_closed_form(self, p):
        assert concurrence_wootters(werner_state(p)) == pytest.approx(
            max(0.0, (3 * p - 1) / 2), abs=1e-9)

    def test_werner_example(self):
        assert concurrence_wootters(werner_state(0.6)) == pytest.approx(0.4, abs=1e-9)

    @given(st.integers(0, 1_000))
    def test_matches_bruteforce_on_xstates(self, seed):
        rho = random_xstate(seed)
        assert concurrence_wootters(rho) == pytest.approx(
            concurrence_bruteforce(rho), abs=1e-9)

    @given(st.integers(0, 1_000))
    def test_matches_bruteforce_on_random_states(self, seed):
        rho = random_density(seed)
        assert concurrence_wootters(rho) == pytest.approx(
            concurrence_bruteforce(rho), abs=1e-9)

    @given(st.floats(0, 1), st.floats(1e-6, 1))
    def test_xstate_fast_path(self, p, gamma):
        assert concurrence_xstate(p, gamma) == pytest.approx(
            concurrence_wootters(xstate(p, gamma)), abs=1e-9)

    def test_xstate_examples(self):
        assert concurrence_xstate(1.0, 1.0) == 1.0
        assert concurrence_xstate(1.0, 0.25) == pytest.approx(0.25, abs=1e-15)
        assert concurrence_xstate(0.5, 0.4) == 0.0  # 0.2 - 0.25 clamps at zero

    def test_xstate_domain(self):
        with pytest.raises(DomainError):
            concurrence_xstate(1.2, 0.5)
        with pytest.raises(DomainError):
            concurrence_xstate(0.5, 0.0)


class TestWitness:
    def test_self_overlap(self):
        assert entanglement_witness(BELL, BELL) == pytest.approx(0.5, abs=1e-14)

    def test_mixed_against_bell(self):
        assert entanglement_witness(MIXED, BELL) == pytest.approx(-0.25, abs=1e-14)

    @given(st.floats(0, 1))
    def test_initial_value(self, p):
        rho = werner_state(p)
        assert entanglement_witness(rho, rho) == pytest.approx(
            (3 * p ** 2 - 1) / 4, abs=1e-10)

    @given(st.floats(0.05, 2), st.floats(0, 10))
    def test_noiseless_cosine(self, lam, t):
        # p=1, chi=1: EW(t) = cos(4 lam t)/2
        rho_t = evolve_deterministic(1.0, t, lam=lam).rho
        assert entanglement_witness(rho_t, BELL) == pytest.approx(
            0.5 * math.cos(4 * lam * t), abs=1e-10)

    @given(st.floats(0.1, 2), st.floats(0, 5))
    def test_periodicity(self, lam, t):
        rho_a = evolve_deterministic(1.0, t, lam=lam).rho
        rho_b = evolve_deterministic(1.0, t + math.pi / (2 * lam), lam=lam).rho
        ew_a = entanglement_witness(rho_a, BELL)
        ew_b = entanglement_witness(rho_b, BELL)
        assert ew_a == pytest.approx(ew_b, abs=1e-10)

    def test_detection_threshold(self):
        thr = 1 / math.sqrt(3)
        for p in np.linspace(0, 1, 101):
            ew0 = entanglement_witness(werner_state(p), werner_state(p))
            assert (ew0 > 0) == (p > thr + 1e-12) or abs(p - thr) < 1e-9

    def test_imaginary_trace_rejected(self):
        bad = BELL.copy()
        bad[0, 3] = 0.5j  # deliberately non-Hermitian input
        with pytest.raises(DomainError):
            entanglement_witness(bad, BELL)


class TestMeasureRecord:
    def test_full_record(self):
        noise = NoiseParams(g=0.4, coupling=Coupling.IQN)
        state = averaged_state(WernerParams(p=0.8), noise, 2.0)
        rec = measure_state(state.rho, 2.0, werner_state(0.8))
        assert rec.tightness == rec.left - rec.right
        assert rec.left >= rec.right - 1e-9
        assert 0.0 <= rec.concurrence <= 1.0

    def test_tightness_mismatch_rejected(self):
        with pytest.raises(DomainError):
            MeasureRecord(tau=0, left=1.0, right=0.5, tightness=0.4,
                          concurrence=0.5, witness=0.0)

    def test_bound_violation_rejected(self):
        with pytest.raises(DomainError):
            MeasureRecord(tau=0, left=0.5, right=1.0, tightness=-0.5,
                          concurrence=0.5, witness=0.0)

    def test_concurrence_range_enforced(self):
        with pytest.raises(DomainError):
            MeasureRecord(tau=0, left=1.0, right=0.5, tightness=0.5,
                          concurrence=1.5, witness=0.0)
