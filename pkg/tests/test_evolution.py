import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from werner_ou.errors import DomainError, UsageError
from werner_ou.evolution import (
    EvolvedState,
    Provenance,
    WernerParams,
    averaged_state,
    evolve_deterministic,
    mc_averaged_state,
    mc_phase_factor_stats,
    unitary,
    werner_state,
)
from werner_ou.linalg import check_density_matrix, hermitian_eigenvalues
from werner_ou.noise import AveragingMode, Coupling, NoiseParams, dephasing_factor, ou_beta


def werner_spectrum(p: float) -> list[float]:
    return sorted([(1 + 3 * p) / 4, (1 - p) / 4, (1 - p) / 4, (1 - p) / 4], reverse=True)


class TestWernerState:
    def test_pure_limit(self):
        bell = np.zeros((4, 4), dtype=complex)
        bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
        assert np.allclose(werner_state(1.0), bell, atol=1e-15)

    def test_mixed_limit(self):
        assert np.allclose(werner_state(0.0), np.eye(4) / 4, atol=1e-15)

    def test_half(self):
        rho = werner_state(0.5)
        assert np.allclose(np.diag(rho), [0.375, 0.125, 0.125, 0.375], atol=1e-15)
        assert rho[0, 3] == 0.25

    @given(st.floats(0, 1))
    def test_valid_density(self, p):
        check_density_matrix(werner_state(p))

    def test_domain(self):
        with pytest.raises(DomainError):
            werner_state(1.5)
        with pytest.raises(DomainError):
            werner_state(-0.01)


class TestUnitary:
    def test_identity_at_zero(self):
        assert np.allclose(unitary(0.0, kappa=2.0, lam=3.0, chi_a=1, chi_b=-1),
                           np.eye(4), atol=1e-15)

    @given(st.floats(0, 50), st.floats(-3, 3), st.floats(0.01, 3),
           st.floats(-1, 1), st.floats(-1, 1))
    def test_pure_phases_and_unitary(self, t, kappa, lam, chi_a, chi_b):
        u = unitary(t, kappa=kappa, lam=lam, chi_a=chi_a, chi_b=chi_b)
        assert np.allclose(np.abs(np.diag(u)), 1.0, atol=1e-12)
        assert np.abs(u @ u.conj().T - np.eye(4)).max() < 1e-12

    def test_quarter_period_example(self):
        u = unitary(math.pi / 4, kappa=0.0, lam=1.0, chi_a=1.0, chi_b=1.0)
        expected = np.diag([np.exp(1j * math.pi / 2), 1.0, 1.0, np.exp(-1j * math.pi / 2)])
        assert np.abs(u - expected).max() < 1e-14

    def test_negative_time(self):
        with pytest.raises(DomainError):
            unitary(-0.1)


class TestDeterministicEvolution:
    def test_initial_state(self):
        st0 = evolve_deterministic(0.7, 0.0)
        assert np.allclose(st0.rho, werner_state(0.7), atol=1e-15)
        assert st0.provenance is Provenance.DETERMINISTIC

    @given(st.floats(0, 1), st.floats(0, 20), st.floats(0.1, 2), st.floats(-1, 1))
    def test_diagonal_invariant(self, p, t, lam, chi):
        rho = evolve_deterministic(p, t, lam=lam, chi_a=chi, chi_b=chi).rho
        assert np.allclose(np.diag(rho).real, np.diag(werner_state(p)).real, atol=1e-13)

    def test_corner_phase(self):
        # p=1, lam=1, chi=1, t=pi/8: corner picks up phase 4*t = pi/2
        rho = evolve_deterministic(1.0, math.pi / 8, lam=1.0, chi_a=1.0, chi_b=1.0).rho
        assert rho[0, 3] == pytest.approx(0.5j, abs=1e-14)

    @given(st.floats(0, 1), st.floats(0, 10), st.floats(-2, 2), st.floats(-2, 2))
    def test_spectrum_preserved(self, p, t, chi_a, chi_b):
        rho = evolve_deterministic(p, t, kappa=0.9, lam=1.1, chi_a=chi_a, chi_b=chi_b).rho
        assert hermitian_eigenvalues(rho) == pytest.approx(werner_spectrum(p), abs=1e-9)

    @given(st.floats(0, 1), st.floats(0, 10), st.floats(-5, 5))
    def test_kappa_cancels_for_shared_amplitude(self, p, t, kappa):
        with_k = evolve_deterministic(p, t, kappa=kappa, chi_a=1.0, chi_b=1.0).rho
        without = evolve_deterministic(p, t, kappa=0.0, chi_a=1.0, chi_b=1.0).rho
        assert np.abs(with_k - without).max() < 1e-12


class TestAveragedState:
    def test_initial(self):
        for coupling in Coupling:
            for mode in AveragingMode:
                noise = NoiseParams(g=0.4, lam=1.0, coupling=coupling, mode=mode)
                state = averaged_state(WernerParams(p=0.6), noise, 0.0)
                assert np.allclose(state.rho, werner_state(0.6), atol=1e-15)
                assert state.provenance is Provenance.ANALYTIC_AVERAGED

    def test_independent_corner_fixture(self):
        # 0.5 * exp(-4 * beta(1, 1)) with beta = 1/e (high-precision frozen value)
        state = averaged_state(WernerParams(p=1.0),
                               NoiseParams(g=1.0, coupling=Coupling.IQN), 1.0)
        assert state.rho[0, 3].real == pytest.approx(0.11478838855014964, abs=1e-13)
        assert state.rho[0, 3].imag == 0.0

    def test_full_dephasing_limit(self):
        state = averaged_state(WernerParams(p=0.8), NoiseParams(g=1.0), 1e6)
        assert abs(state.rho[0, 3]) < 1e-300
        assert np.allclose(np.diag(state.rho).real, [0.45, 0.05, 0.05, 0.45], atol=1e-15)

    @given(st.floats(0, 1), st.floats(0.01, 2), st.floats(0, 20),
           st.sampled_from(list(Coupling)), st.sampled_from(list(AveragingMode)))
    def test_x_structure_and_validity(self, p, g, tau, coupling, mode):
        noise = NoiseParams(g=g, lam=1.0, coupling=coupling, mode=mode)
        rho = averaged_state(WernerParams(p=p), noise, tau).rho
        check_density_matrix(rho)
        off = rho.copy()
        off[np.arange(4), np.arange(4)] = 0
        off[0, 3] = off[3, 0] = 0
        assert np.abs(off).max() == 0.0
        assert rho[0, 3].imag == 0.0 and rho[0, 3].real >= 0.0

    @given(st.floats(0.01, 1), st.floats(0.01, 2), st.floats(0, 20))
    def test_literal_corner_ordering(self, p, g, tau):
        # common wiring keeps coherence better in the literal convention
        common = averaged_state(WernerParams(p=p), NoiseParams(g=g), tau).rho
        indep = averaged_state(WernerParams(p=p),
                               NoiseParams(g=g, coupling=Coupling.IQN), tau).rho
        assert common[0, 3].real >= indep[0, 3].real - 1e-15


class TestMonteCarloAveraging:
    def test_diagonal_exact_and_provenance(self):
        noise = NoiseParams(g=0.4, lam=0.5, mode=AveragingMode.GAUSSIAN_EXACT)
        state = mc_averaged_state(WernerParams(p=0.7), noise, 1.0,
                                  n_traj=200, dt=0.05, seed=4)
        assert np.array_equal(np.diag(state.rho), np.diag(werner_state(0.7)))
        assert state.provenance is Provenance.MONTE_CARLO_AVERAGED
        assert state.stderr is not None
        assert state.stderr[0, 3].real > 0.0
        check_density_matrix(state.rho)

    def test_deterministic_given_seed(self):
        noise = NoiseParams(g=0.4, lam=0.5)
        a = mc_averaged_state(WernerParams(p=1.0), noise, 1.0, 500, 0.02, seed=8)
        b = mc_averaged_state(WernerParams(p=1.0), noise, 1.0, 500, 0.02, seed=8)
        assert np.array_equal(a.rho, b.rho)

    def test_common_matches_closed_form(self):
        g, lam, tau, n = 0.4, 0.5, 2.0, 20_000
        noise = NoiseParams(g=g, lam=lam, mode=AveragingMode.GAUSSIAN_EXACT)
        state = mc_averaged_state(WernerParams(p=1.0), noise, tau, n, 0.01, seed=21)
        target = 0.5 * math.exp(-8 * lam ** 2 * ou_beta(g, tau))
        z = (state.rho[0, 3].real - target) / state.stderr[0, 3].real
        assert abs(z) < 4.0

    def test_independent_matches_closed_form(self):
        g, lam, tau, n = 1.0, 1.0, 1.0, 20_000
        noise = NoiseParams(g=g, lam=lam, coupling=Coupling.IQN,
                            mode=AveragingMode.GAUSSIAN_EXACT)
        state = mc_averaged_state(WernerParams(p=1.0), noise, tau, n, 0.01, seed=22)
        target = 0.5 * math.exp(-4 * lam ** 2 * ou_beta(g, tau))
        z = (state.rho[0, 3].real - target) / state.stderr[0, 3].real
        assert abs(z) < 4.0

    def test_checkpoint_prefix_consistency(self):
        # estimates at tau are identical whether later checkpoints exist or not
        stats_multi = mc_phase_factor_stats(Coupling.CQN, 0.4, [0.5], [1.0, 2.0],
                                            200, 0.02, seed=13)
        stats_single = mc_phase_factor_stats(Coupling.CQN, 0.4, [0.5], [1.0],
                                             200, 0.02, seed=13)
        assert stats_multi[0].mean == stats_single[0].mean

    def test_convergence_rate(self):
        # quadrupling the trajectory count should about halve the RMS error
        g, lam, tau, dt = 0.4, 0.5, 1.0, 0.02
        noise = NoiseParams(g=g, lam=lam, mode=AveragingMode.GAUSSIAN_EXACT)
        target = 0.5 * math.exp(-8 * lam ** 2 * ou_beta(g, tau))
        errs = {n: [] for n in (800, 3200)}
        for k in range(16):
            for n in errs:
                state = mc_averaged_state(WernerParams(p=1.0), noise, tau, n, dt,
                                          seed=100_000 + 7919 * k)
                errs[n].append(state.rho[0, 3].real - target)
        rms = {n: math.sqrt(np.mean(np.square(e))) for n, e in errs.items()}
        ratio = rms[3200] / rms[800]
        assert 0.3 < ratio < 0.8

    def test_usage_errors(self):
        noise = NoiseParams(g=0.4)
        with pytest.raises(UsageError):
            mc_averaged_state(WernerParams(p=1.0), noise, 1.0, 99, 0.01, seed=0)
        with pytest.raises(UsageError):
            mc_averaged_state(WernerParams(p=1.0), noise, 1.0, 200, -0.01, seed=0)
        with pytest.raises(UsageError):
            # tau not an integer multiple of dt
            mc_averaged_state(WernerParams(p=1.0), noise, 1.005, 200, 0.01, seed=0)

    def test_params_validation(self):
        with pytest.raises(DomainError):
            WernerParams(p=-0.2)
        with pytest.raises(DomainError):
            WernerParams(p=1.0001)
