"""State preparation and time evolution.

Initial mixed entangled states, the diagonal two-qubit phase unitary,
deterministic evolution at fixed noise amplitudes, and the two ensemble
averages: the closed-form X-shaped state and its Monte Carlo counterpart
built from sampled noise trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, UsageError
from .noise import Coupling, NoiseParams, dephasing_factor, ou_beta, sample_ou_integrals


@dataclass(frozen=True)
class WernerParams:
    """Initial-state purity p and the single-qubit energy kappa."""

    p: float
    kappa: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must be in [0, 1], got {self.p}")


class Provenance(str, Enum):
    DETERMINISTIC = "Deterministic"
    ANALYTIC_AVERAGED = "AnalyticAveraged"
    MONTE_CARLO_AVERAGED = "MonteCarloAveraged"


@dataclass(frozen=True)
class EvolvedState:
    """A two-qubit state at time tau.  stderr carries per-entry standard errors
    (real + i*imag) for Monte Carlo averages, None otherwise."""

    rho: np.ndarray
    tau: float
    provenance: Provenance
    stderr: np.ndarray | None = None


def werner_state(p: float) -> np.ndarray:
    """(1-p)/4 * I4 + p |psi><psi| with |psi> = (|00> + |11>)/sqrt(2)."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must be in [0, 1], got {p}")
    rho = np.diag([(1 + p) / 4, (1 - p) / 4, (1 - p) / 4, (1 + p) / 4]).astype(complex)
    rho[0, 3] = rho[3, 0] = p / 2
    return rho


def unitary(t: float, kappa: float = 0.0, lam: float = 1.0,
            chi_a: float = 1.0, chi_b: float = 1.0) -> np.ndarray:
    """Diagonal two-qubit phase unitary at fixed noise amplitudes chi_a, chi_b.

    The first entry carries phase t*(-2*kappa + (chi_a + chi_b)*lam); the
    others -t*(2*kappa + s*lam) with s = -chi_a+chi_b, chi_a-chi_b,
    chi_a+chi_b.  The sign asymmetry of the first entry is kept verbatim;
    it cancels from every observable once chi_a = chi_b.
    """
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    phases = np.array([
        t * (-2.0 * kappa + (chi_a + chi_b) * lam),
        -t * (2.0 * kappa + (-chi_a + chi_b) * lam),
        -t * (2.0 * kappa + (chi_a - chi_b) * lam),
        -t * (2.0 * kappa + (chi_a + chi_b) * lam),
    ])
    return np.diag(np.exp(1j * phases))


def evolve_deterministic(p: float, t: float, kappa: float = 0.0, lam: float = 1.0,
                         chi_a: float = 1.0, chi_b: float = 1.0) -> EvolvedState:
    """U rho0 U^dag for one fixed noise realization.

    The diagonal of the initial state survives unchanged; for chi_a = chi_b
    the corners pick up the pure phase exp(+/- 4i t chi lam).
    """
    u = unitary(t, kappa=kappa, lam=lam, chi_a=chi_a, chi_b=chi_b)
    rho = u @ werner_state(p) @ u.conj().T
    return EvolvedState(rho=rho, tau=t, provenance=Provenance.DETERMINISTIC)


def averaged_state(wp: WernerParams, noise: NoiseParams, tau: float) -> EvolvedState:
    """Closed-form ensemble average: X-shaped, corners scaled by the dephasing factor.

    kappa drops out (it only ever contributes a global phase to the corners
    for equal amplitudes and cancels entry-wise before averaging).
    """
    gamma = dephasing_factor(noise, ou_beta(noise.g, tau))
    rho = werner_state(wp.p)
    rho[0, 3] = rho[3, 0] = wp.p / 2 * gamma
    return EvolvedState(rho=rho, tau=tau, provenance=Provenance.ANALYTIC_AVERAGED)


@dataclass(frozen=True)
class PhaseFactorStats:
    """Monte Carlo estimate of the mean corner phase factor <exp(i*phi)>."""

    lam: float
    tau: float
    mean: complex
    se_real: float
    se_imag: float
    n_traj: int


def _checkpoint_steps(taus, dt: float) -> list[int]:
    steps = []
    for tau in taus:
        if tau < 0:
            raise DomainError(f"tau must be >= 0, got {tau}")
        k = int(round(tau / dt))
        if abs(k * dt - tau) > 1e-9 * max(1.0, abs(tau)):
            raise UsageError(f"tau={tau} is not an integer multiple of dt={dt}")
        steps.append(k)
    return steps


def mc_phase_factor_stats(coupling: Coupling, g: float, lams, taus,
                          n_traj: int, dt: float, seed: int) -> list[PhaseFactorStats]:
    """Sample trajectories once and estimate <exp(i*phi)> for each (lam, tau).

    CQN uses one shared trajectory per sample (phase 4*lam*integral); IQN uses
    two independent trajectories (phase 2*lam*(integral_a + integral_b)),
    drawn from streams seed..seed+n-1 and seed+n..seed+2n-1.  Estimates at a
    checkpoint are bit-identical whether or not later checkpoints exist,
    because each trajectory consumes its stream in step order.
    """
    if n_traj < 100:
        raise UsageError(f"n_traj must be >= 100, got {n_traj}")
    steps = _checkpoint_steps(taus, dt)
    if coupling is Coupling.CQN:
        totals = sample_ou_integrals(g, dt, steps, n_traj, seed)
    else:
        totals = sample_ou_integrals(g, dt, steps, n_traj, seed)
        totals = totals + sample_ou_integrals(g, dt, steps, n_traj, seed + n_traj)
    root_n = math.sqrt(n_traj)
    out = []
    for lam in lams:
        rate = 4.0 * lam if coupling is Coupling.CQN else 2.0 * lam
        w = np.exp(1j * rate * totals)
        for col, tau in enumerate(taus):
            col_w = w[:, col]
            out.append(PhaseFactorStats(
                lam=lam, tau=tau, mean=complex(col_w.mean()),
                se_real=float(col_w.real.std(ddof=1) / root_n),
                se_imag=float(col_w.imag.std(ddof=1) / root_n),
                n_traj=n_traj))
    return out


def mc_averaged_state(wp: WernerParams, noise: NoiseParams, tau: float,
                      n_traj: int, dt: float, seed: int) -> EvolvedState:
    """Brute-force ensemble average over sampled trajectories.

    Every sampled state shares the initial diagonal (the unitary is diagonal),
    so the trajectory mean only moves the corners.  The per-entry standard
    errors of the corner estimate are reported in EvolvedState.stderr as
    se_real + 1j*se_imag.
    """
    if n_traj < 100:
        raise UsageError(f"n_traj must be >= 100, got {n_traj}")
    stats = mc_phase_factor_stats(noise.coupling, noise.g, [noise.lam], [tau],
                                  n_traj, dt, seed)[0]
    half_p = wp.p / 2
    rho = werner_state(wp.p)
    corner = half_p * stats.mean
    rho[0, 3] = corner
    rho[3, 0] = corner.conjugate()
    stderr = np.zeros((4, 4), dtype=complex)
    stderr[0, 3] = stderr[3, 0] = half_p * (stats.se_real + 1j * stats.se_imag)
    return EvolvedState(rho=rho, tau=tau, provenance=Provenance.MONTE_CARLO_AVERAGED,
                        stderr=stderr)
