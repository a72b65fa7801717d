"""Ornstein-Uhlenbeck noise model.

Autocovariance, the accumulated dephasing exposure beta(tau), the
configuration-dependent corner decay factor, and an exact-discretization
trajectory sampler that serves as the Monte Carlo oracle for all the
closed-form ensemble averages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, UsageError

BETA_SERIES_CUTOFF = 1e-6


class Coupling(str, Enum):
    """How the qubits see the noise: one shared source (CQN) or one each (IQN)."""

    CQN = "CQN"
    IQN = "IQN"


class AveragingMode(str, Enum):
    """Exponent convention for the ensemble-averaged corner decay.

    PaperLiteral uses exp(-2*beta) for CQN and exp(-4*beta) for IQN, with
    the coupling strength absorbed.  GaussianExact applies the Gaussian
    characteristic function <exp(i*phi)> = exp(-<phi^2>/2) to the actual
    accumulated phases, giving exp(-8*lam^2*beta) for CQN and
    exp(-4*lam^2*beta) for IQN.
    """

    PAPER_LITERAL = "PaperLiteral"
    GAUSSIAN_EXACT = "GaussianExact"


@dataclass(frozen=True)
class NoiseParams:
    """Noise description: memory parameter g (inverse time), coupling strength
    lam (dimensionless), wiring and averaging convention."""

    g: float
    lam: float = 1.0
    coupling: Coupling = Coupling.CQN
    mode: AveragingMode = AveragingMode.PAPER_LITERAL

    def __post_init__(self):
        if not self.g > 0:
            raise DomainError(f"g must be > 0, got {self.g}")
        if not self.lam > 0:
            raise DomainError(f"lam must be > 0, got {self.lam}")


def ou_autocorrelation(g: float, dt_abs: float) -> float:
    """Stationary autocovariance (g/2) * exp(-g*|dt|)."""
    if not g > 0:
        raise DomainError(f"g must be > 0, got {g}")
    if dt_abs < 0:
        raise DomainError(f"dt_abs must be >= 0, got {dt_abs}")
    return 0.5 * g * math.exp(-g * dt_abs)


def ou_beta(g: float, tau: float) -> float:
    """Accumulated dephasing exposure: the double time integral of the
    autocovariance over [0, tau]^2, equal to (g*tau + exp(-g*tau) - 1)/g.

    For g*tau < 1e-6 the two-term series g*tau^2/2 - g^2*tau^3/6 avoids
    the cancellation in the direct formula.
    """
    if not g > 0:
        raise DomainError(f"g must be > 0, got {g}")
    if tau < 0:
        raise DomainError(f"tau must be >= 0, got {tau}")
    x = g * tau
    if x < BETA_SERIES_CUTOFF:
        return 0.5 * g * tau * tau - g * g * tau ** 3 / 6.0
    return (x + math.exp(-x) - 1.0) / g


def dephasing_rate(params: NoiseParams) -> float:
    """Decay exponent k in Gamma = exp(-k * beta) for the given configuration."""
    common = params.coupling is Coupling.CQN
    if params.mode is AveragingMode.PAPER_LITERAL:
        return 2.0 if common else 4.0
    lam2 = params.lam * params.lam
    return 8.0 * lam2 if common else 4.0 * lam2


def dephasing_factor(params: NoiseParams, beta: float) -> float:
    """Multiplicative decay of the state's anti-diagonal corners, in (0, 1]."""
    if beta < 0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    return math.exp(-dephasing_rate(params) * beta)


@dataclass(frozen=True)
class OUTrajectory:
    """One discretized noise path chi(t_k) on a uniform grid, with the running
    trapezoidal integral int_0^{t_k} chi ds alongside."""

    dt: float
    values: np.ndarray
    integral: np.ndarray

    def __post_init__(self):
        if not self.dt > 0:
            raise UsageError(f"dt must be > 0, got {self.dt}")
        if len(self.values) < 1 or len(self.values) != len(self.integral):
            raise UsageError("values and integral must be equal-length, non-empty")
        steps = np.diff(self.integral)
        expect = 0.5 * self.dt * (self.values[:-1] + self.values[1:])
        if self.integral[0] != 0.0 or not np.allclose(steps, expect, atol=1e-12, rtol=0):
            raise UsageError("integral is not the trapezoidal accumulation of values")


def _stream(seed: int) -> np.random.Generator:
    """Counter-based Philox stream; independent trajectories use seed + index."""
    if seed < 0:
        raise UsageError(f"seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.Philox(key=seed))


def sample_ou_trajectory(g: float, dt: float, n_steps: int, seed: int) -> OUTrajectory:
    """Stationary OU path via the exact one-step transition, deterministic per seed.

    chi_0 ~ N(0, g/2); chi_{k+1} = chi_k * exp(-g*dt) + N(0, (g/2)(1 - exp(-2*g*dt))).
    Returns n_steps + 1 samples covering [0, n_steps*dt].
    """
    if n_steps < 1:
        raise UsageError(f"n_steps must be >= 1, got {n_steps}")
    if not dt > 0:
        raise UsageError(f"dt must be > 0, got {dt}")
    if not g > 0:
        raise DomainError(f"g must be > 0, got {g}")
    z = _stream(seed).standard_normal(n_steps + 1)
    decay = math.exp(-g * dt)
    innov = math.sqrt(0.5 * g * (1.0 - decay * decay))
    values = np.empty(n_steps + 1)
    values[0] = math.sqrt(0.5 * g) * z[0]
    for k in range(n_steps):
        values[k + 1] = values[k] * decay + innov * z[k + 1]
    integral = np.empty(n_steps + 1)
    integral[0] = 0.0
    acc = 0.0
    half_dt = 0.5 * dt
    for k in range(n_steps):
        acc = acc + half_dt * (values[k] + values[k + 1])
        integral[k + 1] = acc
    return OUTrajectory(dt=dt, values=values, integral=integral)


def sample_ou_integrals(g: float, dt: float, checkpoint_steps, n_traj: int,
                        seed: int, chunk_size: int = 4096) -> np.ndarray:
    """Trapezoidal integrals int_0^{k*dt} chi for many trajectories at once.

    Trajectory i draws from the Philox stream keyed seed + i and reproduces
    sample_ou_trajectory(g, dt, max_step, seed + i) bit for bit; the result
    is therefore independent of chunk_size.  Shape: (n_traj, len(checkpoint_steps)).
    """
    if n_traj < 1:
        raise UsageError(f"n_traj must be >= 1, got {n_traj}")
    if not dt > 0:
        raise UsageError(f"dt must be > 0, got {dt}")
    if not g > 0:
        raise DomainError(f"g must be > 0, got {g}")
    steps = [int(s) for s in checkpoint_steps]
    if not steps or any(s < 0 for s in steps):
        raise UsageError(f"checkpoint steps must be non-negative, got {checkpoint_steps}")
    n_steps = max(steps)
    if n_steps < 1:
        raise UsageError("at least one checkpoint must be a positive step")
    cols: dict[int, list[int]] = {}
    for col, s in enumerate(steps):
        cols.setdefault(s, []).append(col)

    decay = math.exp(-g * dt)
    innov = math.sqrt(0.5 * g * (1.0 - decay * decay))
    stationary = math.sqrt(0.5 * g)
    half_dt = 0.5 * dt
    out = np.empty((n_traj, len(steps)))
    for start in range(0, n_traj, chunk_size):
        cnt = min(chunk_size, n_traj - start)
        z = np.empty((cnt, n_steps + 1))
        for i in range(cnt):
            z[i] = _stream(seed + start + i).standard_normal(n_steps + 1)
        chi = stationary * z[:, 0]
        acc = np.zeros(cnt)
        for col in cols.get(0, ()):
            out[start:start + cnt, col] = 0.0
        for k in range(n_steps):
            prev = chi
            chi = prev * decay + innov * z[:, k + 1]
            acc = acc + half_dt * (prev + chi)
            for col in cols.get(k + 1, ()):
                out[start:start + cnt, col] = acc
    return out
