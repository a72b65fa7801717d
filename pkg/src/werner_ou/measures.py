"""Information-theoretic measures on two-qubit states.

Von Neumann entropy, post-measurement states, both sides of the
memory-assisted entropic uncertainty relation and its tightness, the
spin-flip (Wootters) concurrence with an X-state fast path, and the
entanglement witness built from the initial state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .linalg import (
    EIGENVALUE_CLAMP,
    IDENTITY_2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    as_matrix,
    clamp_spectrum,
    hermitian_eigenvalues,
    kron,
    matrix_sqrt_psd,
    partial_trace,
)

_SPIN_FLIP = np.kron(PAULI_Y, PAULI_Y)


def von_neumann_entropy(rho) -> float:
    """-sum(lam * log2(lam)) over the spectrum, with 0*log(0) = 0.  In bits."""
    evals = clamp_spectrum(hermitian_eigenvalues(rho), EIGENVALUE_CLAMP)
    s = 0.0
    for ev in evals:
        if ev > 0.0:
            s -= ev * math.log2(ev)
    return max(s, 0.0)


def observable_projectors(obs) -> tuple[np.ndarray, np.ndarray]:
    """Eigenprojectors of a single-qubit Hermitian observable with two
    distinct eigenvalues, built from the resolvent identity."""
    obs = as_matrix(obs, dims=(2,))
    hi, lo = hermitian_eigenvalues(obs)
    if abs(hi - lo) <= 1e-10:
        raise DomainError("observable is degenerate: eigenvalues "
                          f"{hi!r} and {lo!r} coincide")
    p_hi = (obs - lo * IDENTITY_2) / (hi - lo)
    return p_hi, IDENTITY_2 - p_hi


def post_measurement_state(rho, obs) -> np.ndarray:
    """Dephase qubit 1 in the eigenbasis of obs: sum_n (P_n x I) rho (P_n x I)."""
    rho = as_matrix(rho, dims=(4,))
    out = np.zeros_like(rho)
    for proj in observable_projectors(obs):
        op = kron(proj, IDENTITY_2)
        out += op @ rho @ op
    return out


@dataclass(frozen=True, eq=False)
class MeasurementPair:
    """Two single-qubit observables and their complementarity c (max squared
    eigenvector overlap).  The lifted projectors are cached for reuse."""

    a: np.ndarray
    b: np.ndarray
    c: float
    ops_a: tuple[np.ndarray, ...] = field(repr=False)
    ops_b: tuple[np.ndarray, ...] = field(repr=False)


def measurement_pair(a, b) -> MeasurementPair:
    """Build a MeasurementPair, checking both observables have spectrum {+1, -1}."""
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    for name, obs in (("A", a), ("B", b)):
        hi, lo = hermitian_eigenvalues(obs)
        if abs(hi - 1.0) > 1e-9 or abs(lo + 1.0) > 1e-9:
            raise DomainError(f"observable {name} must have eigenvalues +/-1, "
                              f"got {hi!r}, {lo!r}")
    projs_a = observable_projectors(a)
    projs_b = observable_projectors(b)
    c = max(float(np.trace(pa @ pb).real) for pa in projs_a for pb in projs_b)
    c = min(max(c, 0.0), 1.0)
    if c <= 0.0:
        raise DomainError("complementarity came out non-positive")
    return MeasurementPair(
        a=a, b=b, c=c,
        ops_a=tuple(kron(p, IDENTITY_2) for p in projs_a),
        ops_b=tuple(kron(p, IDENTITY_2) for p in projs_b))


DEFAULT_PAIR = measurement_pair(PAULI_X, PAULI_Z)


def _dephased(rho: np.ndarray, ops) -> np.ndarray:
    out = ops[0] @ rho @ ops[0]
    out += ops[1] @ rho @ ops[1]
    return out


def uncertainty_sides(rho, pair: MeasurementPair = DEFAULT_PAIR) -> tuple[float, float, float]:
    """Left side, right side and tightness of the uncertainty relation.

    L = [S(rho_A2) - S(rho_2)] + [S(rho_B2) - S(rho_2)]
    R = S(rho_12) - S(rho_2) + log2(1/c)
    U = L - R
    """
    rho = as_matrix(rho, dims=(4,))
    s_2 = von_neumann_entropy(partial_trace(rho, keep=2))
    s_12 = von_neumann_entropy(rho)
    s_a = von_neumann_entropy(_dephased(rho, pair.ops_a))
    s_b = von_neumann_entropy(_dephased(rho, pair.ops_b))
    left = (s_a - s_2) + (s_b - s_2)
    right = s_12 - s_2 + math.log2(1.0 / pair.c)
    return left, right, left - right


def concurrence_wootters(rho) -> float:
    """Spin-flip concurrence max{0, sqrt(nu1) - sqrt(nu2) - sqrt(nu3) - sqrt(nu4)}.

    nu_i are the descending eigenvalues of rho * (sy x sy) rho* (sy x sy),
    obtained as the spectrum of the Hermitian similar form
    sqrt(rho) rho_tilde sqrt(rho).
    """
    rho = as_matrix(rho, dims=(4,))
    rho_tilde = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    root = matrix_sqrt_psd(rho)
    nus = clamp_spectrum(hermitian_eigenvalues(root @ rho_tilde @ root))
    # zero out spectrum below the matmul rounding floor: sqrt would amplify
    # 1e-16 product noise into ~1e-8 error on near-pure states
    roots = [math.sqrt(nu) if nu > 1e-14 else 0.0 for nu in nus]
    c = roots[0] - roots[1] - roots[2] - roots[3]
    return min(max(c, 0.0), 1.0)


def concurrence_xstate(p: float, gamma: float) -> float:
    """Closed-form concurrence max{0, p*gamma - (1-p)/2} of the averaged X state."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must be in [0, 1], got {p}")
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must be in (0, 1], got {gamma}")
    return max(0.0, p * gamma - (1.0 - p) / 2.0)


def entanglement_witness(rho_t, rho_0) -> float:
    """Witness value Tr[rho(t) rho_0] - 1/2; positive values certify entanglement
    relative to the operator I/2 - rho_0."""
    rho_t = as_matrix(rho_t, dims=(4,))
    rho_0 = as_matrix(rho_0, dims=(4,))
    val = complex(np.trace(rho_t @ rho_0))
    if abs(val.imag) >= 1e-12:
        raise DomainError(f"witness trace has imaginary part {val.imag:.3e}")
    return val.real - 0.5


@dataclass(frozen=True)
class MeasureRecord:
    """One sampled point of the dynamics: time, both uncertainty sides (bits),
    tightness, concurrence and witness value."""

    tau: float
    left: float
    right: float
    tightness: float
    concurrence: float
    witness: float

    def __post_init__(self):
        if abs(self.tightness - (self.left - self.right)) > 1e-10:
            raise DomainError("tightness must equal left - right")
        if self.left < self.right - 1e-9:
            raise DomainError(f"uncertainty relation violated at tau={self.tau}: "
                              f"L={self.left!r} < R={self.right!r}")
        if not 0.0 <= self.concurrence <= 1.0:
            raise DomainError(f"concurrence {self.concurrence!r} outside [0, 1]")


def measure_state(rho, tau: float, rho_0, pair: MeasurementPair = DEFAULT_PAIR,
                  concurrence: float | None = None) -> MeasureRecord:
    """Evaluate all measures on one state.  Pass a precomputed concurrence to
    skip the spin-flip eigensolve (used by sweeps over analytic X states)."""
    left, right, tight = uncertainty_sides(rho, pair)
    if concurrence is None:
        concurrence = concurrence_wootters(rho)
    return MeasureRecord(tau=tau, left=left, right=right, tightness=tight,
                         concurrence=concurrence,
                         witness=entanglement_witness(rho, rho_0))
