"""Dense complex linear algebra for fixed-size two-qubit objects.

Only dimensions 2 and 4 are supported.  Matrices are plain complex128
ndarrays; the eigensolver is a cyclic complex Jacobi iteration, which is
dependency-free and robust for these tiny Hermitian problems.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, PositivityError, UsageError

SUPPORTED_DIMS = (2, 4)

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

HERMITICITY_TOL = 1e-10
EIGENVALUE_CLAMP = 1e-10
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def as_matrix(m, dims=SUPPORTED_DIMS) -> np.ndarray:
    """Coerce to a square complex array of an allowed dimension."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise UsageError(f"expected a square matrix with dim in {dims}, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise DomainError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product of two single-qubit operators (left factor acts on qubit 1).

    Row-major block convention: result[2i+k, 2j+l] = a[i, j] * b[k, l].
    """
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(rho, keep: int) -> np.ndarray:
    """Reduced state of one qubit of a two-qubit density matrix.

    keep=1 traces out qubit 2, keep=2 traces out qubit 1.
    """
    rho = as_matrix(rho, dims=(4,))
    if keep not in (1, 2):
        raise UsageError(f"keep must be 1 or 2, got {keep!r}")
    r = rho.reshape(2, 2, 2, 2)
    if keep == 1:
        return np.einsum("ikjk->ij", r)
    return np.einsum("kikj->ij", r)


def _check_hermitian(a: np.ndarray, tol: float) -> None:
    dev = np.abs(a - a.conj().T).max()
    if dev > tol:
        raise DomainError(f"matrix is not Hermitian: max|M - M^dag| = {dev:.3e} > {tol:.0e}")


def _jacobi(a: np.ndarray, want_vectors: bool):
    """Cyclic complex Jacobi on a Hermitian matrix.

    Converges when the off-diagonal Frobenius norm drops below
    JACOBI_OFF_TOL, capped at JACOBI_MAX_SWEEPS sweeps.  Plain Python
    complex scalars beat numpy indexing at these sizes.
    """
    n = a.shape[0]
    m = [[complex(a[i, j]) for j in range(n)] for i in range(n)]
    # symmetrize (M + M^dag)/2 so tiny asymmetries cannot bias the rotation
    for i in range(n):
        m[i][i] = complex(m[i][i].real, 0.0)
        for j in range(i + 1, n):
            h = 0.5 * (m[i][j] + m[j][i].conjugate())
            m[i][j] = h
            m[j][i] = h.conjugate()
    v = None
    if want_vectors:
        v = [[1.0 + 0j if i == j else 0.0 + 0j for j in range(n)] for i in range(n)]
    for _ in range(JACOBI_MAX_SWEEPS):
        off = 0.0
        for i in range(n):
            row = m[i]
            for j in range(i + 1, n):
                x = row[j]
                off += x.real * x.real + x.imag * x.imag
        if math.sqrt(2.0 * off) < JACOBI_OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p][q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                diff = (m[q][q].real - m[p][p].real) / (2.0 * mag)
                if diff >= 0.0:
                    t = 1.0 / (diff + math.sqrt(diff * diff + 1.0))
                else:
                    t = -1.0 / (-diff + math.sqrt(diff * diff + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sp = s * phase
                spc = sp.conjugate()
                app = m[p][p].real
                aqq = m[q][q].real
                m[p][p] = complex(app * c * c - 2.0 * mag * c * s + aqq * s * s, 0.0)
                m[q][q] = complex(app * s * s + 2.0 * mag * c * s + aqq * c * c, 0.0)
                m[p][q] = 0.0 + 0j
                m[q][p] = 0.0 + 0j
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = m[i][p]
                    aiq = m[i][q]
                    m[i][p] = aip * c - aiq * spc
                    m[i][q] = aip * sp + aiq * c
                    m[p][i] = m[i][p].conjugate()
                    m[q][i] = m[i][q].conjugate()
                if v is not None:
                    for i in range(n):
                        vip = v[i][p]
                        viq = v[i][q]
                        v[i][p] = vip * c - viq * spc
                        v[i][q] = vip * sp + viq * c
    vals = [m[i][i].real for i in range(n)]
    order = sorted(range(n), key=lambda k: -vals[k])
    evals = [vals[k] for k in order]
    if v is None:
        return evals, None
    vecs = np.array([[v[i][k] for k in order] for i in range(n)], dtype=complex)
    return evals, vecs


def hermitian_eigenvalues(m) -> list[float]:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    a = as_matrix(m)
    _check_hermitian(a, HERMITICITY_TOL)
    evals, _ = _jacobi(a, want_vectors=False)
    return evals


def hermitian_eigensystem(m) -> tuple[list[float], np.ndarray]:
    """Eigenvalues (descending) and the matching unitary of eigenvectors (columns)."""
    a = as_matrix(m)
    _check_hermitian(a, HERMITICITY_TOL)
    evals, vecs = _jacobi(a, want_vectors=True)
    return evals, vecs


def clamp_spectrum(evals, tol: float = EIGENVALUE_CLAMP) -> list[float]:
    """Zero out round-off negatives; anything below -tol is a real bug."""
    out = []
    for ev in evals:
        if ev < -tol:
            raise PositivityError(f"eigenvalue {ev:.3e} below -{tol:.0e}: matrix is not PSD")
        out.append(0.0 if ev < 0.0 else ev)
    return out


def check_density_matrix(rho, herm_tol: float = 1e-12, trace_tol: float = 1e-12,
                         psd_tol: float = EIGENVALUE_CLAMP) -> np.ndarray:
    """Validate the density-matrix invariants: Hermitian, unit trace, PSD."""
    rho = as_matrix(rho)
    dev = np.abs(rho - rho.conj().T).max()
    if dev > herm_tol:
        raise DomainError(f"density matrix not Hermitian: max deviation {dev:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise DomainError(f"density matrix trace {tr!r} differs from 1")
    evals = hermitian_eigenvalues(rho)
    if evals[-1] < -psd_tol:
        raise PositivityError(f"density matrix has eigenvalue {evals[-1]:.3e} < -{psd_tol:.0e}")
    return rho


def matrix_sqrt_psd(rho) -> np.ndarray:
    """Hermitian square root of a PSD matrix via its eigensystem."""
    evals, vecs = hermitian_eigensystem(rho)
    roots = [math.sqrt(ev) for ev in clamp_spectrum(evals)]
    return (vecs * np.asarray(roots)) @ vecs.conj().T
