import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_density(seed: int, dim: int = 4) -> np.ndarray:
    """Random full-rank density matrix (Wishart normalized to unit trace)."""
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_hermitian(seed: int, dim: int = 4, scale: float = 1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (a + a.conj().T)


def random_xstate(seed: int) -> np.ndarray:
    """Random valid X-shaped two-qubit density matrix."""
    rng = np.random.default_rng(seed)
    d = rng.dirichlet(np.ones(4))
    rho = np.diag(d).astype(complex)
    # corner magnitudes bounded by the geometric means keep the state PSD
    m14 = rng.uniform(0, 1) * np.sqrt(d[0] * d[3])
    m23 = rng.uniform(0, 1) * np.sqrt(d[1] * d[2])
    ph14, ph23 = rng.uniform(0, 2 * np.pi, size=2)
    rho[0, 3] = m14 * np.exp(1j * ph14)
    rho[3, 0] = rho[0, 3].conjugate()
    rho[1, 2] = m23 * np.exp(1j * ph23)
    rho[2, 1] = rho[1, 2].conjugate()
    return rho
