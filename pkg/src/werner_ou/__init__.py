"""Two non-interacting qubits dephased by classical Ornstein-Uhlenbeck noise.

Closed-form and Monte Carlo ensemble averages of a purity-p mixed entangled
initial state under common or independent noise wiring, with entropic
uncertainty, concurrence and witness dynamics plus a sweep CLI.
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    MCValidationError,
    PositivityError,
    SimulationError,
    UsageError,
)
from .linalg import (
    IDENTITY_2,
    IDENTITY_4,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    check_density_matrix,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    kron,
    partial_trace,
)
from .noise import (
    AveragingMode,
    Coupling,
    NoiseParams,
    OUTrajectory,
    dephasing_factor,
    ou_autocorrelation,
    ou_beta,
    sample_ou_integrals,
    sample_ou_trajectory,
)
from .evolution import (
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
from .measures import (
    DEFAULT_PAIR,
    MeasurementPair,
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
from .sweep import (
    CSV_HEADER,
    MCSettings,
    MCValidationReport,
    PRESETS,
    SweepConfig,
    SweepResult,
    SweepRow,
    emit_csv,
    preset_config,
    run_mc_validation,
    run_sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
