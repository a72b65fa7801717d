"""Exception types shared across the simulation stack.

The CLI maps these onto exit codes: usage errors exit 1, domain and
positivity errors exit 2, Monte Carlo validation failures exit 3.
"""


class SimulationError(Exception):
    """Base class for every error raised by this package."""


class UsageError(SimulationError):
    """Caller passed invalid arguments or an invalid configuration."""


class DomainError(SimulationError):
    """A parameter or matrix is outside its mathematical domain."""


class PositivityError(DomainError):
    """A matrix that must be positive semidefinite has a genuinely negative
    eigenvalue (below the round-off clamp)."""


class MCValidationError(SimulationError):
    """A Monte Carlo cross-check exceeded its z-score budget."""
