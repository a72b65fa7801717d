"""Closed-form tightness and concurrence curves kept for comparison plots.

These expressions are transcribed verbatim (natural logs, Mathematica-style
term grouping).  They disagree with the spin-flip concurrence away from
p = 1 and leave their real domain near beta = 0 for p < 1, so they are
never used by the sweep pipeline; evaluate them only to plot side-by-side
diagnostic curves.  Out-of-domain points return NaN.
"""

from __future__ import annotations

import math

from .errors import UsageError
from .noise import Coupling

_LOG16 = math.log(16.0)
_NAN = float("nan")


def _ln(x: float) -> float:
    return math.log(x) if x > 0.0 else _NAN


def _sqrt(x: float) -> float:
    return math.sqrt(x) if x >= 0.0 else _NAN


def _atanh(x: float) -> float:
    return math.atanh(x) if -1.0 < x < 1.0 else _NAN


def tightness_closed_form(coupling: Coupling, p: float, beta: float, n: float = 2.0) -> float:
    """Closed-form tightness curve for the averaged state; NaN off-domain."""
    if coupling is Coupling.CQN:
        e = math.exp(-0.5 * n * n * beta)
        e_inv = 1.0 / e
        t1 = (-4.0 * _atanh(e)
              - 2.0 * _ln(1.0 - 2.0 * e + p)
              + 2.0 * _ln(1.0 + 2.0 * e + p))
        t2 = (-_LOG16
              - 2.0 * _ln(0.25 - 0.25 * e)
              - 2.0 * _ln(1.0 + e)
              - 2.0 * (1.0 + p) * _ln(1.0 + p))
        t3 = ((1.0 + p) * _ln(1.0 - 2.0 * e + p)
              + (1.0 + p) * _ln(1.0 + 2.0 * e + p))
        return e * (t1 + e_inv * (t2 + t3)) / _LOG16
    if coupling is Coupling.IQN:
        x = math.exp(-4.0 * beta)
        x_inv = 1.0 / x
        xp = x * p
        u1 = (2.0 * _atanh(xp)
              + _ln(1.0 + p - 2.0 * xp)
              - _ln(1.0 + p + 2.0 * xp))
        u2 = (-2.0 * (1.0 + p) * _ln(1.0 + p)
              + (1.0 + p) * _ln(1.0 + p - 2.0 * xp))
        u3 = _ln(1.0 - xp) + _ln(1.0 + xp)
        u4 = (1.0 + p) * _ln(1.0 + p + 2.0 * xp)
        return x * (-2.0 * p * u1 + x_inv * (u2 - 2.0 * u3 + u4)) / _LOG16
    raise UsageError(f"unknown coupling {coupling!r}")


def concurrence_closed_form(coupling: Coupling, p: float, beta: float, n: float = 2.0) -> float:
    """Closed-form concurrence curve for the averaged state; NaN off-domain.

    Unlike the spin-flip value this can go negative (e.g. p = 0.5, beta = 0
    gives about -0.27 where the spin-flip concurrence is 0.25).
    """
    if coupling is Coupling.CQN:
        e = math.exp(-0.5 * n * n * beta)
        e_inv = 1.0 / e
        t4 = _sqrt(e * (-2.0 + e_inv + e_inv * p))
        t5 = _sqrt(e * (2.0 + e_inv + e_inv * p))
        return -_sqrt(1.0 - p) - 0.5 * t4 + 0.5 * t5
    if coupling is Coupling.IQN:
        x = math.exp(-4.0 * beta)
        x_inv = 1.0 / x
        return (-_sqrt(1.0 - p)
                - 0.5 * _sqrt(1.0 + p - 2.0 * x * p)
                + 0.5 * _sqrt(x * (x_inv + 2.0 * p + x_inv * p)))
    raise UsageError(f"unknown coupling {coupling!r}")
