"""Shared parameter validation.

The stability index alpha lives in the half-open interval (0, 0.5].  A few
distribution-level functions additionally accept ALPHA_ZERO_LIMIT, which
selects the closed-form alpha -> 0 limit instead of attempting quadrature
with catastrophic exponents like t^(alpha/(1-alpha)) near zero.  Sampling
functions never accept the limit value.
"""

from __future__ import annotations

import math

ALPHA_ZERO_LIMIT = 0.0


def check_alpha(alpha: float, zero_limit_ok: bool = False) -> float:
    """Validate the stability index; returns it as a float."""
    a = float(alpha)
    if math.isnan(a):
        raise ValueError("alpha must not be NaN")
    if zero_limit_ok and a == ALPHA_ZERO_LIMIT:
        return a
    if not (0.0 < a <= 0.5):
        raise ValueError(f"alpha must lie in (0, 0.5], got {alpha!r}")
    return a


def is_zero_limit(alpha: float) -> bool:
    return float(alpha) == ALPHA_ZERO_LIMIT
