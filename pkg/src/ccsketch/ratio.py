"""Distribution of the ratio of two skewed-stable variables and its constants.

For S1, S2 independent maximally-skewed stable with index alpha in (0, 0.5],
the law of (S2/S1)^(alpha/(1-alpha)) has CDF

    F_alpha(t) = (1/pi^2) integral over (0,pi)^2 of du1 du2 / (1 + Q/t),
    Q = q(u2) / q(u1),
    q(u) = sin(alpha*u)^(alpha/(1-alpha)) * sin(u)^(-1/(1-alpha)) * sin(u-alpha*u).

Closed forms exist at the endpoints: F(t) -> t/(1+t) as alpha -> 0, and
F(t) = (2/pi)*arctan(sqrt(t)) at alpha = 0.5.  Everything downstream -- the
tail probability of the one-scan minimum decoder, the sample-complexity
constant C_alpha with F(t) ~ t^(1-alpha)/C_alpha near 0, and the decoder
bias constant D(M, alpha) -- reduces to evaluations of F.

Numerical notes.  q is monotone increasing on (0, pi) and blows up like
(pi-u)^(-1/(1-alpha)) at pi, so for small t the mass of the double integral
sits in a layer of width ~ t^(1-alpha) at u1 = pi.  The graded meshes from
the quadrature module resolve that layer; nodes adjacent to pi are handled
in gap coordinates v = pi - u to keep sin(u) = sin(v) exact.  Tail
probabilities use the exact reflection 1 - F(T) = F(1/T) so no accuracy is
lost to cancellation before raising to the M-th power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .params import ALPHA_ZERO_LIMIT, check_alpha, is_zero_limit
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    pi_mesh,
    refine_to_tolerance,
    unit_mesh,
)

__all__ = [
    "ALPHA_ZERO_LIMIT",
    "BernoulliTable",
    "CAlphaEstimate",
    "QuadratureSettings",
    "bernoulli_numbers",
    "bias_constant",
    "c_alpha",
    "exceedance_from_ratio_arg",
    "q_fn",
    "ratio_cdf",
    "ratio_cdf_grid",
    "tail_prob",
]

C_ALPHA_GRID = (1e-3, 1e-4, 1e-5, 1e-6)


def q_fn(alpha: float, u):
    """The ratio-law kernel q_alpha(u), strictly positive and increasing.

    Defined for u in the open interval (0, pi); raises at the endpoints
    where sin(u) vanishes.
    """
    a = check_alpha(alpha)
    uu = np.asarray(u, dtype=np.float64)
    if np.any(uu <= 0.0) or np.any(uu >= math.pi):
        raise ValueError("u must lie strictly inside (0, pi)")
    r = a / (1.0 - a)
    out = (
        np.sin(a * uu) ** r
        * np.sin(uu) ** (-1.0 / (1.0 - a))
        * np.sin(uu - a * uu)
    )
    return out if out.ndim else float(out)


def _log_q_bulk(alpha: float, u: np.ndarray) -> np.ndarray:
    r = alpha / (1.0 - alpha)
    return (
        r * np.log(np.sin(alpha * u))
        - np.log(np.sin(u)) / (1.0 - alpha)
        + np.log(np.sin((1.0 - alpha) * u))
    )


def _log_q_gap(alpha: float, v: np.ndarray) -> np.ndarray:
    # u = pi - v; sin(u) = sin(v) computed without cancellation.
    r = alpha / (1.0 - alpha)
    api = alpha * math.pi
    return (
        r * np.log(np.sin(api - alpha * v))
        - np.log(np.sin(v)) / (1.0 - alpha)
        + np.log(np.sin((1.0 - alpha) * (math.pi - v)))
    )


@lru_cache(maxsize=512)
def _q_nodes(alpha: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature weights and q-values on the graded (0, pi) mesh."""
    mesh = pi_mesh(order)
    logq = np.concatenate(
        (_log_q_bulk(alpha, mesh.u), _log_q_gap(alpha, mesh.gap))
    )
    weights = np.concatenate((mesh.wu, mesh.wg))
    return weights, np.exp(logq)


def _ratio_quad_grid(alpha: float, ts: np.ndarray, order: int) -> np.ndarray:
    """F_alpha on an array of arguments in (0, 1] by tensor quadrature."""
    w, q = _q_nodes(alpha, order)
    inv_norm = 1.0 / math.pi**2
    # inner[i] = sum_j w_j / (1 + q_j / (t * q_i)); outer-weighted sum.
    out = np.empty(ts.shape, dtype=np.float64)
    ratio = q[None, :] / q[:, None]
    for k, t in enumerate(ts):
        out[k] = inv_norm * (w @ (1.0 / (1.0 + ratio / t)) @ w)
    return out


def ratio_cdf_grid(alpha: float, ts, settings: QuadratureSettings | None = None,
                   method: str = "auto") -> np.ndarray:
    """Vectorized ratio_cdf over an array of nonnegative arguments."""
    settings = settings or DEFAULT_SETTINGS
    a = check_alpha(alpha, zero_limit_ok=True)
    ts = np.asarray(ts, dtype=np.float64)
    if np.any(ts < 0.0):
        raise ValueError("ratio-law argument t must be >= 0")
    if method not in ("auto", "quadrature"):
        raise ValueError(f"unknown method {method!r}")

    if is_zero_limit(a):
        return np.where(np.isinf(ts), 1.0, ts / (1.0 + ts))
    if a == 0.5 and method == "auto":
        return (2.0 / math.pi) * np.arctan(np.sqrt(ts))

    flat = ts.ravel()
    out = np.zeros(flat.shape, dtype=np.float64)
    out[np.isinf(flat)] = 1.0
    active = (flat > 0.0) & np.isfinite(flat)
    if np.any(active):
        tv = flat[active]
        # Reduce to arguments <= 1 through the exact reflection
        # F(t) = 1 - F(1/t); the boundary layer then always sits at u1 = pi.
        big = tv > 1.0
        reduced = np.where(big, 1.0 / tv, tv)
        vals, _ = refine_to_tolerance(
            lambda order: _ratio_quad_grid(a, reduced, order), settings
        )
        out[active] = np.where(big, 1.0 - vals, vals)
    return out.reshape(ts.shape)


def ratio_cdf(alpha: float, t: float, settings: QuadratureSettings | None = None,
              method: str = "auto") -> float:
    """CDF of (S2/S1)^(alpha/(1-alpha)) at t >= 0.

    alpha = ALPHA_ZERO_LIMIT selects the closed-form limit t/(1+t) and
    alpha = 0.5 the closed form (2/pi)*arctan(sqrt(t)); pass
    method="quadrature" to force the double-integral path (used to
    cross-check the closed forms).  Raises QuadratureError if the
    refinement budget is exhausted before the tolerance.
    """
    return float(ratio_cdf_grid(alpha, np.float64(t), settings, method))


@dataclass(frozen=True)
class CAlphaEstimate:
    """Extrapolated sample-complexity constant with an error estimate.

    ``spread`` is the maximum absolute residual of the linear-in-t fit over
    the extrapolation grid; treat it as the resolution of the estimate.
    """

    value: float
    spread: float


def c_alpha(alpha: float, settings: QuadratureSettings | None = None) -> CAlphaEstimate:
    """The constant in F_alpha(t) = t^(1-alpha) / (C_alpha + o(1)) near 0.

    Evaluates t^(1-alpha)/F_alpha(t) on a decreasing geometric grid inside
    the validity region t < alpha^(alpha/(1-alpha)) and extrapolates
    linearly in t to t -> 0.  Known endpoints: C -> 1 as alpha -> 0 and
    C = pi/2 at alpha = 0.5.
    """
    a = check_alpha(alpha, zero_limit_ok=True)
    if is_zero_limit(a):
        return CAlphaEstimate(value=1.0, spread=0.0)
    ts = np.asarray(C_ALPHA_GRID, dtype=np.float64)
    f = ratio_cdf_grid(a, ts, settings)
    g = ts ** (1.0 - a) / f
    design = np.column_stack((np.ones_like(ts), ts))
    coef, *_ = np.linalg.lstsq(design, g, rcond=None)
    resid = g - design @ coef
    return CAlphaEstimate(value=float(coef[0]), spread=float(np.max(np.abs(resid))))


def exceedance_from_ratio_arg(alpha: float, t: float, m: int,
                              settings: QuadratureSettings | None = None) -> float:
    """[1 - F_alpha(t)]^M, computed in log space.

    For t > 1 the complement is evaluated as F_alpha(1/t) directly, so the
    result keeps full relative accuracy even when raised to a large power.
    """
    if m < 1:
        raise ValueError(f"M must be >= 1, got {m}")
    t = float(t)
    if t <= 1.0:
        f = ratio_cdf(alpha, t, settings)
        return float(math.exp(m * math.log1p(-f))) if f < 1.0 else 0.0
    comp = ratio_cdf(alpha, 1.0 / t, settings)  # = 1 - F(t), exactly
    if comp <= 0.0:
        return 0.0
    return float(math.exp(m * math.log(comp)))


def tail_prob(alpha: float, eps: float, theta_i: float, m: int,
              settings: QuadratureSettings | None = None) -> float:
    """Pr(x_hat_min - x_i >= eps) for the minimum-ratio estimator.

    Equals [1 - F_alpha((eps/theta_i)^(alpha/(1-alpha)))]^M; exactly 0 when
    theta_i = 0, where every ratio equals x_i.
    """
    a = check_alpha(alpha, zero_limit_ok=True)
    if not (eps > 0.0):
        raise ValueError(f"eps must be > 0, got {eps}")
    if theta_i < 0.0:
        raise ValueError(f"theta_i must be >= 0, got {theta_i}")
    if m < 1:
        raise ValueError(f"M must be >= 1, got {m}")
    if theta_i == 0.0:
        return 0.0
    if is_zero_limit(a):
        raise ValueError(
            "tail_prob at the alpha->0 limit needs the ratio argument "
            "directly; use exceedance_from_ratio_arg"
        )
    t = (eps / theta_i) ** (a / (1.0 - a))
    return exceedance_from_ratio_arg(a, t, m, settings)


@dataclass(frozen=True)
class BernoulliTable:
    """Bernoulli numbers B_0..B_n as exact fractions (B_1 = -1/2 convention)."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        v = self.values
        if not v or v[0] != 1:
            raise ValueError("Bernoulli table must start with B_0 = 1")

    def as_floats(self) -> np.ndarray:
        return np.array([float(b) for b in self.values], dtype=np.float64)


def bernoulli_numbers(count: int) -> BernoulliTable:
    """B_0..B_count via the recurrence sum_{k<=n} C(n+1, k) B_k = 0."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    vals = [Fraction(1)]
    for n in range(1, count + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * vals[k]
        vals.append(-acc / (n + 1))
    return BernoulliTable(values=tuple(vals))


_SERIES_CAP = 200


def _bias_series_half(m: int, rel_tol: float = 1e-12) -> float:
    """D(M, 1/2) = M(M-1)(4/pi^2) * sum_j (-pi^2)^j B_2j / ((M+2j-2)(2j)!) - 1.

    Terms decay geometrically (ratio ~ 1/4) because B_2j/(2j)! behaves like
    2*(-1)^(j+1)/(2 pi)^(2j); truncation at |term| < rel_tol * |partial sum|.
    """
    table = bernoulli_numbers(2 * _SERIES_CAP).values
    total = 0.0
    term_scale = 1.0  # pi^(2j) / (2j)!
    for j in range(_SERIES_CAP):
        if j > 0:
            term_scale *= math.pi**2 / ((2 * j) * (2 * j - 1))
        term = (-1.0) ** j * term_scale * float(table[2 * j]) / (m + 2 * j - 2)
        total += term
        if j > 0 and abs(term) < rel_tol * abs(total):
            return m * (m - 1) * (4.0 / math.pi**2) * total - 1.0
    raise ArithmeticError("bias-constant series failed to converge")


def _bias_quad(alpha: float, m: int, order: int,
               settings: QuadratureSettings) -> float:
    """Numeric D(M, alpha) on (0, 1] after the substitution t = (1-v)/v."""
    a_exp = alpha / (1.0 - alpha)
    mesh = unit_mesh(order)
    inner = QuadratureSettings(
        tolerance=min(settings.tolerance, 1e-10),
        max_refinements=settings.max_refinements,
    )
    # v in (0, 1/2]: t = (1-v)/v >= 1, so 1 - F(t^a) = F(t^-a) exactly.
    tz = ((1.0 - mesh.v) / mesh.v) ** (-a_exp)
    fz = ratio_cdf_grid(alpha, tz, inner)
    with np.errstate(divide="ignore"):
        log_fz = np.where(fz > 0.0, np.log(fz), -np.inf)
    part_v = float(np.sum(mesh.wv * np.exp(m * log_fz) / mesh.v**2))
    # v = 1 - g with g in (0, 1/2]: t = g/(1-g) <= 1, F <= 1/2, no cancellation.
    tg = (mesh.gap / (1.0 - mesh.gap)) ** a_exp
    fg = ratio_cdf_grid(alpha, tg, inner)
    part_g = float(
        np.sum(mesh.wg * np.exp(m * np.log1p(-fg)) / (1.0 - mesh.gap) ** 2)
    )
    return part_v + part_g


def bias_constant(m: int, alpha: float,
                  settings: QuadratureSettings | None = None) -> float:
    """The decoder bias constant D(M, alpha) with E(x_hat) = x + theta_i * D.

    D = integral over (0, inf) of [1 - F_alpha(t^(alpha/(1-alpha)))]^M dt.
    At alpha = 0.5 this is evaluated by the Bernoulli-number series; other
    alphas use quadrature after mapping (0, inf) onto (0, 1].  The integrand
    decays like t^(-alpha*M), so finiteness requires alpha*M > 1 (together
    with M >= 3, which the alpha = 0.5 series needs for its M-2 factor).
    """
    settings = settings or DEFAULT_SETTINGS
    a = check_alpha(alpha)
    if m < 3:
        raise ValueError(f"M must be >= 3, got {m}")
    if a * m <= 1.0:
        raise ValueError(
            f"D(M={m}, alpha={a}) diverges: the tail decays like "
            f"t^(-alpha*M) and alpha*M = {a * m:g} <= 1"
        )
    if a == 0.5:
        return _bias_series_half(m)
    value, _ = refine_to_tolerance(
        lambda order: _bias_quad(a, m, order, settings), settings
    )
    return float(value)
