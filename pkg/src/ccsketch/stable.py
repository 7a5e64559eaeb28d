"""Maximally-skewed stable law S(alpha, 1, 1): sampling and CDF.

For alpha in (0, 0.5] the law is supported on the positive reals and is
sampled by the classic transform of a uniform u on (0, pi) and a unit-mean
exponential w:

    S = sin(alpha*u) / (sin(u) * cos(alpha*pi/2))^(1/alpha)
        * (sin(u - alpha*u) / w)^((1-alpha)/alpha)

The same transform yields the CDF as a single quadrature,

    F_S(s) = (1/pi) integral over (0, pi) of
             exp(-qt(u) * s^(-alpha/(1-alpha))) du,

where qt is the ratio-law kernel q times cos(alpha*pi/2)^(-1/(1-alpha)).
Two cheap companions ride along: the heavy-tailed domain-of-attraction
stand-in 1/U^(1/alpha), and the coupled-randomness identity
-sqrt(2)*cos(u)*sqrt(w) ~ N(0, 1) that lets one (u, w) table drive both a
stable and a Gaussian design.

Uniform draws for u are clamped to [eta, pi - eta] with eta = pi * 2^-32,
removing the measure-zero singularity at sin(u) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import check_alpha
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    refine_to_tolerance,
)
from .ratio import _q_nodes

__all__ = [
    "U_CLAMP",
    "UniformExpPair",
    "sample_heavy_tail_approx",
    "sample_skewed_stable",
    "shared_gaussian",
    "stable_cdf",
    "stable_sample",
]

U_CLAMP = math.pi * 2.0**-32


@dataclass(frozen=True)
class UniformExpPair:
    """One (uniform, exponential) driver pair for the stable transform.

    u must lie strictly inside (0, pi) and w must be strictly positive;
    either may be a scalar or an ndarray (validated elementwise).
    """

    u: object
    w: object

    def __post_init__(self) -> None:
        u = np.asarray(self.u, dtype=np.float64)
        w = np.asarray(self.w, dtype=np.float64)
        if np.any(u <= 0.0) or np.any(u >= math.pi):
            raise ValueError("u must lie strictly inside (0, pi)")
        if np.any(w <= 0.0):
            raise ValueError("w must be strictly positive")


def sample_skewed_stable(alpha: float, draw: UniformExpPair):
    """Transform one (u, w) pair into an S(alpha, 1, 1) variate.

    Pure and deterministic: identical (alpha, draw) inputs give
    bit-identical outputs.  The result is strictly positive.
    """
    a = check_alpha(alpha)
    u = np.asarray(draw.u, dtype=np.float64)
    w = np.asarray(draw.w, dtype=np.float64)
    cosf = math.cos(a * math.pi / 2.0)
    out = (
        np.sin(a * u)
        / (np.sin(u) * cosf) ** (1.0 / a)
        * (np.sin(u - a * u) / w) ** ((1.0 - a) / a)
    )
    return out if out.ndim else float(out)


def sample_heavy_tail_approx(alpha: float, uniform_draw):
    """Domain-of-attraction stand-in 1/U^(1/alpha), always >= 1.

    Provided for completeness; the exact transform above is the default
    everywhere in this package.  U = 1 is the formula's boundary and maps
    to 1; U = 0 is rejected.
    """
    a = check_alpha(alpha)
    uu = np.asarray(uniform_draw, dtype=np.float64)
    if np.any(uu <= 0.0) or np.any(uu > 1.0):
        raise ValueError("uniform_draw must lie in (0, 1]")
    out = uu ** (-1.0 / a)
    return out if out.ndim else float(out)


def shared_gaussian(draw: UniformExpPair):
    """-sqrt(2)*cos(u)*sqrt(w), a standard normal under the (u, w) law."""
    u = np.asarray(draw.u, dtype=np.float64)
    w = np.asarray(draw.w, dtype=np.float64)
    out = -math.sqrt(2.0) * np.cos(u) * np.sqrt(w)
    return out if out.ndim else float(out)


def stable_sample(alpha: float, size: int, seed: int) -> np.ndarray:
    """i.i.d. S(alpha, 1, 1) draws from a seeded generator (test oracle aid)."""
    rng = np.random.default_rng(seed)
    u = U_CLAMP + rng.random(size) * (math.pi - 2.0 * U_CLAMP)
    w = rng.exponential(size=size)
    return sample_skewed_stable(alpha, UniformExpPair(u=u, w=np.maximum(w, 1e-300)))


_CHUNK = 4096


def _stable_quad(alpha: float, s: np.ndarray, order: int) -> np.ndarray:
    w, q = _q_nodes(alpha, order)
    cos_factor = math.cos(alpha * math.pi / 2.0) ** (-1.0 / (1.0 - alpha))
    qt = q * cos_factor
    powed = s ** (-alpha / (1.0 - alpha))
    out = np.empty(s.shape, dtype=np.float64)
    for lo in range(0, s.size, _CHUNK):
        hi = min(lo + _CHUNK, s.size)
        out[lo:hi] = np.exp(-powed[lo:hi, None] * qt[None, :]) @ w
    return out / math.pi


def stable_cdf(alpha: float, s, settings: QuadratureSettings | None = None):
    """CDF of S(alpha, 1, 1), by quadrature of the transform representation.

    Accepts a positive scalar or array; monotone nondecreasing with values
    in [0, 1].  Default absolute tolerance 1e-9.
    """
    a = check_alpha(alpha)
    settings = settings or DEFAULT_SETTINGS
    sv = np.asarray(s, dtype=np.float64)
    if np.any(sv <= 0.0):
        raise ValueError("s must be strictly positive")
    flat = sv.ravel()
    vals, _ = refine_to_tolerance(
        lambda order: _stable_quad(a, flat, order), settings
    )
    vals = np.clip(vals, 0.0, 1.0)
    out = vals.reshape(sv.shape)
    return out if out.ndim else float(out)
