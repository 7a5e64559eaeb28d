"""Composite Gauss-Legendre quadrature on graded meshes.

The integrands in this package are bounded and smooth in the interior but
develop boundary layers whose width shrinks with a parameter (the layer in
the ratio-law integrand sits at the right endpoint and has width of order
t^(1-alpha), which reaches 1e-6 and below on the constant-extrapolation
grids).  A uniform panel mesh cannot resolve that; a dyadically graded mesh
toward the endpoint resolves any layer wider than about 2^-levels at
negligible extra cost.

Panels adjacent to a graded endpoint are described in *gap coordinates*
(distance from the endpoint) so integrand code can evaluate sin(pi - v) as
sin(v) instead of suffering cancellation in pi - v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class QuadratureError(RuntimeError):
    """Raised when the refinement budget is exhausted before the tolerance."""


@dataclass(frozen=True)
class QuadratureSettings:
    """Absolute tolerance and refinement budget for adaptive evaluation."""

    tolerance: float = 1e-9
    max_refinements: int = 3

    def __post_init__(self) -> None:
        if not (self.tolerance > 0.0):
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_refinements < 1:
            raise ValueError(
                f"max_refinements must be >= 1, got {self.max_refinements}"
            )


DEFAULT_SETTINGS = QuadratureSettings()


@lru_cache(maxsize=64)
def gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panel_nodes(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Map the reference rule onto every panel [edges[k], edges[k+1]]."""
    x, w = gauss_rule(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


@dataclass(frozen=True)
class PiMesh:
    """Quadrature nodes for (0, pi), graded toward pi.

    ``u`` covers (0, pi/2] on a uniform panel mesh; ``gap`` covers
    (pi/2, pi) expressed as v = pi - u, graded dyadically toward v = 0.
    The integral of f over (0, pi) is sum(wu * f(u)) + sum(wg * f(pi - gap)).
    """

    u: np.ndarray
    wu: np.ndarray
    gap: np.ndarray
    wg: np.ndarray


@lru_cache(maxsize=256)
def pi_mesh(order: int, bulk_panels: int = 16, grade_levels: int = 54) -> PiMesh:
    half = math.pi / 2.0
    bulk_edges = np.linspace(0.0, half, bulk_panels + 1)
    u, wu = _panel_nodes(bulk_edges, order)
    # v = pi - u runs over (0, pi/2]; panels [pi*2^-(k+1), pi*2^-k], k=1..L,
    # plus the innermost sliver [0, pi*2^-L].
    gap_edges = np.concatenate(
        ([0.0], math.pi * 2.0 ** -np.arange(grade_levels, 0, -1.0))
    )
    gap, wg = _panel_nodes(gap_edges, order)
    return PiMesh(u=u, wu=wu, gap=gap, wg=wg)


@dataclass(frozen=True)
class UnitMesh:
    """Quadrature nodes for (0, 1), graded toward both endpoints.

    ``v`` covers (0, 1/2] graded toward 0; ``gap`` covers (1/2, 1)
    expressed as g = 1 - v, graded toward g = 0.
    """

    v: np.ndarray
    wv: np.ndarray
    gap: np.ndarray
    wg: np.ndarray


@lru_cache(maxsize=256)
def unit_mesh(order: int, grade_levels: int = 50) -> UnitMesh:
    edges = np.concatenate(([0.0], 2.0 ** -np.arange(grade_levels, 0, -1.0)))
    v, wv = _panel_nodes(edges, order)
    gap, wg = _panel_nodes(edges, order)
    return UnitMesh(v=v, wv=wv, gap=gap, wg=wg)


def refine_to_tolerance(evaluate, settings: QuadratureSettings,
                        base_order: int = 12, order_step: int = 8):
    """Evaluate at increasing rule orders until two agree within tolerance.

    ``evaluate(order)`` must return a float or ndarray.  Returns
    ``(value, err)`` where err is the max absolute change in the last
    refinement.  Raises QuadratureError if the budget runs out; the failure
    is reported, never silently returned.
    """
    prev = evaluate(base_order)
    for step in range(1, settings.max_refinements + 1):
        cur = evaluate(base_order + order_step * step)
        err = float(np.max(np.abs(np.asarray(cur) - np.asarray(prev))))
        if err <= settings.tolerance:
            return cur, err
        prev = cur
    raise QuadratureError(
        f"quadrature did not reach tolerance {settings.tolerance:g} after "
        f"{settings.max_refinements} refinements (last change {err:g})"
    )
