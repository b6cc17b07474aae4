"""Composite Gauss-Legendre quadrature on (0,1) and shared evaluation grids.

Integrands in this package are products of Bessel oscillations (wavenumber
up to some s_max) with a power weight x^beta, beta > -1.  The rule used
throughout is 16-node Gauss-Legendre on uniform panels sized so that every
oscillation is covered by at least `panels_per_wavelength` panels, with the
first panel subdivided geometrically toward 0 until the truncated mass of
the power weight is negligible.  Results carry an optional panel-doubling
self check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "QuadSpec",
    "panel_edges",
    "gl_nodes",
    "integrate",
    "evaluation_grid",
    "trapezoid_weights",
    "geometric_grid",
]


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature controls.

    endpoint_exponent declares the power behaviour of the *function* part
    of the integrand at 0 (beyond the measure weight), so the grading depth
    can keep the truncated mass below ~1e-16 of scale.  breakpoints force
    panel boundaries, e.g. at an indicator's jump.
    """

    panels_per_wavelength: int = 4
    nodes_per_panel: int = 16
    endpoint_exponent: float = 0.0
    breakpoints: tuple[float, ...] = ()
    doubling_abs: float = 1e-7
    doubling_rel: float = 0.0

    def __post_init__(self):
        if self.panels_per_wavelength < 1 or self.nodes_per_panel < 2:
            raise DomainError("need >= 1 panel per wavelength and >= 2 nodes")


@lru_cache(maxsize=8)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def panel_edges(oscillation: float, weight_exponent: float, spec: QuadSpec) -> np.ndarray:
    """Panel boundaries on (0,1] for the given oscillation scale and weight.

    The returned edges start at a small positive cut below which the mass
    of x^beta (beta = weight_exponent + spec.endpoint_exponent) is under
    1e-16; integration over (0, cut) is dropped.
    """
    beta = weight_exponent + spec.endpoint_exponent
    if beta <= -1.0:
        raise DomainError(f"weight exponent {beta} is not integrable at 0")
    n_uniform = max(4, math.ceil(max(oscillation, 0.0) / math.pi) * spec.panels_per_wavelength)
    edges = np.linspace(0.0, 1.0, n_uniform + 1)
    if spec.breakpoints:
        pts = [b for b in spec.breakpoints if 0.0 < b < 1.0]
        edges = np.unique(np.concatenate([edges, np.asarray(pts, dtype=float)]))
    h = edges[1]
    # geometric grading: panels [h/2^{k+1}, h/2^k]; depth set by the weight
    cut_target = (1e-16 * (1.0 + beta)) ** (1.0 / (1.0 + beta))
    depth = min(600, max(1, math.ceil(math.log2(h / max(cut_target, 5e-324)))))
    graded = h * np.power(2.0, -np.arange(depth, 0, -1, dtype=float))
    return np.concatenate([graded, edges[1:]])


def gl_nodes(edges: np.ndarray, nodes_per_panel: int = 16):
    """Flattened Gauss-Legendre nodes and weights for the given panels."""
    xi, wi = _leggauss(nodes_per_panel)
    a = edges[:-1]
    b = edges[1:]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    w = (half[:, None] * wi[None, :]).ravel()
    return x, w


def _split(edges: np.ndarray) -> np.ndarray:
    mids = 0.5 * (edges[:-1] + edges[1:])
    out = np.empty(2 * len(edges) - 1)
    out[0::2] = edges
    out[1::2] = mids
    return out


def integrate(fn, oscillation: float, weight_exponent: float,
              spec: QuadSpec | None = None, check: bool = True) -> float:
    """Integral of fn over (0,1) with a panel-doubling self check.

    fn must be vectorized and include any weight itself.  weight_exponent
    only steers the grading near 0.  Raises ConvergenceError when halving
    the panels moves the result by more than the spec's tolerance.
    """
    spec = spec or QuadSpec()
    edges = panel_edges(oscillation, weight_exponent, spec)
    x1, w1 = gl_nodes(edges, spec.nodes_per_panel)
    coarse = float(np.dot(fn(x1), w1))
    if not check:
        return coarse
    x2, w2 = gl_nodes(_split(edges), spec.nodes_per_panel)
    fine = float(np.dot(fn(x2), w2))
    tol = spec.doubling_abs + spec.doubling_rel * abs(fine)
    if abs(fine - coarse) > tol:
        raise ConvergenceError(
            f"panel doubling moved the integral by {abs(fine - coarse):.3e} "
            f"(tolerance {tol:.3e})")
    return fine


def evaluation_grid(n: int = 2048, x_min: float = 1e-6) -> np.ndarray:
    """Interior evaluation grid on (0,1): geometric near 0, uniform beyond.

    A quarter of the points refine geometrically from x_min up to the
    uniform spacing, where the x^{2nu+1} weights and the psi_j envelopes
    vary fastest; the rest are uniform midpoints.  Endpoints excluded.
    """
    if n < 8:
        raise DomainError("need at least 8 grid points")
    n_geo = n // 4
    split = 1.0 / 16.0
    geo = np.geomspace(x_min, split, n_geo, endpoint=False)
    lin = np.linspace(split, 1.0, n - n_geo, endpoint=False)
    return np.unique(np.concatenate([geo, lin]))


def trapezoid_weights(grid: np.ndarray, weight_exponent: float = 0.0) -> np.ndarray:
    """Trapezoid weights against x^beta dx for samples on an interior grid.

    The stub (0, x_1) uses the exact power integral with the first sample's
    value treated as constant; the stub (x_M, 1) likewise.  Intended for
    super-level-set measures and other probe-grade integrals.
    """
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or len(x) < 2 or np.any(np.diff(x) <= 0.0):
        raise DomainError("grid must be strictly increasing, length >= 2")
    if x[0] <= 0.0 or x[-1] >= 1.0:
        raise DomainError("grid must lie strictly inside (0,1)")
    beta = weight_exponent
    if beta <= -1.0:
        raise DomainError("weight exponent must exceed -1")
    wx = x ** beta
    w = np.empty_like(x)
    w[1:-1] = 0.5 * (x[2:] - x[:-2]) * wx[1:-1]
    w[0] = 0.5 * (x[1] - x[0]) * wx[0] + x[0] ** (beta + 1.0) / (beta + 1.0)
    w[-1] = 0.5 * (x[-1] - x[-2]) * wx[-1] + (1.0 - x[-1] ** (beta + 1.0)) / (beta + 1.0)
    return w


def geometric_grid(lo: float, hi: float, ratio: float = 1.05) -> np.ndarray:
    """Geometric grid lo * ratio^k clipped at hi, hi always included."""
    if lo <= 0.0 or hi <= lo or ratio <= 1.0:
        raise DomainError("need 0 < lo < hi and ratio > 1")
    count = int(math.floor(math.log(hi / lo) / math.log(ratio))) + 1
    pts = lo * ratio ** np.arange(count, dtype=float)
    if pts[-1] < hi:
        pts = np.append(pts, hi)
    else:
        pts[-1] = hi
    return pts
