"""Bochner-Riesz kernels by direct summation, the five-region decomposition
of the unit square, the pointwise bound with constant 1, and the closed
form of the weighted kernel at x = 0 with its subtraction remainder.

K_R^delta(x,y) sums (1 - s_j^2/R^2)^delta phi_j(x) phi_j(y) over s_j <= R;
the weighted variant uses psi_j and admits x = 0.  N(R) ~ R/pi terms keep
direct summation cheap at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .expansion import _compensated_dot, mode_matrix, riesz_weights
from .specfun import Order, bessel_j_scaled, gamma, phi_aux
from .zeros import ZeroTable, count_zeros_below

__all__ = [
    "RegionLabel",
    "KernelSample",
    "kernel",
    "kernel_mu",
    "kernel_mu_profile",
    "classify_region",
    "classify_region_grid",
    "kernel_bound",
    "kernel_samples",
    "bound_ratio_sweep",
    "RegionStat",
    "kernel_zero_leading",
    "kernel_zero_remainder",
    "remainder_bound",
]


class RegionLabel(str, Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"


@dataclass(frozen=True)
class KernelSample:
    """One kernel evaluation with its region and pointwise bound (C = 1)."""

    x: float
    y: float
    R: float
    value: float
    bound: float
    region: RegionLabel

    @property
    def ratio(self) -> float:
        return abs(self.value) / self.bound


def _check_xy(x: float, y: float, allow_zero_x: bool = False):
    if (x <= 0.0 and not allow_zero_x) or x < 0.0 or x >= 1.0:
        raise DomainError(f"x={x} outside {'[0,1)' if allow_zero_x else '(0,1)'}")
    if y <= 0.0 or y >= 1.0:
        raise DomainError(f"y={y} outside (0,1)")


def kernel(table: ZeroTable, delta: float, R: float, x: float, y: float) -> float:
    """Lebesgue-measure kernel K_R^delta(x,y), symmetric in (x,y)."""
    _check_xy(x, y)
    n = count_zeros_below(table, R)
    if n == 0:
        return 0.0
    w = riesz_weights(table.zeros[:n], R, delta)
    px = mode_matrix(table, n, x, system="phi")[:, 0]
    py = mode_matrix(table, n, y, system="phi")[:, 0]
    return float(_compensated_dot(w, (px * py)[:, None])[0])


def kernel_mu(table: ZeroTable, delta: float, R: float, x: float, y: float) -> float:
    """Weighted-measure kernel sum of (1-s^2/R^2)^delta psi_j(x) psi_j(y).

    x = 0 is allowed through the limit values psi_j(0).
    """
    _check_xy(x, y, allow_zero_x=True)
    n = count_zeros_below(table, R)
    if n == 0:
        return 0.0
    w = riesz_weights(table.zeros[:n], R, delta)
    px = mode_matrix(table, n, x, system="psi")[:, 0]
    py = mode_matrix(table, n, y, system="psi")[:, 0]
    return float(_compensated_dot(w, (px * py)[:, None])[0])


def kernel_mu_profile(table: ZeroTable, delta: float, R: float, x: float, y) -> np.ndarray:
    """Vectorized kernel_mu(x, y_m) over an array of y values."""
    ya = np.atleast_1d(np.asarray(y, dtype=float))
    n = count_zeros_below(table, R)
    if n == 0:
        return np.zeros_like(ya)
    w = riesz_weights(table.zeros[:n], R, delta)
    px = mode_matrix(table, n, x, system="psi")[:, 0]
    My = mode_matrix(table, n, ya, system="psi")
    return _compensated_dot(w * px, My)


def classify_region(R: float, x: float, y: float) -> RegionLabel:
    """Region of (x,y) at scale R; ties resolved in order A1 to A5."""
    if R <= 0.0:
        raise DomainError("R must be positive")
    if x <= 4.0 / R and y <= 4.0 / R:
        return RegionLabel.A1
    if abs(x - y) <= 2.0 / R:
        return RegionLabel.A2
    if x >= 4.0 / R and y <= x / 2.0:
        return RegionLabel.A3
    if y >= 4.0 / R and x <= y / 2.0:
        return RegionLabel.A4
    return RegionLabel.A5


_REGION_ORDER = (RegionLabel.A1, RegionLabel.A2, RegionLabel.A3,
                 RegionLabel.A4, RegionLabel.A5)


def classify_region_grid(R: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorized classify_region: integer codes 0..4 in the A1..A5 order."""
    if R <= 0.0:
        raise DomainError("R must be positive")
    a1 = (x <= 4.0 / R) & (y <= 4.0 / R)
    a2 = ~a1 & (np.abs(x - y) <= 2.0 / R)
    a3 = ~a1 & ~a2 & (x >= 4.0 / R) & (y <= x / 2.0)
    a4 = ~a1 & ~a2 & ~a3 & (y >= 4.0 / R) & (x <= y / 2.0)
    codes = np.full(np.broadcast(x, y).shape, 4, dtype=np.int8)
    codes[a4] = 3
    codes[a3] = 2
    codes[a2] = 1
    codes[a1] = 0
    return codes


def kernel_bound(order: Order, delta: float, R: float, x: float, y: float) -> float:
    """Right-hand side of the pointwise kernel estimate with constant 1."""
    region = classify_region(R, x, y)
    nu = order.nu
    if region is RegionLabel.A1:
        return (x * y) ** (nu + 0.5) * R ** (2.0 * (nu + 1.0))
    if region is RegionLabel.A2:
        return R
    return phi_aux(order, R * x) * phi_aux(order, R * y) \
        / (R ** delta * abs(x - y) ** (delta + 1.0))


def kernel_samples(table: ZeroTable, delta: float, R: float, grid):
    """Kernel, bound, region and ratio over all off-diagonal grid pairs.

    Returns flat arrays (x, y, region codes, value, bound, ratio); the
    diagonal x = y is excluded since the A3..A5 bound degenerates there.
    """
    g = np.asarray(grid, dtype=float)
    if np.any(g <= 0.0) or np.any(g >= 1.0):
        raise DomainError("grid must lie strictly inside (0,1)")
    n = count_zeros_below(table, R)
    w = riesz_weights(table.zeros[:n], R, delta) if n else np.zeros(0)
    M = mode_matrix(table, max(n, 1), g, system="phi")[:n]
    K = (M * w[:, None]).T @ M

    X, Y = np.meshgrid(g, g, indexing="ij")
    off = ~np.eye(len(g), dtype=bool)
    x, y, k = X[off], Y[off], K[off]
    codes = classify_region_grid(R, x, y)
    nu = table.order.nu
    bound = np.empty_like(x)
    m = codes == 0
    bound[m] = (x[m] * y[m]) ** (nu + 0.5) * R ** (2.0 * (nu + 1.0))
    m = codes == 1
    bound[m] = R
    m = codes >= 2
    bound[m] = phi_aux(table.order, R * x[m]) * phi_aux(table.order, R * y[m]) \
        / (R ** delta * np.abs(x[m] - y[m]) ** (delta + 1.0))
    return x, y, codes, k, bound, np.abs(k) / bound


@dataclass(frozen=True)
class RegionStat:
    """Per-region empirical constant for one radius."""

    R: float
    region: RegionLabel
    samples: int
    max_ratio: float


def bound_ratio_sweep(table: ZeroTable, delta: float, R_list, grid) -> list[RegionStat]:
    """Empirical constants max |K|/bound per region and per R.

    Regions with no grid pair at some R are reported with zero samples and
    NaN ratio rather than dropped, so emptiness is visible downstream.
    """
    stats: list[RegionStat] = []
    for R in R_list:
        _, _, codes, _, _, ratio = kernel_samples(table, delta, float(R), grid)
        for code, label in enumerate(_REGION_ORDER):
            m = codes == code
            cnt = int(np.count_nonzero(m))
            stats.append(RegionStat(
                R=float(R), region=label, samples=cnt,
                max_ratio=float(np.max(ratio[m])) if cnt else math.nan))
    return stats


def kernel_zero_leading(order: Order, delta: float, R: float, y):
    """Closed-form leading term of the weighted kernel at x = 0.

    2^{delta-nu} Gamma(delta+1)/Gamma(nu+1) R^{2(nu+1)}
    J_{nu+delta+1}(yR)/(yR)^{nu+delta+1}, from the Sonine integral of the
    Riesz multiplier against the small-argument Bessel limit.
    """
    nu = order.nu
    if nu <= -0.5:
        raise DomainError("the x = 0 closed form requires nu > -1/2")
    if delta <= 0.0 or R <= 0.0:
        raise DomainError("need delta > 0 and R > 0")
    ya = np.asarray(y, dtype=float)
    if np.any(ya <= 0.0) or np.any(ya >= 1.0):
        raise DomainError("y must lie in (0,1)")
    front = 2.0 ** (delta - nu) * gamma(delta + 1.0) / gamma(nu + 1.0) \
        * R ** (2.0 * (nu + 1.0))
    return front * bessel_j_scaled(Order(nu + delta + 1.0), ya * R)


def kernel_zero_remainder(table: ZeroTable, delta: float, R: float, y):
    """kernel_mu(0, y) minus the closed-form leading term.

    The contour representation of this remainder is never integrated; the
    remainder is defined by subtraction and only its size is compared to
    the R^{nu-delta+1/2} y^{-(nu+1/2)} envelope.
    """
    ya = np.atleast_1d(np.asarray(y, dtype=float))
    series = kernel_mu_profile(table, delta, R, 0.0, ya)
    lead = kernel_zero_leading(table.order, delta, R, ya)
    out = series - lead
    return float(out[0]) if np.ndim(y) == 0 else out


def remainder_bound(order: Order, delta: float, R: float, y):
    """Envelope for the x = 0 remainder with constant 1.

    R^{2 nu - delta + 1} for yR <= 1, R^{nu - delta + 1/2} y^{-(nu+1/2)}
    beyond.
    """
    nu = order.nu
    ya = np.asarray(y, dtype=float)
    small = ya * R <= 1.0
    out = np.where(small, R ** (2.0 * nu - delta + 1.0),
                   R ** (nu - delta + 0.5)
                   * np.where(small, 1.0, ya) ** (-(nu + 0.5)))
    return float(out) if np.ndim(y) == 0 else out
