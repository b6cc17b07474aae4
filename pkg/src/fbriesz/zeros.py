"""Positive zeros s_1 < s_2 < ... of J_nu and the normalizers |J_{nu+1}(s_j)|.

Zeros are located by a sequential sign-change scan (step pi/8) starting a
half period before the McMahon-type guess, then polished by a safeguarded
Newton iteration that never leaves its bracket.  Every stored zero is
certified by a sign change across an interval of width at most 1e-9.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketingError, DomainError, TableTooShortError
from .specfun import Order, bessel_j, bessel_j_deriv

__all__ = ["ZeroTable", "compute_zeros", "count_zeros_below", "table_covering"]

_SCAN_STEP = math.pi / 8.0
_NEWTON_TOL = 1e-13
_NEWTON_MAX = 40
_BISECT_MAX = 200
_CERT_WIDTH = 1e-9


@dataclass(frozen=True)
class ZeroTable:
    """Immutable ordered table of Bessel zeros with their normalizers.

    growth_constant is the smallest C with s_j <= C*j over the table,
    reported so the linear zero-growth law can be monitored.
    """

    order: Order
    zeros: np.ndarray
    normalizers: np.ndarray
    growth_constant: float = field(init=False)

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=float)
        m = np.asarray(self.normalizers, dtype=float)
        if z.ndim != 1 or z.shape != m.shape or len(z) == 0:
            raise ValueError("zeros and normalizers must be matching 1-d arrays")
        if z[0] <= 0.0 or np.any(np.diff(z) <= 0.0):
            raise ValueError("zeros must be positive and strictly increasing")
        if np.any(m <= 0.0):
            raise ValueError("normalizers must be positive")
        resid = np.abs(bessel_j(self.order, z))
        if np.any(resid > 1e-10):
            raise ValueError(f"stored zero fails |J_nu| <= 1e-10 (max {resid.max():.3e})")
        z.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "normalizers", m)
        j = np.arange(1, len(z) + 1, dtype=float)
        object.__setattr__(self, "growth_constant", float(np.max(z / j)))

    def __len__(self) -> int:
        return len(self.zeros)

    @property
    def last(self) -> float:
        return float(self.zeros[-1])

    def checksum(self) -> str:
        """SHA-256 over the exact binary content, for run manifests."""
        h = hashlib.sha256()
        h.update(repr(self.order.nu).encode())
        h.update(self.zeros.tobytes())
        h.update(self.normalizers.tobytes())
        return h.hexdigest()


def _mcmahon_guess(nu: float, j: int) -> float:
    beta = (j + 0.5 * nu - 0.25) * math.pi
    return beta - (4.0 * nu * nu - 1.0) / (8.0 * beta)


def _refine(order: Order, lo: float, hi: float, f_lo: float, j: int) -> float:
    """Safeguarded Newton inside a sign-change bracket, bisection fallback."""
    x = 0.5 * (lo + hi)
    for _ in range(_NEWTON_MAX):
        fx = bessel_j(order, x)
        if fx == 0.0:
            lo = hi = x
            break
        if (fx > 0.0) == (f_lo > 0.0):
            lo, f_lo = x, fx
        else:
            hi = x
        if abs(fx) <= _NEWTON_TOL and hi - lo <= _CERT_WIDTH:
            break
        step = fx / bessel_j_deriv(order, x)
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        x = x_new
    else:
        for _ in range(_BISECT_MAX):
            x = 0.5 * (lo + hi)
            if hi - lo <= _CERT_WIDTH:
                break
            fx = bessel_j(order, x)
            if fx == 0.0:
                lo = hi = x
                break
            if (fx > 0.0) == (f_lo > 0.0):
                lo, f_lo = x, fx
            else:
                hi = x

    root = 0.5 * (lo + hi)
    half = 0.5 * _CERT_WIDTH
    a, b = root - half, root + half
    fa, fb = bessel_j(order, a), bessel_j(order, b)
    if fa == 0.0 or fb == 0.0 or (fa > 0.0) != (fb > 0.0):
        return root
    if hi - lo <= _CERT_WIDTH and (bessel_j(order, lo) > 0.0) != (bessel_j(order, hi) > 0.0):
        return root
    raise BracketingError(j, f"no certified sign change within width {_CERT_WIDTH:g}")


def compute_zeros(order: Order, n: int) -> ZeroTable:
    """First n positive zeros of J_nu with normalizers |J_{nu+1}(s_j)|."""
    if n < 1:
        raise DomainError("need n >= 1 zeros")
    nu = order.nu
    zeros = np.empty(n)
    prev = 0.0
    for j in range(1, n + 1):
        lo = max(_mcmahon_guess(nu, j) - math.pi / 2.0, prev + 1e-12, 1e-12)
        f_lo = bessel_j(order, lo)
        hi = lo
        found = False
        # gaps between consecutive zeros exceed pi/8 for every nu > -1,
        # so stepping by pi/8 cannot jump across two zeros at once
        for _ in range(400):
            hi = lo + _SCAN_STEP
            f_hi = bessel_j(order, hi)
            if f_hi == 0.0 or (f_hi > 0.0) != (f_lo > 0.0):
                found = True
                break
            lo, f_lo = hi, f_hi
        if not found:
            raise BracketingError(j, "scan found no sign change")
        prev = zeros[j - 1] = _refine(order, lo, hi, f_lo, j)
    order_up = Order(nu + 1.0)
    normalizers = np.abs(bessel_j(order_up, zeros))
    return ZeroTable(order=order, zeros=zeros, normalizers=normalizers)


def count_zeros_below(table: ZeroTable, R: float) -> int:
    """N(R) = #{j : s_j <= R}.  Raises if the table does not reach R."""
    if not math.isfinite(R) or R <= 0.0:
        raise DomainError(f"R must be a positive real, got {R}")
    if R > table.last:
        raise TableTooShortError(
            f"R={R:g} exceeds the last tabulated zero {table.last:g}")
    return int(np.searchsorted(table.zeros, R, side="right"))


def table_covering(order: Order, R: float, extra: int = 2) -> ZeroTable:
    """A table whose last zero strictly exceeds R (with `extra` spare zeros)."""
    if R <= 0.0:
        raise DomainError("R must be positive")
    n = max(1, math.ceil(R / math.pi + abs(order.nu) / 2.0 + 1.0)) + extra
    table = compute_zeros(order, n)
    while table.last <= R:
        n = int(n * 1.5) + 4
        table = compute_zeros(order, n)
    return table
