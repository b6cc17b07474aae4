"""Independent oracles used to freeze expected values in the tests.

Everything here is deliberately primitive: ascending power series in pure
Python floats, interval bisection, exact-rational elimination, adaptive
QUADPACK integration. None of it shares code with the library paths it
checks.
"""

from __future__ import annotations

import math
from fractions import Fraction


def jv_series(nu: float, x: float, terms: int = 80) -> float:
    """Ascending series of J_nu(x); reliable for x up to ~12."""
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    q = -0.25 * x * x
    log_front = nu * math.log(x / 2.0) - math.lgamma(nu + 1.0)
    term = math.exp(log_front) if abs(log_front) < 700 else 0.0
    total = term
    for k in range(1, terms):
        term *= q / (k * (nu + k))
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return total


def bisect_root(fn, lo: float, hi: float, iters: int = 200) -> float:
    """Plain bisection; fn(lo) and fn(hi) must have opposite signs."""
    f_lo = fn(lo)
    assert f_lo * fn(hi) < 0.0, "no sign change on the bracket"
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def jv_zero(nu: float, lo: float, hi: float) -> float:
    """Bessel zero by bisection of the ascending series on [lo, hi]."""
    return bisect_root(lambda x: jv_series(nu, x), lo, hi)


def solve_exact(matrix, rhs):
    """Gaussian elimination over exact rationals; returns list of Fractions."""
    n = len(rhs)
    a = [[Fraction(v) for v in row] + [Fraction(r)]
         for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [v / inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                fac = a[r][col]
                a[r] = [v - fac * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def quad_oracle(fn, a: float, b: float, **kwargs) -> float:
    """Adaptive QUADPACK integral, independent of the library's GL panels."""
    from scipy.integrate import quad

    val, _ = quad(fn, a, b, limit=400, **kwargs)
    return val


def central_difference(fn, x: float, h: float) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)
