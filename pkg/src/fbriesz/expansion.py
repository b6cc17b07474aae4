"""Orthonormal systems psi_j / phi_j on (0,1), expansion coefficients, and
the summation operators built on them: partial sums, Bochner-Riesz means,
the grid-discretized maximal operator, and generalized delayed means.

psi_j(x) = sqrt(2)/|J_{nu+1}(s_j)| x^-nu J_nu(s_j x) is orthonormal for the
measure x^{2nu+1} dx; phi_j(x) = sqrt(2x) J_nu(s_j x)/|J_{nu+1}(s_j)| is its
Lebesgue-measure counterpart.  All j-indexed series are accumulated in
ascending j with compensated summation so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningError, ConvergenceError, DomainError, LengthMismatchError
from .quadrature import QuadSpec, geometric_grid, gl_nodes, panel_edges, _split
from .specfun import Order, bessel_j_scaled, gamma
from .zeros import ZeroTable, count_zeros_below

__all__ = [
    "GridFunction",
    "CoefficientVector",
    "RieszPlan",
    "DelayedMeansPlan",
    "eval_psi",
    "eval_phi",
    "mode_matrix",
    "coefficients",
    "synthesize",
    "partial_sum",
    "bochner_riesz",
    "maximal_riesz",
    "riesz_weights",
    "solve_delayed_coeffs",
    "delayed_means",
    "hardy_riesz_ratio",
    "random_band_limited",
]


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on a strictly interior grid of (0,1)."""

    grid: np.ndarray
    values: np.ndarray
    measure_tag: str = "mu_nu"

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or g.shape != v.shape:
            raise ValueError("grid and values must be matching 1-d arrays")
        if len(g) and (g[0] <= 0.0 or g[-1] >= 1.0 or np.any(np.diff(g) <= 0.0)):
            raise ValueError("grid must be strictly increasing inside (0,1)")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        if self.measure_tag not in ("mu_nu", "lebesgue"):
            raise ValueError(f"unknown measure tag {self.measure_tag!r}")
        g.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    def __call__(self, x):
        return np.interp(x, self.grid, self.values)


@dataclass(frozen=True)
class CoefficientVector:
    """Finite expansion coefficients against psi (a_j) or phi (b_j)."""

    order: Order
    system_tag: str
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or len(c) < 1:
            raise ValueError("coefficients must be a nonempty 1-d array")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if self.system_tag not in ("psi", "phi"):
            raise ValueError(f"unknown system tag {self.system_tag!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __len__(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class RieszPlan:
    """Riesz smoothness delta, radius R, and truncation index N(R)."""

    delta: float
    R: float
    N: int

    def __post_init__(self):
        if self.delta <= 0.0 or self.R <= 0.0 or self.N < 0:
            raise DomainError("need delta > 0, R > 0, N >= 0")

    @classmethod
    def from_table(cls, delta: float, R: float, table: ZeroTable) -> "RieszPlan":
        return cls(delta=delta, R=R, N=count_zeros_below(table, R))


def solve_delayed_coeffs(r: int) -> np.ndarray:
    """Coefficients alpha_1..alpha_{r+1} with sum_l alpha_l / l^{2j} = [j == 0].

    The matrix is a Vandermonde system in the nodes 1/l^2, solved by
    partially pivoted elimination (LAPACK); conditioning deteriorates
    quickly, so r is capped at 12 and the residual is verified.
    """
    if r < 0:
        raise DomainError("r must be a nonnegative integer")
    if r > 12:
        raise ConditioningError(f"delayed-means system is too ill-conditioned for r={r} > 12")
    ell = np.arange(1, r + 2, dtype=float)
    j = np.arange(0, r + 1, dtype=float)
    A = ell[None, :] ** (-2.0 * j[:, None])
    b = np.zeros(r + 1)
    b[0] = 1.0
    alphas = np.linalg.solve(A, b)
    resid = np.max(np.abs(A @ alphas - b))
    if resid > 1e-10:
        raise ConditioningError(f"delayed-means solve residual {resid:.3e} exceeds 1e-10")
    return alphas


@dataclass(frozen=True)
class DelayedMeansPlan:
    """Order r, base radius R and reproduction coefficients alpha_1..alpha_{r+1}."""

    r: int
    R: float
    alphas: np.ndarray

    def __post_init__(self):
        if self.r < 0 or self.R <= 0.0:
            raise DomainError("need r >= 0 and R > 0")
        a = np.asarray(self.alphas, dtype=float)
        if a.shape != (self.r + 1,):
            raise ValueError(f"expected {self.r + 1} coefficients, got shape {a.shape}")
        ell = np.arange(1, self.r + 2, dtype=float)
        for j in range(self.r + 1):
            resid = abs(float(np.dot(a, ell ** (-2.0 * j))) - (1.0 if j == 0 else 0.0))
            if resid > 1e-10:
                raise ValueError(f"reproduction identity violated at j={j} by {resid:.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "alphas", a)

    @classmethod
    def for_radius(cls, r: int, R: float) -> "DelayedMeansPlan":
        return cls(r=r, R=R, alphas=solve_delayed_coeffs(r))


def _check_index(table: ZeroTable, j: int) -> int:
    if not 1 <= j <= len(table):
        raise IndexError(f"mode index {j} outside 1..{len(table)}")
    return j - 1


def eval_psi(table: ZeroTable, j: int, x):
    """psi_j at x in [0,1); x = 0 uses the small-argument limit of J_nu.

    Evaluated as sqrt(2)/|J_{nu+1}(s_j)| * s_j^nu * (J_nu(s_j x)/(s_j x)^nu),
    which is finite and stable down to and including x = 0.
    """
    k = _check_index(table, j)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0) or np.any(xa >= 1.0):
        raise DomainError("psi_j is evaluated on [0,1)")
    s = table.zeros[k]
    nu = table.order.nu
    out = (math.sqrt(2.0) / table.normalizers[k]) * s ** nu \
        * bessel_j_scaled(table.order, s * xa)
    return out


def eval_phi(table: ZeroTable, j: int, x):
    """phi_j(x) = sqrt(2x) J_nu(s_j x)/|J_{nu+1}(s_j)| for x in (0,1).

    Equals x^{nu+1/2} psi_j(x); computed directly from the definition.
    """
    k = _check_index(table, j)
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0.0) or np.any(xa >= 1.0):
        raise DomainError("phi_j is evaluated on (0,1)")
    s = table.zeros[k]
    t = s * xa
    from scipy.special import jv  # local import keeps specfun the only scipy surface elsewhere

    return np.sqrt(2.0 * xa) * jv(table.order.nu, t) / table.normalizers[k]


def mode_matrix(table: ZeroTable, n: int, x, system: str = "psi") -> np.ndarray:
    """Matrix M[j-1, m] of the first n basis functions at the points x."""
    if not 1 <= n <= len(table):
        raise LengthMismatchError(f"n={n} outside table length {len(table)}")
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    s = table.zeros[:n]
    nu = table.order.nu
    t = s[:, None] * xa[None, :]
    if system == "psi":
        if np.any(xa < 0.0) or np.any(xa >= 1.0):
            raise DomainError("psi modes are evaluated on [0,1)")
        scaled = bessel_j_scaled(table.order, t.ravel()).reshape(t.shape)
        return (math.sqrt(2.0) * s ** nu / table.normalizers[:n])[:, None] * scaled
    if system == "phi":
        if np.any(xa <= 0.0) or np.any(xa >= 1.0):
            raise DomainError("phi modes are evaluated on (0,1)")
        from scipy.special import jv

        return np.sqrt(2.0 * xa)[None, :] * jv(nu, t) / table.normalizers[:n, None]
    raise ValueError(f"unknown system tag {system!r}")


def _as_callable(f):
    if callable(f):
        return f
    if isinstance(f, GridFunction):
        return f
    raise TypeError("f must be callable or a GridFunction")


def coefficients(f, table: ZeroTable, N: int, system: str = "psi",
                 quad: QuadSpec | None = None) -> CoefficientVector:
    """First N expansion coefficients of f by composite Gauss-Legendre.

    Panels scale with s_N so every oscillation of the highest mode is
    covered by at least quad.panels_per_wavelength panels; the result is
    recomputed on doubled panels and any coefficient moving by more than
    the doubling tolerance raises ConvergenceError.
    """
    if not 1 <= N <= len(table):
        raise LengthMismatchError(f"N={N} outside table length {len(table)}")
    quad = quad or QuadSpec()
    fn = _as_callable(f)
    nu = table.order.nu
    s_N = float(table.zeros[N - 1])
    # measure weight x^{2nu+1} for psi, envelope x^{nu+1/2} of phi for phi
    weight_exp = (2.0 * nu + 1.0) if system == "psi" else (nu + 0.5)
    edges = panel_edges(s_N, weight_exp, quad)

    def all_coeffs(e):
        x, w = gl_nodes(e, quad.nodes_per_panel)
        M = mode_matrix(table, N, x, system=system)
        fv = np.asarray(fn(x), dtype=float)
        if system == "psi":
            w = w * x ** (2.0 * nu + 1.0)
        return M @ (w * fv)

    coarse = all_coeffs(edges)
    fine = all_coeffs(_split(edges))
    worst = float(np.max(np.abs(fine - coarse)))
    tol = quad.doubling_abs + quad.doubling_rel * float(np.max(np.abs(fine)))
    if worst > tol:
        raise ConvergenceError(
            f"coefficient quadrature moved by {worst:.3e} under panel doubling "
            f"(tolerance {tol:.3e})")
    return CoefficientVector(order=table.order, system_tag=system, coeffs=fine)


def riesz_weights(s, R: float, delta: float) -> np.ndarray:
    """Multipliers (1 - s^2/R^2)_+^delta; at delta = 0 the sharp cutoff s < R."""
    u = np.maximum(1.0 - (np.asarray(s, dtype=float) / R) ** 2, 0.0)
    if delta == 0.0:
        return (u > 0.0).astype(float)
    return u ** delta


def _compensated_dot(weights: np.ndarray, rows: np.ndarray):
    """sum_j weights[j] * rows[j, :] in ascending j, Kahan-compensated."""
    total = np.zeros(rows.shape[1])
    carry = np.zeros(rows.shape[1])
    for j in range(rows.shape[0]):
        y = weights[j] * rows[j] - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def _weighted_sum(coeffs: CoefficientVector, table: ZeroTable, weights: np.ndarray, x):
    n = len(weights)
    if n == 0:
        out = np.zeros(np.shape(np.atleast_1d(x)))
        return float(out[0]) if np.ndim(x) == 0 else out
    M = mode_matrix(table, n, x, system=coeffs.system_tag)
    out = _compensated_dot(np.asarray(weights) * coeffs.coeffs[:n], M)
    return float(out[0]) if np.ndim(x) == 0 else out


def synthesize(coeffs: CoefficientVector, table: ZeroTable, x):
    """Full finite expansion sum over every supplied coefficient."""
    if len(coeffs) > len(table):
        raise LengthMismatchError("coefficient vector is longer than the zero table")
    return _weighted_sum(coeffs, table, np.ones(len(coeffs)), x)


def partial_sum(coeffs: CoefficientVector, table: ZeroTable, R: float, x):
    """S_R(f,x) = sum over s_j <= R of a_j psi_j(x) (or b_j phi_j)."""
    n = count_zeros_below(table, R)
    if n > len(coeffs):
        raise LengthMismatchError(
            f"partial sum needs {n} coefficients, vector has {len(coeffs)}")
    return _weighted_sum(coeffs, table, np.ones(n), x)


def _riesz_sum(coeffs: CoefficientVector, table: ZeroTable, delta: float, R: float, x,
               strict: bool = True):
    """Riesz-weighted sum; with strict=False the vector is treated as a
    complete finite expansion (coefficients beyond its length are zero)."""
    n = count_zeros_below(table, R)
    if n > len(coeffs):
        if strict:
            raise LengthMismatchError(
                f"Riesz mean needs {n} coefficients, vector has {len(coeffs)}")
        n = len(coeffs)
    w = riesz_weights(table.zeros[:n], R, delta)
    return _weighted_sum(coeffs, table, w, x)


def bochner_riesz(coeffs: CoefficientVector, table: ZeroTable, plan: RieszPlan, x):
    """Bochner-Riesz mean sum_{j<=N} (1 - s_j^2/R^2)^delta a_j psi_j(x)."""
    if plan.N > len(coeffs):
        raise LengthMismatchError(
            f"plan truncates at N={plan.N} but vector has {len(coeffs)} coefficients")
    n_table = count_zeros_below(table, plan.R)
    if n_table != plan.N:
        raise LengthMismatchError(
            f"plan N={plan.N} inconsistent with table count N(R)={n_table}")
    return _riesz_sum(coeffs, table, plan.delta, plan.R, x)


def maximal_riesz(coeffs: CoefficientVector, table: ZeroTable, delta: float,
                  R_grid, x):
    """max over R in R_grid of |B_R^delta(f, x)|.

    A grid discretization of the supremum over R > 0: it is a lower bound
    of the true maximal function and nondecreasing under grid refinement.
    """
    grid = np.asarray(R_grid, dtype=float)
    if grid.size == 0:
        raise DomainError("R grid must be nonempty")
    if np.any(np.diff(grid) <= 0.0):
        raise DomainError("R grid must be strictly increasing")
    count_zeros_below(table, float(grid[-1]))  # covering check
    best = np.zeros(np.shape(np.atleast_1d(x)))
    for R in grid:
        best = np.maximum(best, np.abs(np.atleast_1d(
            _riesz_sum(coeffs, table, delta, R, x, strict=False))))
    return float(best[0]) if np.ndim(x) == 0 else best


def delayed_means(coeffs: CoefficientVector, table: ZeroTable,
                  plan: DelayedMeansPlan, x):
    """T_{r,R,alpha} f = sum_l alpha_l B^r_{lR} f.

    Reproduces every expansion band-limited to s_j <= R exactly (up to
    roundoff in the alpha solve).
    """
    count_zeros_below(table, (plan.r + 1) * plan.R)  # covering check
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    acc = np.zeros_like(xa)
    for ell in range(1, plan.r + 2):
        acc = acc + plan.alphas[ell - 1] * np.atleast_1d(
            _riesz_sum(coeffs, table, float(plan.r), ell * plan.R, xa, strict=False))
    return float(acc[0]) if np.ndim(x) == 0 else acc


def hardy_riesz_ratio(coeffs: CoefficientVector, table: ZeroTable, delta: float,
                      x: float, n_max: int, limit: float | None = None,
                      grid_ratio: float = 1.05) -> np.ndarray:
    """Ratios |S_{s_n}(f,x) - c| / (n^delta sup_{t<=s_{n+1}} |B_t^delta(f,x)|).

    c defaults to the full expansion value at x (the caller supplies
    convergent cases, so this is the limit of the means).  The sup is
    discretized on a geometric t-grid from s_1/2 to s_{n+1}.  Degenerate
    denominators yield NaN entries, reported as missing data points.
    """
    if not 1 <= n_max < len(table):
        raise LengthMismatchError("need n_max + 1 zeros in the table")
    if n_max + 1 > len(coeffs):
        raise LengthMismatchError("need n_max + 1 coefficients")
    c = synthesize(coeffs, table, x) if limit is None else float(limit)
    s = table.zeros
    t_grid = geometric_grid(s[0] / 2.0, float(s[n_max]), grid_ratio)
    sup_running = 0.0
    ratios = np.empty(n_max)
    idx = 0
    for n in range(1, n_max + 1):
        numer = abs(partial_sum(coeffs, table, float(s[n - 1]), x) - c)
        while idx < len(t_grid) and t_grid[idx] <= s[n]:
            sup_running = max(sup_running,
                              abs(_riesz_sum(coeffs, table, delta, float(t_grid[idx]), x)))
            idx += 1
        here = max(sup_running,
                   abs(_riesz_sum(coeffs, table, delta, float(s[n]), x)))
        denom = n ** delta * here
        ratios[n - 1] = numer / denom if denom > 0.0 else math.nan
    return ratios


def random_band_limited(table: ZeroTable, n_modes: int, size: int, rng,
                        profile: str = "flat") -> list[CoefficientVector]:
    """Seeded families of band-limited test functions (modes 1..n_modes).

    profile "flat" draws iid standard-normal coefficients.  profile
    "peaked" jitters a smoothed reproducing-kernel-at-0 profile,
    a_j = psi_j(0) (1 - (s_j/S)^2)^3 (1 + 0.05 g_j) with S just above the
    band edge: its sup grows like the Nikolskii bound while its L^1 norm
    stays R-uniform, so the probes exercise the near-extremal regime the
    bounds describe instead of the bulk-average one.  Each family member
    consumes exactly n_modes standard normals from rng, in order.
    """
    if not 1 <= n_modes <= len(table):
        raise LengthMismatchError(f"n_modes={n_modes} outside table length")
    if profile not in ("flat", "peaked"):
        raise ValueError(f"unknown profile {profile!r}")
    nu = table.order.nu
    if profile == "peaked":
        s = table.zeros[:n_modes]
        edge = s[-1] * 1.02
        base = (math.sqrt(2.0) / table.normalizers[:n_modes]) \
            * s ** nu / (2.0 ** nu * gamma(nu + 1.0)) \
            * (1.0 - (s / edge) ** 2) ** 3
    out = []
    for _ in range(size):
        g = rng.standard_normal(n_modes)
        c = g if profile == "flat" else base * (1.0 + 0.05 * g)
        out.append(CoefficientVector(order=table.order, system_tag="psi", coeffs=c))
    return out
