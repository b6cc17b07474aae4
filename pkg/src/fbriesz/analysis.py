"""Norms, critical exponents, weight-condition checkers and growth probes.

Strong L^p norms are computed by the shared Gauss-Legendre machinery;
infinity norms and weak quasinorms are grid quantities on the documented
evaluation grid.  The probes report raw data plus fitted constants; all
pass/fail thresholds live in the acceptance suite, not here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .expansion import CoefficientVector, maximal_riesz, synthesize
from .kernels import kernel_mu_profile
from .quadrature import QuadSpec, evaluation_grid, integrate, trapezoid_weights
from .specfun import Order
from .zeros import ZeroTable, count_zeros_below

__all__ = [
    "LpSpec",
    "CriticalExponents",
    "CheckResult",
    "lp_norm",
    "weak_lp_quasinorm",
    "critical_exponents",
    "cp_check",
    "Cp_check",
    "cp_parameters_from_Cp",
    "psi_norm_curve",
    "norm_curve_reference",
    "fit_power_law",
    "growth_probe_noweak",
    "weak_type_probe",
    "ProbeRow",
]

INF = math.inf


@dataclass(frozen=True)
class LpSpec:
    """Norm specification: exponent, measure, and power weight x^w inside.

    nu parameterizes the measure x^{2nu+1} dx and is required when
    measure_tag is "mu_nu".
    """

    p: float
    measure_tag: str = "mu_nu"
    weight_exponent: float = 0.0
    nu: float | None = None

    def __post_init__(self):
        if self.p < 1.0:
            raise DomainError("p must be >= 1")
        if self.measure_tag not in ("mu_nu", "lebesgue"):
            raise ValueError(f"unknown measure tag {self.measure_tag!r}")
        if self.measure_tag == "mu_nu" and self.nu is None:
            raise ValueError("mu_nu norms need the order nu")

    @property
    def conjugate(self) -> float:
        if self.p == 1.0:
            return INF
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def measure_exponent(self) -> float:
        return 2.0 * self.nu + 1.0 if self.measure_tag == "mu_nu" else 0.0


def _values_on(f, x):
    return np.asarray(f(x), dtype=float)


def lp_norm(f, spec: LpSpec, quad: QuadSpec | None = None,
            oscillation: float = 0.0, grid: np.ndarray | None = None) -> float:
    """(integral of |x^w f|^p against the measure)^(1/p); grid sup at p = inf.

    oscillation declares the highest wavenumber of f so panel counts can
    resolve it.  quad.endpoint_exponent declares f's power behaviour at 0.
    """
    quad = quad or QuadSpec()
    beta = spec.measure_exponent
    w = spec.weight_exponent
    if math.isinf(spec.p):
        xs = grid if grid is not None else evaluation_grid()
        return float(np.max(np.abs(xs ** w * _values_on(f, xs))))
    p = spec.p
    grade = beta + p * (w + quad.endpoint_exponent)
    inner = QuadSpec(panels_per_wavelength=quad.panels_per_wavelength,
                     nodes_per_panel=quad.nodes_per_panel,
                     breakpoints=quad.breakpoints,
                     doubling_abs=quad.doubling_abs,
                     doubling_rel=quad.doubling_rel)

    def integrand(x):
        return np.abs(x ** w * _values_on(f, x)) ** p * x ** beta

    val = integrate(integrand, oscillation, grade, inner)
    return val ** (1.0 / p)


def weak_lp_quasinorm(f, spec: LpSpec, grid: np.ndarray | None = None,
                      lambda_grid: np.ndarray | None = None) -> float:
    """Weak-L^p quasinorm sup_lambda lambda * mu{|x^w f| > lambda}^{1/p}.

    Super-level-set measures come from trapezoid weights against the
    measure density on the evaluation grid.  By default the supremum is
    scanned exactly at the jump levels of the discretized function (every
    sampled value), which is exact for the grid discretization; passing an
    explicit lambda_grid reproduces the plain grid-supremum lower bound.
    """
    if math.isinf(spec.p):
        raise DomainError("weak quasinorm needs finite p")
    xs = grid if grid is not None else evaluation_grid()
    g = np.abs(xs ** spec.weight_exponent * _values_on(f, xs))
    w = trapezoid_weights(xs, spec.measure_exponent)
    if not np.any(g > 0.0):
        return 0.0
    if lambda_grid is None:
        order = np.argsort(-g, kind="stable")
        gs = g[order]
        cum = np.cumsum(w[order])
        lam = gs * (1.0 - 1e-12)
        keep = lam > 0.0
        return float(np.max(lam[keep] * cum[keep] ** (1.0 / spec.p)))
    best = 0.0
    for lam in np.asarray(lambda_grid, dtype=float):
        m = float(np.sum(w[g > lam]))
        if m > 0.0:
            best = max(best, lam * m ** (1.0 / spec.p))
    return best


@dataclass(frozen=True)
class CriticalExponents:
    """Endpoint exponents of the strong-type region, mutually conjugate."""

    p0: float
    p1: float

    def __post_init__(self):
        if not (self.p0 <= 2.0 <= self.p1):
            raise ValueError(f"expected p0 <= 2 <= p1, got ({self.p0}, {self.p1})")
        if math.isfinite(self.p0) and math.isfinite(self.p1):
            if abs(1.0 / self.p0 + 1.0 / self.p1 - 1.0) > 1e-12:
                raise ValueError("p0 and p1 must be conjugate when finite")


def critical_exponents(order: Order, delta: float) -> CriticalExponents:
    """(p0, p1) for the given order and Riesz smoothness.

    (1, inf) when delta exceeds nu + 1/2 or nu <= -1/2; otherwise the
    rational expressions 4(nu+1)/(2nu+3+2delta) and 4(nu+1)/(2nu+1-2delta),
    the latter collapsing to inf at delta = nu + 1/2.
    """
    if delta <= 0.0:
        raise DomainError("delta must be positive")
    nu = order.nu
    if nu <= -0.5 or delta > nu + 0.5:
        return CriticalExponents(1.0, INF)
    p0 = 4.0 * (nu + 1.0) / (2.0 * nu + 3.0 + 2.0 * delta)
    den = 2.0 * nu + 1.0 - 2.0 * delta
    p1 = INF if den <= 0.0 else 4.0 * (nu + 1.0) / den
    return CriticalExponents(p0, p1)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def _pair_rule(violations, strict, tag_a, tag_b, exempt=False):
    if exempt:
        return
    if not (strict[tag_a] or strict[tag_b]):
        violations.append(f"pair({tag_a},{tag_b})")


def cp_check(a: float, A: float, order: Order, delta: float, p: float) -> CheckResult:
    """Lebesgue-setting weight conditions for the pair (x^a, x^A).

    Five inequalities with the stated relaxations at p = 1 and p = infinity
    and the rule that each of the pairs (con2, con5), (con3, con5),
    (con4, con5) contains a strict inequality, the last pair exempt at
    p = infinity.
    """
    if p < 1.0:
        raise DomainError("p must be in [1, inf]")
    if delta <= 0.0:
        raise DomainError("delta must be positive")
    nu = order.nu
    invp = 0.0 if math.isinf(p) else 1.0 / p
    r1 = -invp - (nu + 0.5)
    r2 = 1.0 - invp + (nu + 0.5)
    r3 = -delta - invp
    r4 = 1.0 + delta - invp
    violations: list[str] = []
    if not (a > r1 or (math.isinf(p) and a >= r1)):
        violations.append("con1")
    if not (A < r2 or (p == 1.0 and A <= r2)):
        violations.append("con2")
    if not (a > r3 or (math.isinf(p) and a >= r3)):
        violations.append("con3")
    if not A <= r4:
        violations.append("con4")
    if not A <= a:
        violations.append("con5")
    strict = {"con2": A < r2, "con3": a > r3, "con4": A < r4, "con5": A < a}
    _pair_rule(violations, strict, "con2", "con5")
    _pair_rule(violations, strict, "con3", "con5")
    _pair_rule(violations, strict, "con4", "con5", exempt=math.isinf(p))
    return CheckResult(ok=not violations, violations=tuple(violations))


def Cp_check(b: float, B: float, order: Order, delta: float, p: float) -> CheckResult:
    """Weighted-measure-setting conditions for the pair (x^b, x^B).

    Equivalent to cp_check under the shift a = b + (nu+1/2)(2/p - 1),
    A = B + (nu+1/2)(2/p - 1); stated and checked independently here.
    """
    if p < 1.0:
        raise DomainError("p must be in [1, inf]")
    if delta <= 0.0:
        raise DomainError("delta must be positive")
    nu = order.nu
    invp = 0.0 if math.isinf(p) else 1.0 / p
    two = 2.0 * (nu + 1.0)
    r1 = -two * invp
    r2 = two * (1.0 - invp)
    r3 = two * (0.5 - invp) - delta - 0.5
    r4 = two * (0.5 - invp) + delta + 0.5
    violations: list[str] = []
    if not (b > r1 or (math.isinf(p) and b >= r1)):
        violations.append("con1B")
    if not (B < r2 or (p == 1.0 and B <= r2)):
        violations.append("con2B")
    if not (b > r3 or (math.isinf(p) and b >= r3)):
        violations.append("con3B")
    if not B <= r4:
        violations.append("con4B")
    if not B <= b:
        violations.append("con5B")
    strict = {"con2B": B < r2, "con3B": b > r3, "con4B": B < r4, "con5B": B < b}
    _pair_rule(violations, strict, "con2B", "con5B")
    _pair_rule(violations, strict, "con3B", "con5B")
    _pair_rule(violations, strict, "con4B", "con5B", exempt=math.isinf(p))
    return CheckResult(ok=not violations, violations=tuple(violations))


def cp_parameters_from_Cp(b: float, B: float, order: Order, p: float) -> tuple[float, float]:
    """Shift taking the weighted-measure conditions to the Lebesgue ones."""
    invp = 0.0 if math.isinf(p) else 1.0 / p
    shift = (order.nu + 0.5) * (2.0 * invp - 1.0)
    return b + shift, B + shift


def psi_norm_curve(table: ZeroTable, p: float, j_list,
                   quad: QuadSpec | None = None) -> list[tuple[int, float]]:
    """L^p(d mu_nu) norms of psi_j for the requested indices."""
    from .expansion import eval_psi

    nu = table.order.nu
    out = []
    for j in j_list:
        j = int(j)
        if not 1 <= j <= len(table):
            raise DomainError(f"index {j} outside the table")
        spec = LpSpec(p=p, measure_tag="mu_nu", nu=nu)
        osc = 0.0 if math.isinf(p) else float(table.zeros[j - 1]) * min(max(p, 1.0), 6.0)
        out.append((j, lp_norm(lambda x, jj=j: eval_psi(table, jj, x), spec,
                               quad=quad, oscillation=osc)))
    return out


def norm_curve_reference(order: Order, p: float) -> tuple[str, float]:
    """Predicted large-j behaviour of the norm curve for nu > -1/2.

    Returns ("power", exponent), ("log", 1/p) at the critical p, or
    ("flat", 0) below it.
    """
    nu = order.nu
    if nu <= -0.5:
        return ("power", nu + 0.5) if math.isinf(p) else ("flat", 0.0)
    if math.isinf(p):
        return ("power", nu + 0.5)
    crit = 2.0 * (nu + 1.0) / (nu + 0.5)
    if p > crit:
        return ("power", (nu + 0.5) - 2.0 * (nu + 1.0) / p)
    if p == crit:
        return ("log", 1.0 / p)
    return ("flat", 0.0)


def fit_power_law(xs, ys, upper_fraction: float = 0.5) -> tuple[float, float]:
    """Least-squares slope and intercept of log y against log x.

    Only the upper portion of the x range is used (asymptotic regime).
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) < 2 or len(xs) != len(ys):
        raise DomainError("need matching arrays with at least 2 points")
    k = len(xs) - max(2, int(math.ceil(len(xs) * upper_fraction)))
    slope, intercept = np.polyfit(np.log(xs[k:]), np.log(ys[k:]), 1)
    return float(slope), float(intercept)


@dataclass(frozen=True)
class ProbeRow:
    """One probe data point: scale, raw value, normalized ratio."""

    R: float
    raw: float
    ratio: float


def growth_probe_noweak(table: ZeroTable, delta: float, R_list,
                        quad: QuadSpec | None = None) -> list[ProbeRow]:
    """||K_R(0,.)||_{p0} against R^{nu-delta+1/2} (log R)^{1/p0}.

    By duality this is the lower-bound probe for the restricted upper
    endpoint: the norm equals sup over unit-L^{p1} f of |B_R f(0)|.
    Requires nu > -1/2 and 0 < delta <= nu + 1/2.
    """
    nu = table.order.nu
    if nu <= -0.5:
        raise DomainError("growth probe requires nu > -1/2")
    if not 0.0 < delta <= nu + 0.5:
        raise DomainError(
            f"growth probe requires 0 < delta <= nu + 1/2 = {nu + 0.5:g}, got {delta:g}")
    quad = quad or QuadSpec(doubling_abs=0.0, doubling_rel=1e-4)
    exps = critical_exponents(table.order, delta)
    rows = []
    for R in R_list:
        R = float(R)
        if R <= 1.0:
            raise DomainError("growth probe needs R > 1 so log R > 0")
        count_zeros_below(table, R)
        spec = LpSpec(p=exps.p0, measure_tag="mu_nu", nu=nu)
        norm = lp_norm(lambda y: kernel_mu_profile(table, delta, R, 0.0, y),
                       spec, quad=quad, oscillation=R)
        denom = R ** (nu - delta + 0.5) * math.log(R) ** (1.0 / exps.p0)
        rows.append(ProbeRow(R=R, raw=norm, ratio=norm / denom))
    return rows


def growth_probe_nostrong(table: ZeroTable, delta: float, R_list,
                          grid: np.ndarray | None = None,
                          n_levels: int = 16) -> list[ProbeRow]:
    """Indicator-family growth probe via the duality construction.

    For each R the near-extremal g dual to the kernel profile at 0 is
    formed (g = sign(K) |K|^{p0-1}, normalized in L^{p1}), B_R g is
    evaluated on the grid, and super/sub-level sets D of B_R g are scanned
    over quantile levels; the best ||B_R chi_D||_{p0} / ||chi_D||_{p0} is
    reported against (log R)^{1/p0}.  How to pick g at finite R is not
    prescribed by the theory, so this reports what the construction finds
    without any sharpness claim.  All integrals here are grid trapezoid
    sums (probe grade).
    """
    nu = table.order.nu
    if nu <= -0.5 or not 0.0 < delta < nu + 0.5:
        raise DomainError(
            f"indicator growth probe requires nu > -1/2 and 0 < delta < nu + 1/2")
    exps = critical_exponents(table.order, delta)
    p0, p1 = exps.p0, exps.p1
    xs = grid if grid is not None else evaluation_grid()
    w = trapezoid_weights(xs, 2.0 * nu + 1.0)
    rows = []
    for R in R_list:
        R = float(R)
        if R <= 1.0:
            raise DomainError("growth probe needs R > 1 so log R > 0")
        n = count_zeros_below(table, R)
        prof = kernel_mu_profile(table, delta, R, 0.0, xs)
        g = np.sign(prof) * np.abs(prof) ** (p0 - 1.0)
        g /= np.dot(np.abs(g) ** p1, w) ** (1.0 / p1)
        from .expansion import mode_matrix, riesz_weights

        M = mode_matrix(table, n, xs, system="psi")
        coeff = M @ (w * g)
        bg = (riesz_weights(table.zeros[:n], R, delta) * coeff) @ M
        best = 0.0
        for q in np.linspace(0.5, 1.0 - 1.0 / n_levels, n_levels):
            lam = float(np.quantile(np.abs(bg), q))
            if lam <= 0.0:
                continue
            up, dn = bg > lam, bg < -lam
            d = up if np.dot(up, w) >= np.dot(dn, w) else dn
            mu_d = float(np.dot(d, w))
            if mu_d <= 0.0:
                continue
            b_chi = M.T @ (riesz_weights(table.zeros[:n], R, delta) * (M @ (w * d)))
            num = float(np.dot(np.abs(b_chi) ** p0, w) ** (1.0 / p0))
            best = max(best, num / mu_d ** (1.0 / p0))
        rows.append(ProbeRow(R=R, raw=best, ratio=best / math.log(R) ** (1.0 / p0)))
    return rows


def weak_type_probe(members, table: ZeroTable, delta: float, p: float,
                    R_grid, grid: np.ndarray | None = None,
                    lambda_grid: np.ndarray | None = None) -> list[ProbeRow]:
    """Quasinorm-to-norm ratios of the discretized maximal operator.

    Each member is either a CoefficientVector (its reference norm is then
    the L^p norm of the synthesized expansion on the grid) or a pair
    (CoefficientVector, reference_norm) when the exact norm of the
    underlying function is known, e.g. for indicators.  Rows carry the
    member index in R and the ratio; the family supremum is max(ratio).
    """
    nu = table.order.nu
    xs = grid if grid is not None else evaluation_grid()
    spec = LpSpec(p=p, measure_tag="mu_nu", nu=nu)
    w = trapezoid_weights(xs, spec.measure_exponent)
    rows = []
    for idx, member in enumerate(members):
        if isinstance(member, CoefficientVector):
            coeffs, ref = member, None
        else:
            coeffs, ref = member
        if ref is None:
            vals = np.abs(synthesize(coeffs, table, xs))
            ref = float(np.dot(vals ** p, w) ** (1.0 / p))
        mf = maximal_riesz(coeffs, table, delta, R_grid, xs)
        quasi = weak_lp_quasinorm(lambda x: np.interp(x, xs, mf), spec,
                                  grid=xs, lambda_grid=lambda_grid)
        rows.append(ProbeRow(R=float(idx), raw=quasi, ratio=quasi / ref))
    return rows
