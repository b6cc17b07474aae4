"""Fourier-Bessel expansions on (0,1) and their Bochner-Riesz summation,
with desk-scale probes of kernel bounds, critical exponents, norm
asymptotics and logarithmic operator-norm growth."""

from .analysis import (
    CheckResult,
    Cp_check,
    CriticalExponents,
    LpSpec,
    cp_check,
    cp_parameters_from_Cp,
    critical_exponents,
    fit_power_law,
    growth_probe_noweak,
    lp_norm,
    norm_curve_reference,
    psi_norm_curve,
    weak_lp_quasinorm,
    weak_type_probe,
)
from .errors import (
    BracketingError,
    ConditioningError,
    ConfigError,
    ConvergenceError,
    DomainError,
    LengthMismatchError,
    PoleError,
    SingularityError,
    TableTooShortError,
)
from .expansion import (
    CoefficientVector,
    DelayedMeansPlan,
    GridFunction,
    RieszPlan,
    bochner_riesz,
    coefficients,
    delayed_means,
    eval_phi,
    eval_psi,
    hardy_riesz_ratio,
    maximal_riesz,
    partial_sum,
    random_band_limited,
    riesz_weights,
    solve_delayed_coeffs,
    synthesize,
)
from .kernels import (
    KernelSample,
    RegionLabel,
    RegionStat,
    bound_ratio_sweep,
    classify_region,
    kernel,
    kernel_bound,
    kernel_mu,
    kernel_mu_profile,
    kernel_samples,
    kernel_zero_leading,
    kernel_zero_remainder,
    remainder_bound,
)
from .quadrature import QuadSpec, evaluation_grid, geometric_grid
from .specfun import Order, bessel_j, bessel_j_deriv, bessel_y, gamma, phi_aux
from .zeros import ZeroTable, compute_zeros, count_zeros_below, table_covering

__version__ = "0.1.0"
