"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a singular point."""


class PoleError(DomainError):
    """Gamma function evaluated at a nonpositive integer."""


class BracketingError(RuntimeError):
    """A Bessel zero could not be certified by a sign-change bracket."""

    def __init__(self, index: int, message: str):
        super().__init__(f"zero #{index}: {message}")
        self.index = index


class TableTooShortError(ValueError):
    """A zero table does not extend far enough for the requested radius."""


class LengthMismatchError(ValueError):
    """Coefficient vector and zero table lengths are inconsistent."""


class ConvergenceError(RuntimeError):
    """Quadrature failed its panel-doubling self check."""


class ConditioningError(ValueError):
    """Linear system rejected as too ill-conditioned to solve reliably."""


class ConfigError(ValueError):
    """Invalid run configuration."""
