"""Exception hierarchy shared across the package.

Two top-level families map onto the CLI exit codes: configuration problems
(exit 1) and runtime/data problems (exit 2).
"""


class BenchmarkError(Exception):
    """Base class for all package errors."""


class ConfigurationError(BenchmarkError):
    """Invalid configuration or specification (CLI exit code 1)."""


class UnsupportedFormError(ConfigurationError):
    """Operation called on a functional form it does not support."""


class OracleCapacityError(ConfigurationError):
    """Input too large for an exhaustive test oracle."""


class DataError(BenchmarkError):
    """Runtime or data problem (CLI exit code 2)."""


class InstabilityError(DataError):
    """Simulation diverged past the overflow guard."""

    def __init__(self, variable: int, step: int, value: float):
        self.variable = variable
        self.step = step
        self.value = value
        super().__init__(
            f"simulation diverged at variable X{variable}, step {step} "
            f"(|value| = {abs(value):.3g})"
        )


class InsufficientDataError(DataError):
    """Too few usable observations for the requested operation."""


class InsufficientSampleError(DataError):
    """Effective sample size too small for a significance test."""


class NumericalDegeneracyError(DataError):
    """Singular or degenerate correlation structure."""

    def __init__(self, columns, message: str = "singular correlation submatrix"):
        self.columns = tuple(columns)
        super().__init__(f"{message} for columns {self.columns}")


class EvaluationError(DataError):
    """Ground truth and prediction are not comparable."""
