"""Exception hierarchy shared by every module in the package.

All errors raised on purpose derive from :class:`SeedPowerError`, so callers
can catch one base type at the boundary.  Subclasses also inherit from the
closest builtin (``ValueError``, ``ArithmeticError``) where that matches the
failure mode, which keeps ``except ValueError`` style code working.
"""

from __future__ import annotations


class SeedPowerError(Exception):
    """Base class for every error this package raises deliberately."""


class DomainError(SeedPowerError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class InsufficientDataError(SeedPowerError):
    """Not enough data points to carry out the requested computation."""


class DegenerateSampleError(SeedPowerError):
    """Sample configuration with zero standard error; the statistic is undefined."""


class NumericalError(SeedPowerError, ArithmeticError):
    """An iterative numerical routine failed to converge to tolerance."""


class SampleParseError(SeedPowerError):
    """Malformed input data.

    Attributes
    ----------
    source:
        Name of the offending file or stream, when known.
    line:
        1-based line number of the offending record, when known.
    """

    def __init__(self, message: str, *, source: str | None = None,
                 line: int | None = None) -> None:
        prefix = ""
        if source is not None:
            prefix = f"{source}: " if line is None else f"{source}:{line}: "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(prefix + message)
        self.source = source
        self.line = line


class UnattainableTargetError(SeedPowerError):
    """No sample size within the allowed range meets the error target.

    Attributes
    ----------
    n_max:
        Largest group size that was tried.
    beta_at_n_max:
        Type-II error probability still remaining at ``n_max``.
    """

    def __init__(self, message: str, *, n_max: int, beta_at_n_max: float) -> None:
        super().__init__(message)
        self.n_max = n_max
        self.beta_at_n_max = beta_at_n_max
