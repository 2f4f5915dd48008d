"""Exception hierarchy.

The CLI maps these to exit codes: :class:`ConfigurationError` (and
subclasses) exit with 2, :class:`ComputationError` (and subclasses) with 3.
Statistical verdicts are never encoded in exit codes.
"""


class AermError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(AermError):
    """Invalid configuration: bad parameters, mismatched model/loss, ..."""


class DomainError(ConfigurationError):
    """A parameter vector lies outside the model's parameter space."""


class EmptyRegionError(ConfigurationError):
    """A region does not intersect the parameter space."""


class UnsupportedOperationError(ConfigurationError):
    """The requested region/loss combination has no exact procedure."""


class InfeasibleError(ConfigurationError):
    """No finite tolerance satisfies the requested guarantee at this m."""

    def __init__(self, message, min_m=None):
        super().__init__(message)
        self.min_m = min_m


class ComputationError(AermError):
    """Base class for runtime computation failures."""


class ConvergenceError(ComputationError):
    """Optimizer exhausted its iteration budget; carries the best iterate."""

    def __init__(self, message, best_point=None, best_value=None):
        super().__init__(message)
        self.best_point = best_point
        self.best_value = best_value


class ResourceError(ComputationError):
    """A requirement overflows what can be represented or afforded."""

    def __init__(self, message, requirement=None):
        super().__init__(message)
        self.requirement = requirement


class UndefinedPlausibilityError(ComputationError):
    """Every resample produced an empty almost-minimizer set."""
