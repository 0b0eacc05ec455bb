"""Exception hierarchy.

The CLI maps these onto its exit codes: :class:`SpurionError` subclasses
other than the two below are usage/config errors (1), :class:`GateRefusal`
is a methodological refusal (2) and :class:`NumericalError` a numerical
failure (3).
"""


class SpurionError(Exception):
    """Base class for all errors raised by this package."""


class SeriesError(SpurionError, ValueError):
    """Malformed or incompatible time-series input."""


class ConfigError(SpurionError, ValueError):
    """Invalid configuration or unknown dataset label."""


class NumericalError(SpurionError, ArithmeticError):
    """A computation could not be carried out reliably."""


class RankDeficiencyError(NumericalError):
    """Design matrix does not have full column rank."""


class SingularMomentError(NumericalError):
    """A product-moment matrix is numerically singular."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class InsufficientSampleError(SpurionError, ValueError):
    """Too few observations for the requested model."""


class GateRefusal(SpurionError):
    """The I(1) screen failed and no override was given."""
