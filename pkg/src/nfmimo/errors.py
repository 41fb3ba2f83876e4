"""Exception types raised by the toolkit.

All derive from ValueError so callers that only care about "bad input"
can catch the builtin.
"""


class InvalidGeometryError(ValueError):
    """Array or link geometry violates a structural constraint."""


class InvalidArgumentError(ValueError):
    """Scalar argument outside its legal range."""


class ModelValidityError(ValueError):
    """Requested evaluation lies outside the propagation model's validity region."""


class InvalidInputError(ValueError):
    """Matrix or vector input is malformed (wrong shape, non-finite, all-zero)."""


class UndefinedMetricError(ValueError):
    """Metric is undefined for the given input (e.g. all-zero mode spectrum)."""


class ConfigError(ValueError):
    """Experiment configuration is invalid; the message names the offending key."""
