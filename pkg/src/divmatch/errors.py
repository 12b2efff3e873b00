"""Exception hierarchy shared across the package."""


class DivMatchError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(DivMatchError):
    """Malformed instance document or constructor argument."""


class MatchingError(DivMatchError):
    """Invalid matching input: duplicate edges, out-of-range indices."""


class ConfigError(DivMatchError):
    """Invalid generator or benchmark configuration."""


class SizeCapError(DivMatchError):
    """An operation refused to run because it would exceed its size cap."""


class InternalError(DivMatchError):
    """Invariant violation that indicates a bug, not bad input."""
