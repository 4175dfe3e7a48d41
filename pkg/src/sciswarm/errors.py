"""Exception hierarchy shared by every sciswarm module."""


class SciSwarmError(Exception):
    """Base class for all simulator errors."""


class CapExceeded(SciSwarmError):
    pass


class OutOfBounds(SciSwarmError):
    pass


class DimensionMismatch(SciSwarmError):
    pass


class UnknownLab(SciSwarmError):
    pass


class EmptySwarm(SciSwarmError):
    pass


class UnknownLandscape(SciSwarmError):
    pass


class NoReference(SciSwarmError):
    pass


class InvalidCap(SciSwarmError):
    pass


class ModeMismatch(SciSwarmError):
    pass


class BadReference(SciSwarmError):
    pass


class Unsupported(SciSwarmError):
    pass


class DuplicateName(SciSwarmError):
    pass


class ExtinctionEvent(SciSwarmError):
    """Every lab was pruned. The runner turns this into a terminal status."""


class ConfigError(SciSwarmError):
    pass


class ParseError(ConfigError):
    pass


class ValidationError(ConfigError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key
