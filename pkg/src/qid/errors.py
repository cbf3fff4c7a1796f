"""Exception types shared across the package."""


class QidError(Exception):
    """Base class for all package errors."""


class DimensionError(QidError, ValueError):
    """Operands have incompatible shapes or subsystem dimension lists."""


class ValidationError(QidError, ValueError):
    """An object violates a structural invariant (hermiticity, trace, ...)."""


class CapacityError(QidError, RuntimeError):
    """A dense object would exceed the desk-scale size limits."""


class ConfigError(QidError, ValueError):
    """An experiment configuration file cannot be parsed or is inconsistent."""
