"""Exception types raised by the library and mapped to CLI exit codes."""


class IonThermoError(Exception):
    """Base class for all library errors."""


class ValidationError(IonThermoError, ValueError):
    """A value violates the invariants of its type."""


class DimensionMismatch(IonThermoError, ValueError):
    pass


class SupportViolation(IonThermoError, ValueError):
    """The relative entropy is infinite: rho has weight outside supp(sigma)."""


class DomainError(IonThermoError, ValueError):
    pass


class TruncationError(IonThermoError, ValueError):
    """The reservoir superposition reaches the edge of the truncated ladder."""


class ConfigError(IonThermoError, ValueError):
    pass


class IoError(IonThermoError, OSError):
    pass
