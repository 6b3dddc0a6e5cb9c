"""Exception types raised by the library."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class NotPrimePowerError(DomainError):
    """The proposed field size is not a prime power."""


class DegenerateExtensionError(DomainError):
    """K+(sqrt(delta)) is not a quadratic field extension (delta is 0 or a square)."""


class InapplicableError(DomainError):
    """The hypotheses of a decision procedure do not hold for this class."""
