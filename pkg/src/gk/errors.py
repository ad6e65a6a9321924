class DomainError(ValueError):
    """An argument lies outside the domain of an algebraic operation."""


class UnsupportedError(DomainError):
    """The operation is well defined mathematically but not implemented here."""
