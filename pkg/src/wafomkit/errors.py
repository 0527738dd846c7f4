"""Exception types shared across the package."""


class WafomError(Exception):
    """Base class for all package errors."""


class DimensionError(WafomError, ValueError):
    """Operand shapes are incompatible or violate n >= m >= 1."""


class BudgetError(WafomError):
    """An enumeration would exceed its configured size budget."""


class DomainError(WafomError, ValueError):
    """An argument lies outside the domain of a formula."""


class NetFormatError(WafomError, ValueError):
    """A net file could not be parsed."""


class ParameterError(WafomError, ValueError):
    """A tuning parameter is out of range."""
