"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class ShiftGcdError(Exception):
    pass


class DomainError(ShiftGcdError, ValueError):
    """Input outside the mathematical domain of an operation (CLI exit 2)."""


class ResourceLimitError(ShiftGcdError, RuntimeError):
    """An enumeration or sieve guard would be exceeded (CLI exit 3)."""


class InvariantError(ShiftGcdError, RuntimeError):
    """A returned result failed its own certificate (CLI exit 1)."""


class NumericError(ShiftGcdError, ArithmeticError):
    pass
