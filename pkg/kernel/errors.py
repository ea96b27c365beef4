class NumberTheoryError(Exception):
    """Base class for every error raised by the library"""


class DomainError(NumberTheoryError, ValueError):
    """Argument outside the domain of an operation (even, too small, out of range)"""


class KernelOverflowError(NumberTheoryError, OverflowError):
    """Kernel arithmetic would leave the supported unsigned 64-bit range"""


class CapacityError(NumberTheoryError):
    """The prime oracle is too small for the request, or a requested oracle exceeds the memory cap"""


class InconsistencyError(NumberTheoryError, ArithmeticError):
    """An exact identity failed to produce an integer; signals an implementation bug"""
