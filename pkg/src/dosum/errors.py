"""Exception hierarchy.

Validation errors map to CLI exit code 2; ``InapplicableCase`` and
``BudgetExceeded`` map to exit code 3 (the check is reported as SKIPPED).
"""


class DosumError(Exception):
    pass


class ValidationError(DosumError, ValueError):
    pass


class NotOddPrime(ValidationError):
    pass


class ExcludedK(ValidationError):
    pass


class TNotDividingD(ValidationError):
    pass


class JNotDividingN(ValidationError):
    pass


class TooLarge(DosumError):
    pass


class PrimeMismatch(DosumError, ValueError):
    pass


class InapplicableCase(DosumError):
    pass


class BudgetExceeded(DosumError):
    pass


class NonIntegerWeight(DosumError, ArithmeticError):
    """A weight computed from character sums was not an integer.

    This can only happen through an implementation bug, so it is raised
    loudly instead of being rounded away.
    """
