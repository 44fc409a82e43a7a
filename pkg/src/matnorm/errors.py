"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
2 for malformed or out-of-range input, 3 for mathematical domain violations.
"""


class MatnormError(Exception):
    exit_code = 2


class ValidationError(MatnormError, ValueError):
    exit_code = 2


class DomainError(MatnormError, ValueError):
    exit_code = 3


class NotHermitian(DomainError):
    pass


class NoConvergence(MatnormError, ArithmeticError):
    exit_code = 3


class InvalidOrder(ValidationError):
    pass


class Overflow(MatnormError, OverflowError):
    exit_code = 3


class DimensionTooLarge(DomainError):
    pass


class DimensionMismatch(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class NegativeEntry(DomainError):
    pass


class MCConfigRequired(ValidationError):
    pass


class ConfigTooSmall(ValidationError):
    pass


class InvalidKind(ValidationError):
    pass


class TooManyMatrices(DomainError):
    pass


class KTooLarge(DomainError):
    pass
