"""
Exception hierarchy for zero-statistics computations
"""


class ZerosError(Exception):
    """Base class for all library errors"""


class ParameterError(ZerosError, ValueError):
    """Invalid basis parameters or operation arguments"""


class DomainError(ParameterError):
    """Point, radius or parameter outside the admissible domain"""


class ConditioningError(ZerosError):
    """Kernel nearly vanishes where it is used as a denominator"""


class NumericalDiagnosticError(ZerosError):
    """A numerical acceptance check failed"""
