"""
Numerics package initialization
"""
from .errors import ZerosError, ParameterError, DomainError, ConditioningError, NumericalDiagnosticError
from .models import (
    BasisFamily, BasisSpec, CountEstimate, CountMethod, ExperimentConfig, KernelTriple, MCResult, MonomialPoly
)

__all__ = [
    'ZerosError',
    'ParameterError',
    'DomainError',
    'ConditioningError',
    'NumericalDiagnosticError',
    'BasisFamily',
    'BasisSpec',
    'CountEstimate',
    'CountMethod',
    'ExperimentConfig',
    'KernelTriple',
    'MCResult',
    'MonomialPoly'
]
