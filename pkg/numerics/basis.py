"""
Bergman orthonormal polynomial families on the unit disk
"""
import logging
import math
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .errors import ParameterError
from .models import BasisFamily, BasisSpec, GramReport, MonomialPoly
from .quadrature import disk_rule

logger = logging.getLogger(__name__)


def _check_degree(spec: BasisSpec, k: int):
    if k < 0:
        raise ParameterError(f"basis degree must be >= 0, got {k}")
    limit = spec.max_degree
    if limit is not None and k > limit:
        raise ParameterError(f"custom table has degrees 0..{limit}, requested {k}")


def _z_minus_one_norm(k: int) -> float:
    return 1.0 / math.sqrt(math.pi * (k + 1) * (k + 2) * (k + 3))


def nested_sum_coefficients(k: int) -> List[int]:
    """
    Integer monomial coefficients of sum_{j=0}^k (j+1) z^j (1 + z + ... + z^{k-j}),
    expanded term by term.
    """
    coeffs = [0] * (k + 1)
    for j in range(k + 1):
        for m in range(j, k + 1):
            coeffs[m] += j + 1
    return coeffs


@lru_cache(maxsize=4096)
def _coefficient_row(spec: BasisSpec, k: int) -> Tuple[complex, ...]:
    if spec.family is BasisFamily.SCALED_MONOMIAL:
        return (0.0,) * k + (math.sqrt((k + 1) / math.pi),)
    if spec.family is BasisFamily.WEIGHTED_POWER:
        return (0.0,) * k + (math.sqrt((k + 1) * (k + spec.j + 1) / (math.pi * spec.j)),)
    if spec.family is BasisFamily.Z_MINUS_ONE_SQUARED:
        norm = _z_minus_one_norm(k)
        return tuple((m + 1) * (m + 2) * norm for m in range(k + 1))
    return spec.table[k]


def expand_to_monomials(spec: BasisSpec, k: int) -> MonomialPoly:
    """Monomial coefficients of p_k"""
    _check_degree(spec, k)
    return MonomialPoly(_coefficient_row(spec, k))


def eval_basis(spec: BasisSpec, k: int, z):
    """p_k(z), Horner form on the monomial coefficients"""
    return expand_to_monomials(spec, k).evaluate(z)


def eval_basis_derivative(spec: BasisSpec, k: int, z):
    """p_k'(z) from the differentiated coefficients"""
    return expand_to_monomials(spec, k).derivative().evaluate(z)


def leading_coefficient(spec: BasisSpec, k: int) -> float:
    """
    Coefficient kappa_k of z^k in p_k.

    Custom tables may carry a unimodular factor on p_k; its modulus is
    returned since kernels are insensitive to that phase.
    """
    _check_degree(spec, k)
    if spec.family is BasisFamily.SCALED_MONOMIAL:
        return math.sqrt((k + 1) / math.pi)
    if spec.family is BasisFamily.WEIGHTED_POWER:
        return math.sqrt((k + 1) * (k + spec.j + 1) / (math.pi * spec.j))
    if spec.family is BasisFamily.Z_MINUS_ONE_SQUARED:
        return math.sqrt((k + 1) * (k + 2) / (math.pi * (k + 3)))
    return abs(spec.table[k][-1])


def sut_diagnostic(spec: BasisSpec, k_max: int) -> List[Tuple[int, float]]:
    """k-th roots of the leading coefficients, k = 1..k_max"""
    if k_max < 2:
        raise ParameterError(f"k_max must be >= 2, got {k_max}")
    _check_degree(spec, k_max)
    return [(k, leading_coefficient(spec, k) ** (1.0 / k)) for k in range(1, k_max + 1)]


def weight(spec: BasisSpec, z):
    """Density h of the orthogonality measure h(z) dA(z)"""
    z = np.asarray(z, dtype=complex)
    if spec.family is BasisFamily.SCALED_MONOMIAL:
        return np.ones(z.shape)
    if spec.family is BasisFamily.WEIGHTED_POWER:
        return 1.0 - np.abs(z) ** (2.0 * spec.j)
    if spec.family is BasisFamily.Z_MINUS_ONE_SQUARED:
        return np.abs(z - 1.0) ** 2
    raise ParameterError("custom coefficient tables carry no orthogonality weight")


def iter_basis(spec: BasisSpec, n: int, z) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
    """
    Yield (k, p_k(z), p_k'(z)) for k = 0..n, vectorized over z.

    Radial families use z^k = z * z^(k-1); ZMinusOneSquared keeps the
    running sum S_k = S_(k-1) + (k+1)(k+2) z^k. Custom tables fall back to
    Horner per degree.
    """
    _check_degree(spec, n)
    z = np.asarray(z, dtype=complex)

    if spec.family is BasisFamily.CUSTOM_TABLE and not spec.is_radial:
        for k in range(n + 1):
            poly = expand_to_monomials(spec, k)
            yield k, np.asarray(poly.evaluate(z)), np.asarray(poly.derivative().evaluate(z))
        return

    power = np.ones(z.shape, dtype=complex)
    previous = np.zeros(z.shape, dtype=complex)
    if spec.family is BasisFamily.Z_MINUS_ONE_SQUARED:
        total = np.zeros(z.shape, dtype=complex)
        total_prime = np.zeros(z.shape, dtype=complex)
        for k in range(n + 1):
            total = total + (k + 1) * (k + 2) * power
            total_prime = total_prime + k * (k + 1) * (k + 2) * previous
            norm = _z_minus_one_norm(k)
            yield k, total * norm, total_prime * norm
            previous = power
            power = power * z
        return

    for k in range(n + 1):
        kappa = _coefficient_row(spec, k)[-1]
        yield k, kappa * power, (kappa * k) * previous
        previous = power
        power = power * z


@lru_cache(maxsize=64)
def _basis_matrix(spec: BasisSpec, n: int) -> np.ndarray:
    matrix = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        matrix[:k + 1, k] = _coefficient_row(spec, k)
    matrix.setflags(write=False)
    return matrix


def basis_matrix(spec: BasisSpec, n: int) -> np.ndarray:
    """Column k holds the monomial coefficients of p_k, zero-padded to n+1 rows"""
    _check_degree(spec, n)
    return _basis_matrix(spec, n)


def monomial_table(n: int) -> BasisSpec:
    """Custom table p_k = z^k, the unscaled Kac ensemble"""
    rows = [[0.0] * k + [1.0] for k in range(n + 1)]
    return BasisSpec.custom(rows, source="kac")


def default_gram_orders(spec: BasisSpec, n: int) -> Tuple[int, int]:
    """Smallest (radial, angular) orders making the Gram quadrature exact"""
    angular = 2 * (2 * n + 5)
    radial = n + 4
    if spec.family is BasisFamily.WEIGHTED_POWER:
        radial += math.ceil(spec.j)
        if not float(spec.j).is_integer():
            radial *= 2
    return radial, angular


def gram_matrix(spec: BasisSpec, n: int, quad_orders: Optional[Tuple[int, int]] = None) -> GramReport:
    """
    Gram matrix G[a, b] = integral of p_a conj(p_b) h dA over the unit disk.

    Orders below the exactness threshold, and WeightedPower with
    non-integer j, produce a report flagged as approximate.
    """
    if n < 0:
        raise ParameterError(f"degree must be >= 0, got {n}")
    required = default_gram_orders(spec, n)
    radial, angular = quad_orders if quad_orders is not None else required

    warnings = []
    exact = True
    if radial < required[0] or angular < required[1]:
        exact = False
        message = f"quadrature orders ({radial}, {angular}) below exactness threshold {required}"
        warnings.append(message)
        logger.warning(f"{spec.label}: {message}")
    if spec.family is BasisFamily.WEIGHTED_POWER and not float(spec.j).is_integer():
        exact = False
        warnings.append(f"non-integer j={spec.j:g}: radial integrand is not polynomial, result is approximate")

    rule = disk_rule(1.0, radial, angular)
    h = weight(spec, rule.points)
    values = np.empty((n + 1, rule.points.size), dtype=complex)
    for k, p, _ in iter_basis(spec, n, rule.points):
        values[k] = p
    matrix = (values * (rule.weights * h)) @ values.conj().T
    deviation = float(np.max(np.abs(matrix - np.eye(n + 1))))
    return GramReport(
        matrix=matrix,
        max_deviation=deviation,
        exact=exact,
        radial_order=radial,
        angular_order=angular,
        warnings=warnings,
    )
