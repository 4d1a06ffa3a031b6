"""
Reproducing-kernel diagonals K_n(z,z), K_n^(0,1)(z,z), K_n^(1,1)(z,z)
"""
import logging
import math

import numpy as np

from config import config
from .basis import iter_basis
from .errors import ParameterError
from .models import BasisSpec, KernelTriple

logger = logging.getLogger(__name__)

# Degrees above this use compensated accumulation
COMPENSATED_DEGREE = 500


class _Compensated:
    """Neumaier running sum over numpy arrays"""

    def __init__(self, shape, dtype):
        self.total = np.zeros(shape, dtype=dtype)
        self.error = np.zeros(shape, dtype=dtype)

    def add(self, term):
        total = self.total + term
        big = np.abs(self.total) >= np.abs(term)
        self.error += np.where(big, (self.total - total) + term, (term - total) + self.total)
        self.total = total

    def value(self):
        return self.total + self.error


def _unwrap(value, scalar: bool):
    if not scalar:
        return value
    return complex(value) if np.iscomplexobj(value) else float(value)


def _triple(k00, k01, k11, n, z, scalar):
    return KernelTriple(
        k00=_unwrap(k00, scalar),
        k01=_unwrap(k01, scalar),
        k11=_unwrap(k11, scalar),
        n=n,
        z=_unwrap(z, scalar),
    )


def kernel_series(spec: BasisSpec, n: int, z) -> KernelTriple:
    """Direct sums over j = 0..n of p_j conj(p_j), p_j conj(p_j'), p_j' conj(p_j')"""
    if n < 0:
        raise ParameterError(f"degree must be >= 0, got {n}")
    scalar = np.ndim(z) == 0
    points = np.asarray(z, dtype=complex)

    if n > COMPENSATED_DEGREE:
        k00 = _Compensated(points.shape, float)
        k01 = _Compensated(points.shape, complex)
        k11 = _Compensated(points.shape, float)
        for _, p, dp in iter_basis(spec, n, points):
            k00.add(p.real ** 2 + p.imag ** 2)
            k01.add(p * dp.conj())
            k11.add(dp.real ** 2 + dp.imag ** 2)
        return _triple(k00.value(), k01.value(), k11.value(), n, points, scalar)

    k00 = np.zeros(points.shape)
    k01 = np.zeros(points.shape, dtype=complex)
    k11 = np.zeros(points.shape)
    for _, p, dp in iter_basis(spec, n, points):
        k00 += p.real ** 2 + p.imag ** 2
        k01 += p * dp.conj()
        k11 += dp.real ** 2 + dp.imag ** 2
    return _triple(k00, k01, k11, n, points, scalar)


def in_guard_band(n: int, z) -> np.ndarray:
    """Points where the closed forms cancel catastrophically"""
    return np.abs(1.0 - np.abs(np.asarray(z))) * (n + 1) < config.GUARD_BAND


def kernel_closed_monomial(n: int, z) -> KernelTriple:
    """
    Closed forms of the three kernels for p_k = sqrt((k+1)/pi) z^k.

    Points inside the guard band are evaluated by kernel_series instead.
    """
    if n < 0:
        raise ParameterError(f"degree must be >= 0, got {n}")
    scalar = np.ndim(z) == 0
    points = np.atleast_1d(np.asarray(z, dtype=complex))
    x = np.abs(points) ** 2
    guard = in_guard_band(n, points)

    with np.errstate(divide='ignore', invalid='ignore'):
        d = 1.0 - x
        xn = x ** n
        k00 = (1.0 + x ** (n + 1) * ((n + 1) * x - (n + 2))) / (math.pi * d ** 2)
        c = (n + 1) * (n + 2)
        k01 = 2.0 * points * k00 / d - c * points ** (n + 1) * points.conj() ** n / (math.pi * d)
        k11 = (
            2.0 * (1.0 + 2.0 * x) * k00 / d ** 2
            - c * xn * (1.0 + 2.0 * x) / (math.pi * d ** 2)
            - n * c * xn / (math.pi * d)
        )

    if np.any(guard):
        logger.debug(f"kernel_closed_monomial: {int(np.count_nonzero(guard))} point(s) in guard band, using series")
        series = kernel_series(BasisSpec.scaled_monomial(), n, points[guard])
        k00 = np.where(guard, 0.0, k00)
        k01 = np.where(guard, 0.0, k01)
        k11 = np.where(guard, 0.0, k11)
        k00[guard] = series.k00
        k01[guard] = series.k01
        k11[guard] = series.k11

    if scalar:
        return _triple(k00[0], k01[0], k11[0], n, points[0], True)
    return _triple(k00, k01, k11, n, points, False)


def kernel_limit(z) -> KernelTriple:
    """n -> infinity limits of the kernels for the unweighted disk"""
    scalar = np.ndim(z) == 0
    points = np.asarray(z, dtype=complex)
    d = 1.0 - np.abs(points) ** 2
    k00 = 1.0 / (math.pi * d ** 2)
    k01 = 2.0 * points / (math.pi * d ** 3)
    k11 = (2.0 + 4.0 * np.abs(points) ** 2) / (math.pi * d ** 4)
    return _triple(k00, k01, k11, None, points, scalar)
