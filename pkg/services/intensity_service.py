"""
Intensity (Kac-Rice density) service
"""
import logging
import math
from typing import Tuple

import numpy as np

from numerics.errors import DomainError, NumericalDiagnosticError, ParameterError
from numerics.kernel import in_guard_band, kernel_limit, kernel_series
from numerics.models import BasisFamily, BasisSpec, IntensityGrid

logger = logging.getLogger(__name__)

NEGATIVE_RTOL = 1e-9


def _require_inside(z):
    if np.any(np.abs(np.asarray(z)) >= 1.0):
        raise DomainError("intensity is only defined for |z| < 1")


def _as_output(values, scalar: bool):
    return float(values) if scalar else values


def _clip_rounding(rho, scale, context: str):
    """Clip round-off below zero; anything more negative is a numerical failure"""
    floor = -NEGATIVE_RTOL * np.maximum(scale, 1.0)
    if np.any(rho < floor):
        worst = float(np.min(rho))
        logger.error(f"Negative density {worst:.3e} beyond rounding ({context})")
        raise NumericalDiagnosticError(f"negative intensity {worst:.3e} ({context})")
    return np.maximum(rho, 0.0)


class IntensityService:
    """Density rho_n(z) of the expected zero count"""

    @staticmethod
    def intensity_general(spec: BasisSpec, n: int, z):
        """(K11 K00 - |K01|^2) / (pi K00^2) from the kernel series"""
        _require_inside(z)
        scalar = np.ndim(z) == 0
        triple = kernel_series(spec, n, np.asarray(z, dtype=complex))
        k00 = np.asarray(triple.k00)
        gap = np.asarray(triple.cauchy_schwarz_gap())
        rho = gap / (math.pi * k00 ** 2)
        scale = np.asarray(triple.k11) / (math.pi * k00)
        return _as_output(_clip_rounding(rho, scale, f"{spec.label}, n={n}"), scalar)

    @staticmethod
    def intensity_closed(n: int, z):
        """Two-term closed form for the scaled-monomial basis"""
        _require_inside(z)
        if n < 0:
            raise ParameterError(f"degree must be >= 0, got {n}")
        scalar = np.ndim(z) == 0
        points = np.atleast_1d(np.asarray(z, dtype=complex))
        x = np.abs(points) ** 2
        c = (n + 1) * (n + 2)
        denominator = (1.0 + x ** (n + 1) * ((n + 1) * x - (n + 2))) ** 2
        with np.errstate(divide='ignore', invalid='ignore'):
            second = c * x ** n * (x ** (n + 2) - (n + 2) * x + n + 1) / denominator
            rho = (2.0 / (1.0 - x) ** 2 - second) / math.pi

        guard = in_guard_band(n, points)
        if np.any(guard):
            rho[guard] = IntensityService.intensity_general(BasisSpec.scaled_monomial(), n, points[guard])
        rho = _clip_rounding(rho, 2.0 / (math.pi * (1.0 - x) ** 2), f"closed form, n={n}")
        return float(rho[0]) if scalar else rho

    @staticmethod
    def intensity_limit(z):
        """2 / (pi (1 - |z|^2)^2)"""
        _require_inside(z)
        scalar = np.ndim(z) == 0
        x = np.abs(np.asarray(z)) ** 2
        return _as_output(2.0 / (math.pi * (1.0 - x) ** 2), scalar)

    @staticmethod
    def family_intensity_limit(spec: BasisSpec, z):
        """
        n -> infinity density implied by the family's limiting kernel.

        The weight 1 - |z|^{2j} vanishes on the whole circle and changes the
        limit; |z - 1|^2 only adds a harmonic term to log K.
        """
        _require_inside(z)
        scalar = np.ndim(z) == 0
        if spec.family in (BasisFamily.SCALED_MONOMIAL, BasisFamily.Z_MINUS_ONE_SQUARED):
            triple = kernel_limit(z)
            k00 = np.asarray(triple.k00)
            return _as_output(np.asarray(triple.cauchy_schwarz_gap()) / (math.pi * k00 ** 2), scalar)
        x = np.abs(np.asarray(z)) ** 2
        if spec.family is BasisFamily.WEIGHTED_POWER:
            j = spec.j
            rho = 3.0 / (1.0 - x) ** 2 + (1.0 - j * j) / ((1.0 + j) + (1.0 - j) * x) ** 2
        elif spec.is_monomial_table:
            rho = 1.0 / (1.0 - x) ** 2
        else:
            raise ParameterError(f"no known limit density for basis {spec.label}")
        return _as_output(rho / math.pi, scalar)

    @staticmethod
    def kac_intensity(n: int, z):
        """Hammersley's density for the unscaled monomial ensemble"""
        _require_inside(z)
        if n < 0:
            raise ParameterError(f"degree must be >= 0, got {n}")
        scalar = np.ndim(z) == 0
        points = np.asarray(z, dtype=complex)
        x = np.abs(points) ** 2
        h = (1.0 - x) * (n + 1) * np.abs(points) ** n / (1.0 - x ** (n + 1))
        rho = (1.0 - h ** 2) / (math.pi * (1.0 - x) ** 2)
        return _as_output(np.maximum(rho, 0.0), scalar)

    @staticmethod
    def intensity_grid(
        spec: BasisSpec,
        n: int,
        window: Tuple[float, float, float, float] = (-1.0, 1.0, -1.0, 1.0),
        resolution: int = 101,
    ) -> IntensityGrid:
        """Evaluate intensity_general on a lattice; points with |z| >= 1 are flagged"""
        if resolution < 2:
            raise ParameterError(f"grid resolution must be >= 2, got {resolution}")
        xmin, xmax, ymin, ymax = window
        if xmax <= xmin or ymax <= ymin:
            raise ParameterError(f"empty window {window}")
        x = np.linspace(xmin, xmax, resolution)
        y = np.linspace(ymin, ymax, resolution)
        xx, yy = np.meshgrid(x, y)
        points = xx + 1j * yy
        inside = np.abs(points) < 1.0

        values = np.full(points.shape, np.nan)
        if np.any(inside):
            values[inside] = IntensityService.intensity_general(spec, n, points[inside])
        logger.info(f"Intensity grid {resolution}x{resolution} for {spec.label}, n={n}: "
                    f"{int(np.count_nonzero(inside))} inside points")
        return IntensityGrid(x=x, y=y, values=values, inside=inside, n=n, basis=spec)
