"""
Expected zero counts in disks centered at the origin
"""
import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np

from config import config
from numerics.basis import leading_coefficient
from numerics.errors import ConditioningError, DomainError, ParameterError
from numerics.kernel import kernel_series
from numerics.models import BasisFamily, BasisSpec, CountEstimate, CountMethod
from numerics.quadrature import circle_nodes, disk_rule
from services.intensity_service import IntensityService

logger = logging.getLogger(__name__)

# Tolerances for internal cross-checks
CLOSED_FORM_RTOL = 1e-9
CONTOUR_IMAG_TOL = 1e-8
CONDITIONING_FLOOR = 1e-12


def _require_open_radius(r: float):
    if not 0.0 < r < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {r}")


def _require_degree(n: int):
    if n < 0:
        raise ParameterError(f"degree must be >= 0, got {n}")


def _series_ratio(numerator_weights: np.ndarray, weights: np.ndarray, r: float) -> float:
    """sum(a_k r^{2k}) / sum(b_k r^{2k}) summed pairwise"""
    powers = r ** (2.0 * np.arange(len(weights)))
    return float(np.sum(numerator_weights * powers) / np.sum(weights * powers))


def _expm1_minus_t_over_t(t: float) -> float:
    """(e^t - 1 - t) / t, by series below 0.5"""
    if t >= 0.5:
        return (math.expm1(t) - t) / t
    term, total, m = t / 2.0, 0.0, 1
    while abs(term) > 1e-18 * max(abs(total), 1e-300):
        total += term
        m += 1
        term *= t / (m + 1)
    return total


def default_contour_nodes(n: int) -> int:
    return max(64, 8 * (n + 1))


def default_area_orders(spec: BasisSpec, n: int) -> Tuple[int, int]:
    """Radial and angular orders for the area route; radial families need one angle"""
    radial = max(96, 2 * n + 32)
    angular = 1 if spec.is_radial else 2 * (2 * n + 5)
    return radial, angular


class CountService:
    """Every route to E[N_n(D(0, r))]"""

    @staticmethod
    def expected_count_disk(n: int, r: float) -> CountEstimate:
        """
        Scaled-monomial count in D(0, r), 0 < r < 1.

        The rational series sum k(k+1) r^{2k} / (1 + sum (k+1) r^{2k}) is the
        returned value; the displayed closed form is evaluated outside the
        guard band and must agree.
        """
        _require_degree(n)
        _require_open_radius(r)
        k = np.arange(n + 1, dtype=float)
        value = _series_ratio(k * (k + 1), k + 1, r)

        diagnostics: Dict[str, float] = {}
        if (1.0 - r) * (n + 1) >= config.GUARD_BAND:
            rr = r * r
            tail = rr ** (n + 1)
            closed = 2.0 * rr / (1.0 - rr) - (n + 1) * (n + 2) * (1.0 - rr) * tail / (
                1.0 + tail * ((n + 1) * rr - (n + 2))
            )
            gap = abs(closed - value)
            diagnostics['closed_form'] = closed
            diagnostics['closed_form_gap'] = gap
            if gap > CLOSED_FORM_RTOL * max(1.0, abs(value)):
                logger.warning(f"expected_count_disk(n={n}, r={r}): closed form {closed} vs series {value}")
                diagnostics['closed_form_mismatch'] = True

        return CountEstimate(value=value, method=CountMethod.RATIONAL_SERIES, n=n, radius=r,
                             diagnostics=diagnostics)

    @staticmethod
    def expected_count_unit_disk(n: int) -> CountEstimate:
        """Rational form at r = 1: (n(n+1)(n+2)/3) / ((n+1)(n+2)/2)"""
        _require_degree(n)
        numerator = n * (n + 1) * (n + 2) // 3
        denominator = (n + 1) * (n + 2) // 2
        return CountEstimate(value=numerator / denominator, method=CountMethod.RATIONAL_SERIES, n=n, radius=1.0)

    @staticmethod
    def expected_count_radial(spec: BasisSpec, n: int, r: float) -> CountEstimate:
        """sum k kappa_k^2 r^{2k} / sum kappa_k^2 r^{2k} for bases p_k = kappa_k z^k"""
        _require_degree(n)
        if not spec.is_radial:
            raise ParameterError(f"basis {spec.label} is not radial")
        if not 0.0 < r <= 1.0:
            raise DomainError(f"radius must lie in (0, 1], got {r}")
        kappa2 = np.array([leading_coefficient(spec, k) ** 2 for k in range(n + 1)])
        k = np.arange(n + 1, dtype=float)
        value = _series_ratio(k * kappa2, kappa2, r)
        return CountEstimate(value=value, method=CountMethod.RATIONAL_SERIES, n=n, radius=r)

    @staticmethod
    def expected_count_limit(r: float) -> float:
        """2 r^2 / (1 - r^2)"""
        _require_open_radius(r)
        return 2.0 * r * r / (1.0 - r * r)

    @staticmethod
    def family_count_limit(spec: BasisSpec, r: float) -> Optional[float]:
        """
        n -> infinity count in D(0, r) from the family's limiting kernel.

        For WeightedPower(j), with x = r^2, the limiting kernel is proportional
        to ((1+j) + (1-j)x) / (1-x)^3.
        """
        _require_open_radius(r)
        x = r * r
        if spec.family in (BasisFamily.SCALED_MONOMIAL, BasisFamily.Z_MINUS_ONE_SQUARED):
            return 2.0 * x / (1.0 - x)
        if spec.family is BasisFamily.WEIGHTED_POWER:
            j = spec.j
            return x * (3.0 / (1.0 - x) + (1.0 - j) / ((1.0 + j) + (1.0 - j) * x))
        if spec.is_monomial_table:
            return x / (1.0 - x)
        return None

    @staticmethod
    def boundary_fraction(spec: BasisSpec) -> Optional[float]:
        """Limit of E[N_n(D)] / n"""
        if spec.family in (BasisFamily.SCALED_MONOMIAL, BasisFamily.Z_MINUS_ONE_SQUARED):
            return 2.0 / 3.0
        if spec.family is BasisFamily.WEIGHTED_POWER:
            return 0.75
        if spec.is_monomial_table:
            return 0.5
        return None

    @staticmethod
    def scaling_limit(t: float) -> float:
        """2/t + t/(1 - e^t + t), evaluated without cancellation for small t"""
        if t <= 0:
            raise DomainError(f"t must be positive, got {t}")
        if t >= 0.5:
            return 2.0 / t + t / (1.0 - math.exp(t) + t)
        # 2/t - 1/g with g = (e^t - 1 - t)/t equals (2g - t) / (t g);
        # numerator below is (2g - t) / t^2 summed term by term
        g = _expm1_minus_t_over_t(t)
        numerator, term, m = 0.0, 1.0 / 3.0, 2
        while abs(term) > 1e-18 * max(abs(numerator), 1e-300):
            numerator += term
            m += 1
            term *= t / (m + 1)
        return numerator * t / g

    @staticmethod
    def expected_count_contour(spec: BasisSpec, n: int, r: float, nodes: Optional[int] = None) -> CountEstimate:
        """
        (1 / 2 pi i) contour integral of conj(K01) / K00 dz over |z| = r,
        trapezoid rule in the angle.
        """
        _require_degree(n)
        if not 0.0 < r <= 1.0:
            raise DomainError(f"radius must lie in (0, 1], got {r}")
        nodes = default_contour_nodes(n) if nodes is None else nodes
        if nodes < 8:
            raise ParameterError(f"contour needs at least 8 nodes, got {nodes}")

        z = circle_nodes(r, nodes)
        triple = kernel_series(spec, n, z)
        k00 = np.asarray(triple.k00)
        if np.min(k00) < CONDITIONING_FLOOR * np.max(k00):
            raise ConditioningError(f"K_n nearly vanishes on |z| = {r} for {spec.label}, n={n}")

        # dz = i z dtheta cancels the 1/i
        integral = np.mean(np.conj(triple.k01) * z / k00)
        residual = abs(integral.imag)
        diagnostics = {'imag_residual': residual, 'nodes': nodes}
        if residual > CONTOUR_IMAG_TOL * max(1.0, abs(integral.real)):
            logger.warning(f"contour count {spec.label}, n={n}, r={r}: imaginary residual {residual:.3e}")
            diagnostics['imag_residual_exceeded'] = True
        return CountEstimate(value=float(integral.real), method=CountMethod.CONTOUR, n=n, radius=r,
                             diagnostics=diagnostics)

    @staticmethod
    def expected_count_area(
        spec: BasisSpec,
        n: int,
        r: float,
        quad_orders: Optional[Tuple[int, int]] = None,
    ) -> CountEstimate:
        """Disk quadrature of intensity_general over D(0, r)"""
        _require_degree(n)
        _require_open_radius(r)
        radial, angular = quad_orders if quad_orders is not None else default_area_orders(spec, n)
        rule = disk_rule(r, radial, angular)
        rho = IntensityService.intensity_general(spec, n, rule.points)
        value = float(np.sum(rho * rule.weights))
        return CountEstimate(value=value, method=CountMethod.AREA_QUADRATURE, n=n, radius=r,
                             diagnostics={'radial_order': radial, 'angular_order': angular})

    @staticmethod
    def kac_count_disk(n: int, r: float) -> float:
        """Arnold's count for the unscaled monomial ensemble"""
        _require_degree(n)
        if not 0.0 < r <= 1.0:
            raise DomainError(f"radius must lie in (0, 1], got {r}")
        if r == 1.0:
            return n / 2.0
        k = np.arange(n + 1, dtype=float)
        return _series_ratio(k, np.ones(n + 1), r)

    @staticmethod
    def kac_scaling(t: float) -> float:
        """1/t + 1/(1 - e^t), as (e^t - 1 - t) / (t (e^t - 1))"""
        if t <= 0:
            raise DomainError(f"t must be positive, got {t}")
        return _expm1_minus_t_over_t(t) / math.expm1(t)

    @staticmethod
    def boundary_ratio(spec: BasisSpec, n: int, theta: float) -> complex:
        """conj(K01) / (n K00) at z = e^{i theta}, away from the real axis"""
        if n < 1:
            raise ParameterError(f"degree must be >= 1, got {n}")
        if abs(math.sin(theta)) < 1e-12:
            raise DomainError(f"theta must not be a multiple of pi, got {theta}")
        triple = kernel_series(spec, n, complex(math.cos(theta), math.sin(theta)))
        return complex(np.conj(triple.k01) / (n * triple.k00))

    @staticmethod
    def route_agreement(n: int, r: float, nodes: int = 512) -> Dict[str, float]:
        """Closed, contour and area counts for the scaled-monomial basis and their max pairwise gap"""
        spec = BasisSpec.scaled_monomial()
        closed = CountService.expected_count_disk(n, r).value
        contour = CountService.expected_count_contour(spec, n, r, nodes).value
        area = CountService.expected_count_area(spec, n, r).value
        gap = max(abs(closed - contour), abs(closed - area), abs(contour - area))
        return {'closed': closed, 'contour': contour, 'area': area, 'max_gap': gap}
