"""
Quadrature rules on disks and circles centered at the origin
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial import legendre

from .errors import ParameterError


@dataclass(frozen=True)
class DiskRule:
    """Tensor rule: nodes z_i and weights w_i with sum(w_i f(z_i)) ~ integral of f dA"""
    points: np.ndarray
    weights: np.ndarray
    radial_order: int
    angular_order: int


@lru_cache(maxsize=64)
def _leggauss(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(order: int, a: float = 0.0, b: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights of the given order on [a, b]"""
    if order < 1:
        raise ParameterError(f"quadrature order must be >= 1, got {order}")
    x, w = _leggauss(order)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def disk_rule(radius: float, radial_order: int, angular_order: int) -> DiskRule:
    """
    Gauss-Legendre in r (with the r dr Jacobian folded into the weights)
    times the trapezoid rule in theta, over D(0, radius).

    Exact for r^m e^{i l theta} when m + 1 <= 2*radial_order - 1 and
    |l| < angular_order.
    """
    if radius <= 0:
        raise ParameterError(f"disk radius must be positive, got {radius}")
    if angular_order < 1:
        raise ParameterError(f"angular order must be >= 1, got {angular_order}")
    r, wr = gauss_legendre(radial_order, 0.0, radius)
    theta = 2.0 * math.pi * np.arange(angular_order) / angular_order
    wt = 2.0 * math.pi / angular_order
    points = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(wr * r * wt, angular_order)
    return DiskRule(points=points, weights=weights, radial_order=radial_order, angular_order=angular_order)


def circle_nodes(radius: float, nodes: int) -> np.ndarray:
    """Equispaced trapezoid nodes on |z| = radius, starting at angle 0"""
    if nodes < 1:
        raise ParameterError(f"node count must be >= 1, got {nodes}")
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    return radius * np.exp(1j * theta)
