"""
Domain types for random Bergman polynomials
"""
import enum
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from .errors import ParameterError


class BasisFamily(enum.Enum):
    """Orthonormal basis families on the unit disk"""
    SCALED_MONOMIAL = "scaled-monomial"
    WEIGHTED_POWER = "weighted-power"
    Z_MINUS_ONE_SQUARED = "z-minus-one-squared"
    CUSTOM_TABLE = "custom"


class CountMethod(enum.Enum):
    """Provenance of an expected-zero-count value"""
    CLOSED_FORM = "closed-form"
    RATIONAL_SERIES = "rational-series"
    CONTOUR = "contour"
    AREA_QUADRATURE = "area-quadrature"
    MONTE_CARLO = "monte-carlo"
    LIMIT_FORMULA = "limit-formula"


@dataclass(frozen=True)
class BasisSpec:
    """
    Identifies one basis family p_0, p_1, ... on the unit disk.

    `j` is only used by WEIGHTED_POWER, `table` and `source` only by
    CUSTOM_TABLE (row k holds the k+1 monomial coefficients of p_k).
    """
    family: BasisFamily
    j: Optional[float] = None
    table: Optional[Tuple[Tuple[complex, ...], ...]] = None
    source: Optional[str] = None

    def __post_init__(self):
        if self.family is BasisFamily.WEIGHTED_POWER:
            if self.j is None or not math.isfinite(self.j) or self.j <= 0:
                raise ParameterError(f"weighted-power basis requires j > 0, got {self.j}")
        if self.family is BasisFamily.CUSTOM_TABLE:
            if not self.table:
                raise ParameterError("custom basis requires a non-empty coefficient table")
            for k, row in enumerate(self.table):
                if len(row) != k + 1:
                    raise ParameterError(f"custom table row {k} has {len(row)} entries, expected {k + 1}")
                if row[-1] == 0:
                    raise ParameterError(f"custom table row {k} has a zero leading coefficient")

    @classmethod
    def scaled_monomial(cls) -> "BasisSpec":
        return cls(BasisFamily.SCALED_MONOMIAL)

    @classmethod
    def weighted_power(cls, j: float) -> "BasisSpec":
        return cls(BasisFamily.WEIGHTED_POWER, j=float(j))

    @classmethod
    def z_minus_one_squared(cls) -> "BasisSpec":
        return cls(BasisFamily.Z_MINUS_ONE_SQUARED)

    @classmethod
    def custom(cls, rows, source: Optional[str] = None) -> "BasisSpec":
        table = tuple(tuple(complex(c) for c in row) for row in rows)
        return cls(BasisFamily.CUSTOM_TABLE, table=table, source=source)

    @property
    def label(self) -> str:
        """CLI name of the basis"""
        if self.family is BasisFamily.WEIGHTED_POWER:
            return f"weighted-power:j={self.j:g}"
        if self.family is BasisFamily.CUSTOM_TABLE:
            return f"custom:{self.source or '<table>'}"
        return self.family.value

    @property
    def is_radial(self) -> bool:
        """True when p_k = kappa_k z^k, so every kernel depends on |z| only"""
        if self.family in (BasisFamily.SCALED_MONOMIAL, BasisFamily.WEIGHTED_POWER):
            return True
        if self.family is BasisFamily.CUSTOM_TABLE:
            return all(all(c == 0 for c in row[:-1]) for row in self.table)
        return False

    @property
    def is_monomial_table(self) -> bool:
        """True for the unscaled monomials p_k = z^k (Kac ensemble)"""
        return (
            self.family is BasisFamily.CUSTOM_TABLE
            and self.is_radial
            and all(row[-1] == 1 for row in self.table)
        )

    @property
    def max_degree(self) -> Optional[int]:
        if self.family is BasisFamily.CUSTOM_TABLE:
            return len(self.table) - 1
        return None


class MonomialPoly:
    """Polynomial c_0 + c_1 z + ... + c_n z^n with ascending coefficients"""

    def __init__(self, coefficients):
        coeffs = np.atleast_1d(np.asarray(coefficients, dtype=complex)).copy()
        if coeffs.size == 0:
            coeffs = np.zeros(1, dtype=complex)
        nonzero = np.flatnonzero(coeffs)
        last = int(nonzero[-1]) if nonzero.size else 0
        self.coefficients = coeffs[:last + 1]
        self.coefficients.setflags(write=False)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coefficients[0] == 0

    def evaluate(self, z):
        """Horner evaluation at a scalar or array of points"""
        points = np.asarray(z, dtype=complex)
        acc = np.full(points.shape, self.coefficients[-1], dtype=complex)
        for c in self.coefficients[-2::-1]:
            acc = acc * points + c
        return complex(acc) if acc.ndim == 0 else acc

    def derivative(self) -> "MonomialPoly":
        if self.degree == 0:
            return MonomialPoly([0.0])
        return MonomialPoly(self.coefficients[1:] * np.arange(1, self.degree + 1))

    def trimmed(self, rtol: float = 1e-13) -> "MonomialPoly":
        """Drop leading coefficients below rtol relative to the largest one"""
        coeffs = self.coefficients
        scale = float(np.max(np.abs(coeffs)))
        last = len(coeffs) - 1
        while last > 0 and abs(coeffs[last]) <= rtol * scale:
            last -= 1
        return MonomialPoly(coeffs[:last + 1])

    def __repr__(self):
        return f"MonomialPoly(degree={self.degree})"


@dataclass
class KernelTriple:
    """Diagonal kernel values K_n(z,z), K_n^(0,1)(z,z), K_n^(1,1)(z,z)"""
    k00: Any
    k01: Any
    k11: Any
    n: int
    z: Any

    def cauchy_schwarz_gap(self):
        """k00*k11 - |k01|^2, nonnegative up to rounding"""
        return self.k00 * self.k11 - np.abs(self.k01) ** 2


@dataclass
class GramReport:
    """Quadrature Gram matrix of a basis with its deviation from the identity"""
    matrix: np.ndarray
    max_deviation: float
    exact: bool
    radial_order: int
    angular_order: int
    warnings: List[str] = field(default_factory=list)


@dataclass
class IntensityGrid:
    """Intensity values on a rectangular lattice; NaN where |z| >= 1"""
    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    inside: np.ndarray
    n: int
    basis: BasisSpec

    @property
    def points(self) -> np.ndarray:
        xx, yy = np.meshgrid(self.x, self.y)
        return xx + 1j * yy

    def midpoint_integral(self, radius: Optional[float] = None) -> float:
        """Midpoint-rule integral over inside cells, optionally restricted to |z| < radius"""
        dx = (self.x[-1] - self.x[0]) / (len(self.x) - 1)
        dy = (self.y[-1] - self.y[0]) / (len(self.y) - 1)
        mask = self.inside.copy()
        if radius is not None:
            mask &= np.abs(self.points) < radius
        return float(np.sum(self.values[mask]) * dx * dy)

    def to_frame(self):
        """Row-major table with columns x, y, rho, inside"""
        import pandas as pd

        xx, yy = np.meshgrid(self.x, self.y)
        return pd.DataFrame({
            'x': xx.ravel(),
            'y': yy.ravel(),
            'rho': np.where(self.inside, self.values, np.nan).ravel(),
            'inside': self.inside.ravel().astype(int),
        })


@dataclass
class CountEstimate:
    """Expected number of zeros in D(0, radius) with its provenance"""
    value: float
    method: CountMethod
    n: int
    radius: float
    stderr: Optional[float] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    SLACK = 1e-9

    def __post_init__(self):
        if self.method is CountMethod.MONTE_CARLO:
            if not 0 <= self.value <= self.n:
                raise ParameterError(f"Monte Carlo count {self.value} outside [0, {self.n}]")
            return
        slack = self.SLACK * max(1.0, self.n)
        if self.value < -slack or self.value > self.n + slack:
            raise ParameterError(f"count {self.value} outside [0, {self.n}] for method {self.method.value}")
        self.value = float(min(max(self.value, 0.0), float(self.n)))

    def as_row(self) -> Dict[str, Any]:
        return {
            'method': self.method.value,
            'n': self.n,
            'r': self.radius,
            'value': self.value,
            'stderr': self.stderr,
        }


@dataclass
class PolynomialSample:
    """One realization of the random polynomial"""
    basis_coefficients: np.ndarray
    monomial: MonomialPoly
    seed_index: int


@dataclass
class RootSet:
    """Zeros of one polynomial and the quality of the solve"""
    roots: np.ndarray
    residuals: np.ndarray
    converged: bool
    iterations: int = 0
    trimmed: bool = False

    @property
    def degree(self) -> int:
        return len(self.roots)


@dataclass
class InsideFraction:
    """Share of zeros inside the unit disk"""
    value: float
    stderr: float
    degenerate: bool = False


@dataclass
class MCResult:
    """Aggregated Monte Carlo zero counts"""
    degree: int
    radii: List[float]
    means: List[float]
    stds: List[float]
    stderrs: List[float]
    samples: int
    discarded: int
    trimmed: int
    hist_edges: np.ndarray
    hist_counts: np.ndarray
    hist_overflow: int
    discarded_indices: List[int] = field(default_factory=list)
    root_dump: Optional[List[Tuple[int, np.ndarray]]] = None

    @property
    def kept(self) -> int:
        return self.samples - self.discarded

    def estimate(self, radius: float) -> CountEstimate:
        i = self.radii.index(radius)
        return CountEstimate(
            value=self.means[i],
            method=CountMethod.MONTE_CARLO,
            n=self.degree,
            radius=radius,
            stderr=self.stderrs[i],
        )


@dataclass
class ConvergenceRow:
    """One degree of a convergence sweep"""
    n: int
    method: CountMethod
    value: float
    target: float
    gap: float
    family_limit: Optional[float]
    family_gap: Optional[float]


@dataclass
class ConvergenceReport:
    rows: List[ConvergenceRow]
    radius: float
    target_monotone: bool
    family_monotone: Optional[bool]


class ExperimentConfig(BaseModel):
    """Resolved Monte Carlo experiment settings"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    basis: BasisSpec
    degree: int
    radii: List[float]
    samples: int
    master_seed: int
    workers: int = 1
    batch_size: int = 500
    root_tol: float = 1e-12
    root_max_iter: int = 200
    hist_bins: int = 60
    hist_max: float = 1.5
    max_discard_fraction: float = 0.01
    dump_roots: Optional[str] = None
    output_dir: str = "output"

    @field_validator('degree')
    @classmethod
    def _check_degree(cls, value):
        if value < 0:
            raise ValueError("degree must be >= 0")
        return value

    @field_validator('samples', 'workers', 'batch_size', 'root_max_iter', 'hist_bins')
    @classmethod
    def _check_positive(cls, value):
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator('master_seed')
    @classmethod
    def _check_seed(cls, value):
        if not 0 <= value < 2 ** 64:
            raise ValueError("master seed must be a 64-bit unsigned integer")
        return value

    @field_validator('radii')
    @classmethod
    def _check_radii(cls, value):
        if not value:
            raise ValueError("at least one radius is required")
        if any(not 0 < r <= 1 for r in value):
            raise ValueError("radii must lie in (0, 1]")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("radii must be sorted ascending without repeats")
        return value

    @model_validator(mode='after')
    def _check_basis_degree(self):
        limit = self.basis.max_degree
        if limit is not None and self.degree > limit:
            raise ValueError(f"custom table supports degree <= {limit}, got {self.degree}")
        return self

    @field_serializer('basis')
    def _serialize_basis(self, basis: BasisSpec):
        return basis.label
