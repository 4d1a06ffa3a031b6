"""
Random polynomial sampling and simultaneous root finding
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from config import config
from numerics.basis import basis_matrix
from numerics.errors import ParameterError
from numerics.models import BasisSpec, MonomialPoly, PolynomialSample, RootSet

logger = logging.getLogger(__name__)

TRIM_RTOL = 1e-13
RESIDUAL_BOUND = 1e-8
START_SCALE = 0.8
START_PHASE = 0.4
CONTINUATION_PASSES = 2
CHUNK_ELEMENTS = 2_000_000


@dataclass(frozen=True)
class SampleStream:
    """
    Counter-based random stream for one sample.

    Philox is keyed by (master seed, sample index); coefficient k uses the
    k-th pair of uniforms, so every draw depends only on (seed, sample, k).
    """
    master_seed: int
    sample_index: int

    def uniforms(self, count: int) -> np.ndarray:
        key = (int(self.master_seed) << 64) | int(self.sample_index)
        generator = np.random.Generator(np.random.Philox(key=key))
        return generator.random((count, 2))


def box_muller(uniforms: np.ndarray) -> np.ndarray:
    """Complex standard Gaussians alpha + i beta from uniform pairs"""
    radius = np.sqrt(-2.0 * np.log1p(-uniforms[:, 0]))
    angle = 2.0 * math.pi * uniforms[:, 1]
    return radius * np.cos(angle) + 1j * radius * np.sin(angle)


def _horner_batch(a: np.ndarray, z: np.ndarray):
    """P, P' and the round-off bound eps * sum |a_k||z|^k, for rows of a at points z"""
    p = np.broadcast_to(a[:, -1:], z.shape).astype(complex)
    dp = np.zeros_like(p)
    bound = np.abs(p)
    abs_z = np.abs(z)
    for k in range(a.shape[1] - 2, -1, -1):
        dp = dp * z + p
        p = p * z + a[:, k:k + 1]
        bound = bound * abs_z + np.abs(a[:, k:k + 1])
    return p, dp, 2.0 * np.finfo(float).eps * bound


def _aberth(a: np.ndarray, z: np.ndarray, active: np.ndarray, iterations: np.ndarray,
            tol: float, max_iter: int, offset: int):
    """
    Steps offset+1 .. offset+max_iter of the Aberth iteration on monic rows a.

    Returns (z, active, iterations) where iterations is the last step at
    which any root of the row moved.
    """
    n = z.shape[1]
    z = z.copy()
    active = active.copy()
    iterations = iterations.copy()
    off_diagonal = ~np.eye(n, dtype=bool)
    for step in range(1, max_iter + 1):
        p, dp, bound = _horner_batch(a, z)
        at_root = np.abs(p) <= bound
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = np.where(dp != 0, p / dp, p)
            diff = z[:, :, None] - z[:, None, :]
            repulsion = np.sum(np.where(off_diagonal, 1.0 / np.where(off_diagonal, diff, 1.0), 0.0), axis=2)
            correction = newton / (1.0 - newton * repulsion)
        moving = active & ~at_root & np.isfinite(correction)
        z = np.where(moving, z - correction, z)
        small = np.abs(correction) <= tol * (1.0 + np.abs(z))
        active &= ~(at_root | small)
        iterations = np.where(np.any(moving, axis=1), offset + step, iterations)
        if not np.any(active):
            break
    return z, active, iterations


class SamplerService:
    """Complex-Gaussian random polynomials and their zeros"""

    @staticmethod
    def sample_polynomial(spec: BasisSpec, n: int, stream: SampleStream) -> PolynomialSample:
        """P_n = sum eta_k p_k with eta_k i.i.d. complex standard Gaussian"""
        if n < 0:
            raise ParameterError(f"degree must be >= 0, got {n}")
        eta = box_muller(stream.uniforms(n + 1))
        monomial = MonomialPoly(basis_matrix(spec, n) @ eta)
        return PolynomialSample(basis_coefficients=eta, monomial=monomial, seed_index=stream.sample_index)

    @staticmethod
    def sample_batch(spec: BasisSpec, n: int, master_seed: int, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray]:
        """Basis and monomial coefficients of samples start..stop-1, one row each"""
        eta = np.stack([
            box_muller(SampleStream(master_seed, index).uniforms(n + 1))
            for index in range(start, stop)
        ])
        return eta, eta @ basis_matrix(spec, n).T

    @staticmethod
    def trim_degree(poly: MonomialPoly, rtol: float = TRIM_RTOL) -> Tuple[MonomialPoly, bool]:
        trimmed = poly.trimmed(rtol)
        return trimmed, trimmed.degree < poly.degree

    @staticmethod
    def find_roots_batch(
        coefficients: np.ndarray,
        tol: float = None,
        max_iter: int = None,
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        Aberth-Ehrlich iteration on a batch of equal-degree polynomials.

        Rows of `coefficients` are ascending with nonzero leading entries.
        A root is frozen once its correction is below tol * (1 + |z|) or
        |P(z)| is within Horner round-off. Rows that still have moving roots
        after max_iter steps get up to CONTINUATION_PASSES further runs of
        max_iter steps from their current iterates. Each row evolves
        independently of the other rows in the batch.

        Returns (roots, residuals, converged, iterations).
        """
        tol = config.ROOT_TOL if tol is None else tol
        max_iter = config.ROOT_MAX_ITER if max_iter is None else max_iter
        coefficients = np.atleast_2d(np.asarray(coefficients, dtype=complex))
        batch, n = coefficients.shape[0], coefficients.shape[1] - 1
        if n < 1:
            raise ParameterError("root finding needs degree >= 1")

        a = coefficients / coefficients[:, -1:]
        radius = START_SCALE * (1.0 + np.max(np.abs(a[:, :-1]), axis=1))
        angles = 2.0 * math.pi * np.arange(n) / n + START_PHASE
        z = radius[:, None] * np.exp(1j * angles)[None, :]
        active = np.ones((batch, n), dtype=bool)
        iterations = np.zeros(batch, dtype=int)

        # chunks bound the n x n repulsion arrays; rows never interact
        chunk = max(1, CHUNK_ELEMENTS // (n * n))
        for lo in range(0, batch, chunk):
            rows = slice(lo, min(lo + chunk, batch))
            z[rows], active[rows], iterations[rows] = _aberth(
                a[rows], z[rows], active[rows], iterations[rows], tol, max_iter, 0
            )

        for extra in range(1, CONTINUATION_PASSES + 1):
            pending = np.flatnonzero(np.any(active, axis=1))
            if pending.size == 0:
                break
            logger.info(f"find_roots_batch: continuing {pending.size} of {batch} polynomials past {max_iter} steps")
            for lo in range(0, pending.size, chunk):
                rows = pending[lo:lo + chunk]
                z[rows], active[rows], iterations[rows] = _aberth(
                    a[rows], z[rows], active[rows], iterations[rows], tol, max_iter, extra * max_iter
                )

        scale = np.max(np.abs(coefficients), axis=1)
        values = _horner_batch(coefficients, z)[0]
        residuals = np.abs(values) / (scale[:, None] * (1.0 + np.abs(z)) ** n)
        converged = ~np.any(active, axis=1) & np.all(residuals <= RESIDUAL_BOUND, axis=1)
        return z, residuals, converged, iterations

    @staticmethod
    def find_roots(poly: MonomialPoly, tol: float = None, max_iter: int = None) -> RootSet:
        """All zeros of a polynomial after trimming negligible leading coefficients"""
        trimmed, fired = SamplerService.trim_degree(poly)
        if fired:
            logger.info(f"find_roots: degree trimmed from {poly.degree} to {trimmed.degree}")
        if trimmed.degree < 1:
            return RootSet(roots=np.zeros(0, dtype=complex), residuals=np.zeros(0), converged=True, trimmed=fired)
        roots, residuals, converged, iterations = SamplerService.find_roots_batch(
            trimmed.coefficients[None, :], tol, max_iter
        )
        return RootSet(
            roots=roots[0],
            residuals=residuals[0],
            converged=bool(converged[0]),
            iterations=int(iterations[0]),
            trimmed=fired,
        )

    @staticmethod
    def count_in_disk(roots: RootSet, r: float) -> int:
        """Number of roots with |root| < r"""
        if not roots.converged:
            raise ParameterError("count_in_disk needs a converged root set")
        return int(np.count_nonzero(np.abs(roots.roots) < r))

    @staticmethod
    def vieta_check(poly: MonomialPoly, roots: RootSet) -> Tuple[float, float]:
        """
        Relative discrepancies of sum and product of roots against
        -c_{n-1}/c_n and (-1)^n c_0/c_n.
        """
        c = poly.coefficients
        n = poly.degree
        if roots.degree != n or n < 1:
            raise ParameterError("Vieta check needs one root per degree")
        expected_sum = -c[n - 1] / c[n]
        expected_product = (-1) ** n * c[0] / c[n]
        total = np.sum(roots.roots)
        product = np.prod(roots.roots)
        sum_gap = abs(total - expected_sum) / max(1.0, abs(expected_sum), float(np.sum(np.abs(roots.roots))))
        product_gap = abs(product - expected_product) / max(abs(expected_product), float(np.prod(np.abs(roots.roots))), 1e-300)
        return float(sum_gap), float(product_gap)

    @staticmethod
    def root_dump_rows(dump: List[Tuple[int, np.ndarray]]) -> List[dict]:
        """Rows sample_index, re, im for the root dump CSV"""
        return [
            {'sample_index': index, 're': float(root.real), 'im': float(root.imag)}
            for index, roots in dump
            for root in roots
        ]
