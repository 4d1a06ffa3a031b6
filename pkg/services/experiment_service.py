"""
Monte Carlo experiments and convergence sweeps
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from numerics.errors import NumericalDiagnosticError, ParameterError
from numerics.models import (
    BasisFamily, BasisSpec, ConvergenceReport, ConvergenceRow, CountEstimate,
    CountMethod, ExperimentConfig, InsideFraction, MCResult, MonomialPoly
)
from services.count_service import CountService
from services.sampler_service import TRIM_RTOL, SamplerService

logger = logging.getLogger(__name__)


@dataclass
class BatchRecord:
    """Per-sample results of one contiguous block of sample indices"""
    start: int
    stop: int
    counts: np.ndarray
    discarded: List[int]
    trimmed: int
    hist: np.ndarray
    overflow: int
    roots: Optional[List[Tuple[int, np.ndarray]]]


def simulate_batch(
    spec: BasisSpec,
    degree: int,
    master_seed: int,
    start: int,
    stop: int,
    radii: Tuple[float, ...],
    tol: float,
    max_iter: int,
    edges: np.ndarray,
    keep_roots: bool,
) -> BatchRecord:
    """Sample, solve and count one block; the outcome depends only on the indices"""
    size = stop - start
    radii_arr = np.asarray(radii)
    hist = np.zeros(len(edges) - 1, dtype=np.int64)
    if degree == 0:
        dump = [(index, np.zeros(0, dtype=complex)) for index in range(start, stop)] if keep_roots else None
        return BatchRecord(start, stop, np.zeros((size, len(radii)), dtype=np.int64), [], 0, hist, 0, dump)

    _, coefficients = SamplerService.sample_batch(spec, degree, master_seed, start, stop)
    scale = np.max(np.abs(coefficients), axis=1)
    needs_trim = np.abs(coefficients[:, -1]) <= TRIM_RTOL * scale

    roots: List[np.ndarray] = [None] * size
    converged = np.zeros(size, dtype=bool)
    regular = np.flatnonzero(~needs_trim)
    if regular.size:
        batch_roots, _, batch_ok, _ = SamplerService.find_roots_batch(coefficients[regular], tol, max_iter)
        for row, position in enumerate(regular):
            roots[position] = batch_roots[row]
            converged[position] = batch_ok[row]
    for position in np.flatnonzero(needs_trim):
        logger.info(f"Sample {start + position}: leading coefficient below trim threshold")
        root_set = SamplerService.find_roots(MonomialPoly(coefficients[position]), tol, max_iter)
        roots[position] = root_set.roots
        converged[position] = root_set.converged

    counts = np.zeros((size, len(radii)), dtype=np.int64)
    discarded = []
    overflow = 0
    dump = [] if keep_roots else None
    for position in range(size):
        index = start + position
        if not converged[position]:
            logger.warning(f"Sample {index}: root finder did not converge, discarding")
            discarded.append(index)
            continue
        moduli = np.abs(roots[position])
        counts[position] = np.count_nonzero(moduli[:, None] < radii_arr[None, :], axis=0)
        below = moduli < edges[-1]
        hist += np.histogram(moduli[below], bins=edges)[0]
        overflow += int(np.count_nonzero(~below))
        if keep_roots:
            dump.append((index, roots[position]))

    keep = np.ones(size, dtype=bool)
    keep[[i - start for i in discarded]] = False
    return BatchRecord(start, stop, counts[keep], discarded, int(np.count_nonzero(needs_trim)), hist, overflow, dump)


def _simulate_job(job) -> BatchRecord:
    return simulate_batch(*job)


class ExperimentService:
    """Monte Carlo ensembles and their comparison with analytic routes"""

    @staticmethod
    def run_mc(experiment: ExperimentConfig) -> MCResult:
        """
        Zero counts per radius over `samples` random polynomials.

        Blocks of sample indices may run in worker processes; results are
        reduced in index order so the outcome does not depend on `workers`.
        """
        edges = np.linspace(0.0, experiment.hist_max, experiment.hist_bins + 1)
        radii = tuple(experiment.radii)
        keep_roots = experiment.dump_roots is not None
        jobs = [
            (experiment.basis, experiment.degree, experiment.master_seed, start,
             min(start + experiment.batch_size, experiment.samples), radii,
             experiment.root_tol, experiment.root_max_iter, edges, keep_roots)
            for start in range(0, experiment.samples, experiment.batch_size)
        ]
        logger.info(f"Monte Carlo: {experiment.samples} samples of degree {experiment.degree} "
                    f"({experiment.basis.label}) in {len(jobs)} batches, {experiment.workers} worker(s)")

        if experiment.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=experiment.workers) as executor:
                records = list(executor.map(_simulate_job, jobs))
        else:
            records = [_simulate_job(job) for job in jobs]

        counts = np.concatenate([record.counts for record in records], axis=0)
        discarded = [index for record in records for index in record.discarded]
        trimmed = sum(record.trimmed for record in records)
        hist = np.sum([record.hist for record in records], axis=0)
        overflow = sum(record.overflow for record in records)
        dump = [item for record in records for item in record.roots] if keep_roots else None

        if len(discarded) > experiment.max_discard_fraction * experiment.samples:
            raise NumericalDiagnosticError(
                f"{len(discarded)} of {experiment.samples} samples discarded; check root finder settings"
            )
        if counts.shape[0] == 0:
            raise NumericalDiagnosticError("no converged samples")
        if np.any(np.diff(counts, axis=1) < 0):
            raise NumericalDiagnosticError("per-sample zero counts decrease with the radius")
        if trimmed:
            logger.warning(f"Monte Carlo: degree trimming fired in {trimmed} sample(s)")

        kept = counts.shape[0]
        means = counts.mean(axis=0)
        stds = counts.std(axis=0, ddof=1) if kept > 1 else np.zeros(len(radii))
        stderrs = stds / np.sqrt(kept)
        logger.info(f"Monte Carlo done: kept {kept}, discarded {len(discarded)}")
        return MCResult(
            degree=experiment.degree,
            radii=list(radii),
            means=[float(v) for v in means],
            stds=[float(v) for v in stds],
            stderrs=[float(v) for v in stderrs],
            samples=experiment.samples,
            discarded=len(discarded),
            trimmed=trimmed,
            hist_edges=edges,
            hist_counts=hist,
            hist_overflow=overflow,
            discarded_indices=discarded,
            root_dump=dump,
        )

    @staticmethod
    def fraction_inside(result: MCResult) -> InsideFraction:
        """Mean count in the unit disk divided by the degree"""
        if 1.0 not in result.radii:
            raise ParameterError("fraction_inside needs r = 1 among the radii")
        if result.degree == 0:
            return InsideFraction(value=0.0, stderr=0.0, degenerate=True)
        i = result.radii.index(1.0)
        return InsideFraction(value=result.means[i] / result.degree, stderr=result.stderrs[i] / result.degree)

    @staticmethod
    def analytic_count(spec: BasisSpec, n: int, r: float) -> CountEstimate:
        """Best available analytic count for a basis: rational series, else contour"""
        if spec.family is BasisFamily.SCALED_MONOMIAL:
            if r == 1.0:
                return CountService.expected_count_unit_disk(n)
            return CountService.expected_count_disk(n, r)
        if spec.is_radial:
            return CountService.expected_count_radial(spec, n, r)
        return CountService.expected_count_contour(spec, n, r)

    @staticmethod
    def convergence_report(spec: BasisSpec, degrees: Sequence[int], r: float) -> ConvergenceReport:
        """
        Counts against the disk limit 2r^2/(1-r^2) (r < 1, area route) or
        against 2n/3 (r = 1, contour route, gap taken on count / n).
        """
        degrees = list(degrees)
        if not degrees:
            raise ParameterError("at least one degree is required")
        if any(b <= a for a, b in zip(degrees, degrees[1:])):
            raise ParameterError("degrees must be ascending")
        if not 0.0 < r <= 1.0:
            raise ParameterError(f"radius must lie in (0, 1], got {r}")

        rows = []
        for n in degrees:
            if r < 1.0:
                estimate = CountService.expected_count_area(spec, n, r)
                target = CountService.expected_count_limit(r)
                gap = abs(estimate.value - target)
                family_limit = CountService.family_count_limit(spec, r)
                family_gap = None if family_limit is None else abs(estimate.value - family_limit)
            else:
                estimate = CountService.expected_count_contour(spec, n, r)
                target = 2.0 * n / 3.0
                gap = abs(estimate.value / n - 2.0 / 3.0) if n else 0.0
                fraction = CountService.boundary_fraction(spec)
                family_limit = None if fraction is None else fraction * n
                family_gap = None if fraction is None or not n else abs(estimate.value / n - fraction)
            rows.append(ConvergenceRow(n=n, method=estimate.method, value=estimate.value, target=target,
                                       gap=gap, family_limit=family_limit, family_gap=family_gap))

        tail = rows[len(rows) // 2:] if len(rows) > 1 else rows
        target_monotone = _nonincreasing([row.gap for row in tail])
        family_gaps = [row.family_gap for row in tail]
        family_monotone = None if any(g is None for g in family_gaps) else _nonincreasing(family_gaps)
        if family_monotone is False:
            logger.warning(f"convergence {spec.label}, r={r}: gaps to the family limit are not monotone")
        return ConvergenceReport(rows=rows, radius=r, target_monotone=target_monotone, family_monotone=family_monotone)


def _nonincreasing(values: List[float], slack: float = 1e-12) -> bool:
    return all(b <= a + slack for a, b in zip(values, values[1:]))
