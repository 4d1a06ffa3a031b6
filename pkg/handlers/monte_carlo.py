"""
Monte Carlo subcommand
"""
import logging
from pathlib import Path
from typing import Any, Dict

from config import config
from handlers.analytic import COUNT_COLUMNS, add_basis_argument
from numerics.errors import ConditioningError, ParameterError
from numerics.models import ExperimentConfig
from services.experiment_service import ExperimentService
from services.sampler_service import SamplerService
from utils.helpers import write_csv, write_summary
from utils.validators import load_experiment_file, parse_basis, parse_float_list

logger = logging.getLogger(__name__)

# CLI flag name -> experiment file key
FLAG_KEYS = {
    'basis': 'BASIS',
    'degree': 'DEGREE',
    'radii': 'RADII',
    'samples': 'SAMPLES',
    'seed': 'SEED',
    'workers': 'WORKERS',
    'dump_roots': 'DUMP_ROOTS',
    'output_dir': 'OUTPUT_DIR',
    'root_tol': 'ROOT_TOL',
    'root_max_iter': 'ROOT_MAX_ITER',
}


def resolve_experiment(args) -> ExperimentConfig:
    """CLI flags override the experiment file, which overrides `config` defaults"""
    settings: Dict[str, Any] = {
        'RADII': '1.0',
        'SAMPLES': config.SAMPLES,
        'SEED': config.SEED,
        'WORKERS': config.WORKERS,
        'OUTPUT_DIR': config.OUTPUT_DIR,
        'ROOT_TOL': config.ROOT_TOL,
        'ROOT_MAX_ITER': config.ROOT_MAX_ITER,
        'BASIS': 'scaled-monomial',
    }
    if args.config:
        settings.update(load_experiment_file(args.config))
    for flag, key in FLAG_KEYS.items():
        value = getattr(args, flag, None)
        if value is not None:
            settings[key] = value

    if 'DEGREE' not in settings:
        raise ParameterError("mc-run needs a degree (--degree or DEGREE=)")
    degree = int(settings['DEGREE'])
    radii = settings['RADII']
    return ExperimentConfig(
        basis=parse_basis(str(settings['BASIS']), degree),
        degree=degree,
        radii=parse_float_list(radii) if isinstance(radii, str) else list(radii),
        samples=int(settings['SAMPLES']),
        master_seed=int(settings['SEED']),
        workers=int(settings['WORKERS']),
        batch_size=args.batch_size or config.BATCH_SIZE,
        root_tol=float(settings['ROOT_TOL']),
        root_max_iter=int(settings['ROOT_MAX_ITER']),
        hist_bins=config.HIST_BINS,
        hist_max=config.HIST_MAX,
        max_discard_fraction=config.MAX_DISCARD_FRACTION,
        dump_roots=settings.get('DUMP_ROOTS'),
        output_dir=str(settings['OUTPUT_DIR']),
    )


def mc_run_command(args) -> int:
    """Monte Carlo zero counts, compared with the analytic route for the basis"""
    experiment = resolve_experiment(args)
    result = ExperimentService.run_mc(experiment)
    output_dir = Path(experiment.output_dir)

    rows = []
    analytic_gaps = {}
    for r in result.radii:
        estimate = result.estimate(r)
        rows.append(estimate.as_row())
        try:
            analytic = ExperimentService.analytic_count(experiment.basis, experiment.degree, r)
        except ConditioningError as e:
            logger.warning(f"mc-run: no analytic count at r={r}: {e}")
            continue
        rows.append(analytic.as_row())
        if estimate.stderr:
            analytic_gaps[str(r)] = (estimate.value - analytic.value) / estimate.stderr
    write_csv(rows, output_dir / 'mc_counts.csv', columns=COUNT_COLUMNS)

    edges = result.hist_edges
    write_csv(
        [{'bin_lo': float(edges[i]), 'bin_hi': float(edges[i + 1]), 'count': int(result.hist_counts[i])}
         for i in range(len(result.hist_counts))],
        output_dir / 'mc_histogram.csv',
    )
    if experiment.dump_roots:
        write_csv(SamplerService.root_dump_rows(result.root_dump), experiment.dump_roots,
                  columns=['sample_index', 're', 'im'])

    results: Dict[str, Any] = {
        'degree': result.degree,
        'radii': result.radii,
        'means': result.means,
        'stds': result.stds,
        'stderrs': result.stderrs,
        'kept': result.kept,
    }
    if 1.0 in result.radii:
        fraction = ExperimentService.fraction_inside(result)
        results['fraction_inside'] = {'value': fraction.value, 'stderr': fraction.stderr,
                                      'degenerate': fraction.degenerate}
    write_summary(
        output_dir / 'mc_summary.json',
        config=experiment.model_dump(),
        results=results,
        diagnostics={
            'discarded': result.discarded,
            'discarded_indices': result.discarded_indices,
            'trimmed': result.trimmed,
            'hist_overflow': result.hist_overflow,
            'analytic_gap_in_stderr': analytic_gaps,
        },
    )
    for r, mean, stderr in zip(result.radii, result.means, result.stderrs):
        print(f"r={r:<8g} mean={mean:.6f} stderr={stderr:.6f}")
    return 0


def register_monte_carlo_handlers(subparsers):
    """Register Monte Carlo subcommands"""
    parser = subparsers.add_parser('mc-run', help="Monte Carlo zero counts")
    parser.add_argument('--config', default=None, help="flat KEY=VALUE experiment file")
    add_basis_argument(parser, default=None)
    parser.add_argument('--degree', type=int, default=None)
    parser.add_argument('--radii', default=None, help="ascending radii in (0, 1]")
    parser.add_argument('--samples', type=int, default=None)
    parser.add_argument('--seed', type=int, default=None)
    parser.add_argument('--workers', type=int, default=None)
    parser.add_argument('--batch-size', type=int, default=None)
    parser.add_argument('--root-tol', type=float, default=None)
    parser.add_argument('--root-max-iter', type=int, default=None)
    parser.add_argument('--dump-roots', default=None, help="CSV path for sample_index,re,im")
    parser.set_defaults(handler=mc_run_command)
