"""
Analytic subcommands: expected counts, scaling limits, boundary ratios,
intensity grids, orthonormality checks and convergence sweeps
"""
import logging
import math
from pathlib import Path

from config import config
from numerics.basis import gram_matrix, sut_diagnostic
from numerics.errors import ConditioningError, NumericalDiagnosticError, ParameterError
from numerics.models import BasisFamily, CountEstimate, CountMethod
from services.count_service import CountService
from services.experiment_service import ExperimentService
from services.intensity_service import IntensityService
from utils.helpers import write_csv, write_summary
from utils.validators import parse_basis, parse_float_list, parse_int_list

logger = logging.getLogger(__name__)

COUNT_COLUMNS = ['method', 'n', 'r', 'value', 'stderr']
ORTHO_TOL = 1e-10


def add_basis_argument(parser, default='scaled-monomial'):
    parser.add_argument(
        '--basis', default=default,
        help="scaled-monomial | weighted-power:j=<real> | z-minus-one-squared | custom:<path> | kac"
    )


def _output_dir(args) -> Path:
    return Path(args.output_dir or config.OUTPUT_DIR)


def _closed_count(spec, n: int, r: float) -> CountEstimate:
    """Exact route for the bases that have one"""
    if spec.family is BasisFamily.SCALED_MONOMIAL:
        if r == 1.0:
            return CountService.expected_count_unit_disk(n)
        return CountService.expected_count_disk(n, r)
    if spec.is_monomial_table:
        return CountEstimate(value=CountService.kac_count_disk(n, r), method=CountMethod.CLOSED_FORM, n=n, radius=r)
    if spec.is_radial:
        return CountService.expected_count_radial(spec, n, r)
    raise ParameterError(f"no closed form for basis {spec.label}; use --method contour or area")


def expected_count_command(args) -> int:
    """Expected zero counts in D(0, r) by the requested routes"""
    spec = parse_basis(args.basis, args.degree)
    radii = parse_float_list(args.radius)
    methods = ['closed', 'contour', 'area'] if args.method == 'all' else [args.method]

    estimates = []
    for r in radii:
        for method in methods:
            if method == 'closed':
                if args.method == 'all' and not spec.is_radial:
                    logger.info(f"expected-count: no closed form for {spec.label}, skipping")
                    continue
                estimates.append(_closed_count(spec, args.degree, r))
            elif method == 'contour':
                estimates.append(CountService.expected_count_contour(spec, args.degree, r, args.nodes))
            elif r < 1.0:
                estimates.append(CountService.expected_count_area(spec, args.degree, r))
            elif args.method == 'area':
                raise ParameterError("the area route needs r < 1")

    rows = [estimate.as_row() for estimate in estimates]
    output_dir = _output_dir(args)
    write_csv(rows, output_dir / 'expected_count.csv', columns=COUNT_COLUMNS)

    limits = {}
    for r in radii:
        if r < 1.0:
            limits[str(r)] = CountService.family_count_limit(spec, r)
    fraction = CountService.boundary_fraction(spec)
    write_summary(
        output_dir / 'expected_count_summary.json',
        config={'basis': spec.label, 'degree': args.degree, 'radii': radii, 'method': args.method,
                'nodes': args.nodes},
        results=rows,
        diagnostics={
            'family_count_limit': limits,
            'boundary_fraction': fraction,
            'estimates': [estimate.diagnostics for estimate in estimates],
        },
    )
    for row in rows:
        print(f"{row['method']:>16}  n={row['n']:<5} r={row['r']:<8g} {row['value']:.12g}")
    return 0


def scaling_limit_command(args) -> int:
    """E[N_n(D(0, e^{-t/2n}))] / n against its n -> infinity scaling limit"""
    ts = parse_float_list(args.t)
    degrees = parse_int_list(args.degrees)
    if any(n < 1 for n in degrees):
        raise ParameterError("degrees must be >= 1")

    rows = []
    for t in ts:
        rows.append({'ensemble': 'scaled-monomial', 'method': CountMethod.LIMIT_FORMULA.value, 'n': None,
                     't': t, 'r': None, 'value': CountService.scaling_limit(t), 'stderr': None})
        rows.append({'ensemble': 'kac', 'method': CountMethod.LIMIT_FORMULA.value, 'n': None,
                     't': t, 'r': None, 'value': CountService.kac_scaling(t), 'stderr': None})
        for n in degrees:
            r = math.exp(-t / (2.0 * n))
            count = CountService.expected_count_disk(n, r).value
            rows.append({'ensemble': 'scaled-monomial', 'method': CountMethod.RATIONAL_SERIES.value, 'n': n,
                         't': t, 'r': r, 'value': count / n, 'stderr': None})
            rows.append({'ensemble': 'kac', 'method': CountMethod.CLOSED_FORM.value, 'n': n,
                         't': t, 'r': r, 'value': CountService.kac_count_disk(n, r) / n, 'stderr': None})

    output_dir = _output_dir(args)
    write_csv(rows, output_dir / 'scaling_limit.csv',
              columns=['ensemble', 'method', 'n', 't', 'r', 'value', 'stderr'])
    write_summary(output_dir / 'scaling_limit_summary.json',
                  config={'t': ts, 'degrees': degrees}, results=rows, diagnostics={})
    for t in ts:
        print(f"t={t:g}  limit={CountService.scaling_limit(t):.12g}  kac={CountService.kac_scaling(t):.12g}")
    return 0


def boundary_ratio_command(args) -> int:
    """conj(K01) / (n K00) on the unit circle"""
    spec = parse_basis(args.basis, args.degree)
    thetas = parse_float_list(args.theta)
    fraction = CountService.boundary_fraction(spec)

    rows = []
    for theta in thetas:
        ratio = CountService.boundary_ratio(spec, args.degree, theta)
        rows.append({
            'n': args.degree,
            'theta': theta,
            're': ratio.real,
            'im': ratio.imag,
            'modulus': abs(ratio),
            'phase': math.atan2(ratio.imag, ratio.real),
            'limit_modulus': fraction,
        })

    output_dir = _output_dir(args)
    write_csv(rows, output_dir / 'boundary_ratio.csv')
    write_summary(output_dir / 'boundary_ratio_summary.json',
                  config={'basis': spec.label, 'degree': args.degree, 'thetas': thetas},
                  results=rows, diagnostics={'limit_modulus': fraction})
    for row in rows:
        print(f"theta={row['theta']:<10g} |ratio|={row['modulus']:.8f} phase={row['phase']:+.8f}")
    return 0


def intensity_grid_command(args) -> int:
    """rho_n on a lattice, NaN outside the unit disk"""
    spec = parse_basis(args.basis, args.degree)
    window = tuple(parse_float_list(args.window))
    if len(window) != 4:
        raise ParameterError("--window needs xmin,xmax,ymin,ymax")
    grid = IntensityService.intensity_grid(spec, args.degree, window, args.resolution)

    output_dir = _output_dir(args)
    write_csv(grid.to_frame(), output_dir / 'intensity_grid.csv')

    diagnostics = {'inside_points': int(grid.inside.sum())}
    check_radius = args.check_radius
    if check_radius is not None:
        integral = grid.midpoint_integral(check_radius)
        diagnostics['midpoint_integral'] = integral
        try:
            diagnostics['analytic_count'] = ExperimentService.analytic_count(spec, args.degree, check_radius).value
        except ConditioningError as e:
            logger.warning(f"intensity-grid: analytic check unavailable: {e}")
    write_summary(output_dir / 'intensity_grid_summary.json',
                  config={'basis': spec.label, 'degree': args.degree, 'window': list(window),
                          'resolution': args.resolution, 'check_radius': check_radius},
                  results={'rho_max': float(grid.values[grid.inside].max()) if grid.inside.any() else None},
                  diagnostics=diagnostics)
    print(f"intensity grid {args.resolution}x{args.resolution} written to {output_dir / 'intensity_grid.csv'}")
    return 0


def orthocheck_command(args) -> int:
    """Quadrature Gram matrix of p_0..p_n against the identity"""
    spec = parse_basis(args.basis, args.degree)
    orders = None
    if args.radial_order is not None or args.angular_order is not None:
        if args.radial_order is None or args.angular_order is None:
            raise ParameterError("--radial-order and --angular-order go together")
        orders = (args.radial_order, args.angular_order)
    report = gram_matrix(spec, args.degree, orders)

    rows = []
    for a in range(args.degree + 1):
        for b in range(args.degree + 1):
            entry = report.matrix[a, b]
            rows.append({'a': a, 'b': b, 're': entry.real, 'im': entry.imag,
                         'deviation': abs(entry - (1.0 if a == b else 0.0))})

    sut = sut_diagnostic(spec, max(args.degree, 2)) if spec.max_degree is None else []
    output_dir = _output_dir(args)
    write_csv(rows, output_dir / 'orthocheck.csv')
    write_summary(output_dir / 'orthocheck_summary.json',
                  config={'basis': spec.label, 'degree': args.degree,
                          'radial_order': report.radial_order, 'angular_order': report.angular_order},
                  results={'max_deviation': report.max_deviation, 'exact': report.exact,
                           'leading_coefficient_roots': [{'k': k, 'value': v} for k, v in sut]},
                  diagnostics={'warnings': report.warnings})
    print(f"{spec.label} n={args.degree}: max |G - I| = {report.max_deviation:.3e}"
          f"{'' if report.exact else ' (approximate)'}")

    if args.strict and report.max_deviation > ORTHO_TOL:
        raise NumericalDiagnosticError(f"Gram deviation {report.max_deviation:.3e} exceeds {ORTHO_TOL:g}")
    return 0


def convergence_command(args) -> int:
    """Counts against their n -> infinity targets over a degree list"""
    degrees = parse_int_list(args.degrees)
    spec = parse_basis(args.basis, max(degrees))
    report = ExperimentService.convergence_report(spec, degrees, args.radius)

    rows = [{
        'n': row.n, 'method': row.method.value, 'value': row.value, 'target': row.target, 'gap': row.gap,
        'family_limit': row.family_limit, 'family_gap': row.family_gap,
    } for row in report.rows]
    output_dir = _output_dir(args)
    write_csv(rows, output_dir / 'convergence.csv')
    write_summary(output_dir / 'convergence_summary.json',
                  config={'basis': spec.label, 'degrees': degrees, 'radius': args.radius},
                  results=rows,
                  diagnostics={'target_monotone': report.target_monotone, 'family_monotone': report.family_monotone})
    for row in rows:
        print(f"n={row['n']:<6} value={row['value']:.10g} gap={row['gap']:.3e}")

    monotone = report.family_monotone if report.family_monotone is not None else report.target_monotone
    if args.strict and not monotone:
        raise NumericalDiagnosticError(f"gaps are not nonincreasing over the last half of {degrees}")
    return 0


def register_analytic_handlers(subparsers):
    """Register analytic subcommands"""
    parser = subparsers.add_parser('expected-count', help="expected zeros in D(0, r)")
    add_basis_argument(parser)
    parser.add_argument('--degree', type=int, required=True)
    parser.add_argument('--radius', required=True, help="one or more radii in (0, 1]")
    parser.add_argument('--method', choices=['closed', 'contour', 'area', 'all'], default='all')
    parser.add_argument('--nodes', type=int, default=None, help="contour nodes")
    parser.set_defaults(handler=expected_count_command)

    parser = subparsers.add_parser('scaling-limit', help="counts near the unit circle at scale 1/n")
    parser.add_argument('--t', required=True, help="one or more t > 0")
    parser.add_argument('--degrees', default='100,1000,2000')
    parser.set_defaults(handler=scaling_limit_command)

    parser = subparsers.add_parser('boundary-ratio', help="conj(K01)/(n K00) on the unit circle")
    add_basis_argument(parser)
    parser.add_argument('--degree', type=int, required=True)
    parser.add_argument('--theta', required=True, help="one or more angles, not multiples of pi")
    parser.set_defaults(handler=boundary_ratio_command)

    parser = subparsers.add_parser('intensity-grid', help="zero intensity on a lattice")
    add_basis_argument(parser)
    parser.add_argument('--degree', type=int, required=True)
    parser.add_argument('--resolution', type=int, default=101)
    parser.add_argument('--window', default='-1,1,-1,1', help="xmin,xmax,ymin,ymax")
    parser.add_argument('--check-radius', type=float, default=None,
                        help="compare the grid integral over D(0, r) with the analytic count")
    parser.set_defaults(handler=intensity_grid_command)

    parser = subparsers.add_parser('orthocheck', help="Gram matrix of the basis")
    add_basis_argument(parser)
    parser.add_argument('--degree', type=int, required=True)
    parser.add_argument('--radial-order', type=int, default=None)
    parser.add_argument('--angular-order', type=int, default=None)
    parser.add_argument('--strict', action='store_true', help=f"fail when max |G - I| > {ORTHO_TOL:g}")
    parser.set_defaults(handler=orthocheck_command)

    parser = subparsers.add_parser('convergence', help="convergence of counts to their limits")
    add_basis_argument(parser)
    parser.add_argument('--degrees', required=True, help="ascending degrees")
    parser.add_argument('--radius', type=float, required=True)
    parser.add_argument('--strict', action='store_true', help="fail when gaps are not monotone")
    parser.set_defaults(handler=convergence_command)
