"""
Main entry point - expected zeros of random Bergman polynomials
"""
import argparse
import logging
import sys

from pydantic import ValidationError

from config import config
from handlers import register_analytic_handlers, register_monte_carlo_handlers
from numerics.errors import ConditioningError, NumericalDiagnosticError
from utils.logging_setup import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='bergman-zeros',
        description="Expected zero counts of random polynomials in Bergman orthonormal bases",
    )
    parser.add_argument('--verbose', '-v', action='store_true', help="log at INFO level")
    parser.add_argument('--output-dir', default=None, help=f"output directory (default {config.OUTPUT_DIR})")
    subparsers = parser.add_subparsers(dest='command', required=True)

    register_analytic_handlers(subparsers)
    register_monte_carlo_handlers(subparsers)
    return parser


def main(argv=None) -> int:
    """Parse arguments, run one subcommand and map failures to exit codes"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(config.DEBUG, args.verbose)

    try:
        config.validate()
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_VALIDATION

    logger.info(f"Running {args.command}")
    try:
        return args.handler(args)
    except (ValidationError, ValueError) as e:
        logger.error(f"{args.command}: invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConditioningError, NumericalDiagnosticError) as e:
        logger.error(f"{args.command}: numerical check failed: {e}")
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
