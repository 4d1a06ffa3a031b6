"""
Utils package initialization
"""
from .helpers import ensure_output_dir, to_jsonable, utc_timestamp, write_csv, write_summary
from .logging_setup import configure_logging
from .validators import (
    load_coefficient_table, load_experiment_file, parse_basis, parse_float_list, parse_int_list
)

__all__ = [
    'ensure_output_dir',
    'to_jsonable',
    'utc_timestamp',
    'write_csv',
    'write_summary',
    'configure_logging',
    'load_coefficient_table',
    'load_experiment_file',
    'parse_basis',
    'parse_float_list',
    'parse_int_list'
]
