"""
Validation and parsing of CLI and config-file values
"""
import re
from pathlib import Path
from typing import Dict, List, Optional

from dotenv import dotenv_values

from numerics.basis import monomial_table
from numerics.errors import ParameterError
from numerics.models import BasisSpec

WEIGHTED_POWER_PATTERN = re.compile(r'^weighted-power:j=(?P<j>[^\s]+)$')

# Keys accepted in flat experiment files
EXPERIMENT_KEYS = {
    'BASIS', 'DEGREE', 'RADII', 'SAMPLES', 'SEED', 'WORKERS',
    'DUMP_ROOTS', 'OUTPUT_DIR', 'ROOT_TOL', 'ROOT_MAX_ITER',
}


def parse_basis(text: str, degree: Optional[int] = None) -> BasisSpec:
    """
    Resolve a basis name.

    Accepts scaled-monomial, z-minus-one-squared, weighted-power:j=<real>,
    custom:<path> and kac (the unscaled monomial table, needs `degree`).
    """
    name = text.strip()
    if name == 'scaled-monomial':
        return BasisSpec.scaled_monomial()
    if name == 'z-minus-one-squared':
        return BasisSpec.z_minus_one_squared()
    if name == 'kac':
        if degree is None or degree < 0:
            raise ParameterError("basis 'kac' needs a degree >= 0")
        return monomial_table(degree)
    match = WEIGHTED_POWER_PATTERN.match(name)
    if match:
        try:
            j = float(match.group('j'))
        except ValueError:
            raise ParameterError(f"invalid weighted-power parameter in '{text}'")
        return BasisSpec.weighted_power(j)
    if name.startswith('custom:'):
        path = name[len('custom:'):]
        return BasisSpec.custom(load_coefficient_table(path), source=path)
    raise ParameterError(
        f"unknown basis '{text}' (expected scaled-monomial, weighted-power:j=<real>, "
        f"z-minus-one-squared, custom:<path> or kac)"
    )


def load_coefficient_table(path: str) -> List[List[complex]]:
    """
    Read a custom basis table.

    Row k lists the k+1 ascending monomial coefficients of p_k as
    whitespace-separated `re im` pairs; blank lines and # comments are skipped.
    """
    file_path = Path(path)
    if not file_path.is_file():
        raise ParameterError(f"coefficient table not found: {path}")

    rows = []
    for line_number, line in enumerate(file_path.read_text(encoding='utf-8').splitlines(), start=1):
        content = line.split('#', 1)[0].strip()
        if not content:
            continue
        fields = content.split()
        if len(fields) % 2:
            raise ParameterError(f"{path}:{line_number}: expected re im pairs, got {len(fields)} numbers")
        try:
            values = [float(item) for item in fields]
        except ValueError:
            raise ParameterError(f"{path}:{line_number}: non-numeric coefficient")
        rows.append([complex(values[i], values[i + 1]) for i in range(0, len(values), 2)])

    if not rows:
        raise ParameterError(f"coefficient table {path} is empty")
    return rows


def parse_float_list(text: str) -> List[float]:
    """Comma- or space-separated reals"""
    items = [item for item in re.split(r'[,\s]+', text.strip()) if item]
    if not items:
        raise ParameterError("expected at least one number")
    try:
        return [float(item) for item in items]
    except ValueError:
        raise ParameterError(f"invalid number list '{text}'")


def parse_int_list(text: str) -> List[int]:
    """Comma- or space-separated integers"""
    items = [item for item in re.split(r'[,\s]+', text.strip()) if item]
    if not items:
        raise ParameterError("expected at least one integer")
    try:
        return [int(item) for item in items]
    except ValueError:
        raise ParameterError(f"invalid integer list '{text}'")


def load_experiment_file(path: str) -> Dict[str, str]:
    """Flat KEY=VALUE experiment settings; unknown keys are rejected"""
    file_path = Path(path)
    if not file_path.is_file():
        raise ParameterError(f"experiment file not found: {path}")
    values = dotenv_values(file_path, encoding='utf-8')
    unknown = sorted(set(values) - EXPERIMENT_KEYS)
    if unknown:
        raise ParameterError(f"unknown keys in {path}: {', '.join(unknown)}")
    missing = [key for key, value in values.items() if value is None or value == '']
    if missing:
        raise ParameterError(f"empty values in {path}: {', '.join(missing)}")
    return dict(values)
