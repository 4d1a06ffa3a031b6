"""
Helper functions for output files
"""
import json
import logging
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


def utc_timestamp() -> str:
    """Current UTC time, ISO 8601"""
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def ensure_output_dir(path: Union[str, Path]) -> Path:
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, enums and complex numbers for json.dumps"""
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        number = float(value)
        return number if math.isfinite(number) else None
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': float(value.real), 'im': float(value.imag)}
    if hasattr(value, 'value') and hasattr(value, 'name'):
        return value.value
    return value


def write_csv(rows: Union[pd.DataFrame, Iterable[Dict[str, Any]]], path: Union[str, Path], columns=None) -> Path:
    """Write rows (dicts or a DataFrame) as CSV with a header row"""
    frame = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(list(rows), columns=columns)
    path = Path(path)
    ensure_output_dir(path.parent)
    frame.to_csv(path, index=False)
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_summary(path: Union[str, Path], config: Dict[str, Any], results: Any, diagnostics: Dict[str, Any]) -> Path:
    """JSON summary {config, results, diagnostics}; config carries the resolved settings and seed"""
    path = Path(path)
    ensure_output_dir(path.parent)
    payload = {
        'config': to_jsonable(config),
        'results': to_jsonable(results),
        'diagnostics': to_jsonable({**diagnostics, 'created_at': utc_timestamp()}),
    }
    path.write_text(json.dumps(payload, indent=2), encoding='utf-8')
    logger.info(f"Wrote summary to {path}")
    return path
