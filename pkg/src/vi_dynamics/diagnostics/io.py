'''CSV and JSON artifacts.

CSV files are written by polars in scientific notation with 17 significant
digits, which reproduces every double exactly on re-read. A record with no
rows still produces its header line.

Summary JSON layout::

    {
      "config": {...},              # echo of the run configuration
      "final_index": 50.0,          # last t or n
      "final_point": [...],
      "final_residual": 1.2e-07,
      "iterations": 5000,           # integration steps or iteration index
      "kind": "continuous",         # or "discrete"
      "max_feas_violation": 0.0,
      "method": "second-order/rk4",
      "samples": 5001,
      "stop_reason": "t_end"        # or "tol", "max_iters", "stagnation"
    }
'''

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any

import polars as pl

from .._errors import OutputError
from ..continuous import ContinuousTrajectory
from ..discrete import RunResult

log = logging.getLogger(__name__)

FLOAT_PRECISION = 16


def as_frame(record: Any, dimension: int | None = None) -> pl.DataFrame:
    '''*record* as a DataFrame: frames pass through, records use ``to_frame``.'''
    if isinstance(record, pl.DataFrame):
        return record
    if isinstance(record, (ContinuousTrajectory, RunResult)):
        return record.to_frame(dimension)
    if hasattr(record, 'to_frame'):
        return record.to_frame()
    if hasattr(record, 'frame'):
        return record.frame
    raise TypeError(f'cannot tabulate {type(record).__name__}')


def write_csv(record: Any, path: Path | str, dimension: int | None = None) -> int:
    '''Write *record* to *path*, creating parent directories.

    Args:
        record: A trajectory, run result, energy diagnostics, comparison
            table, or DataFrame.
        path: Output file.
        dimension: Number of coordinate columns for an empty record.

    Returns:
        The number of data rows written.

    Raises:
        OutputError: If the file cannot be written.
    '''
    path = Path(path)
    df = as_frame(record, dimension)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        df.write_csv(path, float_scientific=True, float_precision=FLOAT_PRECISION)
    except OSError as exc:
        raise OutputError(f'cannot write {path}: {exc}') from exc
    log.debug('wrote %s (%d rows)', path, df.height)
    return df.height


def _iterations(record: ContinuousTrajectory | RunResult) -> int:
    if isinstance(record, RunResult):
        return record.iterations
    if len(record) < 2:
        return 0
    span = float(record.samples[-1].t - record.samples[0].t)
    return math.ceil(span / record.step - 1e-9)


def summarize(record: ContinuousTrajectory | RunResult, config: dict | None = None) -> dict[str, Any]:
    '''Summary of a run, in the layout written by :func:`write_summary_json`.'''
    if isinstance(record, ContinuousTrajectory):
        kind = 'continuous'
        method = f'{record.kind}/{record.method}'
        final_index = float(record.samples[-1].t) if record.samples else None
        final_point = record.samples[-1].state.x if record.samples else None
        final_residual = float(record.samples[-1].residual) if record.samples else None
    else:
        kind = 'discrete'
        method = record.method
        final_index = record.iterations
        final_point = record.final
        final_residual = record.final_residual
    violations = record.violations
    return {
        'config': dict(config or {}),
        'final_index': final_index,
        'final_point': None if final_point is None else [float(v) for v in final_point],
        'final_residual': final_residual,
        'iterations': _iterations(record),
        'kind': kind,
        'max_feas_violation': float(violations.max()) if violations.size else 0.0,
        'method': method,
        'samples': len(record),
        'stop_reason': record.stop_reason,
    }


def write_summary_json(result: ContinuousTrajectory | RunResult | dict, path: Path | str, config: dict | None = None) -> dict:
    '''Write the summary of *result* (or a ready summary dict) to *path*.

    Returns:
        The summary that was written.

    Raises:
        OutputError: If the file cannot be written.
    '''
    path = Path(path)
    summary = result if isinstance(result, dict) else summarize(result, config)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(summary, indent=2, sort_keys=True) + '\n')
    except OSError as exc:
        raise OutputError(f'cannot write {path}: {exc}') from exc
    return summary


def read_summary_json(path: Path | str) -> dict:
    return json.loads(Path(path).read_text())
