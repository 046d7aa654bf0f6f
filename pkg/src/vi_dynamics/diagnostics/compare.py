'''Side-by-side runs of discrete methods on one problem.

Every configuration runs under the same :class:`StopRule`; a run that
raises is recorded as a failed row and the table is still produced.
Wall time is measured per run and kept out of :meth:`ComparisonTable.science_frame`.
'''

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import polars as pl

from .._errors import ConfigurationError, VIError
from ..discrete import RunResult, StopRule, run_direct_method, run_inertial
from ..problems import Point, ProblemInstance, default_starts
from ..schedules import DiscreteSchedule

log = logging.getLogger(__name__)

NOT_REACHED = 'not-reached'
FAILED = 'failed'


@dataclass(frozen=True, eq=False)
class MethodConfig:
    '''One run of a comparison.

    Attributes:
        method: ``'inertial'`` or ``'direct'``.
        schedule_id: Label of the schedule in the table.
        schedule: Coefficients of an inertial run.
        tau: Step exponent of a direct run.
        z0, z1: Starting iterates; the problem's defaults when None. The
            direct method starts from *z0*.
    '''

    method: Literal['inertial', 'direct']
    schedule_id: str
    schedule: DiscreteSchedule | None = None
    tau: float = 0.75
    z0: Point | None = None
    z1: Point | None = None

    def __post_init__(self) -> None:
        if self.method not in ('inertial', 'direct'):
            raise ConfigurationError(f'unknown method {self.method!r}', key='method')
        if self.method == 'inertial' and self.schedule is None:
            raise ConfigurationError('an inertial run needs a schedule', key='schedule')


@dataclass(frozen=True)
class ComparisonRow:
    '''Outcome of one configuration.

    Attributes:
        iters_to_tol: Iterations needed to reach the tolerance, or None.
        status: ``'reached'``, ``'not-reached'`` or ``'failed'``.
        error: Error message of a failed run.
        run: The run itself, None when it failed.
    '''

    method: str
    schedule: str
    iters_to_tol: int | None
    final_residual: float
    wall_ms: float
    status: str
    error: str | None = None
    run: RunResult | None = field(default=None, repr=False)

    @property
    def iters_label(self) -> str:
        if self.status == 'reached':
            return str(self.iters_to_tol)
        return self.status


@dataclass
class ComparisonTable:
    rows: list[ComparisonRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pl.DataFrame:
        '''Columns ``method, schedule, iters_to_tol, final_residual, wall_ms``.'''
        return pl.DataFrame(
            {
                'method': [r.method for r in self.rows],
                'schedule': [r.schedule for r in self.rows],
                'iters_to_tol': [r.iters_label for r in self.rows],
                'final_residual': [r.final_residual for r in self.rows],
                'wall_ms': [r.wall_ms for r in self.rows],
            },
            schema={
                'method': pl.Utf8,
                'schedule': pl.Utf8,
                'iters_to_tol': pl.Utf8,
                'final_residual': pl.Float64,
                'wall_ms': pl.Float64,
            },
        )

    def science_frame(self) -> pl.DataFrame:
        ''':meth:`to_frame` without the wall-time column.'''
        return self.to_frame().drop('wall_ms')

    def reached(self, method: str) -> list[ComparisonRow]:
        return [r for r in self.rows if r.method == method and r.status == 'reached']


def _run_one(prob: ProblemInstance, cfg: MethodConfig, stop: StopRule) -> ComparisonRow:
    z0, z1 = default_starts(prob)
    z0 = z0 if cfg.z0 is None else cfg.z0
    z1 = z1 if cfg.z1 is None else cfg.z1
    start = time.perf_counter()
    try:
        if cfg.method == 'inertial':
            run = run_inertial(prob, cfg.schedule, z0, z1, stop)
        else:
            run = run_direct_method(prob, cfg.tau, z0, stop)
    except VIError as exc:
        wall_ms = 1e3 * (time.perf_counter() - start)
        log.warning('%s run %s failed: %s', cfg.method, cfg.schedule_id, exc)
        return ComparisonRow(cfg.method, cfg.schedule_id, None, float('nan'), wall_ms, FAILED, str(exc))
    wall_ms = 1e3 * (time.perf_counter() - start)
    reached = run.stop_reason == 'tol'
    return ComparisonRow(
        method=cfg.method,
        schedule=cfg.schedule_id,
        iters_to_tol=run.iterations if reached else None,
        final_residual=run.final_residual,
        wall_ms=wall_ms,
        status='reached' if reached else NOT_REACHED,
        run=run,
    )


def compare_methods(
    prob: ProblemInstance,
    configs: list[MethodConfig],
    stop: StopRule,
    max_workers: int = 1,
) -> ComparisonTable:
    '''Run every configuration and tabulate iterations to ``stop.residual_tol``.

    Rows keep the order of *configs* whatever *max_workers* is.

    Raises:
        ConfigurationError: With fewer than two configurations.
    '''
    if len(configs) < 2:
        raise ConfigurationError(f'need at least 2 configurations, got {len(configs)}', key='configs')
    if max_workers < 1:
        raise ConfigurationError(f'max_workers must be >= 1, got {max_workers}', key='max_workers')
    if max_workers == 1:
        rows = [_run_one(prob, cfg, stop) for cfg in configs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            rows = list(pool.map(lambda cfg: _run_one(prob, cfg, stop), configs))
    return ComparisonTable(rows)
