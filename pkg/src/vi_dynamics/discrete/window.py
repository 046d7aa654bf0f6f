'''Iteration state, stopping rule, run records, and the shared driver loop.

Both discrete methods advance a two-term window ``(z(n-1), z(n))`` and log
``(n, z, residual, feas_violation, step_norm)`` rows. Logging starts at
``n = 1``: for the inertial method that row holds ``z1`` and
``||z1 - z0||``; the direct method starts from ``x(1) = z0`` with step norm 0.

Attributes:
    STOP_REASONS: Values of :attr:`RunResult.stop_reason`.
    DENSE_LOG_UNTIL: With the default cadence every iteration is logged up to
        this index, then every ``SPARSE_LOG_EVERY``-th.
'''

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np
import polars as pl

from .._errors import ConfigurationError, DivergenceError
from ..problems import Point, ProblemInstance, natural_residual

log = logging.getLogger(__name__)

STOP_REASONS = ('tol', 'max_iters', 'stagnation')
DENSE_LOG_UNTIL = 1000
SPARSE_LOG_EVERY = 100


@dataclass(frozen=True)
class IterateWindow:
    '''``(z(n-1), z(n))`` at iteration *n*.'''

    n: int
    z_prev: Point
    z_curr: Point

    @property
    def backward_difference(self) -> Point:
        '''``z(n) - z(n-1)``.'''
        return self.z_curr - self.z_prev

    def advance(self, z_next: Point) -> IterateWindow:
        return IterateWindow(self.n + 1, self.z_curr, z_next)


@dataclass(frozen=True)
class StopRule:
    '''When to stop iterating and which iterations to log.

    Attributes:
        residual_tol: Stop once the natural residual is at most this.
        max_iters: Largest iteration index computed.
        stagnation_tol: Step-norm floor; 0 disables stagnation stops.
        stagnation_window: Consecutive steps below the floor needed to stop.
        record_every: Log cadence; None logs every step up to n=1000, then
            every 100th. The final iterate is always logged.
    '''

    residual_tol: float = 1e-6
    max_iters: int = 10**6
    stagnation_tol: float = 0.0
    stagnation_window: int = 1
    record_every: int | None = None

    def __post_init__(self) -> None:
        if self.residual_tol < 0:
            raise ConfigurationError(f'residual_tol must be >= 0, got {self.residual_tol}', key='residual_tol')
        if self.max_iters < 1:
            raise ConfigurationError(f'max_iters must be >= 1, got {self.max_iters}', key='max_iters')
        if self.stagnation_tol < 0:
            raise ConfigurationError(f'stagnation_tol must be >= 0, got {self.stagnation_tol}', key='stagnation_tol')
        if self.stagnation_window < 1:
            raise ConfigurationError(
                f'stagnation_window must be >= 1, got {self.stagnation_window}', key='stagnation_window'
            )
        if self.record_every is not None and self.record_every < 1:
            raise ConfigurationError(f'record_every must be >= 1, got {self.record_every}', key='record_every')

    def should_record(self, n: int) -> bool:
        if self.record_every is not None:
            return n % self.record_every == 0
        return n <= DENSE_LOG_UNTIL or n % SPARSE_LOG_EVERY == 0


@dataclass(frozen=True)
class IterateRecord:
    n: int
    z: Point
    residual: float
    feas_violation: float
    step_norm: float


@dataclass
class RunResult:
    '''Outcome of a discrete run.

    Attributes:
        records: Logged iterates in increasing ``n``.
        stop_reason: One of ``'tol'``, ``'max_iters'``, ``'stagnation'``.
        final: The last iterate.
        iterations: Index of the last iterate.
        final_residual: Natural residual of ``final``.
        method: ``'inertial'`` or ``'direct'``.
    '''

    records: list[IterateRecord] = field(default_factory=list)
    stop_reason: str = 'max_iters'
    final: Point | None = None
    iterations: int = 0
    final_residual: float = float('nan')
    method: str = 'inertial'

    def __len__(self) -> int:
        return len(self.records)

    @property
    def index_name(self) -> str:
        return 'n'

    @property
    def indices(self) -> np.ndarray:
        return np.array([r.n for r in self.records], dtype=int)

    @property
    def iterates(self) -> np.ndarray:
        return np.array([r.z for r in self.records])

    @property
    def residuals(self) -> np.ndarray:
        return np.array([r.residual for r in self.records])

    @property
    def violations(self) -> np.ndarray:
        return np.array([r.feas_violation for r in self.records])

    @property
    def step_norms(self) -> np.ndarray:
        return np.array([r.step_norm for r in self.records])

    def to_frame(self, dimension: int | None = None) -> pl.DataFrame:
        '''Columns ``n, z_1..z_d, residual, feas_violation, step_norm``.'''
        d = len(self.records[0].z) if self.records else (dimension or 0)
        zs = self.iterates.reshape(len(self.records), d)
        return pl.DataFrame({
            'n': pl.Series(self.indices, dtype=pl.Int64),
            **{f'z_{i + 1}': pl.Series(zs[:, i], dtype=pl.Float64) for i in range(d)},
            'residual': pl.Series(self.residuals, dtype=pl.Float64),
            'feas_violation': pl.Series(self.violations, dtype=pl.Float64),
            'step_norm': pl.Series(self.step_norms, dtype=pl.Float64),
        })


def drive(
    prob: ProblemInstance,
    advance: Callable[[IterateWindow], Point],
    window: IterateWindow,
    stop: StopRule,
    method: str,
) -> RunResult:
    '''Apply *advance* from *window* until *stop* triggers.

    Raises:
        DivergenceError: If an iterate is non-finite.
    '''
    result = RunResult(method=method)

    def record(w: IterateWindow, residual: float, step_norm: float) -> None:
        result.records.append(IterateRecord(
            n=w.n,
            z=w.z_curr.copy(),
            residual=residual,
            feas_violation=prob.set.violation(w.z_curr),
            step_norm=step_norm,
        ))

    residual = natural_residual(prob, window.z_curr)
    step_norm = float(np.linalg.norm(window.backward_difference))
    record(window, residual, step_norm)
    reason = 'tol' if residual <= stop.residual_tol else None
    if reason is None and window.n >= stop.max_iters:
        reason = 'max_iters'
    stagnant = 0

    while reason is None:
        z_next = advance(window)
        if not np.all(np.isfinite(z_next)):
            raise DivergenceError(
                f'non-finite iterate at n={window.n + 1}', last_valid=window.n, state=window.z_curr.copy()
            )
        window = window.advance(z_next)
        residual = natural_residual(prob, window.z_curr)
        step_norm = float(np.linalg.norm(window.backward_difference))

        if residual <= stop.residual_tol:
            reason = 'tol'
        elif stop.stagnation_tol > 0:
            stagnant = stagnant + 1 if step_norm <= stop.stagnation_tol else 0
            if stagnant >= stop.stagnation_window:
                reason = 'stagnation'
        if reason is None and window.n >= stop.max_iters:
            reason = 'max_iters'

        if reason is not None or stop.should_record(window.n):
            record(window, residual, step_norm)

    result.stop_reason = reason
    result.final = window.z_curr.copy()
    result.iterations = window.n
    result.final_residual = residual
    log.debug('%s run stopped (%s) at n=%d, residual %.3e', method, reason, window.n, residual)
    return result
