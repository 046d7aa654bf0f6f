'''States and recorded trajectories of the continuous-time integrators.'''

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import polars as pl

from ..problems import Point


@dataclass(frozen=True)
class SecondOrderState:
    '''``(x, x')`` at time ``t``.'''

    t: float
    x: Point
    v: Point


@dataclass(frozen=True)
class CoupledState:
    '''``(x, u, gamma)`` at time ``t``; ``x' = gamma (u - x)``.'''

    t: float
    x: Point
    u: Point
    gamma: float


@dataclass(frozen=True)
class FirstOrderState:
    t: float
    x: Point


@dataclass(frozen=True)
class TrajectorySample:
    '''One recorded point of a trajectory.

    Attributes:
        state: The integrator state.
        residual: Natural residual at ``state.x``.
        feas_violation: Membership violation of ``state.x``.
        speed: ``||x'(t)||``.
    '''

    state: SecondOrderState | CoupledState | FirstOrderState
    residual: float
    feas_violation: float
    speed: float

    @property
    def t(self) -> float:
        return self.state.t


@dataclass
class ContinuousTrajectory:
    '''Recorded samples of one integration run, in increasing time.

    Attributes:
        samples: The recorded samples.
        kind: ``'second-order'``, ``'coupled'`` or ``'first-order'``.
        step: Step size used.
        method: Integration method used.
        stop_reason: Always ``'t_end'`` for a completed run.
    '''

    samples: list[TrajectorySample] = field(default_factory=list)
    kind: str = 'second-order'
    step: float = 0.0
    method: str = 'rk4'
    stop_reason: str = 't_end'

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def positions(self) -> np.ndarray:
        '''``x`` of every sample as rows.'''
        return np.array([s.state.x for s in self.samples])

    @property
    def residuals(self) -> np.ndarray:
        return np.array([s.residual for s in self.samples])

    @property
    def violations(self) -> np.ndarray:
        return np.array([s.feas_violation for s in self.samples])

    @property
    def speeds(self) -> np.ndarray:
        return np.array([s.speed for s in self.samples])

    @property
    def final(self) -> SecondOrderState | CoupledState | FirstOrderState:
        return self.samples[-1].state

    @property
    def index_name(self) -> str:
        return 't'

    def to_frame(self, dimension: int | None = None) -> pl.DataFrame:
        '''Columns ``t, x_1..x_d, residual, feas_violation, speed``.

        *dimension* fixes the ``x_i`` columns of an empty trajectory.
        '''
        d = len(self.samples[0].state.x) if self.samples else (dimension or 0)
        xs = self.positions.reshape(len(self.samples), d)
        return pl.DataFrame({
            't': pl.Series(self.times, dtype=pl.Float64),
            **{f'x_{i + 1}': pl.Series(xs[:, i], dtype=pl.Float64) for i in range(d)},
            'residual': pl.Series(self.residuals, dtype=pl.Float64),
            'feas_violation': pl.Series(self.violations, dtype=pl.Float64),
            'speed': pl.Series(self.speeds, dtype=pl.Float64),
        })
