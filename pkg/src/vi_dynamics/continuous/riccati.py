'''The scalar Riccati equation behind the coupled reformulation.

    gamma' + alpha1 gamma = gamma^2 + delta,    gamma(t0) = alpha1(t0) / 4

Whenever ``delta < (alpha1^2 + 2 alpha1') / 4`` holds, the solution stays in
``(0, alpha1 / 2)``.
'''

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .._errors import ConditionError
from ..schedules import ContinuousSchedule
from ..schedules.validate import riccati_margin
from ._steppers import rk4_step
from .config import time_grid

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RiccatiTable:
    '''``gamma`` tabulated on a time grid, with ``alpha1`` and ``delta`` alongside.'''

    times: np.ndarray
    gamma: np.ndarray
    alpha1: np.ndarray
    delta: np.ndarray

    @property
    def mu(self) -> np.ndarray:
        '''``mu = delta / gamma``.'''
        return self.delta / self.gamma

    def at(self, t: float) -> float:
        '''``gamma(t)``; exact at grid points, linear in between.'''
        return float(np.interp(t, self.times, self.gamma))

    def mu_at(self, t: float) -> float:
        return float(np.interp(t, self.times, self.mu))


def riccati_rhs(sched: ContinuousSchedule, t: float, gamma: np.ndarray) -> np.ndarray:
    _, a1, d, _ = sched.at(t)
    return gamma * gamma + d - a1 * gamma


def integrate_riccati(
    sched: ContinuousSchedule,
    t0: float | None = None,
    t_end: float = 100.0,
    step: float = 1e-2,
) -> RiccatiTable:
    '''RK4 solution of the Riccati equation on a uniform grid.

    Args:
        sched: Continuous schedule supplying ``alpha1`` and ``delta``.
        t0: Initial time; defaults to ``sched.t0``.
        t_end: Final time.
        step: Grid spacing.

    Returns:
        The tabulated solution.

    Raises:
        ConditionError: At the first grid time where the Riccati margin or
            the bound ``0 < gamma < alpha1 / 2`` fails.
    '''
    t0 = sched.t0 if t0 is None else t0
    ts = time_grid(t0, t_end, step)

    margin = riccati_margin(sched, ts)
    if np.any(margin <= 0):
        bad = float(ts[np.argmax(margin <= 0)])
        raise ConditionError(f'riccati margin fails at t={bad:g}', t=bad)

    a1 = np.array([sched.at(t)[1] for t in ts])
    d = np.array([sched.at(t)[2] for t in ts])
    gamma = np.empty_like(ts)
    gamma[0] = 0.25 * a1[0]
    g = np.array([gamma[0]])

    def f(t: float, y: np.ndarray) -> np.ndarray:
        return riccati_rhs(sched, t, y)

    for k in range(ts.size - 1):
        g = rk4_step(f, ts[k], g, ts[k + 1] - ts[k])
        gamma[k + 1] = g[0]

    bad = ~((gamma > 0) & (gamma < 0.5 * a1))
    if np.any(bad):
        t_bad = float(ts[np.argmax(bad)])
        raise ConditionError(f'gamma left (0, alpha1/2) at t={t_bad:g}', t=t_bad)

    log.debug('riccati on [%g, %g]: gamma from %.6f to %.6f', t0, ts[-1], gamma[0], gamma[-1])
    return RiccatiTable(times=ts, gamma=gamma, alpha1=a1, delta=d)
