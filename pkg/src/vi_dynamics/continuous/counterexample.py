'''Closed form of the one-dimensional counterexample.

On ``Omega = [1, 2]`` with ``alpha1 = delta = 2`` and a smoothing point that
is identically 1, the second-order system started at ``x0 = x1 = 2`` has

    x(t) = 1 + exp(-t) (cos t + sin t),    x'(t) = -2 exp(-t) sin t

which drops below 1 on ``(3 pi / 4, 7 pi / 4)``, a superset of
``(pi, 3 pi / 2)``. The schedule violates the Riccati margin
(``2 >= 2^2 / 4``), so nothing keeps the trajectory feasible.
'''

from __future__ import annotations

import numpy as np

from ..schedules import ContinuousSchedule, constant_schedule
from .trajectory import ContinuousTrajectory

REMARK_ALPHA0 = 10.0
REMARK_ALPHA1 = 2.0
REMARK_DELTA = 2.0


def remark_schedule() -> ContinuousSchedule:
    '''Constant schedule ``alpha0 = 10``, ``alpha1 = delta = 2``, ``lam = 0``.

    With the constant operator ``U = 1`` on ``[1, 2]`` the large step makes
    the smoothing point ``P(x - 10) = 1`` everywhere the flow goes.
    '''
    return constant_schedule(REMARK_ALPHA0, REMARK_ALPHA1, REMARK_DELTA, 0.0)


def counterexample_oracle(t):
    '''``x(t) = 1 + exp(-t) (cos t + sin t)``; accepts floats and arrays.'''
    return 1.0 + np.exp(-np.asarray(t, dtype=float)) * (np.cos(t) + np.sin(t))


def counterexample_velocity(t):
    '''``x'(t) = -2 exp(-t) sin t``.'''
    return -2.0 * np.exp(-np.asarray(t, dtype=float)) * np.sin(t)


def oracle_deviation(traj: ContinuousTrajectory) -> float:
    '''Sup-norm distance between a one-dimensional trajectory and the closed form.'''
    xs = traj.positions[:, 0]
    return float(np.max(np.abs(xs - counterexample_oracle(traj.times))))
