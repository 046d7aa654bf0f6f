'''The second-order smoothed system and its fixed-step integration.

    x'' + alpha1(t) x' = delta(t) (y(t) - x)
    y(t) = P(x + lam x' - alpha0 / max{1, ||U(x + lam x')||} U(x + lam x'))

integrated as the first-order system ``(x, v)' = (v, -alpha1 v + delta (y - x))``.
Feasibility is recorded, not enforced: the trajectory stays in Omega only
when the schedule satisfies its Riccati margin.
'''

from __future__ import annotations

import logging

import numpy as np

from .._errors import ConfigurationError, DivergenceError
from ..problems import (
    Point,
    ProblemInstance,
    as_point,
    natural_residual,
    normalized_forward_step,
    require_feasible,
)
from ..schedules import ContinuousSchedule
from ._steppers import STEPPERS
from .config import IntegratorConfig
from .trajectory import ContinuousTrajectory, SecondOrderState, TrajectorySample

log = logging.getLogger(__name__)


def smoothing_point(
    prob: ProblemInstance, sched: ContinuousSchedule, t: float, x: Point, v: Point
) -> Point:
    '''``y(t)``: the normalized forward step from the damped point ``x + lam(t) v``.'''
    a0, _, _, lam = sched.at(t)
    base = x + lam * v if lam else x
    return normalized_forward_step(prob, base, a0)


def rhs_second_order(
    prob: ProblemInstance, sched: ContinuousSchedule, t: float, state: SecondOrderState
) -> tuple[Point, Point]:
    '''``(dx, dv) = (v, -alpha1 v + delta (y - x))``.'''
    _, a1, d, _ = sched.at(t)
    y = smoothing_point(prob, sched, t, state.x, state.v)
    return state.v.copy(), -a1 * state.v + d * (y - state.x)


def quarter_velocity(sched: ContinuousSchedule, x0: Point, x1: Point) -> Point:
    '''``x'(t0) = alpha1(t0) (x1 - x0) / 4``.'''
    _, a1, _, _ = sched.at(sched.t0)
    return 0.25 * a1 * (x1 - x0)


def integrate_second_order(
    prob: ProblemInstance,
    sched: ContinuousSchedule,
    x0: Point,
    x1: Point | None = None,
    cfg: IntegratorConfig | None = None,
    velocity: Point | None = None,
) -> ContinuousTrajectory:
    '''Integrate the second-order system from ``t0`` to ``cfg.t_end``.

    The initial velocity is *velocity* when given; otherwise it follows the
    quarter convention from *x1*.

    Args:
        prob: The problem.
        sched: Coefficient schedule; validating it is the caller's job.
        x0: Initial point, in Omega.
        x1: Second point for the quarter convention, in Omega.
        cfg: Step, end time, method and recording cadence.
        velocity: Explicit initial velocity.

    Returns:
        The recorded trajectory.

    Raises:
        ConfigurationError: If neither *x1* nor *velocity* is given, or
            ``cfg.velocity_mode`` is ``'explicit'`` without a velocity.
        DivergenceError: If the state becomes non-finite.
    '''
    cfg = cfg or IntegratorConfig()
    x0 = require_feasible(prob, x0, 'x0')
    if velocity is not None:
        v0 = as_point(velocity, dimension=prob.dimension)
    elif cfg.velocity_mode == 'explicit':
        raise ConfigurationError('velocity_mode is explicit but no velocity was given', key='velocity')
    elif x1 is None:
        raise ConfigurationError('the quarter convention needs x1', key='x1')
    else:
        v0 = quarter_velocity(sched, x0, require_feasible(prob, x1, 'x1'))

    d = prob.dimension
    ts = cfg.grid(sched.t0)
    last = ts.size - 1
    step = STEPPERS[cfg.method]

    def f(t: float, y: np.ndarray) -> np.ndarray:
        dx, dv = rhs_second_order(prob, sched, t, SecondOrderState(t, y[:d], y[d:]))
        return np.concatenate([dx, dv])

    def record(t: float, y: np.ndarray) -> TrajectorySample:
        x, v = y[:d].copy(), y[d:].copy()
        return TrajectorySample(
            state=SecondOrderState(t, x, v),
            residual=natural_residual(prob, x),
            feas_violation=prob.set.violation(x),
            speed=float(np.linalg.norm(v)),
        )

    traj = ContinuousTrajectory(kind='second-order', step=cfg.step, method=cfg.method)
    y = np.concatenate([x0, v0])
    traj.samples.append(record(ts[0], y))
    for k in range(last):
        y_next = step(f, ts[k], y, ts[k + 1] - ts[k])
        if not np.all(np.isfinite(y_next)):
            raise DivergenceError(
                f'non-finite state after t={ts[k]:g}',
                last_valid=float(ts[k]),
                state=SecondOrderState(float(ts[k]), y[:d].copy(), y[d:].copy()),
            )
        y = y_next
        if cfg.recorded(k + 1, last):
            traj.samples.append(record(ts[k + 1], y))

    log.debug(
        'second-order run to t=%g: %d samples, final residual %.3e',
        ts[-1], len(traj), traj.samples[-1].residual,
    )
    return traj
