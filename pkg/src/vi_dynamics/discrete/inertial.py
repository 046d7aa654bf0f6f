'''The inertial projection iteration.

    w(n)   = P(z(n) + eta(n) (z(n) - z(n-1)) - beta0(n) / max{1, ||U(.)||} U(.))
    z(n+1) = (2 - beta1 - xi) z(n) + (beta1 - 1) z(n-1) + xi w(n)

With ``1 <= beta1 <= beta1 + xi <= 2`` the three weights are nonnegative and
sum to one, so every iterate is a convex combination of points of Omega.
'''

from __future__ import annotations

import logging

import numpy as np

from .._errors import ScheduleError
from ..problems import Point, ProblemInstance, normalized_forward_step, require_feasible
from ..schedules import DiscreteSchedule
from .window import IterateWindow, RunResult, StopRule, drive

log = logging.getLogger(__name__)


def smoothing_point_discrete(prob: ProblemInstance, sched: DiscreteSchedule, window: IterateWindow) -> Point:
    '''``w(n)``: normalized forward step from ``z(n) + eta(n) (z(n) - z(n-1))``.'''
    b0, _, _, eta = sched.at(window.n)
    base = window.z_curr + eta * window.backward_difference if eta else window.z_curr
    return normalized_forward_step(prob, base, b0)


def step_weights(sched: DiscreteSchedule, n: int) -> tuple[float, float, float]:
    '''Weights of ``z(n)``, ``z(n-1)`` and ``w(n)``; they always sum to 1.'''
    _, b1, xi, _ = sched.at(n)
    return 2 - b1 - xi, b1 - 1, xi


def inertial_step(prob: ProblemInstance, sched: DiscreteSchedule, window: IterateWindow) -> Point:
    '''``z(n+1)`` from the window at *n*.'''
    a, b, c = step_weights(sched, window.n)
    w = smoothing_point_discrete(prob, sched, window)
    return a * window.z_curr + b * window.z_prev + c * w


def run_inertial(
    prob: ProblemInstance,
    sched: DiscreteSchedule,
    z0: Point,
    z1: Point,
    stop: StopRule | None = None,
    allow_positive_eta: bool = False,
) -> RunResult:
    '''Iterate :func:`inertial_step` from ``(z0, z1)``.

    Args:
        prob: The problem.
        sched: Coefficient sequences; validating them is the caller's job.
        z0, z1: Starting iterates, both in Omega.
        stop: Stopping rule and log cadence.
        allow_positive_eta: Accept ``eta(n) > 0`` (with a warning) instead
            of raising.

    Returns:
        The run log and final iterate.

    Raises:
        ScheduleError: On ``eta(n) > 0`` without *allow_positive_eta*, or a
            tabulated schedule running out.
        DivergenceError: If an iterate is non-finite.
    '''
    stop = stop or StopRule()
    z0 = require_feasible(prob, z0, 'z0')
    z1 = require_feasible(prob, z1, 'z1')
    warned = False

    def advance(window: IterateWindow) -> Point:
        nonlocal warned
        eta = float(sched.eta(window.n))
        if eta > 0:
            if not allow_positive_eta:
                raise ScheduleError(f'eta({window.n}) = {eta:g} > 0; pass allow_positive_eta to override')
            if not warned:
                log.warning('eta(%d) = %g > 0: iterates may leave the feasible set', window.n, eta)
                warned = True
        return inertial_step(prob, sched, window)

    return drive(prob, advance, IterateWindow(1, z0, z1), stop, method='inertial')


def difference_equation_residual(
    prob: ProblemInstance, sched: DiscreteSchedule, window: IterateWindow, z_next: Point
) -> float:
    '''``||z^{Delta Nabla}(n) + beta1 z^Nabla(n) - xi (w(n) - z(n))||``.

    Zero (up to rounding) exactly when *z_next* is the inertial step, the
    second-difference form of the same iteration.
    '''
    _, b1, xi, _ = sched.at(window.n)
    w = smoothing_point_discrete(prob, sched, window)
    second = z_next - 2 * window.z_curr + window.z_prev
    return float(np.linalg.norm(second + b1 * window.backward_difference - xi * (w - window.z_curr)))
