'''Memoryless projected baseline with diminishing steps.

    x(n+1) = P(x(n) - beta0(n) / max{1, ||U(x(n))||} U(x(n))),  beta0(n) = 1/n^tau

The index starts at ``n = 1`` with ``x(1) = z0``.
'''

from __future__ import annotations

from ..problems import Point, ProblemInstance, normalized_forward_step, require_feasible
from ..schedules import direct_method_steps
from .window import IterateWindow, RunResult, StopRule, drive


def run_direct_method(prob: ProblemInstance, tau: float, z0: Point, stop: StopRule | None = None) -> RunResult:
    '''Run the direct method from *z0*.

    Raises:
        ScheduleError: Unless ``0.5 < tau <= 1``.
        DivergenceError: If an iterate is non-finite.
    '''
    stop = stop or StopRule()
    sched = direct_method_steps(tau)
    x1 = require_feasible(prob, z0, 'z0')

    def advance(window: IterateWindow) -> Point:
        return normalized_forward_step(prob, window.z_curr, float(sched.beta0(window.n)))

    return drive(prob, advance, IterateWindow(1, x1, x1.copy()), stop, method='direct')
