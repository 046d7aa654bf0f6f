'''Feasibility-preserving integration of the coupled reformulation.

With ``gamma`` from the Riccati equation and ``mu = delta / gamma``:

    x' = gamma (u - x),    u' = mu (y - u),    x(t0) = x0,  u(t0) = x1

Each explicit step ``x+ = x + h gamma (u - x)``, ``u+ = u + h mu (y - u)`` is
a convex combination of points of Omega as long as ``h max(gamma, mu) <= 1``,
so ``x`` and ``u`` never leave Omega. ``x`` solves the same second-order
system with the quarter-convention velocity.
'''

from __future__ import annotations

import logging

import numpy as np

from .._errors import ConfigurationError, DivergenceError
from ..problems import Point, ProblemInstance, natural_residual, normalized_forward_step, require_feasible
from ..schedules import ContinuousSchedule
from ._steppers import convex_step
from .config import IntegratorConfig
from .riccati import integrate_riccati
from .trajectory import ContinuousTrajectory, CoupledState, TrajectorySample

log = logging.getLogger(__name__)

CAP_SLACK = 1e-12


def integrate_coupled_feasible(
    prob: ProblemInstance,
    sched: ContinuousSchedule,
    x0: Point,
    x1: Point,
    cfg: IntegratorConfig | None = None,
) -> ContinuousTrajectory:
    '''Co-integrate ``gamma`` and the coupled system on one fixed grid.

    ``lam(t) gamma(t)`` is tracked along the run; the damped base point is
    feasible while it stays at most 1, and a warning is logged the first
    time it does not.

    Raises:
        ConditionError: If the Riccati margin or bound fails.
        ConfigurationError: If ``h max(gamma, mu) <= 1`` cannot hold with
            ``cfg.step``.
        DivergenceError: If the state becomes non-finite.
    '''
    cfg = cfg or IntegratorConfig()
    x0 = require_feasible(prob, x0, 'x0')
    x1 = require_feasible(prob, x1, 'x1')
    d = prob.dimension

    table = integrate_riccati(sched, sched.t0, cfg.t_end, cfg.step)
    ts = table.times
    h = np.diff(ts)
    rate = np.maximum(table.gamma, table.mu)
    worst = np.maximum(h * rate[:-1], h * rate[1:])
    if np.any(worst > 1 + CAP_SLACK):
        k = int(np.argmax(worst > 1 + CAP_SLACK))
        cap = 1 / float(rate[k:k + 2].max())
        raise ConfigurationError(
            f'step {cfg.step:g} breaks h*max(gamma, mu) <= 1 at t={ts[k]:g}; need step <= {cap:.4g}',
            key='step',
        )

    warned = False

    def update(t: float, y: np.ndarray, hk: float) -> np.ndarray:
        nonlocal warned
        x, u = y[:d], y[d:]
        a0, _, _, lam = sched.at(t)
        g, mu = table.at(t), table.mu_at(t)
        if lam * g > 1 and not warned:
            log.warning('lambda*gamma = %.4f > 1 at t=%g; damped base point may leave the set', lam * g, t)
            warned = True
        base = x + lam * g * (u - x) if lam else x
        yv = normalized_forward_step(prob, base, a0)
        return np.concatenate([(1 - hk * g) * x + hk * g * u, (1 - hk * mu) * u + hk * mu * yv])

    def record(k: int, y: np.ndarray) -> TrajectorySample:
        x, u = y[:d].copy(), y[d:].copy()
        g = float(table.gamma[k])
        return TrajectorySample(
            state=CoupledState(float(ts[k]), x, u, g),
            residual=natural_residual(prob, x),
            feas_violation=prob.set.violation(x),
            speed=g * float(np.linalg.norm(u - x)),
        )

    last = ts.size - 1
    traj = ContinuousTrajectory(kind='coupled', step=cfg.step, method=cfg.method)
    y = np.concatenate([x0, x1])
    traj.samples.append(record(0, y))
    for k in range(last):
        y_next = convex_step(cfg.method, update, ts[k], y, h[k])
        if not np.all(np.isfinite(y_next)):
            raise DivergenceError(
                f'non-finite state after t={ts[k]:g}',
                last_valid=float(ts[k]),
                state=CoupledState(float(ts[k]), y[:d].copy(), y[d:].copy(), float(table.gamma[k])),
            )
        y = y_next
        if cfg.recorded(k + 1, last):
            traj.samples.append(record(k + 1, y))

    log.debug('coupled run to t=%g: max violation %.3e', ts[-1], float(traj.violations.max()))
    return traj
