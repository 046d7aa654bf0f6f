'''First-order projected baseline flow.

    x' = delta(t) (P(x - alpha(t) / max{1, ||U(x)||} U(x)) - x)

Integrated with convex Euler steps ``x+ = (1 - h delta) x + h delta y``, which
keep ``x`` in Omega when ``h delta <= 1``.
'''

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np

from .._errors import ConfigurationError, DivergenceError
from ..problems import Point, ProblemInstance, natural_residual, normalized_forward_step, require_feasible
from ..schedules import Constant
from ..schedules.terms import on_grid
from ._steppers import convex_step
from .config import IntegratorConfig
from .trajectory import ContinuousTrajectory, FirstOrderState, TrajectorySample

log = logging.getLogger(__name__)


def _as_coefficient(c: float | Callable[[float], float]) -> Callable[[float], float]:
    return c if callable(c) else Constant(float(c))


def integrate_first_order_baseline(
    prob: ProblemInstance,
    delta: float | Callable[[float], float],
    alpha: float | Callable[[float], float],
    x0: Point,
    cfg: IntegratorConfig | None = None,
    t0: float = 0.0,
) -> ContinuousTrajectory:
    '''Integrate the first-order baseline flow.

    Args:
        prob: The problem.
        delta: Attraction coefficient, constant or a function of time.
        alpha: Step coefficient, constant or a function of time.
        x0: Initial point, in Omega.
        cfg: Step, end time, method and recording cadence.
        t0: Initial time.

    Raises:
        ConfigurationError: If ``step * delta(t) > 1`` somewhere on the grid.
        DivergenceError: If the state becomes non-finite.
    '''
    cfg = cfg or IntegratorConfig()
    delta, alpha = _as_coefficient(delta), _as_coefficient(alpha)
    x = require_feasible(prob, x0, 'x0')
    ts = cfg.grid(t0)
    h = np.diff(ts)

    dv = on_grid(delta, ts)
    if np.any(dv <= 0) or np.any(on_grid(alpha, ts) < 0):
        raise ConfigurationError('baseline needs delta > 0 and alpha >= 0', key='delta')
    worst = np.maximum(h * dv[:-1], h * dv[1:])
    if np.any(worst > 1 + 1e-12):
        k = int(np.argmax(worst > 1 + 1e-12))
        raise ConfigurationError(
            f'step {cfg.step:g} breaks h*delta <= 1 at t={ts[k]:g}; need step <= {1 / dv[k:k + 2].max():.4g}',
            key='step',
        )

    def target(t: float, x: np.ndarray) -> np.ndarray:
        return normalized_forward_step(prob, x, float(alpha(t)))

    def update(t: float, x: np.ndarray, hk: float) -> np.ndarray:
        w = hk * float(delta(t))
        return (1 - w) * x + w * target(t, x)

    def record(t: float, x: np.ndarray) -> TrajectorySample:
        x = x.copy()
        return TrajectorySample(
            state=FirstOrderState(float(t), x),
            residual=natural_residual(prob, x),
            feas_violation=prob.set.violation(x),
            speed=float(delta(t)) * float(np.linalg.norm(target(t, x) - x)),
        )

    last = ts.size - 1
    traj = ContinuousTrajectory(kind='first-order', step=cfg.step, method=cfg.method)
    traj.samples.append(record(ts[0], x))
    for k in range(last):
        x_next = convex_step(cfg.method, update, ts[k], x, h[k])
        if not np.all(np.isfinite(x_next)):
            raise DivergenceError(
                f'non-finite state after t={ts[k]:g}',
                last_valid=float(ts[k]),
                state=FirstOrderState(float(ts[k]), x.copy()),
            )
        x = x_next
        if cfg.recorded(k + 1, last):
            traj.samples.append(record(ts[k + 1], x))

    log.debug('first-order run to t=%g: final residual %.3e', ts[-1], traj.samples[-1].residual)
    return traj
