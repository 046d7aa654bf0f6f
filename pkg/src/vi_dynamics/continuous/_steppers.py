'''Single fixed steps of explicit integrators on stacked state vectors.'''

from __future__ import annotations

from collections.abc import Callable

import numpy as np

Rhs = Callable[[float, np.ndarray], np.ndarray]
ConvexUpdate = Callable[[float, np.ndarray, float], np.ndarray]


def rk4_step(f: Rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    '''Classical four-stage Runge-Kutta step.'''
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def euler_step(f: Rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    return y + h * f(t, y)


STEPPERS: dict[str, Callable[[Rhs, float, np.ndarray, float], np.ndarray]] = {
    'rk4': rk4_step,
    'euler': euler_step,
}


def ssp2_step(update: ConvexUpdate, t: float, y: np.ndarray, h: float) -> np.ndarray:
    '''Two-stage strong-stability-preserving step.

    *update* is a forward Euler step ``update(t, y, h)``. The result is the
    average of ``y`` and two chained Euler stages, so any convex set kept
    invariant by *update* is kept invariant here too.
    '''
    stage = update(t, y, h)
    return 0.5 * (y + update(t + h, stage, h))


def convex_step(method: str, update: ConvexUpdate, t: float, y: np.ndarray, h: float) -> np.ndarray:
    '''Euler for ``'euler'``, the two-stage scheme for ``'rk4'``.'''
    if method == 'euler':
        return update(t, y, h)
    return ssp2_step(update, t, y, h)
