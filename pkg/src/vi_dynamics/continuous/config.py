'''Integrator settings and the fixed time grid.

Attributes:
    METHODS: Accepted integration methods.
    VELOCITY_MODES: How the initial velocity of the second-order system is
        obtained: from ``x1`` by the quarter convention
        ``x'(t0) = alpha1(t0) (x1 - x0) / 4``, or given explicitly.
'''

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .._errors import ConfigurationError

METHODS = ('rk4', 'euler')
VELOCITY_MODES = ('quarter_convention', 'explicit')


@dataclass(frozen=True)
class IntegratorConfig:
    '''Fixed-step integration settings.

    Attributes:
        step: Step size h.
        t_end: Final time.
        method: ``'rk4'`` or ``'euler'``. For the convex-combination schemes
            (coupled and first-order) ``'rk4'`` selects the two-stage
            strong-stability-preserving scheme built from convex Euler stages.
        record_every: Keep every k-th step (the final step is always kept).
        velocity_mode: ``'quarter_convention'`` or ``'explicit'``.
    '''

    step: float = 1e-2
    t_end: float = 50.0
    method: Literal['rk4', 'euler'] = 'rk4'
    record_every: int = 1
    velocity_mode: Literal['quarter_convention', 'explicit'] = 'quarter_convention'

    def __post_init__(self) -> None:
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ConfigurationError(f'step must be > 0, got {self.step}', key='step')
        if not math.isfinite(self.t_end):
            raise ConfigurationError(f't_end must be finite, got {self.t_end}', key='t_end')
        if self.method not in METHODS:
            raise ConfigurationError(f'method must be one of {METHODS}, got {self.method!r}', key='method')
        if self.record_every < 1:
            raise ConfigurationError(f'record_every must be >= 1, got {self.record_every}', key='record_every')
        if self.velocity_mode not in VELOCITY_MODES:
            raise ConfigurationError(
                f'velocity_mode must be one of {VELOCITY_MODES}, got {self.velocity_mode!r}',
                key='velocity_mode',
            )

    def grid(self, t0: float) -> np.ndarray:
        '''Step times ``t0, t0 + h, ..., t_end``; the last step may be shorter.

        Raises:
            ConfigurationError: If ``t_end <= t0``.
        '''
        return time_grid(t0, self.t_end, self.step)

    def recorded(self, k: int, last: int) -> bool:
        return k % self.record_every == 0 or k == last


def time_grid(t0: float, t_end: float, step: float) -> np.ndarray:
    '''Uniform grid from *t0* to *t_end* with spacing *step*, end point included.'''
    if not t_end > t0:
        raise ConfigurationError(f't_end must exceed t0={t0}, got {t_end}', key='t_end')
    n = max(1, math.ceil((t_end - t0) / step - 1e-9))
    ts = t0 + step * np.arange(n + 1, dtype=float)
    ts[-1] = t_end
    return ts
