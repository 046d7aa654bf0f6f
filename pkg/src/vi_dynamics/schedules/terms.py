'''Scalar coefficient terms usable on floats and numpy arrays.

- :class:`PowerTerm` -- ``base + coef * (t + shift) ** -exponent``, the
  building block of every power-law family, with its exact derivative.
- :class:`Constant` -- a constant function.
- :class:`Interpolated` -- piecewise-linear interpolation of a table over
  continuous time.
- :class:`Tabulated` -- a finite sequence indexed by ``n``.
'''

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._errors import ScheduleError


@dataclass(frozen=True)
class PowerTerm:
    '''``base + coef * (t + shift) ** -exponent``.'''

    base: float
    coef: float
    shift: float
    exponent: float

    def __call__(self, t):
        return self.base + self.coef * np.power(np.add(t, self.shift, dtype=float), -self.exponent)

    def derivative(self, t):
        return -self.exponent * self.coef * np.power(
            np.add(t, self.shift, dtype=float), -self.exponent - 1.0
        )


@dataclass(frozen=True)
class Constant:
    value: float

    def __call__(self, t):
        if np.ndim(t) == 0:
            return float(self.value)
        return np.full(np.shape(t), float(self.value))

    def derivative(self, t):
        return Constant(0.0)(t)


def is_zero(f) -> bool:
    '''True when *f* is the constant zero term.'''
    return isinstance(f, Constant) and f.value == 0.0


@dataclass(frozen=True, eq=False)
class Interpolated:
    '''Linear interpolation through ``(knots[i], values[i])``.

    Queries outside ``[knots[0], knots[-1]]`` raise :class:`ScheduleError`.
    '''

    knots: np.ndarray
    values: np.ndarray
    label: str = field(default='')

    def __post_init__(self) -> None:
        knots = np.asarray(self.knots, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if knots.ndim != 1 or knots.shape != values.shape or knots.size < 2:
            raise ScheduleError(f'{self.label or "table"} needs at least two matching knots and values')
        if np.any(np.diff(knots) <= 0):
            raise ScheduleError(f'{self.label or "table"} knots must be strictly increasing')
        if not np.all(np.isfinite(values)):
            raise ScheduleError(f'{self.label or "table"} has non-finite values')
        object.__setattr__(self, 'knots', knots)
        object.__setattr__(self, 'values', values)

    def __call__(self, t):
        lo, hi = self.knots[0], self.knots[-1]
        if np.any(np.asarray(t) < lo - 1e-12) or np.any(np.asarray(t) > hi + 1e-12):
            raise ScheduleError(f'{self.label or "table"} queried outside [{lo}, {hi}]')
        out = np.interp(t, self.knots, self.values)
        return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True, eq=False)
class Tabulated:
    '''A finite sequence ``values[n]`` for ``0 <= n < len(values)``.'''

    values: np.ndarray
    label: str = field(default='')

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ScheduleError(f'{self.label or "sequence"} must be a non-empty vector')
        if not np.all(np.isfinite(values)):
            raise ScheduleError(f'{self.label or "sequence"} has non-finite values')
        object.__setattr__(self, 'values', values)

    def __len__(self) -> int:
        return self.values.size

    def __call__(self, n):
        idx = np.asarray(n)
        if np.any(idx < 0) or np.any(idx >= self.values.size):
            raise ScheduleError(
                f'{self.label or "sequence"} is tabulated for n < {self.values.size}, queried n={n}'
            )
        out = self.values[idx.astype(int)]
        return float(out) if np.ndim(n) == 0 else out


def on_grid(f, grid: np.ndarray) -> np.ndarray:
    '''Evaluate *f* over *grid*, looping when *f* does not broadcast.'''
    try:
        out = np.asarray(f(grid), dtype=float)
        if out.shape == grid.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([f(v) for v in grid], dtype=float)
