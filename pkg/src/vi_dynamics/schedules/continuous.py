'''Coefficient functions of the continuous-time system.

A :class:`ContinuousSchedule` holds ``alpha0`` (step), ``alpha1`` (damping),
``delta`` (attraction to the smoothing point) and ``lam`` (look-ahead of the
damped base point), each a function of ``t >= t0``.

Two power-law families come with their admissible parameter boxes:

- powerlawA: ``alpha0 = (t+1)^-q``, ``alpha1 = h + (t+1)^-s``,
  ``delta = (t+1)^-p``, ``lam = 0``; needs ``h > 2``, ``0 < s < 1/2``,
  ``s < p < 1``, ``(1-p)/2 < q <= 1-p``.
- powerlawB: as A with ``delta = u`` constant; needs ``h > 2 sqrt(u)``,
  ``0 < s < 1/2``, ``1/2 < q <= 1``, ``u > 0``.
'''

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .._errors import ScheduleError, UnsupportedError
from .terms import Constant, Interpolated, PowerTerm, on_grid

Coefficient = Callable[[float], float]


@dataclass(frozen=True)
class PowerLawA:
    h: float
    s: float
    p: float
    q: float
    name = 'powerlawA'


@dataclass(frozen=True)
class PowerLawB:
    h: float
    s: float
    q: float
    u: float
    name = 'powerlawB'


@dataclass(frozen=True, eq=False)
class ContinuousSchedule:
    '''Coefficient functions ``(alpha0, alpha1, delta, lam)`` over ``t >= t0``.

    Attributes:
        alpha0: Step function, positive.
        alpha1: Damping function, positive.
        delta: Attraction function, positive.
        lam: Look-ahead function, nonnegative.
        t0: Initial time.
        family: ``PowerLawA``/``PowerLawB`` tag, or None for custom schedules.
        alpha1_prime, delta_prime, lam_prime: Exact derivatives when known;
            the validator falls back to finite differences otherwise.
    '''

    alpha0: Coefficient
    alpha1: Coefficient
    delta: Coefficient
    lam: Coefficient
    t0: float = 0.0
    family: PowerLawA | PowerLawB | None = None
    alpha1_prime: Coefficient | None = None
    delta_prime: Coefficient | None = None
    lam_prime: Coefficient | None = None

    @property
    def family_name(self) -> str:
        return self.family.name if self.family is not None else 'custom'

    @property
    def t_max(self) -> float | None:
        '''End of the tabulated range, or None when every coefficient is unbounded.'''
        ends = [
            float(f.knots[-1])
            for f in (self.alpha0, self.alpha1, self.delta, self.lam)
            if isinstance(f, Interpolated)
        ]
        return min(ends) if ends else None

    def at(self, t: float) -> tuple[float, float, float, float]:
        '''``(alpha0, alpha1, delta, lam)`` at *t*, sign-checked.

        Raises:
            ScheduleError: If *t* precedes ``t0`` or a value is non-finite
                or of the wrong sign.
        '''
        if t < self.t0 - 1e-12:
            raise ScheduleError(f'schedule queried at t={t} < t0={self.t0}')
        a0, a1, d, lam = (float(f(t)) for f in (self.alpha0, self.alpha1, self.delta, self.lam))
        if not all(math.isfinite(v) for v in (a0, a1, d, lam)):
            raise ScheduleError(f'non-finite coefficient at t={t}')
        if a0 <= 0 or a1 <= 0 or d <= 0 or lam < 0:
            raise ScheduleError(
                f'coefficient of wrong sign at t={t}: alpha0={a0}, alpha1={a1}, delta={d}, lambda={lam}'
            )
        return a0, a1, d, lam


def _check_t0(t0: float) -> None:
    if not t0 > -1:
        raise ScheduleError(f'power-law families need t0 > -1, got {t0}', violations=['t0>-1'])


def build_continuous_powerlawA(h: float, s: float, p: float, q: float, t0: float = 0.0) -> ContinuousSchedule:
    '''Power-law family with decaying ``delta = (t+1)^-p``.

    Raises:
        ScheduleError: Listing every violated inequality, e.g. ``'h>2'``.
    '''
    violations = []
    if not h > 2:
        violations.append('h>2')
    if not s > 0:
        violations.append('s>0')
    if not s < 0.5:
        violations.append('s<1/2')
    if not p > s:
        violations.append('p>s')
    if not p < 1:
        violations.append('p<1')
    if not q > (1 - p) / 2:
        violations.append('q>(1-p)/2')
    if not q <= 1 - p:
        violations.append('q<=1-p')
    if violations:
        raise ScheduleError(f'powerlawA rejected: {", ".join(violations)} fails', violations=violations)
    _check_t0(t0)

    alpha1 = PowerTerm(h, 1.0, 1.0, s)
    delta = PowerTerm(0.0, 1.0, 1.0, p)
    return ContinuousSchedule(
        alpha0=PowerTerm(0.0, 1.0, 1.0, q),
        alpha1=alpha1,
        delta=delta,
        lam=Constant(0.0),
        t0=t0,
        family=PowerLawA(h=h, s=s, p=p, q=q),
        alpha1_prime=alpha1.derivative,
        delta_prime=delta.derivative,
        lam_prime=Constant(0.0),
    )


def build_continuous_powerlawB(h: float, s: float, q: float, u: float, t0: float = 0.0) -> ContinuousSchedule:
    '''Power-law family with constant ``delta = u``.

    Raises:
        ScheduleError: Listing every violated inequality, e.g. ``'h>2*sqrt(u)'``.
    '''
    violations = []
    if not u > 0:
        violations.append('u>0')
    elif not h > 2 * math.sqrt(u):
        violations.append('h>2*sqrt(u)')
    if not s > 0:
        violations.append('s>0')
    if not s < 0.5:
        violations.append('s<1/2')
    if not q > 0.5:
        violations.append('q>1/2')
    if not q <= 1:
        violations.append('q<=1')
    if violations:
        raise ScheduleError(f'powerlawB rejected: {", ".join(violations)} fails', violations=violations)
    _check_t0(t0)

    alpha1 = PowerTerm(h, 1.0, 1.0, s)
    return ContinuousSchedule(
        alpha0=PowerTerm(0.0, 1.0, 1.0, q),
        alpha1=alpha1,
        delta=Constant(u),
        lam=Constant(0.0),
        t0=t0,
        family=PowerLawB(h=h, s=s, q=q, u=u),
        alpha1_prime=alpha1.derivative,
        delta_prime=Constant(0.0),
        lam_prime=Constant(0.0),
    )


def constant_schedule(
    alpha0: float, alpha1: float, delta: float, lam: float = 0.0, t0: float = 0.0
) -> ContinuousSchedule:
    '''Custom schedule with constant coefficients and zero derivatives.'''
    zero = Constant(0.0)
    return ContinuousSchedule(
        alpha0=Constant(alpha0),
        alpha1=Constant(alpha1),
        delta=Constant(delta),
        lam=Constant(lam),
        t0=t0,
        alpha1_prime=zero,
        delta_prime=zero,
        lam_prime=zero,
    )


def custom_continuous_schedule(
    alpha0: Coefficient,
    alpha1: Coefficient,
    delta: Coefficient,
    lam: Coefficient | None = None,
    t0: float = 0.0,
    *,
    alpha1_prime: Coefficient | None = None,
    delta_prime: Coefficient | None = None,
    lam_prime: Coefficient | None = None,
) -> ContinuousSchedule:
    '''Wrap arbitrary coefficient functions; ``lam`` defaults to zero.'''
    return ContinuousSchedule(
        alpha0=alpha0,
        alpha1=alpha1,
        delta=delta,
        lam=lam if lam is not None else Constant(0.0),
        t0=t0,
        alpha1_prime=alpha1_prime,
        delta_prime=delta_prime,
        lam_prime=lam_prime if lam is not None else Constant(0.0),
    )


def continuous_family_constants(sched: ContinuousSchedule) -> dict[str, float]:
    '''Damping-margin constants ``{C1, C2}`` for a family schedule.

    powerlawA gives ``C1 = 2h``, ``C2 = 2``. powerlawB gives ``C1 = h``,
    ``C2 = h/u``, which equals ``(h/u, h)`` at ``u = 1`` and keeps the
    margin ``2 alpha1 - C2 delta >= C1`` for every admissible ``u``.

    Raises:
        UnsupportedError: For custom schedules.
    '''
    fam = sched.family
    if isinstance(fam, PowerLawA):
        return {'C1': 2 * fam.h, 'C2': 2.0}
    if isinstance(fam, PowerLawB):
        return {'C1': fam.h, 'C2': fam.h / fam.u}
    raise UnsupportedError('family constants are only defined for powerlawA/powerlawB schedules')


def integral_exponents(sched: ContinuousSchedule) -> tuple[float, float] | None:
    '''Decay exponents of ``delta * alpha0**2`` and ``delta * alpha0`` for families.'''
    fam = sched.family
    if isinstance(fam, PowerLawA):
        return fam.p + 2 * fam.q, fam.p + fam.q
    if isinstance(fam, PowerLawB):
        return 2 * fam.q, fam.q
    return None


def evaluate_many(sched: ContinuousSchedule, ts: np.ndarray) -> dict[str, np.ndarray]:
    '''All four coefficients on a grid of times, keyed by name.'''
    return {
        'alpha0': on_grid(sched.alpha0, ts),
        'alpha1': on_grid(sched.alpha1, ts),
        'delta': on_grid(sched.delta, ts),
        'lambda': on_grid(sched.lam, ts),
    }
