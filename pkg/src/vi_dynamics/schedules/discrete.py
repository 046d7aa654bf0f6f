'''Coefficient sequences of the inertial iteration.

A :class:`DiscreteSchedule` holds ``beta0`` (step), ``beta1`` (inertia),
``xi`` (weight of the smoothing point) and ``eta`` (extrapolation of the
base point), each a sequence over ``n >= start``.

The powerlawD family::

    beta0(n) = (n + omega)^-q
    beta1(n) = 1 + deltaP / (n + omega)^p
    xi(n)    = (n + omega)^-p
    eta(n)   = -thetaP / (n + omega)^lambdaP

is admissible for ``0 < p < 1``, ``(1-p)/2 < q <= 1-p``, positive
``deltaP, thetaP, lambdaP`` and ``omega`` above
``max{(deltaP+1)^(1/p), thetaP^(1/lambdaP)}``.
'''

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from .._errors import ScheduleError, UnsupportedError
from .terms import Constant, PowerTerm, Tabulated

Term = Callable[[int], float]


@dataclass(frozen=True)
class PowerLawD:
    p: float
    q: float
    deltaP: float
    thetaP: float
    lambdaP: float
    omega: float
    name = 'powerlawD'


@dataclass(frozen=True)
class DirectSteps:
    '''Step sequence ``1 / n^tau`` of the memoryless projected method.'''

    tau: float
    name = 'direct'


@dataclass(frozen=True, eq=False)
class DiscreteSchedule:
    '''Coefficient sequences ``(beta0, beta1, xi, eta)``.

    Attributes:
        beta0, beta1, xi: Nonnegative sequences.
        eta: Real sequence; admissible schedules keep it in ``[-1, 0]``.
        family: ``PowerLawD``/``DirectSteps`` tag, or None for custom schedules.
        start: First valid index.
    '''

    beta0: Term
    beta1: Term
    xi: Term
    eta: Term
    family: PowerLawD | DirectSteps | None = None
    start: int = 0

    @property
    def family_name(self) -> str:
        return self.family.name if self.family is not None else 'custom'

    def at(self, n: int) -> tuple[float, float, float, float]:
        '''``(beta0, beta1, xi, eta)`` at index *n*, sign-checked.

        Raises:
            ScheduleError: If *n* precedes ``start``, is past the end of a
                tabulated sequence, or a value is non-finite or negative
                where it must not be.
        '''
        if n < self.start:
            raise ScheduleError(f'schedule queried at n={n} < {self.start}')
        b0, b1, xi, eta = (float(f(n)) for f in (self.beta0, self.beta1, self.xi, self.eta))
        if not all(math.isfinite(v) for v in (b0, b1, xi, eta)):
            raise ScheduleError(f'non-finite coefficient at n={n}')
        if b0 < 0 or b1 < 0 or xi < 0:
            raise ScheduleError(f'negative coefficient at n={n}: beta0={b0}, beta1={b1}, xi={xi}')
        return b0, b1, xi, eta

    @property
    def length(self) -> int | None:
        '''Number of tabulated entries, or None for unbounded sequences.'''
        sizes = [len(f) for f in (self.beta0, self.beta1, self.xi, self.eta) if isinstance(f, Tabulated)]
        return min(sizes) if sizes else None


def omega_lower_bound(p: float, deltaP: float, thetaP: float, lambdaP: float) -> float:
    '''``max{(deltaP+1)^(1/p), thetaP^(1/lambdaP)}``.'''
    return max((deltaP + 1) ** (1 / p), thetaP ** (1 / lambdaP))


def build_discrete_powerlawD(
    p: float,
    q: float,
    deltaP: float,
    thetaP: float,
    lambdaP: float,
    omega: float | None = None,
) -> DiscreteSchedule:
    '''Power-law inertial schedule; ``omega`` defaults to its lower bound + 1.

    Raises:
        ScheduleError: Listing every violated inequality.
    '''
    violations = []
    if not p > 0:
        violations.append('p>0')
    if not p < 1:
        violations.append('p<1')
    if not q > (1 - p) / 2:
        violations.append('q>(1-p)/2')
    if not q <= 1 - p:
        violations.append('q<=1-p')
    if not deltaP > 0:
        violations.append('deltaP>0')
    if not thetaP > 0:
        violations.append('thetaP>0')
    if not lambdaP > 0:
        violations.append('lambdaP>0')
    if violations:
        raise ScheduleError(f'powerlawD rejected: {", ".join(violations)} fails', violations=violations)

    bound = omega_lower_bound(p, deltaP, thetaP, lambdaP)
    if omega is None:
        omega = bound + 1
    elif not omega > bound:
        v = f'omega>{bound:g}'
        raise ScheduleError(f'powerlawD rejected: {v} fails (omega={omega})', violations=[v])

    return DiscreteSchedule(
        beta0=PowerTerm(0.0, 1.0, omega, q),
        beta1=PowerTerm(1.0, deltaP, omega, p),
        xi=PowerTerm(0.0, 1.0, omega, p),
        eta=PowerTerm(0.0, -thetaP, omega, lambdaP),
        family=PowerLawD(p=p, q=q, deltaP=deltaP, thetaP=thetaP, lambdaP=lambdaP, omega=omega),
    )


def discrete_family_constants(sched: DiscreteSchedule) -> dict[str, float]:
    '''``Q1 = 1 - (thetaP / omega^lambdaP)^2`` and ``Q2 = 1 - (deltaP+1) / omega^p``.

    Raises:
        UnsupportedError: Unless the schedule is a powerlawD schedule.
    '''
    fam = sched.family
    if not isinstance(fam, PowerLawD):
        raise UnsupportedError(f'{sched.family_name} schedule has no family constants; supply Q1, Q2')
    return {
        'Q1': 1 - (fam.thetaP / fam.omega ** fam.lambdaP) ** 2,
        'Q2': 1 - (fam.deltaP + 1) / fam.omega ** fam.p,
    }


def direct_method_steps(tau: float) -> DiscreteSchedule:
    '''Steps ``beta0(n) = 1/n^tau`` from ``n = 1``, no inertia and full weight.

    Raises:
        ScheduleError: Unless ``0.5 < tau <= 1``.
    '''
    if not 0.5 < tau <= 1:
        raise ScheduleError(f'direct method needs 0.5 < tau <= 1, got {tau}', violations=['1/2<tau<=1'])
    return DiscreteSchedule(
        beta0=PowerTerm(0.0, 1.0, 0.0, tau),
        beta1=Constant(1.0),
        xi=Constant(1.0),
        eta=Constant(0.0),
        family=DirectSteps(tau=tau),
        start=1,
    )


def custom_discrete_schedule(
    beta0: Term | Sequence[float] | np.ndarray,
    beta1: Term | Sequence[float] | np.ndarray,
    xi: Term | Sequence[float] | np.ndarray,
    eta: Term | Sequence[float] | np.ndarray,
) -> DiscreteSchedule:
    '''Build a custom schedule from callables or tabulated values.

    Array-like arguments become :class:`Tabulated` sequences; querying past
    their end raises :class:`ScheduleError`.
    '''
    def wrap(v, label: str) -> Term:
        if callable(v):
            return v
        if np.ndim(v) == 0:
            return Constant(float(v))
        return Tabulated(np.asarray(v, dtype=float), label=label)

    return DiscreteSchedule(
        beta0=wrap(beta0, 'beta0'),
        beta1=wrap(beta1, 'beta1'),
        xi=wrap(xi, 'xi'),
        eta=wrap(eta, 'eta'),
    )


def sum_exponents(sched: DiscreteSchedule) -> tuple[float, float] | None:
    '''Decay exponents of ``xi * beta0**2`` and ``xi * beta0`` for families.'''
    fam = sched.family
    if isinstance(fam, PowerLawD):
        return fam.p + 2 * fam.q, fam.p + fam.q
    if isinstance(fam, DirectSteps):
        return 2 * fam.tau, fam.tau
    return None
