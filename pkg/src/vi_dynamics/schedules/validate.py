'''Check coefficient schedules against their admissibility conditions.

Pointwise conditions are evaluated on a finite grid and reported as
``numeric-pass`` together with the horizon they were checked to. Integral
and sum conditions are decided analytically for family schedules from
their decay exponents (``analytic-pass``); for custom schedules only a
finite-horizon partial value is reported, never an analytic claim.

Continuous conditions (identifiers used in reports):

- ``riccati_margin`` -- ``delta < (alpha1^2 + 2 alpha1') / 4``
- ``damping_margin`` -- ``2 alpha1 - 2 delta lam - C2 delta >= C1``
- ``lambda_bounded`` -- ``lam`` bounded above
- ``damping_monotone`` -- ``(alpha1 - delta lam)' <= 0``
- ``step_square_integrable`` -- ``int delta alpha0^2 < inf``
- ``step_divergent`` -- ``int delta alpha0 = inf``
- ``lambda_gamma`` -- ``lam gamma <= 1``, deferred to the coupled run
  unless ``lam`` is identically zero

Discrete conditions:

- ``contraction_margin`` --
  ``(beta1 - 1 + xi)(beta1 - 1 + (eta^2 + Q1) xi) <= 1 - Q2``
- ``eta_range`` -- ``-1 <= eta <= 0``
- ``momentum_decreasing`` -- ``beta1 - xi eta`` nonincreasing
- ``step_square_summable`` -- ``sum xi beta0^2 < inf``
- ``step_divergent`` -- ``sum xi beta0 = inf``
- ``coefficient_partition`` -- ``1 <= beta1 <= beta1 + xi <= 2``
- ``momentum_floor`` -- ``beta1 - xi eta >= Q2 / sqrt(1 + Q2)``

Attributes:
    SLACK: Rounding allowance on non-strict inequalities.
    FD_STEP: Finite-difference step for derivatives of custom schedules.
    DEFAULT_CONTINUOUS_SPAN: Default horizon is ``t0`` plus this.
    DEFAULT_DISCRETE_HORIZON: Default last index checked.
'''

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from .._errors import ConfigurationError
from .continuous import ContinuousSchedule, evaluate_many, integral_exponents
from .discrete import DiscreteSchedule, sum_exponents
from .terms import is_zero, on_grid

log = logging.getLogger(__name__)

SLACK = 1e-12
FD_STEP = 1e-4
DEFAULT_CONTINUOUS_SPAN = 1e3
DEFAULT_CONTINUOUS_GRID = 10_001
DEFAULT_DISCRETE_HORIZON = 10_000


class ConditionStatus(StrEnum):
    ANALYTIC_PASS = 'analytic-pass'
    NUMERIC_PASS = 'numeric-pass'
    DEFERRED = 'deferred'
    FAIL = 'fail'


@dataclass(frozen=True)
class ConditionCheck:
    '''Outcome of one condition.

    Attributes:
        condition: Condition identifier.
        status: How the condition was settled.
        detail: Human-readable explanation.
        location: First failing ``t`` or ``n``, for failures.
        horizon: Last ``t`` or ``n`` checked, for numeric results.
    '''

    condition: str
    status: ConditionStatus
    detail: str = ''
    location: float | None = None
    horizon: float | None = None

    def to_dict(self) -> dict:
        return {
            'condition': self.condition,
            'status': str(self.status),
            'detail': self.detail,
            'location': self.location,
            'horizon': self.horizon,
        }


@dataclass(frozen=True)
class ValidationReport:
    '''All checked conditions; ``satisfied`` iff none failed.'''

    checks: list[ConditionCheck]
    constants: dict[str, float] = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return not self.failures

    @property
    def failures(self) -> list[ConditionCheck]:
        return [c for c in self.checks if c.status is ConditionStatus.FAIL]

    def status_of(self, condition: str) -> ConditionStatus:
        for c in self.checks:
            if c.condition == condition:
                return c.status
        raise KeyError(condition)

    def to_dict(self) -> dict:
        return {
            'satisfied': self.satisfied,
            'constants': dict(self.constants),
            'checks': [c.to_dict() for c in self.checks],
        }


def _pointwise(condition: str, ok: np.ndarray, where: np.ndarray, horizon: float, what: str) -> ConditionCheck:
    if np.all(ok):
        return ConditionCheck(condition, ConditionStatus.NUMERIC_PASS, f'{what} on {where.size} points', horizon=horizon)
    first = float(where[np.argmin(ok)])
    return ConditionCheck(condition, ConditionStatus.FAIL, f'{what} fails first at {first:g}', location=first, horizon=horizon)


def _finite_difference(f, ts: np.ndarray, t0: float) -> np.ndarray:
    '''Central differences, forward where the stencil would precede ``t0``.'''
    h = FD_STEP
    plus = on_grid(f, ts + h)
    here = on_grid(f, ts)
    back = ts - h >= t0
    out = (plus - here) / h
    if np.any(back):
        minus = on_grid(f, ts[back] - h)
        out[back] = (plus[back] - minus) / (2 * h)
    return out


def _derivative(exact, f, ts: np.ndarray, t0: float) -> np.ndarray:
    return on_grid(exact, ts) if exact is not None else _finite_difference(f, ts, t0)


def riccati_margin(sched: ContinuousSchedule, ts: np.ndarray) -> np.ndarray:
    '''``(alpha1^2 + 2 alpha1') / 4 - delta`` on *ts*; positive where the margin holds.'''
    a1 = on_grid(sched.alpha1, ts)
    a1p = _derivative(sched.alpha1_prime, sched.alpha1, ts, sched.t0)
    return 0.25 * (a1 ** 2 + 2 * a1p) - on_grid(sched.delta, ts)


def _trapezoid(y: np.ndarray, x: np.ndarray) -> float:
    return float(np.sum(0.5 * (y[1:] + y[:-1]) * np.diff(x)))


def validate_continuous(
    sched: ContinuousSchedule,
    C1: float,
    C2: float,
    horizon: float | None = None,
    grid: int = DEFAULT_CONTINUOUS_GRID,
) -> ValidationReport:
    '''Check a continuous schedule on ``[t0, horizon]``.

    Args:
        sched: The schedule.
        C1, C2: Positive constants of the damping margin.
        horizon: Last time checked; defaults to ``t0 + 1e3``.
        grid: Number of uniform grid points, at least 2.

    Returns:
        A :class:`ValidationReport`. Failures are reported, not raised.

    Raises:
        ConfigurationError: If the arguments themselves are invalid.
    '''
    t0 = sched.t0
    horizon = t0 + DEFAULT_CONTINUOUS_SPAN if horizon is None else float(horizon)
    if sched.t_max is not None and horizon > sched.t_max - FD_STEP:
        horizon = sched.t_max - FD_STEP
        log.debug('tabulated schedule checked to t=%g only', horizon)
    if not horizon > t0:
        raise ConfigurationError(f'horizon must exceed t0={t0}, got {horizon}', key='horizon')
    if grid < 2:
        raise ConfigurationError(f'grid must be >= 2, got {grid}', key='grid')
    if not (C1 > 0 and C2 > 0):
        raise ConfigurationError(f'C1, C2 must be positive, got {C1}, {C2}', key='C1' if not C1 > 0 else 'C2')

    ts = np.linspace(t0, horizon, grid)
    v = evaluate_many(sched, ts)
    a0, a1, d, lam = v['alpha0'], v['alpha1'], v['delta'], v['lambda']
    a1p = _derivative(sched.alpha1_prime, sched.alpha1, ts, t0)
    dp = _derivative(sched.delta_prime, sched.delta, ts, t0)
    lamp = _derivative(sched.lam_prime, sched.lam, ts, t0)
    lam_zero = is_zero(sched.lam)
    family = sched.family is not None
    checks = []

    checks.append(_pointwise(
        'riccati_margin', d < 0.25 * (a1 ** 2 + 2 * a1p), ts, horizon, "delta < (alpha1^2 + 2 alpha1')/4"
    ))

    margin = 2 * a1 - 2 * d * lam - C2 * d
    checks.append(_pointwise(
        'damping_margin', margin >= C1 - SLACK * max(1.0, abs(C1)), ts, horizon,
        f'2 alpha1 - 2 delta lambda - {C2:g} delta >= {C1:g}',
    ))

    if lam_zero:
        checks.append(ConditionCheck('lambda_bounded', ConditionStatus.ANALYTIC_PASS, 'lambda is identically 0'))
    else:
        checks.append(_pointwise('lambda_bounded', np.isfinite(lam), ts, horizon, f'lambda finite (max {np.max(lam):g})'))

    if family and lam_zero:
        checks.append(ConditionCheck(
            'damping_monotone', ConditionStatus.ANALYTIC_PASS, 'alpha1 decreasing, lambda = 0'
        ))
    else:
        slope = a1p - dp * lam - d * lamp
        checks.append(_pointwise('damping_monotone', slope <= SLACK, ts, horizon, '(alpha1 - delta lambda)\' <= 0'))

    exps = integral_exponents(sched)
    if exps is not None:
        e2, e1 = exps
        checks.append(ConditionCheck(
            'step_square_integrable',
            ConditionStatus.ANALYTIC_PASS if e2 > 1 else ConditionStatus.FAIL,
            f'delta alpha0^2 decays like t^-{e2:g}',
        ))
        checks.append(ConditionCheck(
            'step_divergent',
            ConditionStatus.ANALYTIC_PASS if e1 <= 1 else ConditionStatus.FAIL,
            f'delta alpha0 decays like t^-{e1:g}',
        ))
    else:
        checks.append(ConditionCheck(
            'step_square_integrable', ConditionStatus.NUMERIC_PASS,
            f'finite-horizon only: integral to {horizon:g} = {_trapezoid(d * a0 ** 2, ts):.6g}', horizon=horizon,
        ))
        checks.append(ConditionCheck(
            'step_divergent', ConditionStatus.NUMERIC_PASS,
            f'finite-horizon only: integral to {horizon:g} = {_trapezoid(d * a0, ts):.6g}', horizon=horizon,
        ))

    if lam_zero:
        checks.append(ConditionCheck('lambda_gamma', ConditionStatus.ANALYTIC_PASS, 'lambda is identically 0'))
    else:
        checks.append(ConditionCheck(
            'lambda_gamma', ConditionStatus.DEFERRED,
            'lambda*gamma <= 1 is tracked along integrate_coupled_feasible',
        ))

    report = ValidationReport(checks=checks, constants={'C1': C1, 'C2': C2})
    log.debug('validated %s schedule to t=%g: %s', sched.family_name, horizon, 'ok' if report.satisfied else 'fail')
    return report


def validate_discrete(
    sched: DiscreteSchedule,
    Q1: float,
    Q2: float,
    horizon: int = DEFAULT_DISCRETE_HORIZON,
) -> ValidationReport:
    '''Check a discrete schedule for ``n = start .. horizon``.

    Tabulated schedules are checked up to their last entry when that comes
    before *horizon*.

    Raises:
        ConfigurationError: Unless ``0 < Q2 < 1``, ``Q1 > 0`` and
            ``horizon >= 2``.
    '''
    if not 0 < Q2 < 1:
        raise ConfigurationError(f'Q2 must lie in (0, 1), got {Q2}', key='Q2')
    if not Q1 > 0:
        raise ConfigurationError(f'Q1 must be > 0, got {Q1}', key='Q1')
    if horizon < 2:
        raise ConfigurationError(f'horizon must be >= 2, got {horizon}', key='horizon')
    last = int(horizon)
    if sched.length is not None and sched.length - 1 < last:
        last = sched.length - 1
        log.debug('tabulated schedule checked to n=%d only', last)

    n = np.arange(sched.start, last + 1)
    b0, b1, xi, eta = (on_grid(f, n) for f in (sched.beta0, sched.beta1, sched.xi, sched.eta))
    momentum = b1 - xi * eta
    checks = []

    product = (b1 - 1 + xi) * (b1 - 1 + (eta ** 2 + Q1) * xi)
    checks.append(_pointwise('contraction_margin', product <= 1 - Q2 + SLACK, n, last, f'contraction product <= {1 - Q2:.6g}'))
    checks.append(_pointwise('eta_range', (eta >= -1 - SLACK) & (eta <= 0), n, last, '-1 <= eta <= 0'))

    if n.size > 1:
        mono = np.concatenate([[True], np.diff(momentum) <= SLACK])
    else:
        mono = np.array([True])
    checks.append(_pointwise('momentum_decreasing', mono, n, last, 'beta1 - xi eta nonincreasing'))

    exps = sum_exponents(sched)
    if exps is not None:
        e2, e1 = exps
        checks.append(ConditionCheck(
            'step_square_summable',
            ConditionStatus.ANALYTIC_PASS if e2 > 1 else ConditionStatus.FAIL,
            f'xi beta0^2 decays like n^-{e2:g}',
        ))
        checks.append(ConditionCheck(
            'step_divergent',
            ConditionStatus.ANALYTIC_PASS if e1 <= 1 else ConditionStatus.FAIL,
            f'xi beta0 decays like n^-{e1:g}',
        ))
    else:
        checks.append(ConditionCheck(
            'step_square_summable', ConditionStatus.NUMERIC_PASS,
            f'finite-horizon only: partial sum to {last} = {float(np.sum(xi * b0 ** 2)):.6g}', horizon=last,
        ))
        checks.append(ConditionCheck(
            'step_divergent', ConditionStatus.NUMERIC_PASS,
            f'finite-horizon only: partial sum to {last} = {float(np.sum(xi * b0)):.6g}', horizon=last,
        ))

    partition = (b1 >= 1 - SLACK) & (xi >= 0) & (b1 + xi <= 2 + SLACK)
    checks.append(_pointwise('coefficient_partition', partition, n, last, '1 <= beta1 <= beta1 + xi <= 2'))

    floor = Q2 / math.sqrt(1 + Q2)
    checks.append(_pointwise('momentum_floor', momentum >= floor - SLACK, n, last, f'beta1 - xi eta >= {floor:.6g}'))

    report = ValidationReport(checks=checks, constants={'Q1': Q1, 'Q2': Q2})
    log.debug('validated %s schedule to n=%d: %s', sched.family_name, last, 'ok' if report.satisfied else 'fail')
    return report
