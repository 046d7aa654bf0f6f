'''Coefficient schedules and their validators.

Continuous schedules drive the second-order system, discrete schedules the
inertial iteration. Family builders reject parameters outside the
admissible box with a :class:`~vi_dynamics._errors.ScheduleError` listing
the violated inequalities; :func:`validate_continuous` and
:func:`validate_discrete` report every condition with how it was settled.
'''

from .continuous import (
    ContinuousSchedule,
    PowerLawA,
    PowerLawB,
    build_continuous_powerlawA,
    build_continuous_powerlawB,
    constant_schedule,
    continuous_family_constants,
    custom_continuous_schedule,
)
from .discrete import (
    DirectSteps,
    DiscreteSchedule,
    PowerLawD,
    build_discrete_powerlawD,
    custom_discrete_schedule,
    direct_method_steps,
    discrete_family_constants,
    omega_lower_bound,
)
from .read import read_continuous_schedule, read_discrete_schedule
from .terms import Constant, Interpolated, PowerTerm, Tabulated
from .validate import (
    ConditionCheck,
    ConditionStatus,
    ValidationReport,
    riccati_margin,
    validate_continuous,
    validate_discrete,
)

__all__ = [
    'ConditionCheck',
    'ConditionStatus',
    'Constant',
    'ContinuousSchedule',
    'DirectSteps',
    'DiscreteSchedule',
    'Interpolated',
    'PowerLawA',
    'PowerLawB',
    'PowerLawD',
    'PowerTerm',
    'Tabulated',
    'ValidationReport',
    'build_continuous_powerlawA',
    'build_continuous_powerlawB',
    'build_discrete_powerlawD',
    'constant_schedule',
    'continuous_family_constants',
    'custom_continuous_schedule',
    'custom_discrete_schedule',
    'direct_method_steps',
    'discrete_family_constants',
    'omega_lower_bound',
    'read_continuous_schedule',
    'read_discrete_schedule',
    'riccati_margin',
    'validate_continuous',
    'validate_discrete',
]
