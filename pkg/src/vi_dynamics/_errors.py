'''Exception hierarchy shared by every sub-package.

Each class derives from :class:`VIError` and from the builtin exception
that best describes it, so callers can catch either the package-specific
type or the generic one (``except ValueError`` keeps working for bad
definitions and rejected schedules).

The CLI maps these onto its exit codes:

- :class:`ConfigurationError` -- exit 1
- :class:`ScheduleError`, :class:`ConditionError` -- exit 2
- :class:`DivergenceError` -- exit 3
'''

from __future__ import annotations

from typing import Any


class VIError(Exception):
    '''Root of all errors raised by ``vi_dynamics``.'''


class DefinitionError(VIError, ValueError):
    '''A point, operator, feasible set, or problem is malformed.'''


class EvaluationError(VIError, ArithmeticError):
    '''A callback operator produced a non-finite value.'''


class ScheduleError(VIError, ValueError):
    '''A coefficient schedule was rejected or cannot be evaluated.

    Attributes:
        violations: The violated inequalities, written as they read
            (e.g. ``'h>2'``). Empty when the error is not a rejection.
    '''

    def __init__(self, message: str, violations: list[str] | None = None) -> None:
        super().__init__(message)
        self.violations = list(violations or [])


class UnsupportedError(VIError, TypeError):
    '''An operation that needs a schedule family got a custom schedule.'''


class ConditionError(VIError, ArithmeticError):
    '''A coefficient condition failed while integrating.

    Attributes:
        t: First time at which the condition failed.
    '''

    def __init__(self, message: str, t: float) -> None:
        super().__init__(message)
        self.t = t


class ConfigurationError(VIError, ValueError):
    '''A run or integrator configuration cannot be honoured.

    Attributes:
        key: Name of the offending configuration key, when there is one.
    '''

    def __init__(self, message: str, key: str | None = None) -> None:
        super().__init__(message)
        self.key = key


class DivergenceError(VIError, FloatingPointError):
    '''A trajectory or iteration produced a non-finite state.

    Attributes:
        last_valid: Time (continuous) or iteration index (discrete) of the
            last finite state.
        state: The last finite state.
    '''

    def __init__(self, message: str, last_valid: float, state: Any = None) -> None:
        super().__init__(message)
        self.last_valid = last_valid
        self.state = state


class OutputError(VIError, OSError):
    '''Writing an artifact failed; the message names the path.'''
