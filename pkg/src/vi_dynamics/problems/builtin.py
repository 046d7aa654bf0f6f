'''Bundled problem instances.

Attributes:
    SEC5_MATRIX: The 3x3 matrix of the unit-ball benchmark. Its symmetric
        part is positive semidefinite and its null space is spanned by
        ``(1, 0, -1)``, so the solution set is a segment through 0.
    SEC5_X0, SEC5_X1, SEC5_VELOCITY: Starting data of the benchmark runs.
    REMARK_X0: Start of the one-dimensional counterexample (``x0 = x1 = 2``).
    BUILTIN_PROBLEMS: Factory per built-in id.
'''

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from .._errors import ConfigurationError
from .instance import ProblemInstance
from .operators import constant_operator, identity_operator, linear_operator
from .sets import Interval, unit_ball

SEC5_MATRIX = np.array([
    [1.0, -2.0, 1.0],
    [3.0, 1.0, 3.0],
    [1.0, -2.0, 1.0],
])
SEC5_X0 = np.array([1.0, 0.0, 0.0])
SEC5_X1 = np.array([0.0, 1.0, 0.0])
SEC5_VELOCITY = np.array([-0.75, 0.75, 0.0])
REMARK_X0 = np.array([2.0])


def sec5_problem() -> ProblemInstance:
    '''``U(x) = A x`` on the closed unit ball of R^3, solution 0.'''
    return ProblemInstance(
        operator=linear_operator(SEC5_MATRIX, name='sec5-matrix'),
        set=unit_ball(3),
        reference_solution=np.zeros(3),
        name='paper-sec5',
    )


def remark_problem() -> ProblemInstance:
    '''Constant ``U = 1`` on ``[1, 2]``.

    With a large enough step the smoothing point is ``P(x - alpha0) = 1``
    for every reachable ``x``, which is the constant target of the
    counterexample flow.
    '''
    return ProblemInstance(
        operator=constant_operator([1.0], name='unit-constant'),
        set=Interval(1.0, 2.0),
        reference_solution=np.array([1.0]),
        name='remark-counterexample',
    )


def identity_ball_problem(dimension: int = 3) -> ProblemInstance:
    '''Identity operator on the unit ball; the unique solution is 0.'''
    return ProblemInstance(
        operator=identity_operator(dimension),
        set=unit_ball(dimension),
        reference_solution=np.zeros(dimension),
        name='identity-ball',
    )


BUILTIN_PROBLEMS: dict[str, Callable[[], ProblemInstance]] = {
    'paper-sec5': sec5_problem,
    'remark-counterexample': remark_problem,
    'identity-ball': identity_ball_problem,
}


def builtin_problem(name: str) -> ProblemInstance:
    '''Look up a bundled problem by id.

    Raises:
        ConfigurationError: For an unknown id.
    '''
    try:
        factory = BUILTIN_PROBLEMS[name]
    except KeyError:
        known = ', '.join(sorted(BUILTIN_PROBLEMS))
        raise ConfigurationError(f'unknown problem {name!r} (known: {known})', key='problem') from None
    return factory()


def default_starts(prob: ProblemInstance) -> tuple[np.ndarray, np.ndarray]:
    '''Starting pair ``(x0, x1)`` used when a run gives none.'''
    if prob.name == 'paper-sec5':
        return SEC5_X0.copy(), SEC5_X1.copy()
    if prob.name == 'remark-counterexample':
        return REMARK_X0.copy(), REMARK_X0.copy()
    x0 = np.zeros(prob.dimension)
    x0[0] = 1.0
    x0 = prob.set.project(x0)
    return x0, x0.copy()
