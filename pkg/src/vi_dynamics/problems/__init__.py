'''Problem definitions: points, operators, feasible sets, and instances.

A :class:`ProblemInstance` pairs an operator U: R^d -> R^d with a closed
convex set Omega that has an exact Euclidean projection. The two shared
building blocks of every solver live here:

- :func:`normalized_forward_step` -- the projected step whose length is
  divided by ``max{1, ||U||}``.
- :func:`natural_residual` -- the solution-quality metric reported by
  every run.

Bundled instances are available through :func:`builtin_problem`; custom
ones load from JSON with :func:`load_problem`.
'''

from .builtin import BUILTIN_PROBLEMS, builtin_problem, default_starts
from .instance import (
    ProbeReport,
    ProblemInstance,
    distance_to_reference,
    monotonicity_probe,
    natural_residual,
    normalized_forward_step,
    require_feasible,
)
from .operators import (
    OperatorSpec,
    callback_operator,
    constant_operator,
    evaluate_operator,
    identity_operator,
    linear_operator,
    rotation_operator,
)
from .points import Point, as_point
from .read import load_problem, problem_from_dict
from .sets import (
    MEMBERSHIP_TOL,
    Ball,
    Box,
    FeasibleSet,
    Interval,
    Simplex,
    membership_violation,
    project,
    unit_ball,
)

__all__ = [
    'BUILTIN_PROBLEMS',
    'MEMBERSHIP_TOL',
    'Ball',
    'Box',
    'FeasibleSet',
    'Interval',
    'OperatorSpec',
    'Point',
    'ProbeReport',
    'ProblemInstance',
    'Simplex',
    'as_point',
    'builtin_problem',
    'callback_operator',
    'constant_operator',
    'default_starts',
    'distance_to_reference',
    'evaluate_operator',
    'identity_operator',
    'linear_operator',
    'load_problem',
    'membership_violation',
    'monotonicity_probe',
    'natural_residual',
    'normalized_forward_step',
    'problem_from_dict',
    'project',
    'require_feasible',
    'rotation_operator',
]
