'''Problem instances VI(U, Omega) and the quantities both solvers share.

- :func:`normalized_forward_step` -- ``P(base - alpha / max{1, ||U(base)||} U(base))``,
  the smoothing step behind both the continuous and the discrete methods.
- :func:`natural_residual` -- ``||x - P(x - U(x))||``, zero exactly on the
  solution set.
- :func:`monotonicity_probe` -- a seeded sampling falsifier for
  (para)monotonicity. Passing it is evidence, never proof.
'''

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .._errors import DefinitionError
from .operators import OperatorSpec, evaluate_operator
from .points import Point, as_point
from .sets import FeasibleSet

log = logging.getLogger(__name__)

REFERENCE_RESIDUAL_TOL = 1e-10
INNER_FLOOR = 1e-10
OPERATOR_DIFF_FLOOR = 1e-6
FEASIBILITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    '''An operator paired with a feasible set.

    Attributes:
        operator: The operator U.
        set: The feasible set Omega.
        reference_solution: A known solution, used for diagnostics only.
        name: Label used in logs and manifests.
    '''

    operator: OperatorSpec
    set: FeasibleSet
    reference_solution: Point | None = None
    name: str = ''

    def __post_init__(self) -> None:
        if self.operator.dimension != self.set.dimension:
            raise DefinitionError(
                f'operator dimension {self.operator.dimension} != set dimension {self.set.dimension}'
            )
        if self.reference_solution is None:
            return
        ref = as_point(self.reference_solution, dimension=self.dimension)
        object.__setattr__(self, 'reference_solution', ref)
        if not self.set.contains(ref):
            raise DefinitionError('reference solution lies outside the feasible set')
        residual = natural_residual(self, ref)
        if residual > REFERENCE_RESIDUAL_TOL:
            raise DefinitionError(f'reference solution has natural residual {residual:.3e}')

    @property
    def dimension(self) -> int:
        return self.operator.dimension


def normalized_forward_step(prob: ProblemInstance, base: Point, alpha: float) -> Point:
    '''Projected operator step with the step length capped by ``||U(base)||``.

    Args:
        prob: The problem.
        base: Point at which U is evaluated and from which the step starts.
        alpha: Nonnegative step parameter. ``alpha == 0`` reduces to a plain
            projection of *base*.

    Returns:
        ``P(base - alpha / max{1, ||U(base)||} * U(base))``, a point of Omega.
    '''
    if alpha < 0:
        raise DefinitionError(f'step parameter must be >= 0, got {alpha}')
    if alpha == 0:
        return prob.set.project(base)
    g = evaluate_operator(prob.operator, base)
    scale = alpha / max(1.0, float(np.linalg.norm(g)))
    return prob.set.project(base - scale * g)


def natural_residual(prob: ProblemInstance, x: Point) -> float:
    '''``||x - P(x - U(x))||``.'''
    g = evaluate_operator(prob.operator, x)
    return float(np.linalg.norm(x - prob.set.project(x - g)))


def require_feasible(prob: ProblemInstance, x: Point, name: str, tol: float = FEASIBILITY_TOL) -> Point:
    '''Coerce *x* to a point of *prob* and require it to lie in Omega.

    Raises:
        DefinitionError: On wrong dimension or a point outside Omega.
    '''
    x = as_point(x, dimension=prob.dimension)
    if not prob.set.contains(x, tol):
        raise DefinitionError(f'{name} lies outside the feasible set (violation {prob.set.violation(x):.3e})')
    return x


def distance_to_reference(prob: ProblemInstance, x: Point) -> float | None:
    '''Euclidean distance to the reference solution, or None without one.'''
    if prob.reference_solution is None:
        return None
    return float(np.linalg.norm(x - prob.reference_solution))


@dataclass(frozen=True)
class ProbeReport:
    '''Outcome of :func:`monotonicity_probe`.

    Attributes:
        min_inner: Smallest ``<U(a) - U(b), a - b>`` seen.
        paramono_witnesses: Pairs with a (near) zero inner product but
            distinct operator values.
        samples: Number of sampled pairs.
    '''

    min_inner: float
    paramono_witnesses: int
    samples: int

    @property
    def monotone(self) -> bool:
        return self.min_inner >= -INNER_FLOOR

    @property
    def passed(self) -> bool:
        return self.monotone and self.paramono_witnesses == 0


def monotonicity_probe(
    op: OperatorSpec, feasible: FeasibleSet, samples: int, seed: int = 0
) -> ProbeReport:
    '''Sample pairs from *feasible* and look for (para)monotonicity violations.

    A pair counts as a paramonotonicity witness when the inner product is
    below ``INNER_FLOOR`` while ``||U(a) - U(b)|| > OPERATOR_DIFF_FLOOR``.

    Args:
        op: Operator to probe.
        feasible: Set the pairs are drawn from.
        samples: Number of pairs, at least 1.
        seed: Seed for ``numpy.random.default_rng``.

    Returns:
        A :class:`ProbeReport`.
    '''
    if samples < 1:
        raise DefinitionError(f'samples must be >= 1, got {samples}')
    if op.dimension != feasible.dimension:
        raise DefinitionError('operator and set dimensions differ')
    rng = np.random.default_rng(seed)
    a = feasible.sample(rng, samples)
    b = feasible.sample(rng, samples)

    min_inner = np.inf
    witnesses = 0
    for ai, bi in zip(a, b):
        du = evaluate_operator(op, ai) - evaluate_operator(op, bi)
        inner = float(du @ (ai - bi))
        min_inner = min(min_inner, inner)
        if inner < INNER_FLOOR and np.linalg.norm(du) > OPERATOR_DIFF_FLOOR:
            witnesses += 1

    log.debug('probe %s: min_inner=%.3e witnesses=%d', op.name, min_inner, witnesses)
    return ProbeReport(min_inner=min_inner, paramono_witnesses=witnesses, samples=samples)
