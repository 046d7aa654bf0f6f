'''Operators U: R^d -> R^d.

Two kinds are supported:

- ``linear`` -- a square matrix ``A`` with ``U(x) = A x``.
- ``callback`` -- any deterministic Python callable. Callbacks must be
  reentrant if several runs share them; this is not enforced.

Attributes:
    ROTATION_90: The 2x2 matrix of a quarter turn, monotone but not
        paramonotone.
'''

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .._errors import DefinitionError, EvaluationError
from .points import Point, as_point

ROTATION_90 = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True, eq=False)
class OperatorSpec:
    '''An operator over R^d.

    Attributes:
        kind: ``'linear'`` or ``'callback'``.
        dimension: The ambient dimension d.
        matrix: The d x d matrix for linear operators.
        func: The evaluation map for callback operators.
        name: Optional label used in logs and manifests.
    '''

    kind: Literal['linear', 'callback']
    dimension: int
    matrix: np.ndarray | None = None
    func: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)
    name: str = ''

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DefinitionError(f'dimension must be >= 1, got {self.dimension}')
        if self.kind == 'linear':
            if self.matrix is None:
                raise DefinitionError('linear operator needs a matrix')
            if self.matrix.shape != (self.dimension, self.dimension):
                raise DefinitionError(
                    f'matrix must be {self.dimension}x{self.dimension}, got {self.matrix.shape}'
                )
            if not np.all(np.isfinite(self.matrix)):
                raise DefinitionError('matrix has non-finite entries')
        elif self.kind == 'callback':
            if self.func is None:
                raise DefinitionError('callback operator needs a function')
        else:
            raise DefinitionError(f'unknown operator kind: {self.kind!r}')


def linear_operator(matrix: Sequence[Sequence[float]] | np.ndarray, name: str = '') -> OperatorSpec:
    '''Build ``U(x) = A x`` from a square matrix (row-major nested lists are fine).'''
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DefinitionError(f'matrix must be square, got shape {a.shape}')
    a.setflags(write=False)
    return OperatorSpec(kind='linear', dimension=a.shape[0], matrix=a, name=name)


def callback_operator(
    func: Callable[[np.ndarray], np.ndarray], dimension: int, name: str = ''
) -> OperatorSpec:
    '''Wrap an arbitrary evaluation map.'''
    return OperatorSpec(kind='callback', dimension=dimension, func=func, name=name)


def identity_operator(dimension: int) -> OperatorSpec:
    '''``U(x) = x``; strictly monotone, unique VI solution on most sets.'''
    return linear_operator(np.eye(dimension), name='identity')


def constant_operator(value: Sequence[float] | np.ndarray, name: str = 'constant') -> OperatorSpec:
    '''``U(x) = c`` for a fixed vector ``c``; trivially paramonotone.'''
    c = as_point(value)
    c.setflags(write=False)
    return callback_operator(lambda x: c.copy(), dimension=c.size, name=name)


def rotation_operator() -> OperatorSpec:
    '''Quarter turn in R^2: monotone with zero inner products, not paramonotone.'''
    return linear_operator(ROTATION_90, name='rotation90')


def evaluate_operator(op: OperatorSpec, x: Point) -> Point:
    '''Evaluate ``U(x)``.

    Args:
        op: The operator.
        x: A point of matching dimension.

    Returns:
        ``U(x)`` as a float array.

    Raises:
        DefinitionError: On dimension mismatch.
        EvaluationError: If a callback returns non-finite or misshapen output.
    '''
    if x.shape != (op.dimension,):
        raise DefinitionError(f'operator expects dimension {op.dimension}, got shape {x.shape}')
    if op.kind == 'linear':
        return op.matrix @ x

    out = np.asarray(op.func(x), dtype=float)
    if out.shape != (op.dimension,):
        raise EvaluationError(f'callback {op.name or "<anonymous>"} returned shape {out.shape}')
    if not np.all(np.isfinite(out)):
        raise EvaluationError(f'callback {op.name or "<anonymous>"} returned non-finite values')
    return out
