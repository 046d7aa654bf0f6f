'''Closed convex feasible sets with exact Euclidean projections.

Four kinds are available, each a frozen dataclass that validates itself on
construction (so every instance is nonempty, closed, and convex):

- :class:`Ball` -- radial scaling onto ``{x : ||x - center|| <= radius}``.
- :class:`Box` -- componentwise clamping onto ``[lower, upper]``.
- :class:`Simplex` -- sorting-based projection onto
  ``{x >= 0 : sum(x) = scale}``.
- :class:`Interval` -- the one-dimensional box ``[lo, hi]``.

Attributes:
    MEMBERSHIP_TOL: Violation allowed for the output of an exact projection.
'''

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .._errors import DefinitionError
from .points import Point, as_point

MEMBERSHIP_TOL = 1e-12


class FeasibleSet(ABC):
    '''Common interface of the feasible set kinds.'''

    kind: str

    @property
    @abstractmethod
    def dimension(self) -> int:
        '''Ambient dimension d.'''

    @abstractmethod
    def _project(self, x: Point) -> Point:
        ...

    @abstractmethod
    def violation(self, x: Point) -> float:
        '''Nonnegative amount by which *x* lies outside the set (0 inside).'''

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        '''Draw *size* feasible points as rows of a ``(size, d)`` array.'''

    def project(self, x: Point) -> Point:
        '''Euclidean nearest point of the set.

        Raises:
            DefinitionError: On dimension mismatch.
        '''
        if x.shape != (self.dimension,):
            raise DefinitionError(f'set has dimension {self.dimension}, got shape {x.shape}')
        return self._project(x)

    def contains(self, x: Point, tol: float = MEMBERSHIP_TOL) -> bool:
        '''Membership up to *tol*.'''
        return self.violation(x) <= tol


@dataclass(frozen=True, eq=False)
class Ball(FeasibleSet):
    '''Closed Euclidean ball.

    Attributes:
        center: Center point.
        radius: Positive radius.
    '''

    center: Point
    radius: float
    kind = 'ball'

    def __post_init__(self) -> None:
        object.__setattr__(self, 'center', as_point(self.center))
        if not self.radius > 0:
            raise DefinitionError(f'ball radius must be > 0, got {self.radius}')

    @property
    def dimension(self) -> int:
        return self.center.size

    def _project(self, x: Point) -> Point:
        d = x - self.center
        norm = np.linalg.norm(d)
        if norm <= self.radius:
            return x.copy()
        return self.center + d * (self.radius / norm)

    def violation(self, x: Point) -> float:
        return max(0.0, float(np.linalg.norm(x - self.center)) - self.radius)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        g = rng.standard_normal((size, self.dimension))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        r = self.radius * rng.random((size, 1)) ** (1.0 / self.dimension)
        return self.center + r * g


def unit_ball(dimension: int) -> Ball:
    '''Ball of radius 1 centred at the origin.'''
    return Ball(center=np.zeros(dimension), radius=1.0)


@dataclass(frozen=True, eq=False)
class Box(FeasibleSet):
    '''Axis-aligned box ``lower <= x <= upper``.'''

    lower: Point
    upper: Point
    kind = 'box'

    def __post_init__(self) -> None:
        lower = as_point(self.lower)
        upper = as_point(self.upper, dimension=lower.size)
        if np.any(lower > upper):
            raise DefinitionError('box needs lower <= upper componentwise')
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @property
    def dimension(self) -> int:
        return self.lower.size

    def _project(self, x: Point) -> Point:
        return np.clip(x, self.lower, self.upper)

    def violation(self, x: Point) -> float:
        excess = np.maximum(self.lower - x, x - self.upper)
        return max(0.0, float(excess.max()))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, size=(size, self.dimension))


@dataclass(frozen=True, eq=False)
class Simplex(FeasibleSet):
    '''Scaled probability simplex ``{x >= 0 : sum(x) = scale}``.'''

    dim: int
    scale: float = 1.0
    kind = 'simplex'

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DefinitionError(f'simplex dimension must be >= 1, got {self.dim}')
        if not self.scale > 0:
            raise DefinitionError(f'simplex scale must be > 0, got {self.scale}')

    @property
    def dimension(self) -> int:
        return self.dim

    def _project(self, x: Point) -> Point:
        # Sort, find the last index where the shifted entry stays positive,
        # then threshold everything by the same shift.
        u = np.sort(x)[::-1]
        css = np.cumsum(u) - self.scale
        k = np.arange(1, x.size + 1)
        rho = np.nonzero(u - css / k > 0)[0][-1]
        theta = css[rho] / (rho + 1)
        return np.maximum(x - theta, 0.0)

    def violation(self, x: Point) -> float:
        negative = max(0.0, float(-x.min()))
        return max(negative, abs(float(x.sum()) - self.scale))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.scale * rng.dirichlet(np.ones(self.dim), size=size)


@dataclass(frozen=True, eq=False)
class Interval(FeasibleSet):
    '''Closed interval ``[lo, hi]`` in R^1.'''

    lo: float
    hi: float
    kind = 'interval'

    def __post_init__(self) -> None:
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)) or self.lo > self.hi:
            raise DefinitionError(f'interval needs finite lo <= hi, got [{self.lo}, {self.hi}]')

    @property
    def dimension(self) -> int:
        return 1

    def _project(self, x: Point) -> Point:
        return np.clip(x, self.lo, self.hi)

    def violation(self, x: Point) -> float:
        v = float(x[0])
        return max(0.0, self.lo - v, v - self.hi)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(self.lo, self.hi, size=(size, 1))


def project(feasible: FeasibleSet, x: Point) -> Point:
    '''Euclidean projection of *x* onto *feasible*; see :meth:`FeasibleSet.project`.'''
    return feasible.project(x)


def membership_violation(feasible: FeasibleSet, x: Point) -> float:
    '''Shorthand for ``feasible.violation(x)``.'''
    return feasible.violation(x)
