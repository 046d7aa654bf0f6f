'''Points of R^d as one-dimensional float arrays.'''

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .._errors import DefinitionError

Point = np.ndarray


def as_point(x: Sequence[float] | np.ndarray, dimension: int | None = None) -> Point:
    '''Convert *x* to a finite 1-D float64 array.

    Args:
        x: Coordinates.
        dimension: Expected length, checked when given.

    Returns:
        A fresh array; the input is never aliased.

    Raises:
        DefinitionError: If *x* is not 1-D, is empty, has the wrong length,
            or contains NaN/Inf.
    '''
    arr = np.array(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size == 0:
        raise DefinitionError(f'point must be a non-empty vector, got shape {arr.shape}')
    if dimension is not None and arr.size != dimension:
        raise DefinitionError(f'expected dimension {dimension}, got {arr.size}')
    if not np.all(np.isfinite(arr)):
        raise DefinitionError('point has non-finite entries')
    return arr
