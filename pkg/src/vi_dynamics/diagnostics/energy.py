'''Energy series recorded along a run.

For a continuous trajectory:

    v_ref(t) = 1/2 ||x(t) - x_ref||^2,    b(t) = 1/2 ||x'(t)||^2

and for a discrete run:

    v_ref(n) = 1/2 ||z(n) - x_ref||^2,    a(n) = ||z(n+1) - z(n)||^2,    c(n) = ||z(n) - z(n-1)||^2

The series are recorded only. ``a(n)`` needs the next iterate, so it is
null where ``n + 1`` was not logged.
'''

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import polars as pl

from .._errors import ConfigurationError
from ..continuous import ContinuousTrajectory
from ..discrete import RunResult
from ..problems import Point, as_point

ENERGY_COLUMNS = ('v_ref', 'b', 'a', 'c')


@dataclass(frozen=True)
class EnergyDiagnostics:
    '''Energy series on the recorded index of a run.

    Attributes:
        frame: Columns ``t`` or ``n``, then ``v_ref, b, a, c``. Series that do
            not apply to the run kind are null.
        index_name: ``'t'`` for continuous runs, ``'n'`` for discrete ones.
    '''

    frame: pl.DataFrame
    index_name: str

    def __len__(self) -> int:
        return self.frame.height

    def series(self, name: str) -> np.ndarray:
        '''One column as a float array, nulls as NaN.'''
        return self.frame[name].cast(pl.Float64).fill_null(float('nan')).to_numpy()

    @property
    def index(self) -> np.ndarray:
        return self.frame[self.index_name].to_numpy()

    @property
    def nonnegative(self) -> bool:
        return all(
            bool((self.frame[c].drop_nulls() >= 0).all()) for c in ENERGY_COLUMNS
        )


def _reference(reference: Point | None, want_v_ref: bool, dimension: int) -> Point | None:
    if reference is None:
        if want_v_ref:
            raise ConfigurationError('v_ref needs a reference point', key='reference')
        return None
    return as_point(reference, dimension=dimension)


def compute_energy(
    record: ContinuousTrajectory | RunResult,
    reference: Point | None = None,
    want_v_ref: bool = False,
) -> EnergyDiagnostics:
    '''Energy series of a continuous trajectory or a discrete run.

    Args:
        record: The run to analyse.
        reference: Point ``x_ref`` for ``v_ref``; ``v_ref`` is null without one.
        want_v_ref: Require ``v_ref``.

    Raises:
        ConfigurationError: If *want_v_ref* is set and no reference is given.
    '''
    if isinstance(record, ContinuousTrajectory):
        index_name = 't'
        index = pl.Series('t', record.times, dtype=pl.Float64)
        points = record.positions
    elif isinstance(record, RunResult):
        index_name = 'n'
        index = pl.Series('n', record.indices, dtype=pl.Int64)
        points = record.iterates
    else:
        raise TypeError(f'cannot compute energy of {type(record).__name__}')

    k = len(record)
    d = points.shape[1] if k else (len(reference) if reference is not None else 0)
    ref = _reference(reference, want_v_ref, d)
    points = points.reshape(k, d)
    null = [None] * k

    v_ref = 0.5 * np.sum((points - ref) ** 2, axis=1) if ref is not None else null
    if index_name == 't':
        b = 0.5 * record.speeds ** 2
        a = c = null
    else:
        b = null
        steps = record.step_norms
        c = steps ** 2
        ns = record.indices
        # a(n) = c(n+1) when n+1 was logged
        a = [float(steps[i + 1] ** 2) if i + 1 < k and ns[i + 1] == ns[i] + 1 else None for i in range(k)]

    frame = pl.DataFrame([
        index,
        pl.Series('v_ref', v_ref, dtype=pl.Float64),
        pl.Series('b', b, dtype=pl.Float64),
        pl.Series('a', a, dtype=pl.Float64),
        pl.Series('c', c, dtype=pl.Float64),
    ])
    return EnergyDiagnostics(frame=frame, index_name=index_name)
