'''Read tabulated custom schedules from CSV.

Continuous tables have columns ``t, alpha0, alpha1, delta, lambda`` and are
interpolated linearly between rows. Discrete tables have columns
``n, beta0, beta1, xi, eta`` with ``n`` running ``0, 1, 2, ...``.
'''

from pathlib import Path

import numpy as np
import polars as pl

from .._errors import ConfigurationError, ScheduleError
from .continuous import ContinuousSchedule, custom_continuous_schedule
from .discrete import DiscreteSchedule, custom_discrete_schedule
from .terms import Interpolated

CONTINUOUS_COLUMNS = ['t', 'alpha0', 'alpha1', 'delta', 'lambda']
DISCRETE_COLUMNS = ['n', 'beta0', 'beta1', 'xi', 'eta']


def _read_table(path: Path | str, columns: list[str]) -> pl.DataFrame:
    p = Path(path)
    if not p.exists():
        raise ConfigurationError(f'schedule file not found: {p}', key='schedule')
    df = pl.read_csv(p)
    missing = [c for c in columns if c not in df.columns]
    if missing:
        raise ScheduleError(f'{p} is missing columns {missing}')
    return df.select([pl.col(c).cast(pl.Float64) for c in columns]).sort(columns[0])


def read_continuous_schedule(path: Path | str) -> ContinuousSchedule:
    '''Read a tabulated continuous schedule; ``t0`` is the first ``t``.

    Raises:
        ConfigurationError: If the file does not exist.
        ScheduleError: If columns are missing or the table is malformed.
    '''
    df = _read_table(path, CONTINUOUS_COLUMNS)
    t = df['t'].to_numpy()
    a0, a1, d, lam = (
        Interpolated(t, df[c].to_numpy(), label=c) for c in CONTINUOUS_COLUMNS[1:]
    )
    return custom_continuous_schedule(a0, a1, d, lam, t0=float(t[0]))


def read_discrete_schedule(path: Path | str) -> DiscreteSchedule:
    '''Read a tabulated discrete schedule.

    Raises:
        ConfigurationError: If the file does not exist.
        ScheduleError: If columns are missing or ``n`` is not ``0, 1, ...``.
    '''
    df = _read_table(path, DISCRETE_COLUMNS)
    n = df['n'].to_numpy()
    if not np.array_equal(n, np.arange(n.size)):
        raise ScheduleError(f'{path}: column n must run 0, 1, 2, ... without gaps')
    return custom_discrete_schedule(*(df[c].to_numpy() for c in DISCRETE_COLUMNS[1:]))
