'''Run configuration, output locations, and the figure grids.

A :class:`RunConfig` is built from CLI flags, from a JSON file, or from
both (flags win). Keys of the JSON file are the field names of
:class:`RunConfig`.

Attributes:
    DEFAULT_OUTPUT_DIR: Where artifacts go unless ``VI_DYNAMICS_OUTPUT_DIR``
        or ``--outdir`` says otherwise.
    OUTPUT_DIR_ENV, LOG_LEVEL_ENV: Environment variables read at run time
        (after ``.env`` has been loaded).
    MODES: Accepted values of :attr:`RunConfig.mode`.
    CONTINUOUS_FAMILIES, DISCRETE_FAMILIES: Schedule families per mode kind.
    FAMILY_PARAMS: Parameters each family builder needs.
    FIG1_H_VALUES: Values of ``h`` for figure 1 (``u=1, s=0.35, q=0.71``).
    FIG2_GRID: ``(p, q, deltaP, thetaP, lambdaP)`` settings for figure 2.
    FIG3_GRID: ``(deltaP, thetaP, lambdaP)`` settings for figure 3, all with
        ``p = q = 0.5``, each compared with the direct method at
        ``FIG3_TAU``.

The figure grids are defaults chosen for this package; the published
figures do not list their exact parameter values.
'''

from __future__ import annotations

import json
import os
from collections.abc import Callable, Mapping
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from .._errors import ConfigurationError

DEFAULT_OUTPUT_DIR = Path('output')
OUTPUT_DIR_ENV = 'VI_DYNAMICS_OUTPUT_DIR'
LOG_LEVEL_ENV = 'VI_DYNAMICS_LOG_LEVEL'

MODES = (
    'continuous-second-order',
    'continuous-coupled',
    'continuous-first-order',
    'discrete-inertial',
    'discrete-direct',
    'compare',
    'validate',
)
CONTINUOUS_FAMILIES = ('powerlawA', 'powerlawB', 'constant', 'remark', 'table')
DISCRETE_FAMILIES = ('powerlawD', 'direct', 'table')
FAMILY_PARAMS = {
    'powerlawA': ('h', 's', 'p', 'q'),
    'powerlawB': ('h', 's', 'q', 'u'),
    'powerlawD': ('p', 'q', 'deltaP', 'thetaP', 'lambdaP'),
    'constant': ('alpha0', 'alpha1', 'delta'),
    'direct': ('tau',),
    'remark': (),
    'table': ('schedule_file',),
}

# powerlawB with the parameters of the unit-ball benchmark
DEFAULT_CONTINUOUS = {'family': 'powerlawB', 'h': 2.5, 's': 0.35, 'q': 0.71, 'u': 1.0}
DEFAULT_DISCRETE = {'family': 'powerlawD', 'p': 0.5, 'q': 0.5, 'deltaP': 1.0, 'thetaP': 1.0, 'lambdaP': 0.5}

FIG1_H_VALUES = (2.5, 3.0, 4.0, 6.0)
FIG1_FIXED = {'u': 1.0, 's': 0.35, 'q': 0.71}
FIG1_T_END = 50.0
FIG1_STEP = 1e-2
FIG2_GRID = (
    (0.5, 0.5, 1.0, 1.0, 0.5),
    (0.5, 0.3, 1.0, 1.0, 0.5),
    (0.3, 0.5, 1.0, 1.0, 0.5),
    (0.7, 0.3, 1.0, 1.0, 0.5),
    (0.5, 0.5, 2.0, 2.0, 1.0),
)
FIG3_GRID = (
    (1.0, 1.0, 0.5),
    (2.0, 1.0, 0.5),
    (1.0, 2.0, 0.5),
    (1.0, 1.0, 1.0),
)
FIG3_TAU = 0.75
FIG3_TOL = 1e-3
FIG_MAX_ITERS = 20_000


def output_dir() -> Path:
    '''``VI_DYNAMICS_OUTPUT_DIR`` if set, else :data:`DEFAULT_OUTPUT_DIR`.'''
    return Path(os.environ.get(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR)


def log_level() -> str:
    return os.environ.get(LOG_LEVEL_ENV, 'WARNING').upper()


def _point(value: Any) -> tuple[float, ...]:
    if isinstance(value, str):
        value = value.replace(',', ' ').split()
    return tuple(float(v) for v in value)


def _flag(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ('true', 'false'):
        return value.lower() == 'true'
    raise ValueError(f'expected a boolean, got {value!r}')


def _optional(convert: Callable[[Any], Any]) -> Callable[[Any], Any]:
    return lambda v: None if v is None else convert(v)


@dataclass(frozen=True)
class RunConfig:
    '''Everything one ``run`` or ``validate`` invocation needs.

    Schedule parameters are only read by the family that uses them. The
    family defaults to the remark schedule on ``remark-counterexample``,
    to powerlawB (``h=2.5, s=0.35, q=0.71, u=1``) for other continuous
    modes and to powerlawD (``p=q=0.5, deltaP=thetaP=1, lambdaP=0.5``) for
    discrete ones.
    '''

    problem: str = 'paper-sec5'
    mode: str = 'discrete-inertial'
    family: str | None = None
    schedule_file: str | None = None
    # schedule parameters
    h: float | None = None
    s: float | None = None
    p: float | None = None
    q: float | None = None
    u: float | None = None
    deltaP: float | None = None
    thetaP: float | None = None
    lambdaP: float | None = None
    omega: float | None = None
    tau: float | None = None
    alpha0: float | None = None
    alpha1: float | None = None
    delta: float | None = None
    lam: float = 0.0
    t0: float = 0.0
    # validation constants for schedules without a family
    C1: float | None = None
    C2: float | None = None
    Q1: float | None = None
    Q2: float | None = None
    horizon: float | None = None
    # integrator
    step: float = 1e-2
    t_end: float = 50.0
    method: str = 'rk4'
    record_every: int = 1
    velocity_mode: str = 'quarter_convention'
    velocity: tuple[float, ...] | None = None
    # iteration
    residual_tol: float = 1e-6
    max_iters: int = 100_000
    stagnation_tol: float = 0.0
    allow_positive_eta: bool = False
    x0: tuple[float, ...] | None = None
    x1: tuple[float, ...] | None = None
    outdir: str | None = None
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigurationError(f'mode must be one of {MODES}, got {self.mode!r}', key='mode')
        families = CONTINUOUS_FAMILIES + DISCRETE_FAMILIES
        if self.family is not None and self.family not in families:
            raise ConfigurationError(f'unknown family {self.family!r}', key='family')

    @property
    def continuous(self) -> bool:
        return self.mode.startswith('continuous')

    @property
    def output_dir(self) -> Path:
        return Path(self.outdir) if self.outdir else output_dir()

    def resolved(self) -> RunConfig:
        '''Fill in the default family and its parameters for the problem and mode.

        Raises:
            ConfigurationError: If the family does not fit the mode, a
                family parameter is missing, or a referenced file is absent.
        '''
        cfg = self
        if cfg.family is None:
            if cfg.mode == 'discrete-direct':
                defaults = {'family': 'direct', 'tau': FIG3_TAU}
            elif cfg.continuous and cfg.problem == 'remark-counterexample':
                defaults = {'family': 'remark'}
            elif cfg.continuous:
                defaults = DEFAULT_CONTINUOUS
            else:
                defaults = DEFAULT_DISCRETE
            cfg = replace(cfg, **{k: v for k, v in defaults.items() if k == 'family' or getattr(cfg, k) is None})

        if cfg.continuous and cfg.family not in CONTINUOUS_FAMILIES:
            raise ConfigurationError(f'family {cfg.family!r} does not drive mode {cfg.mode!r}', key='family')
        if cfg.mode in ('discrete-inertial', 'compare') and cfg.family not in ('powerlawD', 'table'):
            raise ConfigurationError(f'family {cfg.family!r} does not drive mode {cfg.mode!r}', key='family')
        if cfg.mode == 'discrete-direct' and cfg.family != 'direct':
            raise ConfigurationError(f'family {cfg.family!r} does not drive mode {cfg.mode!r}', key='family')
        for name in FAMILY_PARAMS[cfg.family]:
            if getattr(cfg, name) is None:
                raise ConfigurationError(f'family {cfg.family} needs {name}', key=name)
        if cfg.schedule_file is not None and not Path(cfg.schedule_file).exists():
            raise ConfigurationError(f'schedule file not found: {cfg.schedule_file}', key='schedule_file')
        return cfg

    def to_dict(self) -> dict[str, Any]:
        '''Non-default fields, as written into summaries and manifests.'''
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if value != f.default:
                out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], base: RunConfig | None = None) -> RunConfig:
        '''Apply *data* on top of *base* (or the defaults), converting each value.

        Raises:
            ConfigurationError: Naming the first unknown or malformed key.
        '''
        known = {f.name for f in fields(cls)}
        values = {}
        for key, raw in data.items():
            if key not in known:
                raise ConfigurationError(f'unknown configuration key {key!r}', key=key)
            try:
                values[key] = _CONVERTERS.get(key, _optional(float))(raw)
            except (TypeError, ValueError) as exc:
                raise ConfigurationError(f'bad value for {key}: {raw!r} ({exc})', key=key) from None
        return replace(base, **values) if base is not None else cls(**values)

    @classmethod
    def from_json(cls, path: Path | str, overrides: Mapping[str, Any] | None = None) -> RunConfig:
        '''Read a JSON config file, then apply *overrides*.

        Raises:
            ConfigurationError: If the file is missing, is not a JSON object,
                or has a bad key.
        '''
        p = Path(path)
        if not p.exists():
            raise ConfigurationError(f'config file not found: {p}', key='config')
        try:
            data = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f'{p} is not valid JSON: {exc}', key='config') from None
        if not isinstance(data, dict):
            raise ConfigurationError(f'{p} must hold a JSON object', key='config')
        cfg = cls.from_mapping(data)
        return cls.from_mapping(overrides, base=cfg) if overrides else cfg


_CONVERTERS: dict[str, Callable[[Any], Any]] = {
    'problem': str,
    'mode': str,
    'family': _optional(str),
    'schedule_file': _optional(str),
    'lam': float,
    't0': float,
    'step': float,
    't_end': float,
    'method': str,
    'record_every': int,
    'velocity_mode': str,
    'velocity': _optional(_point),
    'residual_tol': float,
    'max_iters': int,
    'stagnation_tol': float,
    'allow_positive_eta': _flag,
    'x0': _optional(_point),
    'x1': _optional(_point),
    'outdir': _optional(str),
    'seed': int,
    'workers': int,
}
