'''Execute one configured run and write its artifacts.

Artifacts of ``run`` land in the output directory under the stem
``<problem>_<mode>``:

- ``<stem>.csv`` -- the trajectory or iteration log
- ``<stem>_energy.csv`` -- the energy series
- ``<stem>.summary.json`` -- stop reason, final residual, config echo

Exit codes: 0 success, 1 configuration error, 2 validation failure,
3 divergence.
'''

from __future__ import annotations

import logging
from pathlib import Path

import polars as pl

from .._errors import (
    ConditionError,
    ConfigurationError,
    DivergenceError,
    ScheduleError,
    UnsupportedError,
    VIError,
)
from ..continuous import (
    IntegratorConfig,
    integrate_coupled_feasible,
    integrate_first_order_baseline,
    integrate_second_order,
    remark_schedule,
)
from ..diagnostics import (
    MethodConfig,
    compare_methods,
    compute_energy,
    write_csv,
    write_summary_json,
)
from ..discrete import StopRule, run_direct_method, run_inertial
from ..problems import (
    BUILTIN_PROBLEMS,
    ProblemInstance,
    builtin_problem,
    default_starts,
    load_problem,
    monotonicity_probe,
)
from ..schedules import (
    ContinuousSchedule,
    DiscreteSchedule,
    ValidationReport,
    build_continuous_powerlawA,
    build_continuous_powerlawB,
    build_discrete_powerlawD,
    constant_schedule,
    continuous_family_constants,
    direct_method_steps,
    discrete_family_constants,
    read_continuous_schedule,
    read_discrete_schedule,
    validate_continuous,
    validate_discrete,
)
from .config import FIG3_TAU, RunConfig

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VALIDATION = 2
EXIT_DIVERGENCE = 3
PROBE_SAMPLES = 1000


def exit_code(exc: VIError) -> int:
    '''Map a package error onto the CLI exit code.'''
    if isinstance(exc, DivergenceError):
        return EXIT_DIVERGENCE
    if isinstance(exc, (ScheduleError, ConditionError)):
        return EXIT_VALIDATION
    return EXIT_CONFIG


def report_error(exc: VIError) -> int:
    '''Print *exc* the way the CLI shows it and return its exit code.'''
    if isinstance(exc, ScheduleError) and exc.violations:
        print(f'Schedule rejected: {", ".join(exc.violations)}')
    elif isinstance(exc, ConfigurationError) and exc.key:
        print(f'Configuration error ({exc.key}): {exc}')
    elif isinstance(exc, ConditionError):
        print(f'Condition failed at t={exc.t:g}: {exc}')
    elif isinstance(exc, DivergenceError):
        print(f'Diverged after {exc.last_valid:g}: {exc}')
    else:
        print(f'Error: {exc}')
    return exit_code(exc)


def load_run_problem(name: str) -> ProblemInstance:
    '''A built-in problem by id, or a problem JSON file by path.

    Raises:
        ConfigurationError: If *name* is neither.
    '''
    if name in BUILTIN_PROBLEMS:
        return builtin_problem(name)
    if Path(name).exists():
        return load_problem(name)
    known = ', '.join(sorted(BUILTIN_PROBLEMS))
    raise ConfigurationError(f'{name!r} is neither a built-in problem ({known}) nor a file', key='problem')


def _continuous_table(path: str) -> bool:
    return 't' in pl.read_csv(path, n_rows=0).columns


def build_schedule(cfg: RunConfig) -> ContinuousSchedule | DiscreteSchedule:
    '''Schedule of a resolved config.

    Raises:
        ScheduleError: If a family builder rejects the parameters.
    '''
    fam = cfg.family
    if fam == 'powerlawA':
        return build_continuous_powerlawA(cfg.h, cfg.s, cfg.p, cfg.q, t0=cfg.t0)
    if fam == 'powerlawB':
        return build_continuous_powerlawB(cfg.h, cfg.s, cfg.q, cfg.u, t0=cfg.t0)
    if fam == 'constant':
        return constant_schedule(cfg.alpha0, cfg.alpha1, cfg.delta, cfg.lam, t0=cfg.t0)
    if fam == 'remark':
        return remark_schedule()
    if fam == 'powerlawD':
        return build_discrete_powerlawD(cfg.p, cfg.q, cfg.deltaP, cfg.thetaP, cfg.lambdaP, cfg.omega)
    if fam == 'direct':
        return direct_method_steps(cfg.tau)
    if cfg.continuous or (cfg.mode == 'validate' and _continuous_table(cfg.schedule_file)):
        return read_continuous_schedule(cfg.schedule_file)
    return read_discrete_schedule(cfg.schedule_file)


def _require(cfg: RunConfig, *names: str) -> list[float]:
    values = [getattr(cfg, n) for n in names]
    for n, v in zip(names, values):
        if v is None:
            raise ConfigurationError(f'schedules without a family need {n}', key=n)
    return values


def validate_schedule(cfg: RunConfig, sched: ContinuousSchedule | DiscreteSchedule) -> ValidationReport:
    '''Validate *sched* with its family constants, or those given in *cfg*.'''
    if isinstance(sched, ContinuousSchedule):
        if sched.family is not None:
            consts = continuous_family_constants(sched)
            c1, c2 = consts['C1'], consts['C2']
        else:
            c1, c2 = _require(cfg, 'C1', 'C2')
        return validate_continuous(sched, c1, c2, horizon=cfg.horizon)
    try:
        consts = discrete_family_constants(sched)
        q1, q2 = consts['Q1'], consts['Q2']
    except UnsupportedError:
        q1, q2 = _require(cfg, 'Q1', 'Q2')
    if cfg.horizon is None:
        return validate_discrete(sched, q1, q2)
    return validate_discrete(sched, q1, q2, horizon=int(cfg.horizon))


def print_report(report: ValidationReport) -> None:
    for check in report.checks:
        print(f'  {check.condition:<24} {check.status:<13} {check.detail}')
    print('Schedule satisfied.' if report.satisfied else f'{len(report.failures)} condition(s) failed.')


def _starts(cfg: RunConfig, prob: ProblemInstance):
    x0, x1 = default_starts(prob)
    if cfg.x0 is not None:
        x0 = list(cfg.x0)
    if cfg.x1 is not None:
        x1 = list(cfg.x1)
    return x0, x1


def _stop(cfg: RunConfig) -> StopRule:
    return StopRule(residual_tol=cfg.residual_tol, max_iters=cfg.max_iters, stagnation_tol=cfg.stagnation_tol)


def _integrator(cfg: RunConfig) -> IntegratorConfig:
    return IntegratorConfig(
        step=cfg.step,
        t_end=cfg.t_end,
        method=cfg.method,
        record_every=cfg.record_every,
        velocity_mode=cfg.velocity_mode,
    )


def _execute(cfg: RunConfig, prob: ProblemInstance, sched: ContinuousSchedule | DiscreteSchedule):
    x0, x1 = _starts(cfg, prob)
    if cfg.continuous and sched.family is None:
        log.warning('%s schedule is not validated before integrating', cfg.family)
    if cfg.mode == 'continuous-second-order':
        return integrate_second_order(prob, sched, x0, x1, _integrator(cfg), velocity=cfg.velocity)
    if cfg.mode == 'continuous-coupled':
        return integrate_coupled_feasible(prob, sched, x0, x1, _integrator(cfg))
    if cfg.mode == 'continuous-first-order':
        return integrate_first_order_baseline(prob, sched.delta, sched.alpha0, x0, _integrator(cfg), t0=sched.t0)
    if cfg.mode == 'discrete-inertial':
        return run_inertial(prob, sched, x0, x1, _stop(cfg), allow_positive_eta=cfg.allow_positive_eta)
    return run_direct_method(prob, cfg.tau, x0, _stop(cfg))


def _problem_stem(cfg: RunConfig, prob: ProblemInstance) -> str:
    return prob.name or Path(cfg.problem).stem


def _write(record, path: Path, dimension: int | None = None) -> None:
    n = write_csv(record, path, dimension=dimension)
    print(f'Wrote {path} ({n} rows)')


def _compare(cfg: RunConfig, prob: ProblemInstance, sched: DiscreteSchedule, outdir: Path, stem: str) -> int:
    x0, x1 = _starts(cfg, prob)
    tau = cfg.tau if cfg.tau is not None else FIG3_TAU
    configs = [
        MethodConfig('inertial', sched.family_name, schedule=sched, z0=x0, z1=x1),
        MethodConfig('direct', f'tau={tau:g}', tau=tau, z0=x0),
    ]
    table = compare_methods(prob, configs, _stop(cfg), max_workers=cfg.workers)
    _write(table, outdir / f'{stem}.csv')
    for row in table.rows:
        if row.run is not None:
            _write(row.run, outdir / f'{stem}_{row.method}.csv', dimension=prob.dimension)
    failed = [r for r in table.rows if r.status == 'failed']
    for r in failed:
        print(f'{r.method} ({r.schedule}) failed: {r.error}')
    return EXIT_OK


def run(cfg: RunConfig) -> int:
    '''Body of :func:`cmd_run`; package errors propagate.'''
    cfg = cfg.resolved()
    prob = load_run_problem(cfg.problem)
    outdir = cfg.output_dir
    stem = f'{_problem_stem(cfg, prob)}_{cfg.mode}'

    if cfg.mode == 'validate':
        code = cmd_validate(cfg, raise_errors=True)
        probe = monotonicity_probe(prob.operator, prob.set, PROBE_SAMPLES, seed=cfg.seed)
        print(
            f'Monotonicity probe on {stem}: min inner {probe.min_inner:.3e}, '
            f'{probe.paramono_witnesses} paramonotonicity witness(es) over {probe.samples} pairs'
        )
        return code

    sched = build_schedule(cfg)
    if cfg.mode == 'compare':
        return _compare(cfg, prob, sched, outdir, stem)

    record = _execute(cfg, prob, sched)
    _write(record, outdir / f'{stem}.csv', dimension=prob.dimension)
    _write(compute_energy(record, prob.reference_solution), outdir / f'{stem}_energy.csv')
    path = outdir / f'{stem}.summary.json'
    write_summary_json(record, path, config=cfg.to_dict())
    print(f'Wrote {path}')
    return EXIT_OK


def cmd_run(cfg: RunConfig) -> int:
    '''Run the configured pipeline and return the exit code.'''
    try:
        return run(cfg)
    except VIError as exc:
        return report_error(exc)


def cmd_validate(cfg: RunConfig, raise_errors: bool = False) -> int:
    '''Validate the configured schedule; exit 2 when a condition fails.

    With ``cfg.outdir`` set the report is also written as JSON.
    '''
    try:
        cfg = cfg.resolved()
        sched = build_schedule(cfg)
        report = validate_schedule(cfg, sched)
    except VIError as exc:
        if raise_errors:
            raise
        return report_error(exc)

    label = sched.family_name
    print(f'Validating {label} schedule:')
    print_report(report)
    if cfg.outdir:
        path = Path(cfg.outdir) / f'{label}.validation.json'
        write_summary_json({'family': label, 'config': cfg.to_dict(), **report.to_dict()}, path)
        print(f'Wrote {path}')
    return EXIT_OK if report.satisfied else EXIT_VALIDATION
