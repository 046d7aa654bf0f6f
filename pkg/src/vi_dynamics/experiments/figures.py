'''Regenerate the data behind the unit-ball benchmark figures.

Each figure writes one CSV per curve into its output directory plus a
``manifest.json`` listing every file with the configuration that produced
it. Images are left to any plotting tool that reads CSV.

- ``fig1`` -- second-order system, powerlawB with varying ``h``
- ``fig2`` -- inertial iteration, powerlawD over ``FIG2_GRID``
- ``fig3`` -- inertial iteration with ``p = q = 0.5`` over ``FIG3_GRID``
  against the direct method, plus a comparison table at ``FIG3_TOL``
'''

from __future__ import annotations

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any

from .._errors import VIError
from ..continuous import IntegratorConfig, integrate_second_order
from ..diagnostics import MethodConfig, compare_methods, write_csv, write_summary_json
from ..discrete import StopRule, run_direct_method, run_inertial
from ..problems import ProblemInstance, builtin_problem
from ..problems.builtin import SEC5_VELOCITY, SEC5_X0, SEC5_X1
from ..schedules import build_continuous_powerlawB, build_discrete_powerlawD
from .config import (
    FIG1_FIXED,
    FIG1_H_VALUES,
    FIG1_STEP,
    FIG1_T_END,
    FIG2_GRID,
    FIG3_GRID,
    FIG3_TAU,
    FIG3_TOL,
    FIG_MAX_ITERS,
    output_dir,
)
from .runner import EXIT_CONFIG, EXIT_OK, report_error

GRID_NOTE = 'default grid of this package; the published figures do not list exact parameter values'
FIG1_RECORD_EVERY = 10


def _dispatch(tasks: list[Callable[[], dict[str, Any]]], workers: int) -> list[dict[str, Any]]:
    if workers <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda task: task(), tasks))


def _curve(record, path: Path, method: str, config: dict[str, Any], horizon: float, dimension: int) -> dict[str, Any]:
    rows = write_csv(record, path, dimension=dimension)
    print(f'Wrote {path} ({rows} rows)')
    return {
        'file': path.name,
        'method': method,
        'config': config,
        'horizon': horizon,
        'rows': rows,
        'stop_reason': record.stop_reason,
    }


def _inertial_task(prob: ProblemInstance, outdir: Path, name: str, params: dict[str, float], stop: StopRule):
    def task() -> dict[str, Any]:
        sched = build_discrete_powerlawD(**params)
        run = run_inertial(prob, sched, SEC5_X0, SEC5_X1, stop)
        config = {**params, 'omega': sched.family.omega}
        return _curve(run, outdir / f'{name}.csv', 'inertial', config, stop.max_iters, prob.dimension)
    return task


def fig1(outdir: Path, t_end: float | None = None, max_iters: int | None = None, workers: int = 1) -> dict[str, Any]:
    '''Second-order runs from ``x(0) = (1, 0, 0)``, ``x'(0) = (-0.75, 0.75, 0)``.'''
    prob = builtin_problem('paper-sec5')
    t_end = FIG1_T_END if t_end is None else t_end
    cfg = IntegratorConfig(step=FIG1_STEP, t_end=t_end, record_every=FIG1_RECORD_EVERY, velocity_mode='explicit')

    def task_for(h: float):
        def task() -> dict[str, Any]:
            sched = build_continuous_powerlawB(h=h, **FIG1_FIXED)
            traj = integrate_second_order(prob, sched, SEC5_X0, cfg=cfg, velocity=SEC5_VELOCITY)
            config = {'family': 'powerlawB', 'h': h, **FIG1_FIXED, 'step': cfg.step, 'method': cfg.method}
            return _curve(traj, outdir / f'fig1_h{h:g}.csv', 'second-order', config, t_end, prob.dimension)
        return task

    return {'curves': _dispatch([task_for(h) for h in FIG1_H_VALUES], workers), 'tables': []}


def fig2(outdir: Path, t_end: float | None = None, max_iters: int | None = None, workers: int = 1) -> dict[str, Any]:
    '''Inertial runs from ``z(0) = (1, 0, 0)``, ``z(1) = (0, 1, 0)`` over the powerlawD grid.'''
    prob = builtin_problem('paper-sec5')
    stop = StopRule(residual_tol=0.0, max_iters=max_iters or FIG_MAX_ITERS)
    tasks = []
    for p, q, d, th, lam in FIG2_GRID:
        params = {'p': p, 'q': q, 'deltaP': d, 'thetaP': th, 'lambdaP': lam}
        name = f'fig2_p{p:g}_q{q:g}_d{d:g}_t{th:g}_l{lam:g}'
        tasks.append(_inertial_task(prob, outdir, name, params, stop))
    return {'curves': _dispatch(tasks, workers), 'tables': []}


def fig3(outdir: Path, t_end: float | None = None, max_iters: int | None = None, workers: int = 1) -> dict[str, Any]:
    '''Inertial runs with ``p = q = 0.5`` against the direct method at ``tau = 0.75``.'''
    prob = builtin_problem('paper-sec5')
    horizon = max_iters or FIG_MAX_ITERS
    curves_stop = StopRule(residual_tol=0.0, max_iters=horizon)
    tasks = []
    configs = []
    for d, th, lam in FIG3_GRID:
        params = {'p': 0.5, 'q': 0.5, 'deltaP': d, 'thetaP': th, 'lambdaP': lam}
        name = f'fig3_inertial_d{d:g}_t{th:g}_l{lam:g}'
        tasks.append(_inertial_task(prob, outdir, name, params, curves_stop))
        label = name.removeprefix('fig3_inertial_')
        configs.append(MethodConfig('inertial', label, schedule=build_discrete_powerlawD(**params)))

    def direct_task() -> dict[str, Any]:
        run = run_direct_method(prob, FIG3_TAU, SEC5_X0, curves_stop)
        path = outdir / f'fig3_direct_tau{FIG3_TAU:g}.csv'
        return _curve(run, path, 'direct', {'tau': FIG3_TAU}, horizon, prob.dimension)

    tasks.append(direct_task)
    configs.append(MethodConfig('direct', f'tau={FIG3_TAU:g}', tau=FIG3_TAU, z0=SEC5_X0))
    curves = _dispatch(tasks, workers)

    table = compare_methods(prob, configs, StopRule(residual_tol=FIG3_TOL, max_iters=horizon), max_workers=workers)
    path = outdir / 'fig3_comparison.csv'
    rows = write_csv(table, path)
    print(f'Wrote {path} ({rows} rows)')
    tables = [{'file': path.name, 'residual_tol': FIG3_TOL, 'horizon': horizon, 'rows': rows}]
    return {'curves': curves, 'tables': tables}


FIGURES: dict[str, Callable[..., dict[str, Any]]] = {'fig1': fig1, 'fig2': fig2, 'fig3': fig3}


def cmd_reproduce(
    figure: str,
    outdir: Path | str | None = None,
    t_end: float | None = None,
    max_iters: int | None = None,
    workers: int = 1,
) -> int:
    '''Regenerate one figure's data and its manifest; exit 1 on an unknown id.

    Args:
        figure: ``'fig1'``, ``'fig2'`` or ``'fig3'``.
        outdir: Output directory; defaults to ``<output dir>/<figure>``.
        t_end: Final time of continuous curves.
        max_iters: Horizon of discrete curves.
        workers: Curves computed concurrently.
    '''
    if figure not in FIGURES:
        print(f'Unknown figure: {figure} (known: {", ".join(FIGURES)})')
        return EXIT_CONFIG
    outdir = Path(outdir) if outdir is not None else output_dir() / figure
    try:
        produced = FIGURES[figure](outdir, t_end=t_end, max_iters=max_iters, workers=workers)
        manifest = {'figure': figure, 'problem': 'paper-sec5', 'grid': GRID_NOTE, **produced}
        path = outdir / 'manifest.json'
        write_summary_json(manifest, path)
    except VIError as exc:
        return report_error(exc)
    print(f'Wrote {path}')
    return EXIT_OK
