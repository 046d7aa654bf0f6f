'''Unified CLI entry point for the ``vi-dynamics`` command.

Subcommands:

- ``vi-dynamics run``       -- run one configured pipeline (a continuous
  integration, a discrete iteration, a comparison, or a validation) and
  write its CSV/JSON artifacts.
- ``vi-dynamics validate``  -- check a schedule against its admissibility
  conditions and print the report.
- ``vi-dynamics reproduce`` -- regenerate the data of ``fig1``, ``fig2`` or
  ``fig3`` with a manifest.

Exit codes: 0 success, 1 configuration error or unknown figure,
2 validation failure, 3 divergence. ``VI_DYNAMICS_OUTPUT_DIR`` and
``VI_DYNAMICS_LOG_LEVEL`` may be set in the environment or in ``.env``.
'''

import argparse
import logging
import sys

from dotenv import load_dotenv

load_dotenv()

SUPPRESS = argparse.SUPPRESS


class _Parser(argparse.ArgumentParser):
    '''Usage errors exit 1 like every other configuration error.'''

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f'{self.prog}: error: {message}\n')


def _add_schedule_flags(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group('schedule')
    g.add_argument('--family', default=SUPPRESS,
                   help='powerlawA, powerlawB, powerlawD, constant, remark, direct or table')
    g.add_argument('--schedule-file', dest='schedule_file', default=SUPPRESS, help='CSV of a tabulated schedule')
    for name in ('h', 's', 'p', 'q', 'u', 'deltaP', 'thetaP', 'lambdaP', 'omega', 'tau',
                 'alpha0', 'alpha1', 'delta', 'lam', 't0'):
        g.add_argument(f'--{name}', type=float, default=SUPPRESS)
    v = parser.add_argument_group('validation')
    for name in ('C1', 'C2', 'Q1', 'Q2'):
        v.add_argument(f'--{name}', type=float, default=SUPPRESS, help='constant for schedules without a family')
    v.add_argument('--horizon', type=float, default=SUPPRESS, help='last t or n checked')


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', default=None, help='JSON run configuration; flags override its keys')
    parser.add_argument('--problem', default=SUPPRESS,
                        help='paper-sec5, remark-counterexample, identity-ball, or a problem JSON file')
    parser.add_argument('--mode', default=SUPPRESS)
    parser.add_argument('--outdir', default=SUPPRESS)
    parser.add_argument('--seed', type=int, default=SUPPRESS)
    parser.add_argument('--x0', type=float, nargs='+', default=SUPPRESS)
    parser.add_argument('--x1', type=float, nargs='+', default=SUPPRESS)
    i = parser.add_argument_group('integrator')
    i.add_argument('--step', type=float, default=SUPPRESS)
    i.add_argument('--t-end', dest='t_end', type=float, default=SUPPRESS)
    i.add_argument('--method', default=SUPPRESS, help='rk4 or euler')
    i.add_argument('--record-every', dest='record_every', type=int, default=SUPPRESS)
    i.add_argument('--velocity-mode', dest='velocity_mode', default=SUPPRESS,
                   help='quarter_convention or explicit')
    i.add_argument('--velocity', type=float, nargs='+', default=SUPPRESS)
    s = parser.add_argument_group('iteration')
    s.add_argument('--tol', dest='residual_tol', type=float, default=SUPPRESS)
    s.add_argument('--max-iters', dest='max_iters', type=int, default=SUPPRESS)
    s.add_argument('--stagnation-tol', dest='stagnation_tol', type=float, default=SUPPRESS)
    s.add_argument('--allow-positive-eta', dest='allow_positive_eta', action='store_true', default=SUPPRESS)
    s.add_argument('--workers', type=int, default=SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='vi-dynamics', description='Dynamics and inertial methods for variational inequalities.')
    sub = parser.add_subparsers(dest='command')

    run = sub.add_parser('run', help='run one configured pipeline')
    _add_run_flags(run)
    _add_schedule_flags(run)

    validate = sub.add_parser('validate', help='check a schedule')
    validate.add_argument('--config', default=None, help='JSON run configuration')
    validate.add_argument('--outdir', default=SUPPRESS, help='also write the report as JSON')
    _add_schedule_flags(validate)

    reproduce = sub.add_parser('reproduce', help='regenerate figure data')
    reproduce.add_argument('figure', help='fig1, fig2 or fig3')
    reproduce.add_argument('--outdir', default=None)
    reproduce.add_argument('--t-end', dest='t_end', type=float, default=None)
    reproduce.add_argument('--max-iters', dest='max_iters', type=int, default=None)
    reproduce.add_argument('--workers', type=int, default=1)
    return parser


def _config(args: argparse.Namespace, **fixed):
    from vi_dynamics.experiments.config import RunConfig

    overrides = {k: v for k, v in vars(args).items() if k not in ('command', 'config')}
    overrides.update(fixed)
    if args.config:
        return RunConfig.from_json(args.config, overrides)
    return RunConfig.from_mapping(overrides)


def cmd_run(args: argparse.Namespace) -> int:
    '''Run the pipeline selected by ``--mode``.'''
    from vi_dynamics._errors import VIError
    from vi_dynamics.experiments.runner import cmd_run as run_config, report_error

    try:
        cfg = _config(args)
    except VIError as exc:
        return report_error(exc)
    return run_config(cfg)


def cmd_validate(args: argparse.Namespace) -> int:
    '''Validate the schedule described by the flags.'''
    from vi_dynamics._errors import VIError
    from vi_dynamics.experiments.runner import cmd_validate as validate_config, report_error

    try:
        cfg = _config(args, mode='validate')
    except VIError as exc:
        return report_error(exc)
    return validate_config(cfg)


def cmd_reproduce(args: argparse.Namespace) -> int:
    '''Regenerate one figure's data.'''
    from vi_dynamics.experiments.figures import cmd_reproduce as reproduce

    return reproduce(args.figure, args.outdir, t_end=args.t_end, max_iters=args.max_iters, workers=args.workers)


COMMANDS = {'run': cmd_run, 'validate': cmd_validate, 'reproduce': cmd_reproduce}


def main(argv: list[str] | None = None) -> int:
    '''Dispatch to a subcommand and return its exit code.'''
    from vi_dynamics.experiments.config import log_level

    logging.basicConfig(
        level=logging.getLevelNamesMapping().get(log_level(), logging.WARNING),
        format='%(levelname)s %(name)s: %(message)s',
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 1
    return COMMANDS[args.command](args)


if __name__ == '__main__':
    sys.exit(main())
