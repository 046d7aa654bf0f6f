'''Configured runs and figure reproduction behind the ``vi-dynamics`` CLI.'''

from .config import RunConfig, output_dir
from .figures import FIGURES, cmd_reproduce
from .runner import build_schedule, cmd_run, cmd_validate, exit_code, load_run_problem

__all__ = [
    'FIGURES',
    'RunConfig',
    'build_schedule',
    'cmd_reproduce',
    'cmd_run',
    'cmd_validate',
    'exit_code',
    'load_run_problem',
    'output_dir',
]
