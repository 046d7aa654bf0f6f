'''Discrete-time methods: the inertial projection iteration and the direct
projected method, both driven by one stopping rule and logged the same way.
'''

from .differences import (
    backward_difference,
    difference_identities_check,
    forward_difference,
    identity_gaps,
    second_difference,
)
from .direct import run_direct_method
from .inertial import (
    difference_equation_residual,
    inertial_step,
    run_inertial,
    smoothing_point_discrete,
    step_weights,
)
from .window import IterateRecord, IterateWindow, RunResult, StopRule, drive

__all__ = [
    'IterateRecord',
    'IterateWindow',
    'RunResult',
    'StopRule',
    'backward_difference',
    'difference_equation_residual',
    'difference_identities_check',
    'drive',
    'forward_difference',
    'identity_gaps',
    'inertial_step',
    'run_direct_method',
    'run_inertial',
    'second_difference',
    'smoothing_point_discrete',
    'step_weights',
]
