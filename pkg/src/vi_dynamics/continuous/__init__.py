'''Continuous-time dynamics: the second-order system and its relatives.

- :func:`integrate_second_order` -- fixed-step RK4/Euler on ``(x, x')``;
  feasibility is recorded, not enforced.
- :func:`integrate_riccati` -- the scalar ``gamma`` equation.
- :func:`integrate_coupled_feasible` -- the ``(x, u)`` reformulation with
  convex-combination steps that never leave Omega.
- :func:`integrate_first_order_baseline` -- the projected first-order flow.
- :func:`counterexample_oracle` -- closed form of the infeasible 1-D run.
'''

from .config import IntegratorConfig, time_grid
from .counterexample import (
    counterexample_oracle,
    counterexample_velocity,
    oracle_deviation,
    remark_schedule,
)
from .coupled import integrate_coupled_feasible
from .first_order import integrate_first_order_baseline
from .riccati import RiccatiTable, integrate_riccati
from .second_order import (
    integrate_second_order,
    quarter_velocity,
    rhs_second_order,
    smoothing_point,
)
from .trajectory import (
    ContinuousTrajectory,
    CoupledState,
    FirstOrderState,
    SecondOrderState,
    TrajectorySample,
)

__all__ = [
    'ContinuousTrajectory',
    'CoupledState',
    'FirstOrderState',
    'IntegratorConfig',
    'RiccatiTable',
    'SecondOrderState',
    'TrajectorySample',
    'counterexample_oracle',
    'counterexample_velocity',
    'integrate_coupled_feasible',
    'integrate_first_order_baseline',
    'integrate_riccati',
    'integrate_second_order',
    'oracle_deviation',
    'quarter_velocity',
    'remark_schedule',
    'rhs_second_order',
    'smoothing_point',
    'time_grid',
]
