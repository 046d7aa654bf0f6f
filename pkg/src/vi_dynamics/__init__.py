'''Second-order dynamics and inertial projection methods for variational inequalities.

The problem is VI(U, Omega): find ``x*`` in a closed convex set Omega with
``<U(x*), a - x*> >= 0`` for every ``a`` in Omega, for a paramonotone
operator U. The package provides:

- **Problems** -- operators, feasible sets with exact projections, the
  normalized forward step, and the natural residual.
- **Schedules** -- coefficient families, custom and tabulated schedules,
  and validators reporting every admissibility condition.
- **Continuous dynamics** -- the damped second-order system, its Riccati
  reformulation that stays in Omega, and the first-order baseline.
- **Discrete methods** -- the inertial projection iteration and the
  direct projected method.
- **Diagnostics** -- energy series, CSV/JSON artifacts, and comparison
  tables.

Typical usage::

    from vi_dynamics import (
        builtin_problem,
        build_discrete_powerlawD,
        run_inertial,
        StopRule,
    )

    prob = builtin_problem('paper-sec5')
    sched = build_discrete_powerlawD(p=0.5, q=0.5, deltaP=1, thetaP=1, lambdaP=0.5)
    result = run_inertial(prob, sched, [1, 0, 0], [0, 1, 0], StopRule(residual_tol=1e-3))
'''

from vi_dynamics._errors import (
    ConditionError,
    ConfigurationError,
    DefinitionError,
    DivergenceError,
    EvaluationError,
    OutputError,
    ScheduleError,
    UnsupportedError,
    VIError,
)
from vi_dynamics.continuous import (
    IntegratorConfig,
    integrate_coupled_feasible,
    integrate_first_order_baseline,
    integrate_riccati,
    integrate_second_order,
)
from vi_dynamics.diagnostics import compare_methods, compute_energy, write_csv, write_summary_json
from vi_dynamics.discrete import StopRule, run_direct_method, run_inertial
from vi_dynamics.problems import (
    ProblemInstance,
    builtin_problem,
    load_problem,
    natural_residual,
    normalized_forward_step,
)
from vi_dynamics.schedules import (
    build_continuous_powerlawA,
    build_continuous_powerlawB,
    build_discrete_powerlawD,
    validate_continuous,
    validate_discrete,
)

__all__ = [
    'ConditionError',
    'ConfigurationError',
    'DefinitionError',
    'DivergenceError',
    'EvaluationError',
    'IntegratorConfig',
    'OutputError',
    'ProblemInstance',
    'ScheduleError',
    'StopRule',
    'UnsupportedError',
    'VIError',
    'build_continuous_powerlawA',
    'build_continuous_powerlawB',
    'build_discrete_powerlawD',
    'builtin_problem',
    'compare_methods',
    'compute_energy',
    'integrate_coupled_feasible',
    'integrate_first_order_baseline',
    'integrate_riccati',
    'integrate_second_order',
    'load_problem',
    'natural_residual',
    'normalized_forward_step',
    'run_direct_method',
    'run_inertial',
    'validate_continuous',
    'validate_discrete',
    'write_csv',
    'write_summary_json',
]
