import numpy as np
import pytest

from vi_dynamics import (
    ConditionError,
    ConfigurationError,
    DefinitionError,
    DivergenceError,
    IntegratorConfig,
    integrate_coupled_feasible,
    integrate_first_order_baseline,
    integrate_riccati,
    integrate_second_order,
)
from vi_dynamics.continuous import (
    SecondOrderState,
    counterexample_oracle,
    counterexample_velocity,
    oracle_deviation,
    quarter_velocity,
    remark_schedule,
    rhs_second_order,
    smoothing_point,
    time_grid,
)
from vi_dynamics.problems.builtin import SEC5_VELOCITY, SEC5_X0, SEC5_X1
from vi_dynamics.schedules import constant_schedule


def test_time_grid_keeps_end_point():
    np.testing.assert_allclose(time_grid(0.0, 1.0, 0.3), [0.0, 0.3, 0.6, 0.9, 1.0])
    assert time_grid(0.0, 1.0, 0.25).size == 5
    with pytest.raises(ConfigurationError):
        time_grid(1.0, 1.0, 0.1)


@pytest.mark.parametrize('kwargs, key', [
    ({'step': 0.0}, 'step'),
    ({'method': 'leapfrog'}, 'method'),
    ({'record_every': 0}, 'record_every'),
    ({'velocity_mode': 'half'}, 'velocity_mode'),
])
def test_integrator_config_rejects(kwargs, key):
    with pytest.raises(ConfigurationError) as err:
        IntegratorConfig(**kwargs)
    assert err.value.key == key


def test_quarter_velocity(powerlaw_b):
    v = quarter_velocity(powerlaw_b, SEC5_X0, SEC5_X1)
    np.testing.assert_allclose(v, 0.875 * (SEC5_X1 - SEC5_X0))


def test_remark_smoothing_point_is_one(remark):
    y = smoothing_point(remark, remark_schedule(), 0.0, np.array([1.5]), np.array([0.3]))
    np.testing.assert_array_equal(y, [1.0])
    dx, dv = rhs_second_order(remark, remark_schedule(), 0.0, SecondOrderState(0.0, np.array([2.0]), np.array([0.0])))
    np.testing.assert_array_equal(dx, [0.0])
    np.testing.assert_allclose(dv, [-2.0])


def test_remark_run_matches_closed_form(remark):
    cfg = IntegratorConfig(step=1e-3, t_end=10.0)
    traj = integrate_second_order(remark, remark_schedule(), [2.0], velocity=[0.0], cfg=cfg)
    assert oracle_deviation(traj) <= 1e-6
    np.testing.assert_allclose(traj.speeds, np.abs(counterexample_velocity(traj.times)), atol=1e-6)


def test_remark_run_leaves_the_interval(remark):
    cfg = IntegratorConfig(step=1e-3, t_end=5.0)
    traj = integrate_second_order(remark, remark_schedule(), [2.0], [2.0], cfg=cfg)
    ts, viol = traj.times, traj.violations
    inside = (ts > np.pi + 1e-3) & (ts < 1.5 * np.pi - 1e-3)
    assert np.all(viol[inside] > 0)
    assert np.all(viol[ts < 0.75 * np.pi - 1e-3] == 0)
    x_pi = np.interp(np.pi, ts, traj.positions[:, 0])
    assert x_pi == pytest.approx(1.0 - np.exp(-np.pi), abs=1e-6)
    assert counterexample_oracle(np.pi) == pytest.approx(0.956786, abs=1e-6)


def test_remark_schedule_fails_riccati_margin():
    with pytest.raises(ConditionError) as err:
        integrate_riccati(remark_schedule(), t_end=5.0)
    assert err.value.t == 0.0


def test_riccati_constant_schedule_converges_monotonically():
    table = integrate_riccati(constant_schedule(1.0, 2.5, 1.0), t_end=100.0, step=1e-2)
    assert table.gamma[0] == pytest.approx(0.625)
    assert np.all(np.diff(table.gamma) <= 1e-15)
    assert table.gamma[-1] == pytest.approx(0.5, abs=1e-4)
    np.testing.assert_allclose(table.mu, table.delta / table.gamma)


def test_riccati_powerlawB_stays_in_bounds(powerlaw_b):
    table = integrate_riccati(powerlaw_b, t_end=100.0, step=1e-2)
    assert table.gamma[0] == pytest.approx(0.875)
    assert np.all(table.gamma > 0)
    assert np.all(table.gamma < table.alpha1 / 2)
    a1 = table.alpha1[-1]
    root = (a1 - np.sqrt(a1 ** 2 - 4.0)) / 2
    assert table.gamma[-1] == pytest.approx(root, abs=1e-4)


def test_riccati_table_interpolates(powerlaw_b):
    table = integrate_riccati(powerlaw_b, t_end=2.0, step=0.5)
    assert table.at(0.5) == table.gamma[1]
    assert table.at(0.25) == pytest.approx(0.5 * (table.gamma[0] + table.gamma[1]))


def test_second_order_records_columns(sec5, powerlaw_b):
    cfg = IntegratorConfig(step=1e-2, t_end=1.05, record_every=10)
    traj = integrate_second_order(sec5, powerlaw_b, SEC5_X0, SEC5_X1, cfg)
    assert len(traj) == 12
    assert traj.times[-1] == pytest.approx(1.05)
    df = traj.to_frame()
    assert df.columns == ['t', 'x_1', 'x_2', 'x_3', 'residual', 'feas_violation', 'speed']
    assert df.height == 12


def test_second_order_explicit_velocity(sec5, powerlaw_b):
    cfg = IntegratorConfig(step=1e-2, t_end=0.5, velocity_mode='explicit')
    traj = integrate_second_order(sec5, powerlaw_b, SEC5_X0, velocity=SEC5_VELOCITY, cfg=cfg)
    np.testing.assert_array_equal(traj.samples[0].state.v, SEC5_VELOCITY)
    with pytest.raises(ConfigurationError) as err:
        integrate_second_order(sec5, powerlaw_b, SEC5_X0, SEC5_X1, cfg)
    assert err.value.key == 'velocity'


def test_second_order_needs_feasible_start(sec5, powerlaw_b):
    with pytest.raises(DefinitionError):
        integrate_second_order(sec5, powerlaw_b, [2.0, 0.0, 0.0], SEC5_X1)
    with pytest.raises(ConfigurationError) as err:
        integrate_second_order(sec5, powerlaw_b, SEC5_X0)
    assert err.value.key == 'x1'


def test_rk4_is_fourth_order(remark):
    sched = remark_schedule()
    errors = []
    for step in (0.05, 0.025):
        cfg = IntegratorConfig(step=step, t_end=4.0)
        traj = integrate_second_order(remark, sched, [2.0], velocity=[0.0], cfg=cfg)
        errors.append(oracle_deviation(traj))
    assert 8.0 <= errors[0] / errors[1] <= 32.0


def test_euler_is_first_order(remark):
    sched = remark_schedule()
    errors = []
    for step in (0.02, 0.01):
        cfg = IntegratorConfig(step=step, t_end=4.0, method='euler')
        traj = integrate_second_order(remark, sched, [2.0], velocity=[0.0], cfg=cfg)
        errors.append(oracle_deviation(traj))
    assert 1.5 <= errors[0] / errors[1] <= 2.5


def test_divergence_reports_last_valid_time(sec5):
    sched = constant_schedule(1.0, 2.5, 1.0)
    cfg = IntegratorConfig(step=1.0, t_end=50.0, velocity_mode='explicit')
    with np.errstate(all='ignore'):
        with pytest.raises(DivergenceError) as err:
            integrate_second_order(sec5, sched, SEC5_X0, velocity=[1e308, 0.0, 0.0], cfg=cfg)
    assert err.value.last_valid == 0.0


def test_coupled_run_stays_feasible(sec5, powerlaw_b):
    cfg = IntegratorConfig(step=1e-2, t_end=20.0)
    traj = integrate_coupled_feasible(sec5, powerlaw_b, SEC5_X0, SEC5_X1, cfg)
    assert traj.kind == 'coupled'
    assert float(traj.violations.max()) <= 1e-12
    assert traj.residuals[-1] < traj.residuals[0]


def test_coupled_run_stays_feasible_with_euler(sec5, powerlaw_b):
    cfg = IntegratorConfig(step=2e-2, t_end=10.0, method='euler')
    traj = integrate_coupled_feasible(sec5, powerlaw_b, SEC5_X0, SEC5_X1, cfg)
    assert float(traj.violations.max()) <= 1e-12


def test_coupled_run_agrees_with_second_order(sec5, powerlaw_b):
    cfg = IntegratorConfig(step=1e-3, t_end=10.0, record_every=10)
    coupled = integrate_coupled_feasible(sec5, powerlaw_b, SEC5_X0, SEC5_X1, cfg)
    direct = integrate_second_order(sec5, powerlaw_b, SEC5_X0, SEC5_X1, cfg)
    np.testing.assert_allclose(coupled.times, direct.times)
    gap = float(np.max(np.abs(coupled.positions - direct.positions)))
    assert gap <= 1e-3
    fine = IntegratorConfig(step=5e-4, t_end=10.0, record_every=20)
    coupled = integrate_coupled_feasible(sec5, powerlaw_b, SEC5_X0, SEC5_X1, fine)
    direct = integrate_second_order(sec5, powerlaw_b, SEC5_X0, SEC5_X1, fine)
    np.testing.assert_allclose(coupled.times, direct.times)
    assert float(np.max(np.abs(coupled.positions - direct.positions))) < gap


def test_coupled_damped_point_stays_feasible(sec5):
    lam = 0.5
    traj = integrate_coupled_feasible(
        sec5, constant_schedule(1.0, 2.5, 1.0, lam=lam), SEC5_X0, SEC5_X1, IntegratorConfig(step=1e-2, t_end=20.0)
    )
    for sample in traj.samples:
        s = sample.state
        assert lam * s.gamma <= 1.0
        # x + lam x' with x' = gamma (u - x)
        base = s.x + lam * s.gamma * (s.u - s.x)
        assert sec5.set.violation(base) <= 1e-12


def test_coupled_run_rejects_large_step(sec5):
    cfg = IntegratorConfig(step=0.9, t_end=4.5)
    with pytest.raises(ConfigurationError) as err:
        integrate_coupled_feasible(sec5, constant_schedule(1.0, 2.5, 1.0), SEC5_X0, SEC5_X1, cfg)
    assert err.value.key == 'step'


def test_coupled_run_needs_riccati_margin(remark):
    with pytest.raises(ConditionError):
        integrate_coupled_feasible(remark, remark_schedule(), [2.0], [2.0], IntegratorConfig(t_end=5.0))


def test_first_order_baseline_decays(identity_ball):
    cfg = IntegratorConfig(step=1e-2, t_end=20.0)
    traj = integrate_first_order_baseline(identity_ball, 1.0, 1.0, [1.0, 0.0, 0.0], cfg)
    assert traj.kind == 'first-order'
    assert float(traj.violations.max()) <= 1e-12
    assert traj.residuals[-1] < 1e-6
    assert traj.positions[-1, 0] == pytest.approx(np.exp(-20.0), rel=1e-2)


def test_first_order_baseline_checks_step(identity_ball):
    with pytest.raises(ConfigurationError) as err:
        integrate_first_order_baseline(identity_ball, 3.0, 1.0, [1.0, 0.0, 0.0], IntegratorConfig(step=0.5, t_end=2.0))
    assert err.value.key == 'step'
