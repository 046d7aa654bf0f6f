import logging
import math

import numpy as np
import pytest

from vi_dynamics import ConfigurationError, DivergenceError, ScheduleError
from vi_dynamics.discrete import (
    IterateWindow,
    StopRule,
    backward_difference,
    difference_equation_residual,
    difference_identities_check,
    drive,
    forward_difference,
    identity_gaps,
    inertial_step,
    run_direct_method,
    run_inertial,
    second_difference,
    smoothing_point_discrete,
    step_weights,
)
from vi_dynamics.experiments.config import FIG3_GRID, FIG3_TAU, FIG3_TOL
from vi_dynamics.problems import (
    Box,
    ProblemInstance,
    Simplex,
    builtin_problem,
    linear_operator,
    normalized_forward_step,
    unit_ball,
)
from vi_dynamics.problems.builtin import SEC5_MATRIX, SEC5_X0, SEC5_X1
from vi_dynamics.schedules import build_discrete_powerlawD, custom_discrete_schedule


@pytest.fixture
def sec5_run(sec5, powerlaw_d):
    return run_inertial(sec5, powerlaw_d, SEC5_X0, SEC5_X1, StopRule(residual_tol=1e-3, max_iters=20_000))


def test_inertial_reaches_tolerance(sec5_run):
    assert sec5_run.stop_reason == 'tol'
    assert sec5_run.final_residual <= 1e-3
    assert sec5_run.iterations < 20_000
    assert sec5_run.records[-1].n == sec5_run.iterations
    assert sec5_run.method == 'inertial'


def test_inertial_iterates_stay_feasible(sec5_run):
    assert float(sec5_run.violations.max()) <= 1e-12


def test_inertial_log_starts_with_second_iterate(sec5_run):
    first = sec5_run.records[0]
    assert first.n == 1
    np.testing.assert_array_equal(first.z, SEC5_X1)
    assert first.step_norm == pytest.approx(math.sqrt(2.0))
    ns = sec5_run.indices[sec5_run.indices <= 1000]
    np.testing.assert_array_equal(ns, np.arange(1, ns.size + 1))


def test_inertial_is_deterministic(sec5, powerlaw_d):
    stop = StopRule(residual_tol=0.0, max_iters=200)
    a = run_inertial(sec5, powerlaw_d, SEC5_X0, SEC5_X1, stop)
    b = run_inertial(sec5, powerlaw_d, SEC5_X0, SEC5_X1, stop)
    np.testing.assert_array_equal(a.iterates, b.iterates)


def test_step_weights_sum_to_one(powerlaw_d):
    for n in (0, 1, 10, 1000):
        weights = step_weights(powerlaw_d, n)
        assert sum(weights) == pytest.approx(1.0)
        assert all(w >= 0 for w in weights)


def test_smoothing_point_discrete(identity_ball):
    window = IterateWindow(1, np.zeros(3), np.array([0.5, 0.0, 0.0]))
    plain = custom_discrete_schedule(0.1, 1.0, 0.5, 0.0)
    np.testing.assert_allclose(smoothing_point_discrete(identity_ball, plain, window), [0.45, 0.0, 0.0])
    damped = custom_discrete_schedule(0.1, 1.0, 0.5, -0.5)
    np.testing.assert_allclose(smoothing_point_discrete(identity_ball, damped, window), [0.225, 0.0, 0.0])


def test_difference_form_matches_step(sec5, powerlaw_d):
    window = IterateWindow(1, SEC5_X0, SEC5_X1)
    for _ in range(20):
        z_next = inertial_step(sec5, powerlaw_d, window)
        assert difference_equation_residual(sec5, powerlaw_d, window, z_next) <= 1e-12
        window = window.advance(z_next)
    assert window.n == 21


def test_max_iters_stop(sec5, powerlaw_d):
    run = run_inertial(sec5, powerlaw_d, SEC5_X0, SEC5_X1, StopRule(residual_tol=0.0, max_iters=50))
    assert run.stop_reason == 'max_iters'
    assert run.iterations == 50
    assert run.records[-1].n == 50
    assert len(run) == 50


def test_record_cadence_keeps_final_iterate(sec5, powerlaw_d):
    stop = StopRule(residual_tol=0.0, max_iters=95, record_every=10)
    run = run_inertial(sec5, powerlaw_d, SEC5_X0, SEC5_X1, stop)
    assert list(run.indices) == [1, 10, 20, 30, 40, 50, 60, 70, 80, 90, 95]


def test_stagnation_stop(sec5, powerlaw_d):
    stop = StopRule(residual_tol=0.0, max_iters=10_000, stagnation_tol=1e-1, stagnation_window=3)
    run = run_inertial(sec5, powerlaw_d, SEC5_X0, SEC5_X1, stop)
    assert run.stop_reason == 'stagnation'
    assert np.all(run.step_norms[-3:] <= 1e-1)


def test_start_at_solution(sec5, powerlaw_d):
    run = run_inertial(sec5, powerlaw_d, np.zeros(3), np.zeros(3))
    assert run.stop_reason == 'tol'
    assert run.iterations == 1
    assert len(run) == 1


def test_infeasible_start_rejected(sec5, powerlaw_d):
    with pytest.raises(ValueError):
        run_inertial(sec5, powerlaw_d, [2.0, 0.0, 0.0], SEC5_X1)


def test_positive_eta(sec5, caplog):
    sched = custom_discrete_schedule(0.1, 1.0, 0.5, 0.1)
    stop = StopRule(residual_tol=0.0, max_iters=20)
    with pytest.raises(ScheduleError):
        run_inertial(sec5, sched, SEC5_X0, SEC5_X1, stop)
    with caplog.at_level(logging.WARNING, logger='vi_dynamics.discrete.inertial'):
        run = run_inertial(sec5, sched, SEC5_X0, SEC5_X1, stop, allow_positive_eta=True)
    assert run.iterations == 20
    assert sum('eta(1)' in r.getMessage() for r in caplog.records) == 1


def test_tabulated_schedule_exhausted(sec5):
    sched = custom_discrete_schedule([0.1] * 5, [1.2] * 5, [0.5] * 5, [-0.1] * 5)
    with pytest.raises(ScheduleError):
        run_inertial(sec5, sched, SEC5_X0, SEC5_X1, StopRule(residual_tol=0.0, max_iters=100))


def test_direct_method_first_step(sec5):
    run = run_direct_method(sec5, 0.75, SEC5_X0, StopRule(residual_tol=0.0, max_iters=2))
    assert run.method == 'direct'
    assert run.records[0].n == 1
    assert run.records[0].step_norm == 0.0
    np.testing.assert_allclose(run.final, normalized_forward_step(sec5, SEC5_X0, 1.0))


def test_direct_method_on_identity(identity_ball):
    run = run_direct_method(identity_ball, 0.75, [1.0, 0.0, 0.0])
    assert run.stop_reason == 'tol'
    assert run.iterations == 2
    np.testing.assert_array_equal(run.final, np.zeros(3))


def test_direct_method_stays_feasible(sec5):
    run = run_direct_method(sec5, 0.75, SEC5_X0, StopRule(residual_tol=1e-3, max_iters=5000))
    assert run.stop_reason in ('tol', 'max_iters')
    assert float(run.violations.max()) <= 1e-12


def test_direct_method_rejects_tau(sec5):
    with pytest.raises(ScheduleError):
        run_direct_method(sec5, 0.5, SEC5_X0)


def test_drive_reports_divergence(sec5):
    window = IterateWindow(1, SEC5_X0, SEC5_X1)
    with pytest.raises(DivergenceError) as err:
        drive(sec5, lambda w: np.full(3, np.nan), window, StopRule(residual_tol=0.0), method='test')
    assert err.value.last_valid == 1
    np.testing.assert_array_equal(err.value.state, SEC5_X1)


def test_run_frame_columns(sec5_run):
    df = sec5_run.to_frame()
    assert df.columns == ['n', 'z_1', 'z_2', 'z_3', 'residual', 'feas_violation', 'step_norm']
    assert df.height == len(sec5_run)


@pytest.mark.parametrize('kwargs, key', [
    ({'residual_tol': -1.0}, 'residual_tol'),
    ({'max_iters': 0}, 'max_iters'),
    ({'stagnation_tol': -1.0}, 'stagnation_tol'),
    ({'stagnation_window': 0}, 'stagnation_window'),
    ({'record_every': 0}, 'record_every'),
])
def test_stop_rule_rejects(kwargs, key):
    with pytest.raises(ConfigurationError) as err:
        StopRule(**kwargs)
    assert err.value.key == key


def test_differences():
    z = (np.arange(5.0) ** 2)[:, None]
    fz, bz, sz = forward_difference(z), backward_difference(z), second_difference(z)
    assert fz[2, 0] == 5.0
    assert bz[2, 0] == 3.0
    assert sz[2, 0] == 2.0
    assert np.isnan(fz[-1, 0]) and np.isnan(bz[0, 0])
    assert np.isnan(sz[0, 0]) and np.isnan(sz[-1, 0])
    np.testing.assert_array_equal(fz[:-1], bz[1:])


def test_difference_identities(rng):
    assert difference_identities_check(seed=0, trials=1000)
    h, g, z = rng.standard_normal((3, 6, 2))
    assert max(identity_gaps(h, g, z).values()) <= 1e-12


@pytest.fixture(scope='module')
def sec5_long_run():
    prob = builtin_problem('paper-sec5')
    sched = build_discrete_powerlawD(p=0.5, q=0.5, deltaP=1.0, thetaP=1.0, lambdaP=0.5, omega=5.0)
    return run_inertial(prob, sched, SEC5_X0, SEC5_X1, StopRule(residual_tol=0.0, max_iters=100_000))


def test_step_norm_vanishes(sec5_long_run):
    assert sec5_long_run.iterations == 100_000
    assert sec5_long_run.records[-1].step_norm < 1e-6


def test_running_min_residual(sec5_long_run):
    lows = np.minimum.accumulate(sec5_long_run.residuals)
    assert np.all(np.diff(lows) <= 0)
    assert lows[-1] <= 1e-5
    at_1e4 = lows[sec5_long_run.indices == 10_000][0]
    assert lows[-1] < at_1e4


def test_inertial_on_identity_ball(identity_ball, powerlaw_d):
    start = np.array([1.0, 0.0, 0.0])
    run = run_inertial(identity_ball, powerlaw_d, start, start, StopRule(residual_tol=1e-3, max_iters=100_000))
    assert run.stop_reason == 'tol'
    assert np.linalg.norm(run.final) <= 1e-3
    assert float(run.violations.max()) <= 1e-12


def _random_admissible(rng, length):
    xi = rng.uniform(0.0, 1.0, length)
    beta1 = 1.0 + rng.uniform(0.0, 1.0, length) * (1.0 - xi)
    beta0 = rng.uniform(0.01, 1.0, length)
    eta = -rng.uniform(0.0, 1.0, length)
    return custom_discrete_schedule(beta0, beta1, xi, eta)


@pytest.mark.parametrize('feasible', [
    unit_ball(3),
    Box([-1.0, 0.0, 0.5], [1.0, 2.0, 1.5]),
    Simplex(3),
], ids=['ball', 'box', 'simplex'])
def test_random_schedules_stay_feasible(feasible):
    rng = np.random.default_rng(2024)
    prob = ProblemInstance(operator=linear_operator(SEC5_MATRIX), set=feasible)
    stop = StopRule(residual_tol=0.0, max_iters=2000)
    worst = 0.0
    for _ in range(20):
        sched = _random_admissible(rng, 2001)
        z0, z1 = feasible.sample(rng, 2)
        run = run_inertial(prob, sched, z0, z1, stop)
        worst = max(worst, float(run.violations.max()))
    assert worst <= 1e-12


def test_smoothing_base_point_feasible(sec5, powerlaw_d):
    window = IterateWindow(1, SEC5_X0, SEC5_X1)
    for _ in range(300):
        _, _, _, eta = powerlaw_d.at(window.n)
        assert -1.0 <= eta <= 0.0
        base = window.z_curr + eta * window.backward_difference
        assert sec5.set.violation(base) <= 1e-10
        window = window.advance(inertial_step(sec5, powerlaw_d, window))


@pytest.mark.parametrize('deltaP, thetaP, lambdaP', FIG3_GRID)
def test_direct_method_needs_fewer_iterations(sec5, deltaP, thetaP, lambdaP):
    # xi * beta0 ~ 1/(n + omega): inertial step mass grows like log n, direct like n^(1/4)
    sched = build_discrete_powerlawD(p=0.5, q=0.5, deltaP=deltaP, thetaP=thetaP, lambdaP=lambdaP)
    stop = StopRule(residual_tol=FIG3_TOL, max_iters=10_000)
    inertial = run_inertial(sec5, sched, SEC5_X0, SEC5_X1, stop)
    direct = run_direct_method(sec5, FIG3_TAU, SEC5_X0, stop)
    assert inertial.stop_reason == 'tol'
    assert direct.stop_reason == 'tol'
    assert direct.iterations < inertial.iterations
