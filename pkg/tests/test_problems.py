import json
import math

import numpy as np
import pytest

from vi_dynamics import ConfigurationError, DefinitionError, EvaluationError
from vi_dynamics.problems import (
    Ball,
    Box,
    Interval,
    ProblemInstance,
    Simplex,
    builtin_problem,
    callback_operator,
    default_starts,
    distance_to_reference,
    evaluate_operator,
    identity_operator,
    linear_operator,
    load_problem,
    membership_violation,
    monotonicity_probe,
    natural_residual,
    normalized_forward_step,
    project,
    require_feasible,
    rotation_operator,
    unit_ball,
)
from vi_dynamics.problems.builtin import SEC5_MATRIX


@pytest.mark.parametrize('x, expected', [
    ([1.0, 0.0, 0.0], [1.0, 3.0, 1.0]),
    ([0.0, 0.0, 0.0], [0.0, 0.0, 0.0]),
    ([0.0, 1.0, 0.0], [-2.0, 1.0, -2.0]),
])
def test_linear_operator_columns(x, expected):
    op = linear_operator(SEC5_MATRIX)
    np.testing.assert_array_equal(evaluate_operator(op, np.array(x)), expected)


def test_operator_dimension_mismatch():
    with pytest.raises(DefinitionError):
        evaluate_operator(identity_operator(3), np.zeros(2))


def test_callback_non_finite_output():
    op = callback_operator(lambda x: x / 0.0, dimension=2, name='bad')
    with np.errstate(divide='ignore', invalid='ignore'):
        with pytest.raises(EvaluationError):
            evaluate_operator(op, np.zeros(2))


def test_non_square_matrix_rejected():
    with pytest.raises(DefinitionError):
        linear_operator([[1.0, 2.0]])


def test_projection_examples():
    np.testing.assert_allclose(project(unit_ball(3), np.array([2.0, 0.0, 0.0])), [1.0, 0.0, 0.0])
    np.testing.assert_array_equal(project(unit_ball(3), np.array([0.3, 0.4, 0.0])), [0.3, 0.4, 0.0])
    box = Box(lower=[0.0, 0.0], upper=[1.0, 1.0])
    np.testing.assert_array_equal(project(box, np.array([-1.0, 0.5])), [0.0, 0.5])


def test_membership_violation():
    assert membership_violation(unit_ball(3), np.array([2.0, 0.0, 0.0])) == pytest.approx(1.0)
    assert membership_violation(unit_ball(3), np.array([0.3, 0.4, 0.0])) == 0.0
    box = Box(lower=[0.0, 0.0], upper=[1.0, 1.0])
    assert membership_violation(box, np.array([1.5, -0.25])) == pytest.approx(0.5)
    assert box.contains(np.array([1.0, 0.0]))


def test_projection_dimension_mismatch():
    with pytest.raises(DefinitionError):
        unit_ball(3).project(np.zeros(2))


@pytest.mark.parametrize('feasible', [
    unit_ball(3),
    Ball(center=[1.0, -2.0], radius=0.5),
    Box(lower=[-1.0, 0.0, 2.0], upper=[1.0, 0.5, 3.0]),
    Simplex(dim=4, scale=2.0),
    Interval(1.0, 2.0),
], ids=['unit-ball', 'ball', 'box', 'simplex', 'interval'])
def test_projection_is_firmly_nonexpansive(feasible, rng):
    d = feasible.dimension
    pts = 3.0 * rng.standard_normal((1000, 2, d))
    for a, b in pts:
        pa, pb = feasible.project(a), feasible.project(b)
        assert feasible.violation(pa) <= 1e-12
        np.testing.assert_allclose(feasible.project(pa), pa, atol=1e-12)
        diff = pa - pb
        assert diff @ diff <= diff @ (a - b) + 1e-12


@pytest.mark.parametrize('feasible', [
    unit_ball(3),
    Box(lower=[-1.0, 0.0], upper=[1.0, 0.5]),
    Simplex(dim=3),
    Interval(1.0, 2.0),
], ids=['ball', 'box', 'simplex', 'interval'])
def test_samples_are_feasible(feasible, rng):
    for x in feasible.sample(rng, 200):
        assert feasible.contains(x)


def test_simplex_projection_values():
    s = Simplex(dim=3)
    np.testing.assert_allclose(s.project(np.array([2.0, 0.0, 0.0])), [1.0, 0.0, 0.0])
    np.testing.assert_allclose(s.project(np.array([0.5, 0.5, 0.5])), [1 / 3, 1 / 3, 1 / 3])


def test_invalid_sets_rejected():
    with pytest.raises(DefinitionError):
        Ball(center=[0.0], radius=0.0)
    with pytest.raises(DefinitionError):
        Box(lower=[1.0], upper=[0.0])
    with pytest.raises(DefinitionError):
        Simplex(dim=2, scale=-1.0)
    with pytest.raises(DefinitionError):
        Interval(2.0, 1.0)


def test_normalized_step_at_solution(sec5):
    np.testing.assert_array_equal(normalized_forward_step(sec5, np.zeros(3), 1.0), np.zeros(3))


@pytest.mark.parametrize('alpha, expected', [(0.25, 0.375), (0.5, 0.25)])
def test_normalized_step_small_operator(identity_ball, alpha, expected):
    # ||U(base)|| = 0.5 <= 1, so the step is not rescaled
    out = normalized_forward_step(identity_ball, np.array([0.5, 0.0, 0.0]), alpha)
    np.testing.assert_allclose(out, [expected, 0.0, 0.0])


def test_normalized_step_rescales_large_operator(sec5):
    base = np.array([1.0, 0.0, 0.0])
    v = base - np.array([1.0, 3.0, 1.0]) / math.sqrt(11.0)
    expected = v / np.linalg.norm(v)
    np.testing.assert_allclose(normalized_forward_step(sec5, base, 1.0), expected)


def test_normalized_step_alpha_edge_cases(identity_ball):
    base = np.array([2.0, 0.0, 0.0])
    np.testing.assert_allclose(normalized_forward_step(identity_ball, base, 0.0), [1.0, 0.0, 0.0])
    with pytest.raises(DefinitionError):
        normalized_forward_step(identity_ball, base, -0.1)


def test_natural_residual(sec5, identity_ball):
    assert natural_residual(sec5, np.zeros(3)) == 0.0
    assert natural_residual(identity_ball, np.array([0.5, 0.0, 0.0])) == pytest.approx(0.5)
    assert distance_to_reference(identity_ball, np.array([0.0, 0.6, 0.8])) == pytest.approx(1.0)


def test_problem_instance_invariants():
    with pytest.raises(DefinitionError):
        ProblemInstance(operator=identity_operator(2), set=unit_ball(3))
    with pytest.raises(DefinitionError):
        ProblemInstance(operator=identity_operator(2), set=unit_ball(2), reference_solution=[2.0, 0.0])
    with pytest.raises(DefinitionError):
        ProblemInstance(operator=identity_operator(2), set=unit_ball(2), reference_solution=[0.5, 0.0])


def test_require_feasible(sec5):
    np.testing.assert_array_equal(require_feasible(sec5, [0.0, 1.0, 0.0], 'x0'), [0.0, 1.0, 0.0])
    with pytest.raises(DefinitionError, match='x0'):
        require_feasible(sec5, [2.0, 0.0, 0.0], 'x0')
    with pytest.raises(DefinitionError):
        require_feasible(sec5, [0.0, 0.0], 'x0')


def test_probe_accepts_benchmark_matrix(sec5):
    report = monotonicity_probe(sec5.operator, sec5.set, samples=1000, seed=0)
    assert report.min_inner >= -1e-10
    assert report.paramono_witnesses == 0
    assert report.passed


def test_probe_flags_rotation():
    report = monotonicity_probe(rotation_operator(), unit_ball(2), samples=1000, seed=0)
    assert report.monotone
    assert report.paramono_witnesses > 0
    assert not report.passed


def test_probe_is_seeded(sec5):
    a = monotonicity_probe(sec5.operator, sec5.set, samples=100, seed=7)
    b = monotonicity_probe(sec5.operator, sec5.set, samples=100, seed=7)
    assert a == b


def test_builtin_problems():
    remark = builtin_problem('remark-counterexample')
    assert remark.dimension == 1
    np.testing.assert_array_equal(normalized_forward_step(remark, np.array([1.7]), 10.0), [1.0])
    with pytest.raises(ConfigurationError) as err:
        builtin_problem('nope')
    assert err.value.key == 'problem'


def test_default_starts(sec5, remark):
    x0, x1 = default_starts(sec5)
    np.testing.assert_array_equal(x0, [1.0, 0.0, 0.0])
    np.testing.assert_array_equal(x1, [0.0, 1.0, 0.0])
    x0, x1 = default_starts(remark)
    np.testing.assert_array_equal(x0, [2.0])
    np.testing.assert_array_equal(x1, [2.0])


def test_load_problem(tmp_path):
    doc = {
        'dimension': 2,
        'operator': {'kind': 'linear', 'matrix': [[2.0, 0.0], [0.0, 1.0]]},
        'set': {'kind': 'box', 'params': {'lower': [-1.0, -1.0], 'upper': [1.0, 1.0]}},
        'reference_solution': [0.0, 0.0],
    }
    path = tmp_path / 'diag.json'
    path.write_text(json.dumps(doc))
    prob = load_problem(path)
    assert prob.name == 'diag'
    assert prob.set.kind == 'box'
    np.testing.assert_array_equal(evaluate_operator(prob.operator, np.array([1.0, 1.0])), [2.0, 1.0])


def test_load_problem_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        load_problem(tmp_path / 'missing.json')
    bad = tmp_path / 'bad.json'
    bad.write_text('{not json')
    with pytest.raises(ConfigurationError):
        load_problem(bad)
    odd = tmp_path / 'odd.json'
    odd.write_text(json.dumps({'dimension': 1, 'operator': {'kind': 'identity'}, 'set': {'kind': 'torus'}}))
    with pytest.raises(DefinitionError):
        load_problem(odd)
