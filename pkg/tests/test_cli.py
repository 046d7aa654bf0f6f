import json

import numpy as np
import polars as pl
import pytest

from vi_dynamics import ConditionError, ConfigurationError, DivergenceError, ScheduleError
from vi_dynamics.__main__ import main
from vi_dynamics.experiments import RunConfig, exit_code


def test_no_command_prints_help(capsys):
    assert main([]) == 1
    assert 'reproduce' in capsys.readouterr().out


def test_bad_flag_exits_1():
    with pytest.raises(SystemExit) as err:
        main(['run', '--step', 'fast'])
    assert err.value.code == 1


def test_run_discrete_inertial(tmp_path, capsys):
    code = main(['run', '--mode', 'discrete-inertial', '--tol', '1e-3', '--max-iters', '2000',
                 '--outdir', str(tmp_path)])
    assert code == 0
    stem = tmp_path / 'paper-sec5_discrete-inertial'
    assert f'Wrote {stem}.csv' in capsys.readouterr().out
    df = pl.read_csv(f'{stem}.csv')
    assert df['n'][0] == 1
    assert df['feas_violation'].max() <= 1e-12
    energy = pl.read_csv(f'{stem}_energy.csv')
    assert energy.columns == ['n', 'v_ref', 'b', 'a', 'c']
    summary = json.loads((tmp_path / 'paper-sec5_discrete-inertial.summary.json').read_text())
    assert summary['stop_reason'] == 'tol'
    assert summary['final_residual'] <= 1e-3
    assert summary['config']['residual_tol'] == 1e-3


def test_run_remark_leaves_interval(tmp_path):
    code = main(['run', '--problem', 'remark-counterexample', '--mode', 'continuous-second-order',
                 '--t-end', '4.8', '--outdir', str(tmp_path)])
    assert code == 0
    df = pl.read_csv(tmp_path / 'remark-counterexample_continuous-second-order.csv')
    window = df.filter((pl.col('t') > np.pi) & (pl.col('t') < 1.5 * np.pi))
    assert window.height > 0
    assert window['feas_violation'].max() > 0


def test_run_coupled_is_feasible(tmp_path):
    code = main(['run', '--mode', 'continuous-coupled', '--t-end', '5', '--outdir', str(tmp_path)])
    assert code == 0
    df = pl.read_csv(tmp_path / 'paper-sec5_continuous-coupled.csv')
    assert df['feas_violation'].max() <= 1e-12
    assert df['t'][-1] == pytest.approx(5.0)


def test_run_first_order(tmp_path):
    code = main(['run', '--mode', 'continuous-first-order', '--t-end', '2', '--outdir', str(tmp_path)])
    assert code == 0
    summary = json.loads((tmp_path / 'paper-sec5_continuous-first-order.summary.json').read_text())
    assert summary['method'] == 'first-order/rk4'
    assert summary['iterations'] == 200


def test_run_compare(tmp_path):
    code = main(['run', '--mode', 'compare', '--tol', '1e-3', '--max-iters', '2000', '--outdir', str(tmp_path)])
    assert code == 0
    table = pl.read_csv(tmp_path / 'paper-sec5_compare.csv', schema_overrides={'iters_to_tol': pl.Utf8})
    assert table['method'].to_list() == ['inertial', 'direct']
    assert (tmp_path / 'paper-sec5_compare_inertial.csv').exists()


def test_run_uses_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv('VI_DYNAMICS_OUTPUT_DIR', str(tmp_path / 'env'))
    code = main(['run', '--mode', 'discrete-direct', '--tol', '0', '--max-iters', '20'])
    assert code == 0
    summary = json.loads((tmp_path / 'env' / 'paper-sec5_discrete-direct.summary.json').read_text())
    assert summary['method'] == 'direct'
    assert summary['iterations'] == 20


def test_run_from_config_file(tmp_path):
    config = tmp_path / 'run.json'
    config.write_text(json.dumps({'mode': 'discrete-inertial', 'max_iters': 40, 'residual_tol': 0}))
    code = main(['run', '--config', str(config), '--max-iters', '25', '--outdir', str(tmp_path)])
    assert code == 0
    summary = json.loads((tmp_path / 'paper-sec5_discrete-inertial.summary.json').read_text())
    assert summary['stop_reason'] == 'max_iters'
    assert summary['iterations'] == 25


def test_run_config_errors(tmp_path, capsys):
    config = tmp_path / 'run.json'
    config.write_text(json.dumps({'speed': 3}))
    assert main(['run', '--config', str(config)]) == 1
    assert 'Configuration error (speed)' in capsys.readouterr().out
    assert main(['run', '--problem', 'nowhere.json', '--outdir', str(tmp_path)]) == 1
    assert main(['run', '--mode', 'continuous-coupled', '--family', 'powerlawD', '--outdir', str(tmp_path)]) == 1


def test_run_rejected_schedule_exits_2(tmp_path, capsys):
    code = main(['run', '--mode', 'discrete-inertial', '--family', 'powerlawD', '--p', '0.5', '--q', '0.9',
                 '--deltaP', '1', '--thetaP', '1', '--lambdaP', '0.5', '--outdir', str(tmp_path)])
    assert code == 2
    assert 'Schedule rejected: q<=1-p' in capsys.readouterr().out


def test_run_validate_mode(tmp_path, capsys):
    assert main(['run', '--mode', 'validate', '--outdir', str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert 'Schedule satisfied.' in out
    assert 'Monotonicity probe on paper-sec5_validate' in out


def test_validate_rejected_family(capsys):
    code = main(['validate', '--family', 'powerlawA', '--h', '2', '--s', '.3', '--p', '.5', '--q', '.4'])
    assert code == 2
    assert 'Schedule rejected: h>2' in capsys.readouterr().out


def test_validate_writes_report(tmp_path, capsys):
    assert main(['validate', '--outdir', str(tmp_path)]) == 0
    assert 'Validating powerlawD schedule:' in capsys.readouterr().out
    report = json.loads((tmp_path / 'powerlawD.validation.json').read_text())
    assert report['satisfied'] is True
    assert report['constants']['Q1'] == pytest.approx(0.8)


def test_validate_failing_table(tmp_path, capsys):
    table = tmp_path / 'sched.csv'
    table.write_text('t,alpha0,alpha1,delta,lambda\n0,1,1,1,0\n10,1,1,1,0\n')
    code = main(['validate', '--family', 'table', '--schedule-file', str(table), '--C1', '1', '--C2', '1'])
    assert code == 2
    assert 'riccati_margin' in capsys.readouterr().out


def test_validate_table_needs_constants(tmp_path, capsys):
    table = tmp_path / 'sched.csv'
    table.write_text('n,beta0,beta1,xi,eta\n0,0.1,1.2,0.5,-0.1\n1,0.1,1.2,0.5,-0.1\n2,0.1,1.2,0.5,-0.1\n')
    assert main(['validate', '--family', 'table', '--schedule-file', str(table)]) == 1
    assert 'Configuration error (Q1)' in capsys.readouterr().out


def test_validate_unknown_family(capsys):
    assert main(['validate', '--family', 'powerlawZ']) == 1
    assert 'Configuration error (family)' in capsys.readouterr().out


def test_reproduce_unknown_figure(capsys):
    assert main(['reproduce', 'fig9']) == 1
    assert 'Unknown figure' in capsys.readouterr().out


def test_reproduce_fig1(tmp_path):
    assert main(['reproduce', 'fig1', '--outdir', str(tmp_path), '--t-end', '1']) == 0
    manifest = json.loads((tmp_path / 'manifest.json').read_text())
    assert manifest['figure'] == 'fig1'
    assert [c['file'] for c in manifest['curves']] == ['fig1_h2.5.csv', 'fig1_h3.csv', 'fig1_h4.csv', 'fig1_h6.csv']
    df = pl.read_csv(tmp_path / 'fig1_h2.5.csv')
    assert df['x_1'][0] == 1.0


def test_reproduce_fig3_is_deterministic(tmp_path):
    first, second = tmp_path / 'a', tmp_path / 'b'
    assert main(['reproduce', 'fig3', '--outdir', str(first), '--max-iters', '200']) == 0
    assert main(['reproduce', 'fig3', '--outdir', str(second), '--max-iters', '200', '--workers', '2']) == 0
    manifest = json.loads((first / 'manifest.json').read_text())
    files = [c['file'] for c in manifest['curves']]
    assert 'fig3_direct_tau0.75.csv' in files
    assert {c['horizon'] for c in manifest['curves']} == {200}
    for name in files + ['manifest.json']:
        assert (first / name).read_bytes() == (second / name).read_bytes()
    table = pl.read_csv(first / 'fig3_comparison.csv', schema_overrides={'iters_to_tol': pl.Utf8})
    assert table.height == 5


def test_reproduce_fig2_default_dir(tmp_path, monkeypatch):
    monkeypatch.setenv('VI_DYNAMICS_OUTPUT_DIR', str(tmp_path))
    assert main(['reproduce', 'fig2', '--max-iters', '50']) == 0
    assert (tmp_path / 'fig2' / 'manifest.json').exists()


@pytest.mark.parametrize('exc, code', [
    (ConfigurationError('x', key='step'), 1),
    (ScheduleError('x', violations=['h>2']), 2),
    (ConditionError('x', t=1.0), 2),
    (DivergenceError('x', last_valid=3.0), 3),
])
def test_exit_codes(exc, code):
    assert exit_code(exc) == code


def test_run_config_round_trip():
    cfg = RunConfig.from_mapping({'mode': 'compare', 'x0': '1, 0, 0', 'max_iters': '10', 'allow_positive_eta': 'true'})
    assert cfg.x0 == (1.0, 0.0, 0.0)
    assert cfg.max_iters == 10
    assert cfg.allow_positive_eta is True
    assert cfg.to_dict() == {'mode': 'compare', 'x0': [1.0, 0.0, 0.0], 'max_iters': 10, 'allow_positive_eta': True}
    resolved = cfg.resolved()
    assert resolved.family == 'powerlawD'
    assert resolved.lambdaP == 0.5


def test_run_config_resolves_families():
    assert RunConfig(mode='discrete-direct').resolved().tau == 0.75
    assert RunConfig(problem='remark-counterexample', mode='continuous-coupled').resolved().family == 'remark'
    assert RunConfig(mode='continuous-second-order').resolved().h == 2.5
    with pytest.raises(ConfigurationError) as err:
        RunConfig(mode='continuous-second-order', family='powerlawA', h=3.0).resolved()
    assert err.value.key == 's'
