"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)
"""
# tests/test_cli.py
import csv
import io
import json

import numpy as np
import pytest

from app import SweepApp
from main import main
from utils.config import Settings


def run(capsys, *argv, workers=1):
    code = SweepApp(Settings(workers=workers)).run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_rows(text):
    lines = [line for line in text.splitlines() if not line.startswith('#')]
    return list(csv.DictReader(io.StringIO('\n'.join(lines))))


def numbers(rows, name):
    return np.array([float(row[name]) for row in rows])


class TestValidate:
    def test_stable_point(self, capsys):
        code, out, _ = run(capsys, 'validate', '--lambda', '0.4', '--mu', '0.3')
        assert code == 0
        values = {row['quantity']: row['value'] for row in read_rows(out)}
        assert values['status'] == 'ok'
        assert float(values['Lambda_plus']) == pytest.approx(np.sqrt(1 + 0.16 - 0.09 + 0.24), rel=1e-11)
        assert {'kappa1', 'kappa2', 'r_a', 'r_b', 'printed_Delta4'} <= set(values)

    def test_sum_boundary(self, capsys):
        code, out, err = run(capsys, 'validate', '--lambda', '0.5', '--mu', '0.5')
        assert code == 1
        assert out == ''
        assert 'lambda + mu' in err

    def test_exchange_boundary(self, capsys):
        code, _, err = run(capsys, 'validate', '--lambda', '0.6')
        assert code == 1
        assert '2*lambda' in err

    def test_omega_rescales_frequencies(self, capsys):
        _, out, _ = run(capsys, 'validate', '--omega', '2', '--mu', '0.5')
        values = {row['quantity']: row['value'] for row in read_rows(out)}
        assert float(values['Lambda_plus']) == pytest.approx(2 * np.sqrt(0.75), rel=1e-11)
        assert float(values['ground_coherence']) > 0

    def test_provenance_header(self, capsys):
        _, out, _ = run(capsys, 'validate', '--mu', '0.2')
        first = out.splitlines()[0]
        assert first.startswith('# coupled-coherence validate ')
        assert '--mu=0.2' in first
        assert '--format=csv' in first
        assert 'workers' not in first

    def test_fock_check_agrees_with_closed_form(self, capsys):
        code, out, _ = run(capsys, 'validate', '--mu', '0.3', '--fock-check', '--cutoff', '20')
        assert code == 0
        values = {row['quantity']: row['value'] for row in read_rows(out)}
        assert float(values['fock_ground_coherence']) == pytest.approx(
            float(values['ground_coherence']), abs=1e-4)
        assert float(values['fock_ground_deviation']) < 1e-4

    def test_fock_check_exchange_only(self, capsys):
        code, out, _ = run(capsys, 'validate', '--lambda', '0.3', '--fock-check', '--cutoff', '10')
        assert code == 0
        values = {row['quantity']: row['value'] for row in read_rows(out)}
        assert float(values['fock_ground_coherence']) == pytest.approx(0.0, abs=1e-10)

    def test_fock_cutoff_setting_is_the_default(self, capsys):
        code = SweepApp(Settings(workers=1, fock_cutoff=12)).run(['validate', '--mu', '0.3', '--fock-check'])
        first = capsys.readouterr().out.splitlines()[0]
        assert code == 0
        assert '--cutoff=12' in first
        assert '--fock-check=True' in first

    def test_fock_rows_only_on_request(self, capsys):
        _, out, _ = run(capsys, 'validate', '--mu', '0.3')
        assert not any(row['quantity'].startswith('fock_') for row in read_rows(out))


class TestGround:
    def test_mu_sweep_increases(self, capsys):
        code, out, _ = run(capsys, 'ground', '--sweep', 'mu:0:0.45:46')
        assert code == 0
        rows = read_rows(out)
        assert len(rows) == 46
        assert np.all(np.diff(numbers(rows, 'coherence')) > 0)
        assert numbers(rows, 'param')[-1] == pytest.approx(0.45)

    def test_lambda_sweep_without_squeezing_is_zero(self, capsys):
        code, out, _ = run(capsys, 'ground', '--sweep', 'lambda:0:0.45:10')
        assert code == 0
        assert np.all(np.abs(numbers(read_rows(out), 'coherence')) < 1e-12)

    def test_invalid_points_become_error_rows(self, capsys):
        code, out, _ = run(capsys, 'ground', '--lambda', '0.3', '--sweep', 'mu:0:0.8:9')
        assert code == 1
        rows = read_rows(out)
        assert len(rows) == 9
        failed = [row for row in rows if row['error']]
        assert [float(row['param']) for row in failed] == pytest.approx([0.7, 0.8])
        assert all(row['coherence'] == '' for row in failed)

    def test_no_valid_point(self, capsys):
        code, out, _ = run(capsys, 'ground', '--lambda', '0.6', '--sweep', 'mu:0:0.3:4')
        assert code == 1
        assert all(row['error'] for row in read_rows(out))

    def test_single_point(self, capsys):
        code, out, _ = run(capsys, 'ground', '--mu', '0.5')
        assert code == 0
        assert len(read_rows(out)) == 1

    def test_wrong_sweep_name(self, capsys):
        code, _, err = run(capsys, 'ground', '--sweep', 'T:0:1:3')
        assert code == 1
        assert 'error:' in err

    def test_malformed_sweep(self, capsys):
        code, _, _ = run(capsys, 'ground', '--sweep', 'mu:0:1')
        assert code == 1

    def test_omega_rescales_parameter_only(self, capsys):
        _, base, _ = run(capsys, 'ground', '--sweep', 'mu:0:0.4:5')
        _, scaled, _ = run(capsys, 'ground', '--omega', '2', '--sweep', 'mu:0:0.4:5')
        base_rows, scaled_rows = read_rows(base), read_rows(scaled)
        np.testing.assert_allclose(numbers(scaled_rows, 'param'), 2 * numbers(base_rows, 'param'))
        assert [r['coherence'] for r in base_rows] == [r['coherence'] for r in scaled_rows]

    def test_workers_do_not_change_output(self, capsys):
        _, serial, _ = run(capsys, 'ground', '--sweep', 'mu:0:0.45:46', workers=1)
        _, pooled, _ = run(capsys, 'ground', '--sweep', 'mu:0:0.45:46', '--workers', '4')
        assert serial == pooled

    def test_bad_worker_count(self, capsys):
        code, _, _ = run(capsys, 'ground', '--workers', '0')
        assert code == 1


class TestSteady:
    def test_temperature_sweep(self, capsys):
        code, out, _ = run(capsys, 'steady', '--mu', '0.5', '--sweep', 'T:0:5:21')
        assert code == 0
        rows = read_rows(out)
        coherence = numbers(rows, 'coherence')
        assert len(rows) == 21
        assert np.all(np.diff(coherence) <= 1e-12)
        plateau = numbers(rows, 'coherence_infinite_T')
        assert np.all(plateau == plateau[0])

    def test_plateau_reached(self, capsys):
        _, out, _ = run(capsys, 'steady', '--mu', '0.5', '--sweep', 'T:0:20:5')
        last = read_rows(out)[-1]
        assert float(last['coherence']) == pytest.approx(float(last['coherence_infinite_T']), abs=1e-2)

    def test_no_squeezing(self, capsys):
        _, out, _ = run(capsys, 'steady', '--lambda', '0.45', '--sweep', 'T:0:5:6')
        assert np.all(np.abs(numbers(read_rows(out), 'coherence')) < 1e-12)

    def test_unstable_params_reported_per_row(self, capsys):
        code, out, _ = run(capsys, 'steady', '--lambda', '0.5', '--mu', '0.5', '--sweep', 'T:0:1:3')
        assert code == 1
        assert len(read_rows(out)) == 3

    def test_negative_temperature(self, capsys):
        code, out, _ = run(capsys, 'steady', '--mu', '0.2', '--sweep', 'T:-1:1:3')
        assert code == 1
        rows = read_rows(out)
        assert rows[0]['error'] and not rows[1]['error']


class TestDynamics:
    def test_decoupled_fidelity_increases(self, capsys):
        code, out, _ = run(capsys, 'dynamics', '--t-max', '20', '--dt', '0.01')
        assert code == 0
        rows = read_rows(out)
        assert len(rows) == 201
        assert list(rows[0]) == ['t', 'coherence', 'fidelity', 'Xa', 'Pa', 'sigma_xx', 'sigma_pp', 'sigma_xp']
        assert np.all(np.diff(numbers(rows, 'fidelity')) > 0)

    def test_time_sweep(self, capsys):
        code, out, _ = run(capsys, 'dynamics', '--sweep', 't:0:2:21', '--dt', '0.01')
        assert code == 0
        rows = read_rows(out)
        np.testing.assert_allclose(numbers(rows, 't'), np.linspace(0, 2, 21), atol=1e-12)

    def test_reduce_then_dissipate(self, capsys):
        code, out, _ = run(capsys, 'dynamics', '--lambda', '0.3', '--mu', '0.2',
                           '--mode', 'reduce-then-dissipate', '--t-max', '1', '--dt', '0.01')
        assert code == 0
        assert len(read_rows(out)) == 11

    def test_verify_needs_full_model(self, capsys):
        code, _, err = run(capsys, 'dynamics', '--mode', 'reduce-then-dissipate', '--verify',
                           '--t-max', '1', '--dt', '0.01')
        assert code == 1
        assert '--mode full' in err

    def test_verify_appends_deviation(self, capsys):
        code, out, _ = run(capsys, 'dynamics', '--lambda', '0.3', '--mu', '0.2', '--t-max', '0.2',
                           '--dt', '0.001', '--verify', '--verify-window', '0.2', '--cutoff', '12')
        assert code == 0
        note = out.splitlines()[-1]
        assert note.startswith('# verify window=0.2 cutoff=12 max_deviation=')
        assert float(note.rsplit('=', 1)[1]) < 1e-4

    def test_integrator_failure_is_numerical(self, capsys):
        code, _, err = run(capsys, 'dynamics', '--mu', '0.3', '--gamma', '0', '--dt', '3',
                           '--t-max', '30', '--record-every', '1')
        assert code == 2
        assert 'retry with dt' in err

    def test_squeezing_only_uses_thermal_reference(self, capsys):
        code, out, _ = run(capsys, 'dynamics', '--mu', '0.3', '--t-max', '5', '--dt', '0.01')
        assert code == 0
        assert '# fidelity reference=thermal' in out.splitlines()
        rows = read_rows(out)
        assert len(rows) == 51
        fidelity = numbers(rows, 'fidelity')
        assert np.all(np.isfinite(fidelity))
        assert np.all((fidelity > 0) & (fidelity <= 1 + 1e-12))

    def test_exchange_run_has_no_reference_note(self, capsys):
        _, out, _ = run(capsys, 'dynamics', '--lambda', '0.3', '--t-max', '1', '--dt', '0.01')
        assert not any(line.startswith('# fidelity reference') for line in out.splitlines())

    def test_bare_frame_start(self, capsys):
        code, out, _ = run(capsys, 'dynamics', '--init-frame', 'bare', '--init', '1,2,0,0',
                           '--t-max', '0.1', '--dt', '0.01')
        assert code == 0
        first = read_rows(out)[0]
        assert float(first['Xa']) == pytest.approx(1.0, abs=1e-12)
        assert float(first['Pa']) == pytest.approx(2.0, abs=1e-12)

    def test_default_frame_start(self, capsys):
        _, out, _ = run(capsys, 'dynamics', '--t-max', '0.1', '--dt', '0.01')
        first = read_rows(out)[0]
        assert float(first['Xa']) == pytest.approx(np.sqrt(2), abs=1e-12)
        assert float(first['Pa']) == pytest.approx(np.sqrt(2), abs=1e-12)

    def test_unknown_frame(self, capsys):
        with pytest.raises(SystemExit):
            run(capsys, 'dynamics', '--init-frame', 'rotated')

    def test_bad_init(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, 'dynamics', '--init', '1,2,3')
        assert exc.value.code == 1

    def test_interacting_start(self, capsys):
        code, out, _ = run(capsys, 'dynamics', '--mu', '0.3', '--interacting-init', '--t-max', '0.5',
                           '--dt', '0.01')
        assert code == 0
        assert float(read_rows(out)[0]['sigma_xx']) > 1.0


class TestOutput:
    def test_json(self, capsys):
        code, out, _ = run(capsys, 'ground', '--format', 'json', '--sweep', 'mu:0:0.4:5')
        assert code == 0
        document = json.loads(out)
        assert document['columns'] == ['param', 'coherence']
        assert len(document['rows']) == 5
        assert document['provenance'].startswith('coupled-coherence ground')

    def test_out_file_gets_extension(self, capsys, tmp_path):
        target = tmp_path / 'ground'
        code, out, _ = run(capsys, 'ground', '--sweep', 'mu:0:0.4:5', '--out', str(target))
        assert code == 0
        assert out == ''
        assert len(read_rows((tmp_path / 'ground.csv').read_text())) == 5

    def test_unwritable_file(self, capsys, tmp_path):
        code, _, err = run(capsys, 'ground', '--out', str(tmp_path / 'missing' / 'out.csv'))
        assert code == 2
        assert 'Error exporting data' in err

    def test_byte_identical_runs(self, capsys):
        argv = ('dynamics', '--lambda', '0.45', '--mu', '0.5', '--t-max', '5', '--dt', '0.01')
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_unknown_argument(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, 'ground', '--no-such-flag')
        assert exc.value.code == 1

    def test_missing_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys)
        assert exc.value.code == 1


class TestMain:
    def test_validate(self, capsys):
        assert main(['validate']) == 0
        assert 'status,ok' in capsys.readouterr().out

    def test_bad_environment(self, capsys, monkeypatch):
        monkeypatch.setenv('COHERENCE_WORKERS', '0')
        assert main(['validate']) == 1
        assert 'COHERENCE_WORKERS' in capsys.readouterr().err
