import json

import pytest

from qeuler.cli import run


def run_json(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_euler_quadric(capsys):
    code, doc = run_json(capsys, ['euler', '--dim', '3', '--degrees', '2'])
    assert code == 0
    assert doc['command'] == 'euler'
    coeffs = doc['payload']['E']['coefficients']
    assert [(c['q_power'], c['basis_index'], c['value']) for c in coeffs] == [(0, 3, '2'), (1, 0, '-2')]
    assert 'E_shifted' not in doc['payload']


def test_euler_both_routes_on_quartic(capsys):
    code, doc = run_json(capsys, ['euler', '--dim', '3', '--degrees', '4', '--both'])
    assert code == 0
    assert doc['payload']['routes_agree'] is True
    assert doc['payload']['E_shifted']['basis'] == 'H_shifted'


def test_tevelev_quadric(capsys):
    code, doc = run_json(capsys, ['tevelev', '--dim', '3', '--degrees', '2', '--genus', '0', '--points', '3'])
    assert code == 0
    assert doc['payload']['value'] == '1'
    assert doc['payload']['k'] == 2
    assert doc['payload']['disc'] == '-1/2'


def test_tevelev_non_integral_k(capsys):
    code, doc = run_json(capsys, ['tevelev', '--dim', '3', '--degrees', '3', '--genus', '0', '--points', '2'])
    assert code == 2
    assert doc['error']['kind'] == 'validation'
    assert 'non-integral' in doc['error']['message']


def test_non_fano_rejected(capsys):
    code, doc = run_json(capsys, ['info', '--dim', '3', '--degrees', '3,3'])
    assert code == 2
    assert 'non-Fano' in doc['error']['message']


def test_info(capsys):
    code, doc = run_json(capsys, ['info', '--dim', '3', '--degrees', '4'])
    assert code == 0
    assert doc['space']['prim_rank'] == 60
    assert doc['payload']['top_coefficients'] == ['160', '14976', '387072', '3207168']


def test_gw_table(capsys):
    code, doc = run_json(capsys, ['gw', '--dim', '3', '--degrees', '2', '--k', '2'])
    assert code == 0
    assert doc['payload']['k_max'] == 2
    assert doc['payload']['descendants']['1,0,2'] == '4'
    assert {'k': 1, 's': 3, 'value': '2'} in doc['payload']['alpha']


def test_cache_written_and_reused(tmp_path, capsys):
    cache = tmp_path / 'quadric.json'
    argv = ['tevelev', '--dim', '3', '--degrees', '2', '--genus', '0', '--points', '3', '--cache', str(cache)]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert cache.exists()
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_cache_for_other_space_rejected(tmp_path, capsys):
    cache = tmp_path / 'quadric.json'
    run(['gw', '--dim', '3', '--degrees', '2', '--cache', str(cache)])
    capsys.readouterr()
    code, doc = run_json(capsys, ['gw', '--dim', '3', '--degrees', '3', '--cache', str(cache)])
    assert code == 2
    assert doc['error']['kind'] == 'cache'


def test_verify_quadric(capsys):
    code, doc = run_json(capsys, ['verify', '--dim', '3', '--degrees', '2', '--workers', '2'])
    assert code == 0
    assert doc['payload']['passed'] is True
    assert doc['payload']['failed'] == 0


def test_csv_output(capsys):
    assert run(['euler', '--dim', '3', '--degrees', '3', '--format', 'csv']) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == 'section,basis,q_power,basis_index,value'
    assert 'euler.E,H_star,1,1,72' in out


def test_gw_reports_cached_entries(tmp_path, capsys):
    cache = tmp_path / 'quartic.json'
    argv = ['gw', '--dim', '3', '--degrees', '4', '--cache', str(cache)]
    code, doc = run_json(capsys, argv)
    assert code == 0
    assert doc['payload']['loaded_from_cache'] == 0
    code, again = run_json(capsys, argv)
    assert again['payload']['loaded_from_cache'] > 0
    assert again['payload']['descendants'] == doc['payload']['descendants']


@pytest.mark.parametrize('argv', [
    ['info', '--dim', '3', '--degrees', '2,x'],
    ['info', '--dim', 'three', '--degrees', '2'],
    ['tevelev', '--dim', '3', '--degrees', '2', '--genus', '0'],
    ['info', '--dim', '3', '--degrees', '2', '--format', 'xml'],
    ['solve', '--dim', '3', '--degrees', '2'],
    [],
])
def test_malformed_arguments_give_error_document(capsys, argv):
    code, doc = run_json(capsys, argv)
    assert code == 2
    assert doc['schema'] == 1
    assert doc['error']['kind'] == 'validation'


def test_bad_degrees_message(capsys):
    code, doc = run_json(capsys, ['euler', '--dim', '3', '--degrees', '2,x'])
    assert 'comma-separated integers' in doc['error']['message']


def test_zero_workers_rejected(capsys):
    code, doc = run_json(capsys, ['verify', '--dim', '3', '--degrees', '2', '--workers', '0'])
    assert code == 2
    assert '--workers' in doc['error']['message']
