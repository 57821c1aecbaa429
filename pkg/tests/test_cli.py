import json

import pytest

from scripts.main import build_parser, run
from src.netgraph import load_graph


@pytest.fixture(scope='module')
def carpet_file(tmp_path_factory):
    path = tmp_path_factory.mktemp('graphs') / 'carpet3.json'
    code = run(['build-graph', '--kind', 'carpet', '--level', '3', '--epsilon', '0.037037', '--out', str(path)])
    assert code == 0
    return path


def _capacity(graph_path, out):
    return run(['capacity', '--graph', str(graph_path), '--center-x', '0.5', '--center-y', '0.0',
                '--r', '0.15', '--A', '2', '--p', '2', '--out', str(out)])


def test_build_graph_writes_carpet(carpet_file):
    assert load_graph(str(carpet_file)).n == 512


def test_build_graph_requires_out():
    assert run(['build-graph', '--kind', 'interval', '--level', '10']) == 2


def test_capacity_command(carpet_file, tmp_path):
    out = tmp_path / 'cap.json'
    assert _capacity(carpet_file, out) == 0
    report = json.loads(out.read_text(encoding='utf-8'))
    assert report['value'] > 0
    assert report['A'] == 2
    run_report = json.loads((tmp_path / 'cap.run.json').read_text(encoding='utf-8'))
    assert run_report['status'] == 'passed'
    assert run_report['command'] == 'capacity'


def test_same_command_gives_identical_reports(carpet_file, tmp_path):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    assert _capacity(carpet_file, a) == 0
    assert _capacity(carpet_file, b) == 0
    assert a.read_bytes() == b.read_bytes()


def test_unknown_flag_is_input_error():
    assert run(['capacity', '--r', '0.1', '--frobnicate']) == 2


def test_missing_config_is_input_error(tmp_path):
    assert run(['capacity', '--config', str(tmp_path / 'absent.yaml'), '--r', '0.1']) == 2


def test_missing_graph_is_input_error(tmp_path):
    assert run(['capacity', '--graph', str(tmp_path / 'absent.json'), '--r', '0.1']) == 2


def test_invalid_p_is_input_error(carpet_file, tmp_path):
    assert run(['capacity', '--graph', str(carpet_file), '--r', '0.15', '--p', '1.0',
                '--out', str(tmp_path / 'x.json')]) == 2


def test_scaling_sweep_writes_table(carpet_file, tmp_path):
    out = tmp_path / 'sweep.json'
    code = run(['scaling-sweep', '--graph', str(carpet_file), '--radii', '0.05,0.1,0.2', '--out', str(out)])
    assert code == 0
    lines = (tmp_path / 'sweep.csv').read_text(encoding='utf-8').splitlines()
    assert len(lines) == 4


def test_modulus_command(carpet_file, tmp_path):
    out = tmp_path / 'mod.json'
    assert run(['modulus', '--graph', str(carpet_file), '--r', '0.1', '--out', str(out)]) == 0
    assert json.loads(out.read_text(encoding='utf-8'))['modulus']['value'] > 0


def test_default_output_directory(carpet_file, output_dir):
    assert run(['volume', '--graph', str(carpet_file), '--radii', '0.1,0.2,0.4']) == 0
    assert (output_dir / 'volume.json').exists()
    assert (output_dir / 'volume.csv').exists()


def test_verify_all_quick_subset(output_dir):
    assert run(['verify-all', '--quick', '--only', 'closed_forms', 'iteration_lemma']) == 0
    summary = json.loads((output_dir / 'run_report.json').read_text(encoding='utf-8'))
    assert summary['status'] == 'passed'


def test_verify_all_unknown_check():
    assert run(['verify-all', '--only', 'nope']) == 2


def test_parser_lists_all_commands():
    parser = build_parser()
    commands = parser._subparsers._group_actions[0].choices
    for name in ('build-graph', 'solve', 'capacity', 'modulus', 'wolff', 'cutoff', 'harnack', 'poincare',
                 'scaling-sweep', 'llc', 'cable', 'volume', 'principles', 'verify-all'):
        assert name in commands


@pytest.mark.slow
@pytest.mark.parametrize('check', ['capacity_scaling', 'harnack', 'wolff_bounds', 'cutoff_sobolev'])
def test_verify_all_heavy_checks(check):
    assert run(['verify-all', '--quick', '--only', check]) == 0


SUITE_TOML = '''p = 2.0

[space]
kind = "carpet"
level = 2
scale = 1.0

[net]
epsilon = 0.1111111111111111
'''


def test_verify_all_reads_toml_config(tmp_path, output_dir):
    suite = tmp_path / 'suite.toml'
    suite.write_text(SUITE_TOML, encoding='utf-8')
    assert run(['verify-all', '--config', str(suite), '--quick', '--only', 'iteration_lemma']) == 0
    summary = json.loads((output_dir / 'run_report.json').read_text(encoding='utf-8'))
    assert summary['checks'] == {'iteration_lemma': True}


def test_malformed_config_is_input_error(tmp_path):
    broken = tmp_path / 'broken.toml'
    broken.write_text('p = = 2\n[space\n', encoding='utf-8')
    assert run(['verify-all', '--config', str(broken), '--only', 'iteration_lemma']) == 2
