import json
from dataclasses import dataclass

import numpy as np
import pytest

from src.experiments import CHECKS, ReportLoader, RunReport, VerificationPipeline, get_check
from src.experiments.checks import cutoff_stability, summarize_equilibrium
from src.utils.config_loader import canonical_config_hash, get_section, load_config, require, validate_config
from src.utils.exceptions import ConfigError, InputError
from src.utils.reporting import dumps_stable, loads_stable, read_json, to_jsonable, write_csv, write_json


@dataclass
class _Sample:
    value: float
    mask: np.ndarray


def test_csv_has_header_and_rows(tmp_path):
    rows = [{'r': 0.1 * k, 'cap': 1.0 / (k + 1)} for k in range(4)]
    path = write_csv(rows, str(tmp_path / 'sweep.csv'))
    lines = open(path, encoding='utf-8').read().splitlines()
    assert len(lines) == 5
    assert lines[0] == 'r,cap'


def test_json_is_byte_stable(tmp_path):
    report = {'b': [1.0, 2.5], 'a': {'y': np.float64(0.1), 'x': np.int64(3)}}
    first = write_json(report, str(tmp_path / 'one.json'))
    second = write_json(dict(reversed(list(report.items()))), str(tmp_path / 'two.json'))
    assert open(first, 'rb').read() == open(second, 'rb').read()
    assert json.loads(open(first, encoding='utf-8').read()) == {'a': {'x': 3, 'y': 0.1}, 'b': [1.0, 2.5]}


def test_non_finite_values_become_strings():
    data = json.loads(dumps_stable({'ratio': float('inf'), 'low': -np.inf, 'gap': float('nan')}))
    assert data == {'gap': 'nan', 'low': '-inf', 'ratio': 'inf'}


def test_floats_keep_full_precision():
    x = 0.1 + 0.2
    assert json.loads(dumps_stable({'x': x}))['x'] == x


def test_to_jsonable_dataclass():
    out = to_jsonable(_Sample(1.5, np.array([True, False])))
    assert out == {'value': 1.5, 'mask': [True, False]}


def test_report_loader_formats(tmp_path):
    loader = ReportLoader(str(tmp_path / 'out'))
    path = loader.write_report({'value': 1.0}, 'capacity')
    assert path.endswith('capacity.json')
    csv_path = loader.write_report([{'r': 1.0}], 'table', 'csv')
    assert csv_path.endswith('table.csv')
    assert loader.written == [path, csv_path]
    with pytest.raises(InputError):
        loader.write_report({}, 'bad', 'xml')


def test_report_loader_default_directory(output_dir):
    loader = ReportLoader()
    assert loader.output_dir == str(output_dir)
    assert loader.load({'a': {'v': 1}, 'b': {'v': 2}}) == 2


def test_run_report_dict():
    report = RunReport('capacity', 'abc', 1.5, ['x.json'], {'finite': True})
    assert report.to_dict()['status'] == 'passed'
    assert report.to_dict()['outputs'] == ['x.json']


def test_config_helpers():
    config = {'space': {'kind': 'carpet', 'level': 3, 'scale': 1.0}, 'net': {'epsilon': None}, 'p': 2.0}
    assert validate_config(config) is config
    assert require(config, 'space.kind') == 'carpet'
    assert get_section('solver', config) == {}
    with pytest.raises(ConfigError):
        require(config, 'space.missing')
    with pytest.raises(ConfigError):
        validate_config(dict(config, p=1.0))
    with pytest.raises(ConfigError):
        get_section('p', config)


def test_config_hash_ignores_key_order():
    assert canonical_config_hash({'a': 1, 'b': [1, 2]}) == canonical_config_hash({'b': [1, 2], 'a': 1})
    assert canonical_config_hash({'a': 1}) != canonical_config_hash({'a': 2})


def test_check_registry():
    names = [check.name for check in CHECKS]
    assert len(names) == len(set(names)) == 15
    with pytest.raises(KeyError):
        get_check('unknown')


def test_check_params_precedence():
    check = get_check('harnack')
    config = {'verify': {'harnack': {'trials': 100, 'quick': {'trials': 5}}}}
    assert check.params(config, quick=False)['trials'] == 100
    assert check.params(config, quick=True)['trials'] == 5


def test_pipeline_runs_selected_checks(tmp_path):
    loader = ReportLoader(str(tmp_path))
    pipeline = VerificationPipeline({}, quick=True, only=['closed_forms', 'iteration_lemma'], loader=loader)
    assert pipeline.run()
    assert (tmp_path / 'check_closed_forms.json').exists()
    assert (tmp_path / 'closed_forms.csv').exists()
    summary = json.loads((tmp_path / 'run_report.json').read_text(encoding='utf-8'))
    assert summary['checks'] == {'closed_forms': True, 'iteration_lemma': True}
    assert summary['status'] == 'passed'


def test_pipeline_rejects_unknown_check(tmp_path):
    with pytest.raises(ConfigError):
        VerificationPipeline({}, only=['nope'], loader=ReportLoader(str(tmp_path)))


def test_cutoff_stability_compares_each_coordinate():
    rows = [{'c1': 1.0, 'c2': 0.5}, {'c1': 2.0, 'c2': 2.0}]
    criteria, notes = cutoff_stability(rows, 3.0)
    assert criteria == {'stable': True, 'c1_stable': True, 'c2_stable': False}
    assert notes == []


def test_cutoff_stability_flags_zero_coordinate():
    rows = [{'c1': 1.5, 'c2': 0.0}, {'c1': 0.9, 'c2': 0.8}]
    criteria, notes = cutoff_stability(rows, 3.0)
    assert criteria == {'stable': True, 'c1_stable': True}
    assert len(notes) == 1
    assert all(row['c2_degenerate'] for row in rows)


def test_load_config_by_suffix(tmp_path):
    toml_file = tmp_path / 'suite.toml'
    toml_file.write_text('p = 3.0\n[space]\nkind = "gasket"\nlevel = 2\n', encoding='utf-8')
    yaml_file = tmp_path / 'suite.yaml'
    yaml_file.write_text('p: 3.0\nspace:\n  kind: gasket\n  level: 2\n', encoding='utf-8')
    assert load_config(str(toml_file)) == load_config(str(yaml_file)) == {'p': 3.0,
                                                                           'space': {'kind': 'gasket', 'level': 2}}


def test_load_config_rejects_toml_read_as_yaml(tmp_path):
    path = tmp_path / 'suite.yaml'
    path.write_text('p = 2.0\n[space]\nkind = "carpet"\n', encoding='utf-8')
    with pytest.raises(ConfigError, match='table'):
        load_config(str(path))


@pytest.mark.parametrize('name, text', [('bad.toml', 'p = = 2\n'), ('bad.yaml', 'space: [carpet\n')])
def test_load_config_reports_parse_errors(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    with pytest.raises(ConfigError, match='illisible'):
        load_config(str(path))


def test_report_round_trip_keeps_non_finite_floats(tmp_path):
    report = {'cap': 0.1 + 0.2, 'ratio': float('inf'), 'low': -np.inf, 'trials': [1.0, float('nan')], 'kind': 'carpet'}
    back = read_json(write_json(report, str(tmp_path / 'r.json')))
    assert back['cap'] == report['cap']
    assert back['ratio'] == float('inf') and back['low'] == float('-inf')
    assert back['trials'][0] == 1.0 and np.isnan(back['trials'][1])
    assert back['kind'] == 'carpet'
    assert dumps_stable(loads_stable(dumps_stable(report))) == dumps_stable(report)


def _equilibrium_row(k, competitors=True, supersolutions=True):
    return {'condenser': k, 'pairing_ok': True, 'support_ok': True,
            'competitors_ok': competitors, 'supersolutions_ok': supersolutions}


def test_equilibrium_summary_reports_comparisons():
    rows = [_equilibrium_row(1), _equilibrium_row(2, competitors=False), _equilibrium_row(5, supersolutions=False)]
    criteria, details, notes = summarize_equilibrium(rows)
    assert criteria == {'pairing': True, 'support': True}
    assert details == {'condensers': 3, 'competitors_failures': 1, 'supersolutions_failures': 1}
    assert len(notes) == 2
    assert '[2]' in notes[0] and '[5]' in notes[1]


def test_equilibrium_summary_fails_on_pairing():
    rows = [_equilibrium_row(1), dict(_equilibrium_row(2), pairing_ok=False)]
    criteria, _, notes = summarize_equilibrium(rows)
    assert criteria['pairing'] is False
    assert notes == []
