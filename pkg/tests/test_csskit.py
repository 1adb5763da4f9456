#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_csskit
----------------------------------

Tests for the `csskit` command line interface.
"""

import json

import pandas
import pytest
import yaml
from click.testing import CliRunner

from csskit import cli
from csskit.utils import load_config, process_options

from tests.models import minkowski_config


@pytest.fixture
def config_file(tmpdir):
    """Write a configuration and return its path."""
    def write(name='model.yaml', **changes):
        path = tmpdir.join(name)
        path.write(yaml.safe_dump(minkowski_config(**changes)))
        return str(path)
    return write


def test_command_line_interface():
    runner = CliRunner()
    help_result = runner.invoke(cli.main, ['--help'])
    assert help_result.exit_code == 0
    assert '--help' in help_result.output
    assert 'Show this message and exit' in help_result.output
    for command in ('validate', 'scan', 'geodesic', 'cases', 'export', 'random'):
        assert command in help_result.output


def test_cases_lists_the_registry():
    result = CliRunner().invoke(cli.main, ['cases'])
    assert result.exit_code == 0
    assert result.output.count('  case ') == 22
    assert 'Type 2.1 (4 cases)' in result.output
    assert 'Lorentz signature forces alpha = beta = gamma = 0' in result.output


def test_validate(config_file):
    runner = CliRunner()
    result = runner.invoke(cli.main, ['validate', '--config', config_file()])
    assert result.exit_code == 0
    assert 'all constraints hold' in result.output
    broken = config_file(functions={'a0': '1', 'b0': '0', 'c0': '0', 'd0': '1', 'e0': '0',
                                    'f0': '1'})
    result = runner.invoke(cli.main, ['validate', '--config', broken])
    assert result.exit_code == 1
    assert 'signature lorentz' in result.output


def test_scan_writes_report(config_file, tmpdir):
    out = str(tmpdir.join('report.json'))
    csv = str(tmpdir.join('points.csv'))
    result = CliRunner().invoke(cli.main, ['scan', '--config', config_file(), '--grid', '2',
                                           '--random', '3', '--out', out, '--csv', csv])
    assert result.exit_code == 0
    with open(out) as f:
        document = json.load(f)
    assert document['schema'] == 1
    assert document['report']['pass']
    assert document['report']['points'] == 19
    assert document['config']['type'] == '3.0'
    assert process_options(document['config']) == document['config']
    assert len(pandas.read_csv(csv)) == 19


def test_scan_selected_checks(config_file, tmpdir):
    out = str(tmpdir.join('report.json'))
    result = CliRunner().invoke(cli.main, ['scan', '--config', config_file(), '--grid', '2',
                                           '--checks', 'null', '--checks', 'geodesic',
                                           '--out', out])
    assert result.exit_code == 0
    with open(out) as f:
        names = [c['name'] for c in json.load(f)['report']['checks']]
    assert names == ['constraints', 'null', 'geodesic', 'skipped_points']


def test_scan_failure_exit_code(config_file, tmpdir):
    path = config_file(perturbation={'eps_factor': '1 + x0'})
    result = CliRunner().invoke(cli.main, ['scan', '--config', path, '--grid', '2',
                                           '--out', str(tmpdir.join('report.json'))])
    assert result.exit_code == 1
    assert 'divergence' in result.output


def test_configuration_errors(config_file, tmpdir):
    runner = CliRunner()
    result = runner.invoke(cli.main, ['validate', '--config', str(tmpdir.join('missing.yaml'))])
    assert result.exit_code == 2
    result = runner.invoke(cli.main, ['scan', '--config', config_file(delta='1 +* x0')])
    assert result.exit_code == 2
    assert 'delta' in result.output
    result = runner.invoke(cli.main, ['validate', '--config', config_file(case=7)])
    assert result.exit_code == 2
    result = runner.invoke(cli.main, ['validate', '--config', config_file(flips=-1)])
    assert result.exit_code == 2
    assert 'flips' in result.output
    bad_yaml = tmpdir.join('bad.yaml')
    bad_yaml.write('type: [3.0\n')
    result = runner.invoke(cli.main, ['validate', '--config', str(bad_yaml)])
    assert result.exit_code == 2


def test_geodesic(config_file, tmpdir):
    out = str(tmpdir.join('geodesic.csv'))
    runner = CliRunner()
    result = runner.invoke(cli.main, ['geodesic', '--config', config_file(), '--start',
                                      '0,0,0,0', '--steps', '50', '--out', out])
    assert result.exit_code == 0
    samples = pandas.read_csv(out)
    assert len(samples) == 51
    assert samples['x0'].iloc[-1] == pytest.approx(0.025)

    result = runner.invoke(cli.main, ['geodesic', '--config', config_file(), '--start',
                                      '0.45,0,0,0', '--steps', '500', '--out', out])
    assert result.exit_code == 0
    assert 'truncated' in result.output

    for start in ('0.9,0,0,0', '0,0,0', 'a,b,c,d'):
        result = runner.invoke(cli.main, ['geodesic', '--config', config_file(), '--start',
                                          start])
        assert result.exit_code == 2


def test_export(config_file, tmpdir):
    out = str(tmpdir.join('field.csv'))
    result = CliRunner().invoke(cli.main, ['export', '--config', config_file(), '--grid', '2',
                                           '--out', out])
    assert result.exit_code == 0
    table = pandas.read_csv(out)
    assert len(table) == 16
    assert (table['eps'] > 0).all()


def test_random_writes_a_loadable_config(tmpdir):
    out = str(tmpdir.join('random.json'))
    runner = CliRunner()
    result = runner.invoke(cli.main, ['random', '--type', '1.1', '--case', '3', '--seed', '4',
                                      '--out', out])
    assert result.exit_code == 0
    config = process_options(load_config(out))
    assert config['name'] == 'random-1.1-3-4'
    result = runner.invoke(cli.main, ['validate', '--config', out])
    assert result.exit_code == 0

    result = runner.invoke(cli.main, ['random', '--type', '9.9', '--case', '1'])
    assert result.exit_code == 2
    result = runner.invoke(cli.main, ['random', '--type', '3.0', '--case', '5'])
    assert result.exit_code == 2
