# -*- coding: utf-8 -*-

"""
Command line front end: validate, scan and export models, trace null
geodesics, list the case registry and draw random models.

Exit codes: 0 success, 1 failed checks, 2 usage or configuration errors.
"""
import sys
import time
import logging

import click
import yaml

from . import __version__
from .cases import REGISTRY, CssType, required_functions
from .errors import ConfigError, ExprSyntaxError, GenerationFailure, UnknownIdentifier
from .generate import make_random_model
from .metrics import validate_constraints
from .utils import dump_json, load_config, model_from_config, model_to_config, process_options
from .verify import CHECKS, CSV_COLUMNS, evaluate_points, integrate_null_geodesic, scan, \
    scan_points

START_TIME = time.time()

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2

CONFIG_ERRORS = (ConfigError, ExprSyntaxError, UnknownIdentifier, IOError, ValueError,
                 yaml.YAMLError)


def _load(config_path):
    """(config, model) from a file; exits with code 2 on any configuration error."""
    try:
        config = process_options(load_config(config_path))
        return config, model_from_config(config)
    except CONFIG_ERRORS as e:
        click.echo('Configuration error in %s: %s' % (config_path, e), err=True)
        sys.exit(EXIT_CONFIG)


def _write(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, 'w') as f:
            f.write(text)


def _finish(code):
    logging.info('ran in %s seconds', time.time() - START_TIME)
    sys.exit(code)


@click.group()
@click.option('-v', '--verbosity', count=True, help='Repeat for more log output.')
@click.version_option(__version__)
def main(verbosity):
    log_level = logging.WARNING
    if verbosity == 1:
        log_level = logging.INFO
    elif verbosity >= 2:
        log_level = logging.DEBUG
    logging.getLogger().setLevel(log_level)


config_option = click.option('--config',
                             help='YAML- or JSON-formatted model configuration file.',
                             required=True)


@main.command()
@config_option
@click.option('--grid', default=5, show_default=True, help='Validation points per axis.')
def validate(config, grid):
    """Check case constraints, signature and solution domain of a model."""
    config, model = _load(config)
    violations = validate_constraints(model, grid, config['tolerances']['constraint'])
    for v in violations:
        click.echo('%s: magnitude %g at %s %s' % (v.constraint, v.magnitude,
                                                 list(v.location), v.message))
    if not violations:
        click.echo('%s: all constraints hold' % model.name)
    _finish(EXIT_FAILED if violations else EXIT_OK)


@main.command('scan')
@config_option
@click.option('--grid', default=5, show_default=True, help='Grid points per axis.')
@click.option('--seed', default=0, show_default=True, help='Seed of the random points.')
@click.option('--random', 'random_points', default=0, show_default=True,
              help='Number of additional random interior points.')
@click.option('--checks', type=click.Choice(CHECKS), multiple=True,
              help='Residual checks to run (default: all).')
@click.option('--out', help='JSON report file (default: standard output).')
@click.option('--csv', 'csv_path', help='Per-point CSV file.')
def scan_command(config, grid, seed, random_points, checks, out, csv_path):
    """Run the residual oracles on a grid and write a JSON report."""
    config, model = _load(config)
    report = scan(model, grid_n=grid, checks=checks or CHECKS, seed=seed,
                  random_points=random_points, tolerances=config['tolerances'],
                  h=config['fd_step'], threads=config['num_cores'])
    document = {
        'schema': config['schema'],
        'version': __version__,
        'seed': seed,
        'config': config,
        'report': report.to_dict(),
    }
    _write(dump_json(document), out)
    if csv_path:
        report.to_csv(csv_path)
    if not report.passed:
        click.echo('Failed checks: %s' % ', '.join(report.failures()), err=True)
    _finish(EXIT_OK if report.passed else EXIT_FAILED)


@main.command()
@config_option
@click.option('--start', required=True, help='Start point as x0,x1,x2,x3.')
@click.option('--steps', default=1000, show_default=True, help='Number of RK4 steps.')
@click.option('--dl', default=1e-3, show_default=True, help='Affine parameter step.')
@click.option('--out', help='Trajectory CSV file (default: standard output).')
def geodesic(config, start, steps, dl, out):
    """Integrate the null geodesic tangent to the wave vector at a start point."""
    config, model = _load(config)
    try:
        x0 = [float(v) for v in start.split(',')]
    except ValueError:
        x0 = []
    if len(x0) != 4 or not model.contains(x0):
        click.echo('Start point %s must be four numbers inside the box' % start, err=True)
        sys.exit(EXIT_CONFIG)
    trajectory = integrate_null_geodesic(model, x0, steps, dl)
    _write(trajectory.samples.to_csv(index=False, float_format='%.17g'), out)
    tolerances = config['tolerances']
    passed = (trajectory.hamiltonian_drift <= tolerances['hamiltonian'] and
              trajectory.transport_error <= tolerances['transport'])
    summary = 'hamiltonian drift %g, max |p - L| %g' % (trajectory.hamiltonian_drift,
                                                        trajectory.transport_error)
    if trajectory.truncated:
        summary += ', truncated at the box boundary after %d steps' % (
            len(trajectory.samples) - 1)
    click.echo(summary, err=True)
    _finish(EXIT_OK if passed else EXIT_FAILED)


@main.command()
def cases():
    """List every (type, case) of the registry."""
    for css_type in CssType:
        rows = [c for c in REGISTRY.values() if c.css_type is css_type]
        click.echo('Type %s (%d cases)' % (css_type.label, len(rows)))
        for c in rows:
            click.echo('  case %d: %s' % (c.case_id, c.condition))
            click.echo('    functions: %s' % ', '.join(required_functions(c)))
            click.echo('    constants: %s' % (', '.join(c.constants) or 'none'))
            click.echo('    arguments: %s' % ', '.join(c.arguments))
            click.echo('    constraints: %s' % ('; '.join(c.constraints) or 'none'))
            click.echo('    signature: %s' % c.signature)
            click.echo('    reference: %s' % c.reference)
            if c.notes:
                click.echo('    note: %s' % c.notes)
    _finish(EXIT_OK)


@main.command()
@config_option
@click.option('--grid', default=5, show_default=True, help='Grid points per axis.')
@click.option('--seed', default=0, show_default=True, help='Seed of the random points.')
@click.option('--random', 'random_points', default=0, show_default=True,
              help='Number of additional random interior points.')
@click.option('--out', help='CSV file (default: standard output).')
def export(config, grid, seed, random_points, out):
    """Write the wave vector, energy density and residuals on a grid as CSV."""
    config, model = _load(config)
    h = config['fd_step']
    points = scan_points(model, grid, random_points, seed, h)
    table = evaluate_points(model, points, CHECKS, h, config['num_cores'])
    table = table[~table['skipped']].reindex(columns=CSV_COLUMNS)
    _write(table.to_csv(index=False, float_format='%.17g'), out)
    _finish(EXIT_OK)


@main.command('random')
@click.option('--type', 'type_label', required=True, help='Type label such as 3.0.')
@click.option('--case', 'case_id', required=True, type=int, help='Case number.')
@click.option('--seed', default=0, show_default=True, help='Generator seed.')
@click.option('--out', help='JSON model file (default: standard output).')
def random_command(type_label, case_id, seed, out):
    """Write the configuration of a seeded random valid model."""
    try:
        css_type = CssType.from_label(type_label)
        model = make_random_model(css_type, case_id, seed)
    except ConfigError as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_CONFIG)
    except GenerationFailure as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_FAILED)
    _write(dump_json(model_to_config(model)), out)
    _finish(EXIT_OK)


if __name__ == '__main__':
    main()
