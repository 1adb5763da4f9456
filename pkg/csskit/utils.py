import hashlib
import json
import logging
import os

import yaml

from .cases import CssType, function_axis, get_case, required_functions
from .errors import ConfigError, ExprSyntaxError, UnknownIdentifier
from .funcspec import ScalarFn, ScalarFn1D, ScalarFn4D
from .metrics import CssModel, NO_PERTURBATION, Perturbation
from .numerics import quadrature_spec

SCHEMA = 1

DEFAULT_TOLERANCES = {
    'null': 1e-10,
    'divergence': 1e-5,
    'geodesic': 1e-5,
    'constraint': 1e-8,
    'hamiltonian': 1e-8,
    'transport': 1e-6,
}

DEFAULT_QUADRATURE = {'abs_tol': 1e-10, 'rel_tol': 1e-10, 'max_depth': 40}


def load_config(filename):
    ext = os.path.splitext(filename)[1].lower()
    with open(filename) as f:
        if ext == '.json':
            return json.load(f)
        elif ext in ('.yaml', '.yml'):
            return yaml.safe_load(f)
        else:
            raise ConfigError('unknown filetype %s' % ext)


def filename_friendly_hash(inputs):
    return hashlib.md5(json.dumps(inputs, sort_keys=True).encode('utf-8')).hexdigest()


def dump_json(document):
    """Deterministic JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, allow_nan=False) + '\n'


def _reject_unknown(section, given, known):
    unknown = sorted(set(given) - set(known))
    if unknown:
        raise ConfigError('Unknown key %s in %s' % (unknown[0], section))


def _with_defaults(section, given, defaults):
    if not isinstance(given, dict):
        raise ConfigError('%s must be a mapping' % section)
    _reject_unknown(section, given, defaults)
    merged = dict(defaults)
    merged.update(given)
    return merged


def _box(value):
    try:
        box = [[float(lo), float(hi)] for lo, hi in value]
    except (TypeError, ValueError):
        raise ConfigError('box must be four [lo, hi] pairs')
    if len(box) != 4 or any(lo >= hi for lo, hi in box):
        raise ConfigError('box must be four [lo, hi] pairs with lo < hi')
    return box


def _point(name, value):
    try:
        point = [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError('%s must be four numbers' % name)
    if len(point) != 4:
        raise ConfigError('%s must be four numbers' % name)
    return point


def process_options(user_config):
    """Apply defaults and checks to a model configuration

    Args:
        user_config (dict) model configuration as loaded from a file

    Returns: (dict) the configuration with defaults applied; unknown keys,
        missing functions and constants foreign to the case raise ConfigError
    """
    if not isinstance(user_config, dict):
        raise ConfigError('config must be a mapping')
    config = dict()
    # Required fields
    for k in ('type', 'case', 'functions', 'delta', 'profile', 'box'):
        if k not in user_config:
            raise ConfigError('Key ' + k + ' must be defined in the config file')
        config[k] = user_config[k]
    # Optional fields
    for k, default in (('constants', {}),
                       ('x_ref', None),
                       ('tolerances', {}),
                       ('fd_step', None),
                       ('quadrature', {}),
                       ('flips', [1, 1, 1, 1]),
                       ('perturbation', {}),
                       ('name', None),
                       ('num_cores', None),
                       ('schema', SCHEMA)
                       ):
        config[k] = user_config.get(k, default)
    _reject_unknown('config', user_config, config)

    if config['schema'] != SCHEMA:
        raise ConfigError('unsupported schema %r' % config['schema'])
    css_type = CssType.from_label(config['type'])
    case = get_case(css_type, config['case'])
    config['type'], config['case'] = css_type.label, case.case_id

    functions = config['functions']
    if not isinstance(functions, dict):
        raise ConfigError('functions must be a mapping of names to expressions')
    for k in required_functions(case):
        if k not in functions:
            raise ConfigError('Key ' + k + ' must be defined in functions for type %s case %d'
                              % (css_type.label, case.case_id))
    _reject_unknown('functions', functions, required_functions(case))
    config['functions'] = dict((k, str(v)) for k, v in functions.items())

    constants = config['constants']
    if not isinstance(constants, dict):
        raise ConfigError('constants must be a mapping')
    _reject_unknown('constants for type %s case %d' % (css_type.label, case.case_id),
                    constants, case.constants)
    for k in case.constants:
        if k not in constants:
            raise ConfigError('Key ' + k + ' must be defined in constants')
    config['constants'] = dict((k, float(v)) for k, v in constants.items())

    config['box'] = _box(config['box'])
    if config['x_ref'] is None:
        config['x_ref'] = [(lo + hi) / 2.0 for lo, hi in config['box']]
    config['x_ref'] = _point('x_ref', config['x_ref'])
    if not all(lo <= v <= hi for v, (lo, hi) in zip(config['x_ref'], config['box'])):
        raise ConfigError('x_ref must lie inside the box')

    config['tolerances'] = _with_defaults('tolerances', config['tolerances'],
                                          DEFAULT_TOLERANCES)
    config['quadrature'] = _with_defaults('quadrature', config['quadrature'],
                                          DEFAULT_QUADRATURE)
    if not isinstance(config['perturbation'], dict):
        raise ConfigError('perturbation must be a mapping')
    perturbation = config['perturbation'] = dict(config['perturbation'])
    _reject_unknown('perturbation', perturbation, ('eps_factor', 'covector_shift'))
    if 'covector_shift' in perturbation:
        perturbation['covector_shift'] = _point('covector_shift',
                                                perturbation['covector_shift'])

    flips = config['flips']
    if not isinstance(flips, list) or len(flips) != 4 or any(f not in (1, -1) for f in flips):
        raise ConfigError('flips must be four values of +1 or -1')
    if config['fd_step'] is not None and not float(config['fd_step']) > 0:
        raise ConfigError('fd_step must be positive')
    return config


def _parse(key, parser):
    try:
        return parser()
    except (ExprSyntaxError, UnknownIdentifier) as e:
        raise ConfigError('%s: %s' % (key, e))


def model_from_config(config):
    """Build a CssModel from a processed configuration."""
    css_type = CssType.from_label(config['type'])
    case = get_case(css_type, config['case'])
    box = config['box']
    functions = dict()
    for name, source in config['functions'].items():
        axis = function_axis(name)
        functions[name] = _parse('functions.' + name, lambda: ScalarFn1D.parse(
            source, 'x%d' % axis, box[axis]))
    delta = _parse('delta', lambda: ScalarFn4D.parse(str(config['delta']), box))
    unbounded = [(-float('inf'), float('inf'))] * len(case.arguments)
    profile = _parse('profile', lambda: ScalarFn.parse(str(config['profile']),
                                                       case.arguments, unbounded))
    perturbation = NO_PERTURBATION
    if config['perturbation']:
        factor = config['perturbation'].get('eps_factor')
        if factor is not None:
            factor = _parse('perturbation.eps_factor',
                            lambda: ScalarFn4D.parse(str(factor), box))
        shift = config['perturbation'].get('covector_shift', NO_PERTURBATION.covector_shift)
        perturbation = Perturbation(factor, tuple(shift))
    try:
        quadrature = quadrature_spec(**config['quadrature'])
    except ValueError as e:
        raise ConfigError('quadrature: %s' % e)
    name = config['name'] or filename_friendly_hash(model_to_dict(config))
    logging.info('Loaded model %s (type %s, case %d)', name, css_type.label, case.case_id)
    return CssModel(css_type, case.case_id, functions, delta, profile, box,
                    x_ref=config['x_ref'], constants=config['constants'],
                    flips=config['flips'], perturbation=perturbation,
                    quadrature=quadrature, name=name)


def model_to_dict(config):
    """The model-defining part of a configuration, used for ids."""
    return dict((k, config[k]) for k in ('type', 'case', 'functions', 'delta', 'profile',
                                         'box', 'x_ref', 'constants', 'flips', 'perturbation'))


def model_to_config(model):
    """Configuration that rebuilds ``model`` through process_options."""
    config = {
        'schema': SCHEMA,
        'type': model.css_type.label,
        'case': model.case_id,
        'functions': dict((k, fn.source) for k, fn in model.functions.items()),
        'delta': model.delta.source,
        'profile': model.profile.source,
        'box': [list(b) for b in model.box],
        'x_ref': list(model.x_ref),
        'constants': dict((k, model.constants[k]) for k in model.case.constants),
        'flips': list(model.flips),
        'quadrature': dict(model.quadrature._asdict()),
        'name': model.name,
    }
    perturbation = {}
    if model.perturbation.eps_factor is not None:
        perturbation['eps_factor'] = model.perturbation.eps_factor.source
    if any(model.perturbation.covector_shift):
        perturbation['covector_shift'] = list(model.perturbation.covector_shift)
    if perturbation:
        config['perturbation'] = perturbation
    return config
