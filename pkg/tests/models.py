"""Small hand-checkable models shared by the tests."""
import copy
from functools import lru_cache

from csskit.cases import REGISTRY
from csskit.generate import make_random_model
from csskit.utils import model_from_config, process_options

# Flat space in type (3.0) coordinates: G = diag(1, -1, -1, -1).
# With alpha = 0.3, beta = 0.4, gamma = 0 the wave vector is the constant
# null covector (0.5, 0.3, 0.4, 0) and eps = F(X, Y, Z) / 0.5.
MINKOWSKI_T30 = {
    'type': '3.0',
    'case': 1,
    'functions': {'a0': '-1', 'b0': '0', 'c0': '0', 'd0': '-1', 'e0': '0', 'f0': '-1'},
    'constants': {'alpha': 0.3, 'beta': 0.4, 'gamma': 0.0},
    'delta': '1',
    'profile': '1 + 0.1*X^2 + 0.05*Y',
    'box': [[-0.5, 0.5]] * 4,
}

ALL_CASES = list(REGISTRY)
CASE_IDS = ['%s-%d' % (t.label, c) for t, c in ALL_CASES]


def minkowski_config(**changes):
    config = copy.deepcopy(MINKOWSKI_T30)
    config.update(changes)
    return config


def minkowski_model(**changes):
    return model_from_config(process_options(minkowski_config(**changes)))


@lru_cache(maxsize=None)
def random_model(css_type, case_id, seed=0):
    """make_random_model, built once per test session."""
    return make_random_model(css_type, case_id, seed=seed)
