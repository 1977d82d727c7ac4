import pytest

from circlelab.harness import load_experiment

INSTANCE_A = 'x1**2 + x2**2 + x3**2 - x4**2 - x5**2'


@pytest.fixture
def experiment():
    """Validated experiments on the diagonal quinary quadric with cheap settings, updated by keyword"""
    def make(**overrides):
        settings = {
            'SYSTEM': INSTANCE_A,
            'P_VALUES': [2, 4],
            'ENGINE': 'mitm',
            'SPLIT': [1, 2, 3],
            'B_OVERRIDES': {'2': 0},
            'SERIES_H': 4,
            'SERIES_PRIME_CUTOFF': 5,
            'SERIES_DEPTH': 2,
            'INTEGRAL_H': 2,
            'DENSITY_SAMPLES': 20000,
            'MINOR_ARC_GRID': 64,
        }
        settings.update(overrides)
        return load_experiment(settings)
    return make
