from fractions import Fraction

import pytest

from circlelab.counting import Engine
from circlelab.errors import ConfigurationError
from circlelab.harness import load_experiment


class TestLoadExperiment:

    def test_defaults(self):
        config = load_experiment({'SYSTEM': 'x1', 'P_VALUES': [1, 2]})
        assert config.field_poly == [1, -1]
        assert config.engine == Engine.Auto
        assert config.scales == [1, 2]
        assert config.B_overrides == {}

    def test_rational_values(self, experiment):
        config = experiment(P_VALUES=['5/2', 4], ALPHA_POINTS=[['1/3'], [0.25]])
        assert config.scales == [Fraction(5, 2), 4]
        assert config.alpha_points == [[Fraction(1, 3)], [Fraction(1, 4)]]

    def test_overrides_are_keyed_by_degree(self, experiment):
        assert experiment().B_overrides == {2: 0}

    def test_unknown_keys_are_ignored(self, experiment):
        assert experiment(TABLE_PAIR_BUDGET=5).engine == Engine.Mitm

    @pytest.mark.parametrize('key,value', [
        ('P_VALUES', [4, 2]),
        ('P_VALUES', [0]),
        ('ENGINE', 'fast'),
        ('SPLIT', [7]),
        ('BOX', [[2, 3]]),
        ('INTEGRAL_H', 0),
        ('SERIES_PRIME_CUTOFF', 1),
        ('FIELD_POLY', 'x^2+1'),
    ])
    def test_invalid(self, experiment, key: str, value):
        with pytest.raises(ConfigurationError) as info:
            experiment(**{key: value})
        assert key in info.value.messages

    def test_missing_system(self):
        with pytest.raises(ConfigurationError) as info:
            load_experiment({'P_VALUES': [1]})
        assert 'SYSTEM' in info.value.messages
        assert info.value.to_dict()['errors'][0]['detail'].startswith('invalid experiment configuration')


class TestBuild:

    def test_instance(self, experiment):
        config = experiment(FIELD_POLY=[1, 0, 1])
        field = config.build_field()
        system = config.build_system(field)
        assert field.n == 2
        assert config.build_box(field, system).dimension == 10

    def test_box_length(self, experiment):
        config = experiment(BOX=[[-1, 1], [0, 1]])
        field = config.build_field()
        with pytest.raises(ConfigurationError):
            config.build_box(field, config.build_system(field))
