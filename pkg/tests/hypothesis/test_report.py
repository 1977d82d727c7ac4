import random
from fractions import Fraction

import pytest

from circlelab.hypothesis import check_main_hypothesis, corollary_bounds, s_values
from circlelab.hypothesis.errors import StandingAssumptionError
from circlelab.nf import NumberField
from circlelab.polys import PolySystem, parse_system


class TestMainHypothesis:

    def test_instance_a(self, instance_a: PolySystem):
        report = check_main_hypothesis(instance_a, {2: 0})
        assert report.s_vals[2] == Fraction(2, 5)
        assert report.lhs == {0: Fraction(4, 5), 2: Fraction(4, 5)}
        assert report.overall
        assert report.margin == Fraction(1, 5)
        assert report.birch_skinner

    def test_four_variables_fail(self, rationals: NumberField):
        system = parse_system('x1**2 + x2**2 - x3**2 - x4**2', rationals)
        report = check_main_hypothesis(system, {2: 0})
        assert report.lhs[0] == 1
        assert not report.overall
        assert report.birch_skinner is False

    def test_empty_locus_convention(self, single_variable: PolySystem):
        """B_1 = -1 passes but the conservative B_1 = 0 does not"""
        report = check_main_hypothesis(single_variable, {1: -1})
        assert report.lhs[1] == Fraction(1, 2)
        assert report.overall
        assert not report.conservative_overall

    def test_standing_assumption(self, instance_a: PolySystem):
        with pytest.raises(StandingAssumptionError) as excinfo:
            check_main_hypothesis(instance_a, {2: 5})
        assert excinfo.value.B == 5

    def test_missing_degree(self, instance_a: PolySystem):
        with pytest.raises(ValueError):
            check_main_hypothesis(instance_a, {})

    def test_mixed_system(self, rationals: NumberField):
        system = parse_system('x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8;'
                              'x1**2 + x2**2 + x3**2 + x4**2 - x5**2 - x6**2 - x7**2 - x8**2', rationals)
        report = check_main_hypothesis(system, {1: -1, 2: 0})
        assert report.birch_skinner is None
        assert set(report.lhs) == {0, 1, 2}
        assert s_values(system, {1: -1, 2: 0})[1] == Fraction(1, 4)

    def test_to_dict_is_plain(self, instance_a: PolySystem):
        document = check_main_hypothesis(instance_a, {2: 0}, {2: 'asserted'}).to_dict()
        assert document['margin'] == '1/5'
        assert document['confidence'] == {'2': 'asserted'}
        assert document['s0']['s0'] == 4


class TestCorollaryBounds:

    def test_instance_a(self, instance_a: PolySystem):
        bounds = corollary_bounds(instance_a, {2: 0})
        assert bounds.u == {1: 2, 2: 2, 3: 0}
        assert bounds.s0_by_degree == {0: 4, 2: 4}
        assert bounds.sufficient

    def test_linear_profile_breaks_power_bound(self, single_variable: PolySystem):
        bounds = corollary_bounds(single_variable)
        assert bounds.s0 == 1
        assert not bounds.checks['s0 + T - 1 <= (calD - 1) 2^calD']
        assert bounds.sufficient is None


class TestSingleDegreeProfiles:

    def test_agrees_with_birch_skinner(self, rationals: NumberField):
        """With one degree D >= 2 the hypothesis reduces to s - B > t(t+1)(D-1)2^(D-1)"""
        rng = random.Random(5)
        for _ in range(50):
            D, t = rng.randint(2, 3), rng.randint(1, 3)
            threshold = t * (t + 1) * (D - 1) * 2 ** (D - 1)
            s = rng.randint(1, threshold + 6)
            B = rng.randint(0, s - 1)
            text = '; '.join(' + '.join('{}*x{}**{}'.format(k + 1, v, D) for v in range(1, s + 1))
                             for k in range(t))
            report = check_main_hypothesis(parse_system(text, rationals), {D: B})
            assert report.overall == report.birch_skinner
            assert report.birch_skinner == (s - B > threshold)
