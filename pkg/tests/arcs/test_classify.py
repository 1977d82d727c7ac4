import math
from fractions import Fraction

import pytest

from circlelab.arcs import Membership, classify, classify_e_grid, find_approximation, q_levels, bound_holds
from circlelab.nf import NumberField
from circlelab.polys import PolySystem


class TestFindApproximation:

    def test_near_one_half(self, rationals: NumberField):
        P = 10
        found = find_approximation(rationals, [[0.5 + 1 / P ** 2]], 2, P, 2)
        assert found == ((2,), ((1,),))

    def test_no_approximation(self, rationals: NumberField):
        assert find_approximation(rationals, [[0.3]], 1, 100, 2) is None

    def test_divisor(self, rationals: NumberField):
        found = find_approximation(rationals, [[0.25]], 4, 10, 1, divisor=(2,))
        assert found[0] == (4,)


class TestClassify:

    def test_origin_is_approximable(self, gaussian: NumberField, instance_b: PolySystem):
        result = classify(gaussian, instance_b, [0, 0], 8, {2: 0})
        assert result.membership == Membership.Approximable
        assert result.label == 'I^(2)'
        assert result.chain[0].q == (1, 0)
        assert result.chain_found

    def test_generic_point_satisfies_the_bound(self, rationals: NumberField, instance_a: PolySystem):
        result = classify(rationals, instance_a, [math.sqrt(2) - 1], 64, {2: 0}, e_exponent=2)
        assert result.L < 1
        assert result.verdicts[2] == bound_holds(instance_a, 1, 2, result.L, 64, {1: 0, 2: 0}, result.Q)

    def test_levels(self, instance_a: PolySystem):
        levels = q_levels(instance_a, 1, 0.0, 16, {1: 0, 2: 0}, {1: 0.0, 2: 0.0})
        assert levels[3] == 1.0
        assert math.isinf(levels[2])
        assert levels[1] == levels[2]

    def test_scale_below_two(self, rationals: NumberField, instance_a: PolySystem):
        with pytest.raises(ValueError):
            classify(rationals, instance_a, [Fraction(1, 2)], 1)

    def test_e_grid(self, rationals: NumberField, instance_a: PolySystem):
        labels = classify_e_grid(rationals, instance_a, [Fraction(1, 3)], 16, {2: 0})
        assert set(labels) == {0, 1, 2}
        assert all(label in ('I_2^(1)', 'I^(2)') for label in labels.values())

    def test_to_dict(self, rationals: NumberField, instance_a: PolySystem):
        document = classify(rationals, instance_a, [Fraction(1, 2)], 16, {2: 0}).to_dict()
        assert document['membership'] in ('I_2^(1)', 'I^(2)')
        assert document['P'] == 16.0
