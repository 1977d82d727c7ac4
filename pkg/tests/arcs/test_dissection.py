from fractions import Fraction

import pytest

from circlelab.arcs import dissect, varpi, PreconditionError
from circlelab.nf import NumberField
from circlelab.polys import PolySystem


class TestDissect:

    def test_rationals(self, rationals: NumberField, instance_a: PolySystem):
        plan = dissect(rationals, instance_a, 64)
        assert plan.varpi == Fraction(1, 6)
        assert plan.norm_bound == 2
        assert [center.coords for center in plan.centers] == [(0,), (Fraction(1, 2),)]
        assert plan.disjoint
        assert plan.radii[2] == pytest.approx(2 / 64 ** 2)

    def test_gaussian(self, gaussian: NumberField, instance_b: PolySystem):
        plan = dissect(gaussian, instance_b, 128)
        assert plan.varpi == Fraction(1, 7)
        assert len(plan.centers) == 2
        assert plan.raw_count == 3
        assert plan.centers[1].coords == (Fraction(1, 2), Fraction(1, 2))

    def test_locate(self, rationals: NumberField, instance_a: PolySystem):
        plan = dissect(rationals, instance_a, 64)
        assert plan.locate([0.5 + 1e-5]).coords == (Fraction(1, 2),)
        assert plan.locate([0.0 - 1e-5]).coords == (0,)
        assert plan.locate([0.3]) is None

    def test_small_scale(self, rationals: NumberField, instance_a: PolySystem):
        with pytest.raises(PreconditionError):
            dissect(rationals, instance_a, 1)

    def test_to_dict(self, rationals: NumberField, instance_a: PolySystem):
        document = dissect(rationals, instance_a, 64).to_dict()
        assert document['varpi'] == '1/6'
        assert document['overlap'] is None

    def test_arc_volume(self, rationals: NumberField, gaussian: NumberField, instance_a: PolySystem,
                        instance_b: PolySystem):
        """Two arcs of width 2 * 2 / 64^2 over Q, and 2^{nT} times the reference in general"""
        plan = dissect(rationals, instance_a, 64)
        assert plan.arc_volume == pytest.approx(1 / 512)
        assert plan.arc_volume == pytest.approx(2 * plan.reference_volume)
        plan = dissect(gaussian, instance_b, 128)
        assert plan.arc_volume == pytest.approx(4 * plan.reference_volume)
        assert plan.to_dict()['arc_volume'] == plan.arc_volume

    def test_varpi(self, rationals: NumberField, instance_a: PolySystem):
        assert varpi(rationals, instance_a) == Fraction(1, 6)
