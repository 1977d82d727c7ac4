from fractions import Fraction

import pytest

from circlelab.arcs import ArcPoint, exp_sum, exp_sum_grid, circle_identity_check, minor_arc_integral, \
    minor_arc_sweep
from circlelab.errors import BudgetExceededError
from circlelab.nf import NumberField
from circlelab.polys import PolySystem, BoxRegion


class TestExpSum:

    def test_linear_alternating(self, rationals: NumberField, single_variable: PolySystem):
        """sum over |x| <= 2 of (-1)^x"""
        assert exp_sum(rationals, single_variable, Fraction(1, 2), BoxRegion.cube(1), 2) == pytest.approx(1)

    def test_zero_counts_points(self, rationals: NumberField, instance_a: PolySystem):
        assert exp_sum(rationals, instance_a, 0, BoxRegion.cube(5), 1) == pytest.approx(3 ** 5)

    def test_instance_a_at_one_half(self, rationals: NumberField, instance_a: PolySystem):
        """Every variable contributes 1 + 2 e(1/2) = -1"""
        assert exp_sum(rationals, instance_a, Fraction(1, 2), BoxRegion.cube(5), 1) == pytest.approx(-1)

    def test_float_matches_exact(self, rationals: NumberField, instance_a: PolySystem):
        box = BoxRegion.cube(5)
        exact = exp_sum(rationals, instance_a, Fraction(3, 8), box, 6)
        real = exp_sum(rationals, instance_a, 0.375, box, 6)
        assert real == pytest.approx(exact, abs=1e-6)

    def test_periodic(self, gaussian: NumberField, instance_b: PolySystem):
        box = BoxRegion.cube(10)
        alpha = [Fraction(1, 3), Fraction(1, 5)]
        shifted = [Fraction(4, 3), Fraction(-4, 5)]
        assert exp_sum(gaussian, instance_b, alpha, box, 2) == pytest.approx(
            exp_sum(gaussian, instance_b, shifted, box, 2))

    def test_arc_point(self, rationals: NumberField, single_variable: PolySystem):
        point = ArcPoint(((Fraction(1, 2),),), 2)
        assert exp_sum(rationals, single_variable, point, BoxRegion.cube(1)) == pytest.approx(1)
        assert ArcPoint(((Fraction(3, 2),),), 2).normalized().flat == (Fraction(1, 2),)

    def test_scale_is_required(self, rationals: NumberField, single_variable: PolySystem):
        with pytest.raises(ValueError):
            exp_sum(rationals, single_variable, Fraction(1, 2), BoxRegion.cube(1))

    def test_grid(self, rationals: NumberField, single_variable: PolySystem):
        values = exp_sum_grid(rationals, single_variable, [[0], [Fraction(1, 2)]], BoxRegion.cube(1), 2)
        assert values[0] == pytest.approx(5)
        assert values[1] == pytest.approx(1)

    def test_box_budget(self, rationals: NumberField, instance_a: PolySystem):
        with pytest.raises(BudgetExceededError):
            exp_sum(rationals, instance_a, Fraction(1, 2), BoxRegion.cube(5), 100, budget=10)


class TestCircleIdentity:

    def test_instance_a(self, rationals: NumberField, instance_a: PolySystem):
        report = circle_identity_check(rationals, instance_a, BoxRegion.cube(5), 1)
        assert report.count == 73
        assert report.holds
        assert report.G == 11

    def test_gaussian(self, gaussian: NumberField, instance_b: PolySystem):
        report = circle_identity_check(gaussian, instance_b, BoxRegion.cube(10), 1)
        assert report.holds


class TestMinorArcs:

    def test_partition_of_the_grid(self, rationals: NumberField, instance_a: PolySystem):
        report = minor_arc_integral(rationals, instance_a, BoxRegion.cube(5), 64, grid=32)
        assert report.grid == 32
        assert 0 < report.minor_points < 32
        assert 0.0 < report.major_share < 1.0

    @pytest.mark.slow
    def test_sweep(self, rationals: NumberField, instance_a: PolySystem):
        reports, decreasing = minor_arc_sweep(rationals, instance_a, BoxRegion.cube(5), [8, 16, 32], grid=256)
        assert len(reports) == 3
        assert all(r.normalized > 0 for r in reports)


class TestTrivialBound:

    def test_bounded_by_the_point_count(self, gaussian: NumberField, instance_b: PolySystem):
        box = BoxRegion.cube(10)
        total = abs(exp_sum(gaussian, instance_b, [0, 0], box, 2))
        for alpha in ([0.1, 0.7], [Fraction(1, 3), Fraction(2, 5)], [0.5, 0.5]):
            assert abs(exp_sum(gaussian, instance_b, alpha, box, 2)) <= total * (1 + 1e-12)
