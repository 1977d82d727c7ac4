import math

import pytest

from circlelab.archimedean import OuterMethod, eval_J, j_values, singular_integral, j_decay_profile
from circlelab.nf import NumberField
from circlelab.polys import PolySystem, BoxRegion, parse_system


class TestEvalJ:

    def test_volume_at_zero(self, rationals: NumberField, single_variable: PolySystem):
        assert eval_J(rationals, single_variable, [0]).value == pytest.approx(2)

    def test_linear_form(self, rationals: NumberField, single_variable: PolySystem):
        """integral of e(x / 4) over [-1, 1] is sin(pi / 2) / (pi / 4)"""
        result = eval_J(rationals, single_variable, [0.25])
        assert result.value.real == pytest.approx(4 / math.pi, rel=1e-8)
        assert result.value.imag == pytest.approx(0, abs=1e-10)
        assert not result.flagged

    def test_conjugate_symmetry(self, rationals: NumberField, instance_a: PolySystem):
        plus, minus = j_values(rationals, instance_a, [[1.5], [-1.5]])
        assert minus.value == pytest.approx(plus.value.conjugate())

    def test_gaussian_volume(self, gaussian: NumberField, instance_b: PolySystem):
        assert eval_J(gaussian, instance_b, [0, 0]).value.real == pytest.approx(2 ** 10)

    def test_custom_box(self, rationals: NumberField, single_variable: PolySystem):
        box = BoxRegion.cube(1, 0, 1)
        assert eval_J(rationals, single_variable, [0.5], box).value.real == pytest.approx(0, abs=1e-10)


class TestSingularIntegral:

    def test_dirichlet_integral(self, rationals: NumberField, single_variable: PolySystem):
        """J(H) for a linear form tends to the density 1 of x = 0"""
        report = singular_integral(rationals, single_variable, 16, density_samples=100000)
        assert report.method == OuterMethod.Quadrature
        assert not report.fallback
        assert report.value == pytest.approx(1, abs=0.05)
        assert sorted(report.JH) == [16.0, 32.0, 64.0]
        assert report.density_estimate.value == pytest.approx(1, abs=0.1)
        assert report.agrees(0.1)

    def test_monte_carlo(self, rationals: NumberField, single_variable: PolySystem):
        report = singular_integral(rationals, single_variable, 4, method=OuterMethod.MonteCarlo, sweep=1,
                                   samples=20000, density=False)
        assert report.method == OuterMethod.MonteCarlo
        assert report.standard_errors[4.0] > 0
        assert report.value == pytest.approx(1, abs=6 * report.standard_errors[4.0] + 0.05)
        assert report.density_estimate is None
        assert report.agrees() is None

    def test_fallback_beyond_two_dimensions(self, rationals: NumberField):
        system = parse_system('x1; x2; x3', rationals)
        report = singular_integral(rationals, system, 2, sweep=1, samples=2000, density=False)
        assert report.fallback
        assert report.method == OuterMethod.MonteCarlo
        assert report.to_dict()['fallback'] == 'monte_carlo'

    def test_non_positive_truncation(self, rationals: NumberField, single_variable: PolySystem):
        with pytest.raises(ValueError):
            singular_integral(rationals, single_variable, -1)

    @pytest.mark.slow
    def test_instance_a(self, rationals: NumberField, instance_a: PolySystem):
        report = singular_integral(rationals, instance_a, 8)
        assert report.value > 0
        assert report.agrees()


class TestDecay:

    def test_quadric_decays(self, rationals: NumberField, instance_a: PolySystem):
        profile = j_decay_profile(rationals, instance_a, directions=4)
        assert profile.decreasing
        assert profile.slope < -1
        assert profile.radii == (2.0, 4.0, 8.0, 16.0)
