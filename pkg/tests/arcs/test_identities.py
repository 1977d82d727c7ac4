import random
from fractions import Fraction

import pytest

from circlelab.arcs import PreconditionError, weyl_identity_check, major_arc_expansion_check, major_arc_sweep
from circlelab.nf import NumberField
from circlelab.polys import PolySystem, BoxRegion, parse_system


@pytest.fixture(scope='module')
def square(rationals: NumberField) -> PolySystem:
    return parse_system('x1**2', rationals)


class TestWeylIdentity:

    def test_trivial_differencing(self, rationals: NumberField, square: PolySystem):
        report = weyl_identity_check(rationals, square, 1, 1, 10, alphas=[[Fraction(1, 3)]])
        assert report.holds

    def test_random_points(self, rationals: NumberField, square: PolySystem):
        report = weyl_identity_check(rationals, square, 1, 5, 30, trials=3, seed=7)
        assert len(report.trials) == 3
        assert report.holds
        assert report.bounded
        assert report.rho_max > 0

    def test_shift_by_two(self, rationals: NumberField, square: PolySystem):
        report = weyl_identity_check(rationals, square, 2, 3, 30, alphas=[[0.1234]])
        assert report.holds
        assert report.to_dict()['q'] == ['2']

    @pytest.mark.parametrize('seed', range(20))
    def test_random_instances(self, rationals: NumberField, gaussian: NumberField, random_form, seed):
        rng = random.Random(seed)
        if seed % 4 == 0:
            field, s, P = gaussian, 1, rng.randint(4, 8)
            q = gaussian.element(*rng.choice([(1, 0), (0, 1), (1, 1)]))
            H = rng.randint(1, 2)
        else:
            field, s, P = rationals, rng.randint(1, 2), rng.randint(8, 20)
            q = rng.randint(1, 3)
            H = rng.randint(1, min(4, P // q))
        text = '; '.join(random_form(rng, s, rng.randint(1, 3)) for _ in range(rng.randint(1, 2)))
        system = parse_system(text, field, nvars=s)
        report = weyl_identity_check(field, system, q, H, P, trials=2, seed=seed)
        assert report.holds
        assert all(t.rho >= 0 for t in report.trials)

    @pytest.mark.parametrize('q,H', [(1, 0), (0, 2), (Fraction(1, 2), 2), (1, 40)])
    def test_preconditions(self, rationals: NumberField, square: PolySystem, q, H):
        with pytest.raises(PreconditionError):
            weyl_identity_check(rationals, square, q, H, 30)


class TestMajorArcExpansion:

    def test_center_with_vanishing_sigma(self, rationals: NumberField, instance_a: PolySystem):
        """Sigma(1/2) = 0, so only |S(1/2)| = 1 is left over"""
        report = major_arc_expansion_check(rationals, instance_a, [Fraction(1, 2)], [0], 4)
        assert abs(report.sigma) == pytest.approx(0, abs=1e-9)
        assert report.residual == pytest.approx(1, abs=1e-6)
        assert report.residual <= report.bound_shape
        assert report.norm == 2
        assert report.on_major_arc

    def test_origin(self, rationals: NumberField, instance_a: PolySystem):
        """At gamma = 0 and theta = 0 the main term is P^5 vol(B)"""
        report = major_arc_expansion_check(rationals, instance_a, [0], [0], 8)
        assert report.main.real == pytest.approx(8 ** 5 * 32)
        assert report.S.real == pytest.approx(17 ** 5)

    def test_off_the_arc(self, rationals: NumberField, instance_a: PolySystem):
        report = major_arc_expansion_check(rationals, instance_a, [0], [0.2], 8)
        assert not report.on_major_arc

    def test_sweep(self, rationals: NumberField, instance_a: PolySystem):
        sweep = major_arc_sweep(rationals, instance_a, [Fraction(1, 2)], [0.5], [4, 8, 16],
                                box=BoxRegion.cube(5))
        assert len(sweep.reports) == 3
        assert sweep.C == max(r.ratio for r in sweep.reports)
        assert set(sweep.to_dict()) == {'C', 'stable', 'reports'}
