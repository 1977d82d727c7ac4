from fractions import Fraction

import pytest

from circlelab.densities import DensityMethod, SeriesStatus, local_density, partial_factor, rho, \
    primitive_solution_exists, prime_valuation, ideal_coefficient, gamma_sum, euler_factor, matched_product, \
    singular_series
from circlelab.nf import NumberField, primes_above, enumerate_ideals
from circlelab.polys import PolySystem, parse_system


def prime(field: NumberField, p: int):
    return primes_above(field, p)[0]


class TestLocalDensity:

    def test_rho_mod_three(self, rationals: NumberField, instance_a: PolySystem):
        assert rho(rationals, instance_a, prime(rationals, 3).ideal) == 81

    @pytest.mark.parametrize('method', [DensityMethod.Character, DensityMethod.Counting])
    def test_depth_one_at_three(self, rationals: NumberField, instance_a: PolySystem, method: DensityMethod):
        factor = local_density(rationals, instance_a, prime(rationals, 3), 1, method)
        assert factor.value == 1
        assert factor.depth == 1
        assert factor.method == method

    def test_depth_one_at_two(self, rationals: NumberField, instance_a: PolySystem):
        assert local_density(rationals, instance_a, prime(rationals, 2), 1).value == 1

    def test_depth_zero(self, rationals: NumberField, instance_a: PolySystem):
        assert local_density(rationals, instance_a, prime(rationals, 5), 0).value == 1

    def test_methods_agree_at_depth_two(self, rationals: NumberField, instance_a: PolySystem):
        a = enumerate_ideals(rationals, 4)[3]
        character = partial_factor(rationals, instance_a, a, DensityMethod.Character)
        counting = partial_factor(rationals, instance_a, a, DensityMethod.Counting)
        assert character.value == counting.value

    def test_gaussian_methods_agree(self, gaussian: NumberField, instance_b: PolySystem):
        p = prime(gaussian, 5).ideal
        character = partial_factor(gaussian, instance_b, p, DensityMethod.Character)
        counting = partial_factor(gaussian, instance_b, p, DensityMethod.Counting)
        assert character.value == counting.value


class TestPrimitiveSolutions:

    def test_isotropic(self, rationals: NumberField, instance_a: PolySystem):
        assert primitive_solution_exists(rationals, instance_a, prime(rationals, 3), 1)

    def test_anisotropic_mod_three(self, rationals: NumberField):
        """-1 is not a square mod 3"""
        system = parse_system('x1**2 + x2**2', rationals)
        assert primitive_solution_exists(rationals, system, prime(rationals, 3), 1) is False

    def test_budget_returns_none(self, rationals: NumberField, instance_a: PolySystem):
        assert primitive_solution_exists(rationals, instance_a, prime(rationals, 7), 2, budget=100) is None


class TestPrimeValuation:

    def test_power_of_two(self, rationals: NumberField):
        eight = enumerate_ideals(rationals, 8)[7]
        assert prime_valuation(rationals, prime(rationals, 2).ideal, eight) == 3
        assert prime_valuation(rationals, prime(rationals, 3).ideal, eight) == 0


class TestGammaSum:

    def test_coefficient_at_three_vanishes(self, rationals: NumberField, instance_a: PolySystem):
        assert ideal_coefficient(rationals, instance_a, prime(rationals, 3).ideal) == 0

    def test_unit_ideal(self, rationals: NumberField, instance_a: PolySystem):
        assert ideal_coefficient(rationals, instance_a, enumerate_ideals(rationals, 1)[0]) == 1

    def test_dyadic_bounds(self, rationals: NumberField, instance_a: PolySystem):
        coefficients, sums = gamma_sum(rationals, instance_a, 6)
        assert sorted(sums) == [1, 2, 4, 6]
        assert sums[1] == 1
        assert sums[6] == sum(coefficients.values())

    def test_matched_product_equals_gamma_sum(self, rationals: NumberField, instance_a: PolySystem):
        coefficients, sums = gamma_sum(rationals, instance_a, 12)
        assert matched_product(rationals, instance_a, list(coefficients)) == sums[12]


class TestSingularSeries:

    def test_euler_factor_history(self, rationals: NumberField, instance_a: PolySystem):
        factor = euler_factor(rationals, instance_a, prime(rationals, 3), 2)
        assert factor.history[0] == 1
        assert factor.history[1] == 1
        assert factor.solvable
        assert factor.depth == len(factor.history) - 1

    def test_instance_a(self, rationals: NumberField, instance_a: PolySystem):
        report = singular_series(rationals, instance_a, H=8, prime_cutoff=7, depth=2, hypothesis_ok=True)
        assert report.status == SeriesStatus.Verified
        assert report.product > 0
        assert report.agreement_delta < 1e-12
        assert [f.prime.p for f in report.euler] == [2, 3, 5, 7]
        assert report.to_dict()['status'] == 'verified'

    def test_sums_are_exact(self, rationals: NumberField, instance_a: PolySystem):
        report = singular_series(rationals, instance_a, H=8, prime_cutoff=3, depth=1, hypothesis_ok=True)
        assert isinstance(report.gamma_sum, Fraction)
        assert all(isinstance(v, Fraction) for v in report.gamma_sum_by_H.values())
        assert set(report.to_dict()) == {'H', 'gamma_sum', 'gamma_sum_by_H', 'euler', 'product', 'matched_product',
                                         'agreement_delta', 'tail_fit', 'status', 'skipped_primes'}

    def test_unverified_without_hypothesis(self, rationals: NumberField):
        system = parse_system('x1**2 + x2**2 - x3**2 - x4**2', rationals)
        report = singular_series(rationals, system, H=4, prime_cutoff=3, depth=1, hypothesis_ok=False)
        assert report.status == SeriesStatus.Unverified

    def test_skipped_primes(self):
        from circlelab.nf import field_from_poly
        field = field_from_poly([1, 0, -5], basis=[[1, 0], [Fraction(1, 2), Fraction(1, 2)]])
        system = parse_system('x1**2 - x2**2', field)
        report = singular_series(field, system, H=1, prime_cutoff=3, depth=1)
        assert report.skipped_primes == [2]

    @pytest.mark.slow
    def test_instance_a_stabilizes(self, rationals: NumberField, instance_a: PolySystem):
        coarse = singular_series(rationals, instance_a, H=16, prime_cutoff=50, depth=3)
        fine = singular_series(rationals, instance_a, H=16, prime_cutoff=100, depth=4)
        assert fine.product == pytest.approx(coarse.product, rel=5e-3)
