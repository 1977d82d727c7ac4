import random
from fractions import Fraction

import pytest

from circlelab.densities import complete_sum_sigma, phase_counts, phase_sum, exact_integer_sum
from circlelab.densities.sigma import as_gamma, cyclotomic_reduce
from circlelab.errors import BudgetExceededError
from circlelab.nf import NumberField
from circlelab.polys import PolySystem, parse_system


class TestCompleteSum:

    def test_balanced_at_one_half(self, rationals: NumberField, instance_a: PolySystem):
        """Squares mod 2 equal their base, so the sum is a product of 1 + (-1)"""
        assert complete_sum_sigma(rationals, instance_a, Fraction(1, 2)) == pytest.approx(0)

    def test_integral_gamma(self, rationals: NumberField, instance_a: PolySystem):
        assert complete_sum_sigma(rationals, instance_a, 0) == pytest.approx(1)

    def test_gauss_sum(self, rationals: NumberField):
        """sum over x mod 3 of e(x^2 / 3) = i sqrt 3"""
        system = parse_system('x1**2', rationals)
        assert complete_sum_sigma(rationals, system, Fraction(1, 3)) == pytest.approx(1j * 3 ** 0.5)

    def test_instance_a_at_one_third(self, rationals: NumberField, instance_a: PolySystem):
        value = complete_sum_sigma(rationals, instance_a, Fraction(1, 3))
        assert abs(value) == pytest.approx(3 ** 2.5)

    def test_gaussian_field(self, gaussian: NumberField):
        """Over Z[i] the phase of x^2 / 4 is (X1^2 - X2^2) / 2, balanced over (Z/4)^2"""
        system = parse_system('x1**2', gaussian)
        assert complete_sum_sigma(gaussian, system, gaussian.element(Fraction(1, 4), 0)) == pytest.approx(0)

    def test_gaussian_half_is_trivial(self, gaussian: NumberField):
        system = parse_system('x1**2', gaussian)
        assert complete_sum_sigma(gaussian, system, gaussian.element(Fraction(1, 2), 0)) == pytest.approx(4)

    def test_budget(self, rationals: NumberField, instance_a: PolySystem):
        with pytest.raises(BudgetExceededError):
            complete_sum_sigma(rationals, instance_a, Fraction(1, 101), budget=50)

    def test_wrong_arity(self, rationals: NumberField, instance_a: PolySystem):
        with pytest.raises(ValueError):
            as_gamma(rationals, instance_a, [Fraction(1, 2), Fraction(1, 3)])


class TestPhaseCounts:

    def test_counts_cover_the_residue_box(self, rationals: NumberField, instance_a: PolySystem):
        phases = phase_counts(rationals, instance_a, Fraction(1, 5))
        assert phases.modulus == 5
        assert sum(phases.counts) == 5 ** 5

    def test_modulus_multiple(self, rationals: NumberField, instance_a: PolySystem):
        phases = phase_counts(rationals, instance_a, Fraction(1, 2), modulus=4)
        assert phases.modulus == 4
        assert phase_sum(phases) == pytest.approx(0)

    def test_modulus_must_clear_denominator(self, rationals: NumberField, instance_a: PolySystem):
        with pytest.raises(ValueError):
            phase_counts(rationals, instance_a, Fraction(1, 3), modulus=4)


class TestCyclotomic:

    def test_rational_sum(self):
        # 1 + e(1/3) + e(2/3) = 0
        assert exact_integer_sum([1, 1, 1], 3) == 0
        assert exact_integer_sum([4, 1, 1], 3) == 3

    def test_irrational_sum(self):
        with pytest.raises(ValueError):
            exact_integer_sum([0, 1, 0, 0], 4)

    def test_reduce_modulus_one(self):
        assert cyclotomic_reduce([7], 1) == (7,)


class TestShiftInvariance:

    @pytest.mark.parametrize('seed', range(8))
    def test_rationals(self, rationals: NumberField, random_form, seed):
        rng = random.Random(seed)
        text = '; '.join(random_form(rng, 3, rng.randint(1, 3)) for _ in range(rng.randint(1, 2)))
        system = parse_system(text, rationals, nvars=3)
        gamma = [Fraction(rng.randrange(q), q) for q in (rng.randint(2, 6) for _ in range(system.T))]
        shifted = [g + rng.randint(-5, 5) for g in gamma]
        value = complete_sum_sigma(rationals, system, gamma)
        assert complete_sum_sigma(rationals, system, shifted) == pytest.approx(value, abs=1e-9)

    @pytest.mark.parametrize('seed', range(6))
    def test_gaussian(self, gaussian: NumberField, random_form, seed):
        rng = random.Random(seed)
        system = parse_system(random_form(rng, 2, rng.randint(1, 3)), gaussian, nvars=2)
        q = rng.randint(2, 4)
        gamma = [gaussian.element(Fraction(rng.randrange(q), q), Fraction(rng.randrange(q), q))]
        shifted = [gamma[0] + gaussian.element(rng.randint(-5, 5), rng.randint(-5, 5))]
        value = complete_sum_sigma(gaussian, system, gamma)
        assert complete_sum_sigma(gaussian, system, shifted) == pytest.approx(value, abs=1e-9)
