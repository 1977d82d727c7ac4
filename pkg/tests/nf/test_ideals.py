import random
from fractions import Fraction

import pytest

from circlelab.nf import NumberField, FieldElement, ResidueMode, denominator_ideal, enumerate_ideals, primes_above, \
    residue_system, ideal_mul, ideal_power, unit_ideal, is_ideal, field_from_poly
from circlelab.nf.errors import UnsupportedPrimeError


class TestPrimesAbove:

    def test_split(self, gaussian: NumberField):
        primes = primes_above(gaussian, 5)
        assert [p.norm for p in primes] == [5, 5]
        assert all(p.ramification == 1 for p in primes)

    def test_inert(self, gaussian: NumberField):
        primes = primes_above(gaussian, 3)
        assert len(primes) == 1
        assert primes[0].norm == 9
        assert primes[0].residue_degree == 2

    def test_ramified(self, gaussian: NumberField):
        primes = primes_above(gaussian, 2)
        assert len(primes) == 1
        assert primes[0].ramification == 2
        assert primes[0].norm == 2

    def test_prime_dividing_index(self):
        field = field_from_poly([1, 0, -5], basis=[[1, 0], [Fraction(1, 2), Fraction(1, 2)]])
        with pytest.raises(UnsupportedPrimeError):
            primes_above(field, 2)

    def test_ramified_square_is_two(self, gaussian: NumberField):
        p = primes_above(gaussian, 2)[0].ideal
        assert ideal_power(gaussian, p, 2).norm == 4
        assert ideal_mul(gaussian, p, unit_ideal(gaussian)) == p


class TestEnumerateIdeals:

    def test_rationals(self, rationals: NumberField):
        assert [a.norm for a in enumerate_ideals(rationals, 6)] == [1, 2, 3, 4, 5, 6]

    def test_gaussian(self, gaussian: NumberField):
        """Norms 1, 2, 4 once each, norm 5 twice and no ideal of norm 3"""
        ideals = enumerate_ideals(gaussian, 5)
        assert [a.norm for a in ideals] == [1, 2, 4, 5, 5]
        assert all(is_ideal(gaussian, a) for a in ideals)


class TestDenominatorIdeal:

    def test_integral_gamma(self, gaussian: NumberField):
        assert denominator_ideal(gaussian, gaussian.element(3, -1)).is_unit

    def test_half_i(self, gaussian: NumberField):
        a = denominator_ideal(gaussian, gaussian.element(0, Fraction(1, 2)))
        assert a.norm == 4

    def test_half_one_plus_i(self, gaussian: NumberField):
        a = denominator_ideal(gaussian, gaussian.element(Fraction(1, 2), Fraction(1, 2)))
        assert a.norm == 2

    def test_tuple_is_intersection(self, rationals: NumberField):
        gamma = [FieldElement((Fraction(1, 2),)), FieldElement((Fraction(1, 3),))]
        assert denominator_ideal(rationals, gamma).norm == 6


class TestResidueSystem:

    @pytest.mark.parametrize('mode', [ResidueMode.Quotient, ResidueMode.Fractional])
    def test_size_is_norm(self, gaussian: NumberField, mode: ResidueMode):
        for a in enumerate_ideals(gaussian, 5):
            assert len(residue_system(gaussian, a, mode)) == a.norm

    def test_fractional_lies_in_box(self, gaussian: NumberField):
        a = primes_above(gaussian, 5)[0].ideal
        for gamma in residue_system(gaussian, a, 'fractional_in_R'):
            assert all(0 <= c < 1 for c in gamma.coords)
            assert denominator_ideal(gaussian, gamma).norm in (1, 5)


class TestIdealProducts:

    @pytest.mark.parametrize('poly', [[1, 0, 1], [1, 0, 5], [1, 0, -2]])
    def test_norm_is_multiplicative(self, poly):
        field = field_from_poly(poly)
        ideals = enumerate_ideals(field, 30)
        rng = random.Random(2024)
        for _ in range(400):
            a, b = rng.choice(ideals), rng.choice(ideals)
            product = ideal_mul(field, a, b)
            assert product.norm == a.norm * b.norm
            assert product == ideal_mul(field, b, a)
            assert is_ideal(field, product)
