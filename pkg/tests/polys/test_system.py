from fractions import Fraction

import pytest

from circlelab.nf import NumberField, primes_above
from circlelab.polys import PolySystem, parse_system, evaluate
from circlelab.polys.errors import SystemSyntaxError, DegreeMismatchError, EmptyDegreeSlotError, \
    ZeroLeadingFormError, DimensionMismatchError


class TestParseSystem:

    def test_instance_a_bookkeeping(self, instance_a: PolySystem):
        assert instance_a.s == 5
        assert instance_a.D == 2
        assert instance_a.degree_profile == (0, 1)
        assert instance_a.delta == (2,)
        assert instance_a.T == 1
        assert instance_a.calD_total == 2

    def test_mixed_degrees_are_sorted(self, rationals: NumberField):
        system = parse_system('x1**3 + x2**3 + x3**3; x1 + x2 - x3; x1*x2 - x3**2', rationals)
        assert system.degrees == (1, 2, 3)
        assert system.degree_profile == (1, 1, 1)
        assert system.calD_total == 6
        assert [(d, i) for d, i, _ in system.entries] == [(1, 1), (2, 1), (3, 1)]

    def test_leading_form_drops_lower_terms(self, rationals: NumberField):
        system = parse_system('x1**2 + 3*x2 - 7', rationals)
        form = system.leading_forms[0]
        assert form.is_homogeneous
        assert form.degree == 2
        assert len(form.terms) == 1

    def test_bracketed_coefficient(self, gaussian: NumberField):
        system = parse_system('[0,1]*x1**2 + x2**2', gaussian)
        value = evaluate(gaussian, system, [gaussian.one, gaussian.one])[0]
        assert value == gaussian.element(1, 1)

    def test_caret_is_power(self, rationals: NumberField):
        system = parse_system('x1^2 - x2^2', rationals)
        assert system.D == 2

    def test_declared_variables(self, rationals: NumberField):
        assert parse_system('x1**2', rationals, nvars=4).s == 4

    def test_declared_profile(self, rationals: NumberField):
        system = parse_system('x1**2 - x2**2; x1 - x2', rationals, degree_profile=[1, 1])
        assert system.degree_profile == (1, 1)
        assert parse_system('x1**2', rationals, degree_profile=2).D == 2

    def test_profile_mismatch(self, rationals: NumberField):
        with pytest.raises(DegreeMismatchError) as excinfo:
            parse_system('x1**3 + x2**3', rationals, degree_profile=[0, 1])
        assert excinfo.value.found == (0, 0, 1)

    def test_empty_top_degree(self, rationals: NumberField):
        with pytest.raises(EmptyDegreeSlotError):
            parse_system('x1**2', rationals, degree_profile=[0, 1, 0])

    def test_constant_polynomial(self, rationals: NumberField):
        with pytest.raises(ZeroLeadingFormError):
            parse_system('x1**2; 3', rationals)

    def test_garbage(self, rationals: NumberField):
        with pytest.raises(SystemSyntaxError):
            parse_system('x1 +* x2', rationals)

    def test_unknown_symbol(self, rationals: NumberField):
        with pytest.raises(SystemSyntaxError):
            parse_system('x1**2 + y', rationals)

    def test_fraction_coefficient_outside_order(self, rationals: NumberField):
        with pytest.raises(SystemSyntaxError):
            parse_system('x1**2/2', rationals)

    def test_too_few_declared_variables(self, rationals: NumberField):
        with pytest.raises(SystemSyntaxError):
            parse_system('x1 + x3', rationals, nvars=2)


class TestEvaluate:

    def test_instance_a_values(self, rationals: NumberField, instance_a: PolySystem):
        assert evaluate(rationals, instance_a, [1, 0, 0, 1, 0])[0].is_zero()
        assert evaluate(rationals, instance_a, [1, 1, 1, 1, 1])[0] == rationals.one

    def test_wrong_length(self, rationals: NumberField, instance_a: PolySystem):
        with pytest.raises(DimensionMismatchError):
            evaluate(rationals, instance_a, [1, 2])

    def test_reduction_modulo_prime(self, gaussian: NumberField, instance_b: PolySystem):
        p = primes_above(gaussian, 5)[0].ideal
        point = [gaussian.element(k, 1) for k in range(5)]
        exact = evaluate(gaussian, instance_b, point)[0]
        reduced = evaluate(gaussian, instance_b, point, modulus=p)[0]
        difference = gaussian.to_order(exact - reduced)
        assert p.contains([int(c) for c in difference])
        assert all(Fraction(0) <= c for c in reduced.coords)
