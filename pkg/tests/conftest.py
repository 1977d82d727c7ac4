import itertools
import random

import pytest

from circlelab.nf import NumberField, field_from_poly
from circlelab.polys import PolySystem, BoxRegion, parse_system

INSTANCE_A = 'x1**2 + x2**2 + x3**2 - x4**2 - x5**2'


@pytest.fixture(scope='session')
def rationals() -> NumberField:
    """K = Q with omega_1 = 1"""
    return field_from_poly([1, -1])


@pytest.fixture(scope='session')
def gaussian() -> NumberField:
    """K = Q(i) with the power basis 1, i"""
    return field_from_poly([1, 0, 1])


@pytest.fixture(scope='session')
def instance_a(rationals: NumberField) -> PolySystem:
    return parse_system(INSTANCE_A, rationals)


@pytest.fixture(scope='session')
def instance_b(gaussian: NumberField) -> PolySystem:
    return parse_system(INSTANCE_A, gaussian)


@pytest.fixture(scope='session')
def single_variable(rationals: NumberField) -> PolySystem:
    """The linear system {x1} over Q"""
    return parse_system('x1', rationals)


@pytest.fixture
def unit_box():
    def make(dimension: int) -> BoxRegion:
        return BoxRegion.cube(dimension)
    return make


@pytest.fixture
def random_form():
    """Homogeneous integer forms as text, drawn from a seeded ``random.Random``"""
    def make(rng: random.Random, nvars: int, degree: int, terms: int = 3) -> str:
        monomials = list(itertools.combinations_with_replacement(range(1, nvars + 1), degree))
        chosen = rng.sample(monomials, min(terms, len(monomials)))
        pieces = []
        for monomial in chosen:
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            pieces.append('({})*{}'.format(c, '*'.join('x{}'.format(v) for v in monomial)))
        return ' + '.join(pieces)
    return make
