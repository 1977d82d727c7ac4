"""Integral ideals of O_K as Hermite normal form lattices.

An :class:`IdealLattice` stores an ideal a of O_K by the HNF of its Z-basis in
order coordinates. When n = O_K (the default) order coordinates and
omega-coordinates coincide; otherwise :func:`ideal_to_omega` gives the lattice
a n inside n, whose determinant is again the norm of a.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, NamedTuple, Sequence, Tuple, Union

import sympy

from ..errors import CircleLabError
from .enum import ResidueMode
from .errors import UnsupportedPrimeError, NonIntegralIdealError
from .field import NumberField, FieldElement, _x
from .hnf import IntMatrix, hermite_normal_form, kernel_lattice, determinant, contains, identity

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdealLattice:
    """An integral ideal of O_K.

    Attributes:
        hnf_basis (IntMatrix): Upper triangular HNF, rows in order coordinates.
    """
    hnf_basis: IntMatrix

    @property
    def n(self) -> int:
        return len(self.hnf_basis)

    @property
    def norm(self) -> int:
        return determinant(self.hnf_basis)

    @property
    def is_unit(self) -> bool:
        return self.norm == 1

    def contains(self, vector: Sequence) -> bool:
        return contains(self.hnf_basis, vector)

    def __str__(self):
        return 'Ideal(norm={}, hnf={})'.format(self.norm, [list(r) for r in self.hnf_basis])


class PrimeIdeal(NamedTuple):
    ideal: IdealLattice
    residue_degree: int
    ramification: int
    p: int

    @property
    def norm(self) -> int:
        return self.ideal.norm


def unit_ideal(field: NumberField) -> IdealLattice:
    return IdealLattice(identity(field.n))


def ideal_from_generators(field: NumberField, gens: Iterable[Sequence[int]]) -> IdealLattice:
    """The ideal generated over O_K by elements given in order coordinates."""
    n = field.n
    rows = []
    for g in gens:
        g = tuple(int(a) for a in g)
        for k in range(n):
            rows.append(field.order_mul(g, _unit(n, k)))
    return IdealLattice(hermite_normal_form(rows, n))


def ideal_mul(field: NumberField, a: IdealLattice, b: IdealLattice) -> IdealLattice:
    rows = [field.order_mul(u, v) for u in a.hnf_basis for v in b.hnf_basis]
    return IdealLattice(hermite_normal_form(rows, field.n))


def ideal_power(field: NumberField, a: IdealLattice, j: int) -> IdealLattice:
    result = unit_ideal(field)
    for _ in range(j):
        result = ideal_mul(field, result, a)
    return result


def is_ideal(field: NumberField, a: IdealLattice) -> bool:
    """Whether the lattice is closed under multiplication by the order basis."""
    n = field.n
    return all(a.contains(field.order_mul(row, _unit(n, k))) for row in a.hnf_basis for k in range(n))


def ideal_to_omega(field: NumberField, a: IdealLattice) -> IntMatrix:
    """HNF of the lattice a n in omega-coordinates."""
    n = field.n
    rows = []
    for row in a.hnf_basis:
        beta = field.from_order(row)
        for l in range(n):
            product = field.mul(beta, FieldElement.basis(n, l))
            if not product.is_integral:
                raise NonIntegralIdealError('product of {} with omega_{} leaves n'.format(a, l + 1))
            rows.append([int(c) for c in product.coords])
    return hermite_normal_form(rows, n)


def denominator_ideal(field: NumberField, gamma: Union[FieldElement, Sequence[FieldElement]]) -> IdealLattice:
    """The ideal {beta in O_K : beta * gamma_i in n for every component gamma_i}."""
    if isinstance(gamma, FieldElement):
        gamma = [gamma]
    n = field.n
    columns = []  # type: List[List[Fraction]]
    for g in gamma:
        if g.is_integral:
            continue
        block = [field.mul(field.from_order(_unit(n, k)), g).coords for k in range(n)]
        columns.append(block)

    if not columns:
        return unit_ideal(field)

    matrix = [[c for block in columns for c in block[k]] for k in range(n)]
    m = 1
    for row in matrix:
        for c in row:
            m = m * c.denominator // gcd(m, c.denominator)
    scaled = [[int(c * m) for c in row] for row in matrix]
    return IdealLattice(kernel_lattice(scaled, m, n))


def primes_above(field: NumberField, p: int) -> List[PrimeIdeal]:
    """Factor p O_K by factoring the defining polynomial modulo p.

    Raises:
        UnsupportedPrimeError: if p divides the index [O_K : Z[theta]].
    """
    if field.index % p == 0:
        raise UnsupportedPrimeError(p, field.index)

    n = field.n
    _, factors = sympy.Poly(list(field.min_poly), _x, modulus=p).factor_list()
    p_order = [int(c) for c in field.power_to_order(_unit(n, 0))]
    p_order = [p * c for c in p_order]

    primes = []
    for factor, e in factors:
        f = factor.degree()
        if f == n:
            # inert
            gens = [p_order]
        else:
            coeffs = [int(c) for c in reversed(sympy.Poly(factor.as_expr(), _x, domain=sympy.ZZ).all_coeffs())]
            coeffs += [0] * (n - len(coeffs))
            gens = [p_order, [int(c) for c in field.power_to_order(coeffs)]]
        ideal = ideal_from_generators(field, gens)
        if ideal.norm != p ** f:
            raise CircleLabError('prime above {} has norm {}, expected {}'.format(p, ideal.norm, p ** f))
        primes.append(PrimeIdeal(ideal, f, e, p))

    if sum(pr.residue_degree * pr.ramification for pr in primes) != n:
        raise CircleLabError('factorization of {} does not account for the degree {}'.format(p, n))

    primes.sort(key=lambda pr: (pr.norm, pr.ideal.hnf_basis))
    logger.debug('p=%d splits into %d primes of norms %s', p, len(primes), [pr.norm for pr in primes])
    return primes


def fractional_lattice(field: NumberField, a: IdealLattice) -> Tuple[IntMatrix, int]:
    """The lattice n a^-1 in omega-coordinates, as (H, N) with n a^-1 = H / N and N = norm(a)."""
    n = field.n
    N = a.norm
    blocks = []
    for row in a.hnf_basis:
        alpha = field.from_order(row)
        matrix = field.multiplication_matrix(alpha)
        blocks.append(matrix)
    combined = [[int(c) for block in blocks for c in block[k]] for k in range(n)]
    return kernel_lattice(combined, N, n), N


def residue_system(field: NumberField, a: IdealLattice,
                   mode: Union[ResidueMode, str] = ResidueMode.Quotient) -> List[FieldElement]:
    """Representatives of n / a n (quotient mode) or of n a^-1 / n inside [0, 1)^n (fractional mode).

    Both systems have exactly norm(a) elements.

    Raises:
        NonIntegralIdealError: in quotient mode, if `a` is not an ideal of O_K.
    """
    mode = ResidueMode(mode)
    if mode == ResidueMode.Quotient:
        if not is_ideal(field, a):
            raise NonIntegralIdealError('{} is not closed under multiplication by O_K'.format(a))
        hnf = ideal_to_omega(field, a)
        ranges = [range(hnf[k][k]) for k in range(field.n)]
        return [FieldElement(coords) for coords in itertools.product(*ranges)]

    hnf, N = fractional_lattice(field, a)
    ranges = [range(N // hnf[k][k]) for k in range(field.n)]
    points = set()
    for c in itertools.product(*ranges):
        h = [sum(c[k] * hnf[k][m] for k in range(field.n)) % N for m in range(field.n)]
        points.add(tuple(Fraction(v, N) for v in h))
    return [FieldElement(coords) for coords in sorted(points)]


def enumerate_ideals(field: NumberField, bound: int) -> List[IdealLattice]:
    """All integral ideals of O_K with norm at most `bound`, ordered by norm."""
    n = field.n
    ideals = []
    for norm in range(1, int(bound) + 1):
        for diagonal in _ordered_factorizations(norm, n):
            free = [(i, k) for k in range(n) for i in range(k)]
            for entries in itertools.product(*[range(diagonal[k]) for (_, k) in free]):
                rows = [[0] * n for _ in range(n)]
                for k in range(n):
                    rows[k][k] = diagonal[k]
                for (i, k), value in zip(free, entries):
                    rows[i][k] = value
                candidate = IdealLattice(tuple(tuple(r) for r in rows))
                if is_ideal(field, candidate):
                    ideals.append(candidate)
    return ideals


def _ordered_factorizations(N: int, parts: int) -> List[Tuple[int, ...]]:
    if parts == 1:
        return [(N,)]
    result = []
    for d in range(1, N + 1):
        if N % d == 0:
            for rest in _ordered_factorizations(N // d, parts - 1):
                result.append((d,) + rest)
    return result


def _unit(n: int, k: int) -> Tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))
