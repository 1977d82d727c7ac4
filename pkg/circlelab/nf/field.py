"""Exact arithmetic in a number field K with a fixed Z-basis of an integral ideal n.

Elements are stored by their rational coordinates with respect to the basis
omega_1, ..., omega_n of n. Internally the field also keeps

* the power basis 1, theta, ..., theta^(n-1) of the defining polynomial,
* a Z-basis of O_K (the "order basis"), by default the power basis,

and converts between the three coordinate systems exactly.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Optional, List, NamedTuple

import mpmath
import numpy as np
import sympy

from .. import default_settings
from .errors import NotMonicError, ReduciblePolynomialError, NonMonogenicError, BasisError, FieldConsistencyError
from .hnf import IntMatrix, RationalMatrix, hermite_normal_form, identity, rational_inverse, rational_determinant, \
    vec_mat, mat_mul

logger = logging.getLogger(__name__)

_x = sympy.Symbol('x')


@dataclass(frozen=True)
class FieldElement:
    """An element of K in omega-coordinates.

    Attributes:
        coords (Tuple[Fraction, ...]): Coordinates in lowest terms; the element lies in n iff all are integers.
    """
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(Fraction(c) for c in self.coords))

    @classmethod
    def zero(cls, n: int) -> 'FieldElement':
        return cls((0,) * n)

    @classmethod
    def basis(cls, n: int, k: int) -> 'FieldElement':
        return cls(tuple(1 if i == k else 0 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def house(self) -> Fraction:
        """Coordinate max-norm |x|."""
        return max(abs(c) for c in self.coords)

    @property
    def denominator(self) -> int:
        d = 1
        for c in self.coords:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scale(self, k) -> 'FieldElement':
        k = Fraction(k)
        return FieldElement(tuple(c * k for c in self.coords))

    def reduced(self) -> 'FieldElement':
        """Representative modulo n inside the fundamental box [0, 1)^n."""
        return FieldElement(tuple(c - (c.numerator // c.denominator) for c in self.coords))

    def __add__(self, other: 'FieldElement') -> 'FieldElement':
        return FieldElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'FieldElement') -> 'FieldElement':
        return FieldElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'FieldElement':
        return FieldElement(tuple(-a for a in self.coords))

    def __repr__(self):
        return 'FieldElement({})'.format(', '.join(str(c) for c in self.coords))


class TraceNorm(NamedTuple):
    trace: Fraction
    norm: Fraction
    house: float
    character: complex


class NumberField(object):
    """A number field with a fixed Z-basis of an integral ideal n.

    Args:
        min_poly (Sequence[int]): Monic defining polynomial, leading coefficient first.
        order_basis (RationalMatrix): Z-basis of O_K, rows in power-basis coordinates.
        ideal_gens (Sequence[Sequence[int]]): Generators of n as an O_K-ideal in order coordinates.
        precision_bits (int): Working precision of the archimedean embeddings.

    Attributes:
        n (int): Degree over Q.
        mult_table (Tuple): ``mult_table[k][l]`` is omega_k * omega_l in omega-coordinates.
        trace_matrix (IntMatrix): Omega with entries Tr(omega_k omega_l).
        disc_n (int): Determinant of the trace matrix.
        embeddings (Tuple): ``embeddings[r][k]`` is the r-th archimedean embedding of omega_k.
        index (int): [O_K : Z[theta]].
    """

    def __init__(self, min_poly: Sequence[int], order_basis: RationalMatrix = None,
                 ideal_gens: Optional[Sequence[Sequence[int]]] = None, precision_bits: int = None):
        self.min_poly = tuple(int(c) for c in min_poly)
        self.n = len(self.min_poly) - 1
        n = self.n
        self.precision_bits = precision_bits or 53 + default_settings.EMBEDDING_EXTRA_PRECISION
        self._reductions = _power_reductions(self.min_poly)

        if order_basis is None:
            order_basis = identity(n)
        self.order_basis = tuple(tuple(Fraction(a) for a in row) for row in order_basis)
        if len(self.order_basis) != n or any(len(row) != n for row in self.order_basis):
            raise BasisError('order basis must be {0}x{0}'.format(n))

        det = rational_determinant(self.order_basis)
        if det == 0:
            raise BasisError('order basis is singular')
        index = 1 / abs(det)
        if index.denominator != 1:
            raise BasisError('order basis does not contain Z[theta]')
        self.index = int(index)
        self._order_inv = rational_inverse(self.order_basis)
        self.order_mult_table = self._products(self.order_basis, self._order_inv, 'order basis')

        if ideal_gens:
            rows = [self.order_mul(g, _unit(n, k)) for g in ideal_gens for k in range(n)]
            self.ideal_basis = hermite_normal_form(rows, n)
        else:
            self.ideal_basis = identity(n)
        self._ideal_inv = rational_inverse(self.ideal_basis)

        self._omega_power = mat_mul(self.ideal_basis, self.order_basis)
        self._omega_power_inv = rational_inverse(self._omega_power)
        self.mult_table = self._products(self._omega_power, self._omega_power_inv, 'ideal basis')
        self.mult_tensor = np.array(self.mult_table, dtype=np.int64)

        self.trace_vector = tuple(sum((self.mult_table[l][k][k] for k in range(n)), Fraction(0)) for l in range(n))
        self.trace_matrix = tuple(tuple(int(sum((self.mult_table[k][l][m] * self.trace_vector[m] for m in range(n)),
                                                Fraction(0)))
                                        for l in range(n)) for k in range(n))
        self.disc_n = int(rational_determinant(self.trace_matrix))
        if self.disc_n == 0:
            raise FieldConsistencyError('trace matrix is singular')

        self.roots, self.embeddings = self._embed_basis()
        logger.debug('Constructed field %s of degree %d, disc_n=%d', self.min_poly, n, self.disc_n)

    def _products(self, basis: RationalMatrix, inverse: RationalMatrix, what: str):
        n = self.n
        table = []
        for k in range(n):
            row = []
            for l in range(n):
                coords = vec_mat(self.power_mul(basis[k], basis[l]), inverse)
                if any(c.denominator != 1 for c in coords):
                    raise BasisError('{} is not closed under multiplication'.format(what))
                row.append(tuple(int(c) for c in coords))
            table.append(tuple(row))
        return tuple(table)

    def _embed_basis(self):
        tolerance = mpmath.mpf(2) ** -40
        with mpmath.workprec(self.precision_bits):
            roots = mpmath.polyroots(list(self.min_poly), maxsteps=200, extraprec=self.precision_bits)
            roots = [mpmath.mpc(r) for r in (roots if isinstance(roots, list) else [roots])]
            real = sorted((r for r in roots if abs(r.imag) < tolerance), key=lambda r: r.real)
            upper = sorted((r for r in roots if r.imag >= tolerance), key=lambda r: (r.real, r.imag))
            ordered = [mpmath.mpc(r.real, 0) for r in real]
            for r in upper:
                ordered.extend([r, mpmath.conj(r)])
            if len(ordered) != self.n:
                raise FieldConsistencyError('could not separate the {} roots of {}'.format(self.n, self.min_poly))

            embeddings = tuple(tuple(_horner(self._omega_power[k], root) for k in range(self.n))
                               for root in ordered)
            for k in range(self.n):
                total = mpmath.fsum(e[k] for e in embeddings)
                expected = self.trace_vector[k]
                scale = 1 + abs(expected)
                if abs(total - mpmath.mpf(expected.numerator) / expected.denominator) > tolerance * scale:
                    raise FieldConsistencyError('embedding trace of omega_{} disagrees with the trace matrix'
                                                .format(k + 1))
        return tuple(ordered), embeddings

    # Coordinate conversions

    def power_mul(self, u: Sequence, v: Sequence) -> Tuple[Fraction, ...]:
        """Product of two elements given in power-basis coordinates."""
        n = self.n
        result = [Fraction(0)] * n
        for a in range(n):
            if not u[a]:
                continue
            for b in range(n):
                if not v[b]:
                    continue
                coeff = Fraction(u[a]) * v[b]
                for m, r in enumerate(self._reductions[a + b]):
                    if r:
                        result[m] += coeff * r
        return tuple(result)

    def order_mul(self, u: Sequence[int], v: Sequence[int]) -> Tuple[int, ...]:
        """Product of two elements of O_K given in order coordinates."""
        n = self.n
        result = [0] * n
        for k in range(n):
            if not u[k]:
                continue
            for l in range(n):
                if not v[l]:
                    continue
                c = u[k] * v[l]
                for m, t in enumerate(self.order_mult_table[k][l]):
                    result[m] += c * t
        return tuple(result)

    def from_order(self, v: Sequence) -> FieldElement:
        return FieldElement(vec_mat(v, self._ideal_inv))

    def to_order(self, a: FieldElement) -> Tuple[Fraction, ...]:
        return vec_mat(a.coords, self.ideal_basis)

    def from_power(self, v: Sequence) -> FieldElement:
        return FieldElement(vec_mat(v, self._omega_power_inv))

    def to_power(self, a: FieldElement) -> Tuple[Fraction, ...]:
        return vec_mat(a.coords, self._omega_power)

    def power_to_order(self, v: Sequence) -> Tuple[Fraction, ...]:
        return vec_mat(v, self._order_inv)

    def element(self, *coords) -> FieldElement:
        if len(coords) != self.n:
            raise ValueError('expected {} coordinates, got {}'.format(self.n, len(coords)))
        return FieldElement(coords)

    @property
    def one(self) -> FieldElement:
        return self.from_power(_unit(self.n, 0))

    @property
    def zero(self) -> FieldElement:
        return FieldElement.zero(self.n)

    @property
    def is_rational(self) -> bool:
        return self.n == 1

    # Arithmetic

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        n = self.n
        result = [Fraction(0)] * n
        for k, ak in enumerate(a.coords):
            if not ak:
                continue
            for l, bl in enumerate(b.coords):
                if not bl:
                    continue
                c = ak * bl
                for m, t in enumerate(self.mult_table[k][l]):
                    if t:
                        result[m] += c * t
        return FieldElement(tuple(result))

    def multiplication_matrix(self, a: FieldElement) -> RationalMatrix:
        """Rows are the omega-coordinates of omega_k * a."""
        return tuple(self.mul(FieldElement.basis(self.n, k), a).coords for k in range(self.n))

    def trace(self, a: FieldElement) -> Fraction:
        return sum((c * t for c, t in zip(a.coords, self.trace_vector)), Fraction(0))

    def trace_form(self, a: FieldElement, b: FieldElement) -> Fraction:
        """Tr(ab) computed from the trace matrix."""
        return sum((a.coords[k] * self.trace_matrix[k][l] * b.coords[l]
                    for k in range(self.n) for l in range(self.n)), Fraction(0))

    def norm(self, a: FieldElement) -> Fraction:
        return rational_determinant(self.multiplication_matrix(a))

    def inverse(self, a: FieldElement) -> FieldElement:
        if a.is_zero():
            raise ZeroDivisionError('zero has no inverse in K')
        inverse = rational_inverse(self.multiplication_matrix(a))
        return FieldElement(vec_mat(self.one.coords, inverse))

    def divides(self, q: FieldElement, a: FieldElement) -> bool:
        """Whether a / q lies in O_K."""
        quotient = self.mul(a, self.inverse(q))
        return all(c.denominator == 1 for c in self.to_order(quotient))

    def character(self, a: FieldElement) -> complex:
        """Phi(a) = e(Tr(a))."""
        t = self.trace(a)
        return cmath.exp(2j * math.pi * float(t - t.numerator // t.denominator))

    def embed(self, a: FieldElement) -> List:
        """The archimedean embeddings of `a` at working precision."""
        with mpmath.workprec(self.precision_bits):
            return [mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * e[k] for k, c in enumerate(a.coords))
                    for e in self.embeddings]

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Products of integral elements stored as int64 arrays of shape (..., n)."""
        return np.einsum('...k,...l,klm->...m', a, b, self.mult_tensor)

    def __repr__(self):
        return 'NumberField(min_poly={}, n={})'.format(list(self.min_poly), self.n)


def field_from_poly(min_poly: Sequence[int], ideal_gens: Optional[Sequence[Sequence[int]]] = None,
                    basis: Optional[Sequence[Sequence]] = None, precision_bits: int = None,
                    degree_bound: int = None) -> NumberField:
    """Build a :class:`NumberField` from its defining polynomial.

    Args:
        min_poly (Sequence[int]): Integer coefficients, leading coefficient first.
        ideal_gens: Optional generators of the ideal n in O_K coordinates. Default n = O_K.
        basis: Optional Z-basis of O_K in power-basis coordinates, required when Z[theta] is not maximal.
        precision_bits (int): Working precision of the embeddings.
        degree_bound (int): Irreducibility is proven by factoring up to this degree.

    Raises:
        NotMonicError: leading coefficient is not 1.
        ReduciblePolynomialError: a factor over Z was found.
        NonMonogenicError: Z[theta] is not maximal and no basis was given.
    """
    coeffs = [int(c) for c in min_poly]
    if len(coeffs) < 2:
        raise NotMonicError('defining polynomial must have degree at least 1')
    if coeffs[0] != 1:
        raise NotMonicError('leading coefficient is {}, expected 1'.format(coeffs[0]))

    poly = sympy.Poly(coeffs, _x, domain=sympy.ZZ)
    degree_bound = degree_bound or default_settings.FIELD_DEGREE_BOUND
    if poly.degree() <= degree_bound:
        _, factors = poly.factor_list()
        if len(factors) != 1 or factors[0][1] != 1:
            raise ReduciblePolynomialError(str(factors[0][0].as_expr()))
    else:
        logger.warning('Degree %d exceeds the factoring bound %d, irreducibility is assumed',
                       poly.degree(), degree_bound)

    if basis is None:
        disc = int(sympy.discriminant(poly.as_expr(), _x))
        for p, e in sorted(sympy.factorint(abs(disc)).items()):
            if e >= 2 and not dedekind_criterion(coeffs, p):
                raise NonMonogenicError(p)
        order_basis = None
    else:
        order_basis = tuple(tuple(Fraction(a) for a in row) for row in basis)

    return NumberField(coeffs, order_basis=order_basis, ideal_gens=ideal_gens, precision_bits=precision_bits)


def dedekind_criterion(min_poly: Sequence[int], p: int) -> bool:
    """Whether p does not divide [O_K : Z[theta]], by Dedekind's criterion."""
    f = sympy.Poly(list(min_poly), _x, domain=sympy.ZZ)
    _, factors = sympy.Poly(f.as_expr(), _x, modulus=p).factor_list()
    g = sympy.Poly(1, _x, domain=sympy.ZZ)
    h = sympy.Poly(1, _x, domain=sympy.ZZ)
    for factor, e in factors:
        lifted = sympy.Poly(factor.as_expr(), _x, domain=sympy.ZZ)
        g = g * lifted
        h = h * lifted ** (e - 1)

    remainder = (g * h - f).all_coeffs()
    F = sympy.Poly([int(c) // p for c in remainder], _x, domain=sympy.ZZ)
    F_bar = sympy.Poly(F.as_expr(), _x, modulus=p)
    g_bar = sympy.Poly(g.as_expr(), _x, modulus=p)
    h_bar = sympy.Poly(h.as_expr(), _x, modulus=p)
    common = F_bar.gcd(g_bar).gcd(h_bar)
    return common.degree() == 0


def element_mul(field: NumberField, a: FieldElement, b: FieldElement) -> FieldElement:
    """Exact product of two field elements."""
    return field.mul(a, b)


def trace_norm(field: NumberField, a: FieldElement) -> TraceNorm:
    """Trace, norm, house and additive character of `a`."""
    return TraceNorm(field.trace(a), field.norm(a), float(a.house), field.character(a))


def _power_reductions(min_poly: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    """theta^m reduced modulo the defining polynomial, for 0 <= m <= 2n - 2, ascending coordinates."""
    n = len(min_poly) - 1
    f = sympy.Poly(list(min_poly), _x, domain=sympy.ZZ)
    reductions = []
    for m in range(2 * n - 1):
        r = sympy.Poly(_x ** m, _x, domain=sympy.ZZ).rem(f).all_coeffs()
        r = [int(c) for c in reversed(r)]
        reductions.append(tuple(r + [0] * (n - len(r))))
    return tuple(reductions)


def _unit(n: int, k: int) -> Tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))


def _horner(coeffs: Sequence[Fraction], root):
    value = mpmath.mpc(0)
    for c in reversed(coeffs):
        value = value * root + mpmath.mpf(c.numerator) / c.denominator
    return value
