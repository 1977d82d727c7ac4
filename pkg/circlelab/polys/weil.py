"""Weil restriction of a system over O_K to integer polynomials.

The K-variable x_v is written x_v = X_{v,1} omega_1 + ... + X_{v,n} omega_n, so
integer variable ``v * n + k`` carries the coordinate X_{v,k+1}. A polynomial G
then has omega-coordinate polynomials c_l(X) and

    G*_j(X) = Tr(omega_j G(x)) = sum_l Omega[j][l] c_l(X).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Tuple

from ..nf import NumberField, FieldElement
from .polynomial import Polynomial, IntPolynomial, Exponent
from .system import PolySystem

logger = logging.getLogger(__name__)

VectorPoly = Dict[Exponent, Tuple[Fraction, ...]]


@dataclass(frozen=True)
class WeilSystem:
    """The nT integer polynomials G*_{d,i,j} in ns variables.

    Attributes:
        n (int): Degree of K.
        s (int): Number of K-variables.
        star_polys (Tuple[IntPolynomial, ...]): Ordered like ``index``.
        index (Tuple[Tuple[int, int, int], ...]): (d, i, j) of every flat position, j counted from 1.
    """
    n: int
    s: int
    star_polys: Tuple[IntPolynomial, ...]
    index: Tuple[Tuple[int, int, int], ...]

    @property
    def nvars(self) -> int:
        return self.n * self.s

    @property
    def star_forms(self) -> Tuple[IntPolynomial, ...]:
        """The degree-d parts F*_{d,i,j}."""
        return tuple(p.homogeneous_part(d) for p, (d, _, _) in zip(self.star_polys, self.index))

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(d for d, _, _ in self.index)

    def flat_index(self, d: int, i: int, j: int) -> int:
        return self.index.index((d, i, j))


def flat_coordinates(n: int, T: int, alpha) -> list:
    """Flatten T elements of V, or a flat sequence of nT numbers, into flat omega-coordinates.

    Elements may be :class:`FieldElement`, coordinate sequences, or bare numbers when n = 1.
    """
    if isinstance(alpha, (int, float, Fraction, FieldElement)):
        alpha = [alpha]
    flat = []
    for component in alpha:
        if isinstance(component, FieldElement):
            flat.extend(component.coords)
        elif isinstance(component, (list, tuple)) or hasattr(component, '__array__'):
            flat.extend(component)
        else:
            flat.append(component)
    if len(flat) == T and n > 1:
        raise ValueError('alpha needs {} coordinates per polynomial'.format(n))
    if len(flat) != n * T:
        raise ValueError('alpha has {} coordinates, expected {}'.format(len(flat), n * T))
    return flat


def integer_variables(n: int, kvars) -> List[int]:
    """Integer variable indices carrying the coordinates of the given K-variables (0-based)."""
    return [v * n + k for v in kvars for k in range(n)]


def coordinate_polynomials(field: NumberField, poly: Polynomial) -> Tuple[Tuple[IntPolynomial, ...], int]:
    """omega-coordinates of ``poly(x)`` as integer polynomials in ns variables.

    Returns:
        (polys, denominator): ``polys[l] / denominator`` is the l-th coordinate.
    """
    expanded = _expand(field, poly)
    denominator = 1
    for coeffs in expanded.values():
        for c in coeffs:
            denominator = denominator * c.denominator // gcd(denominator, c.denominator)
    nvars = poly.nvars * field.n
    polys = []
    for l in range(field.n):
        terms = {e: int(c[l] * denominator) for e, c in expanded.items()}
        polys.append(IntPolynomial.from_dict(nvars, terms))
    return tuple(polys), denominator


@lru_cache(maxsize=32)
def weil_restrict(field: NumberField, system: PolySystem) -> WeilSystem:
    """Restrict scalars from K to Q.

    Every G_{d,i} becomes n integer polynomials G*_{d,i,j}(X) = Tr(omega_j G_{d,i}(x)).
    """
    n = field.n
    omega = field.trace_matrix
    polys = []
    index = []
    for d, i, poly in system.entries:
        expanded = _expand(field, poly)
        for j in range(n):
            terms = {}
            for e, c in expanded.items():
                value = sum((omega[j][l] * c[l] for l in range(n)), Fraction(0))
                if value.denominator != 1:
                    raise ValueError('trace of omega_{} G_{},{} is not integral'.format(j + 1, d, i))
                terms[e] = int(value)
            polys.append(IntPolynomial.from_dict(n * system.s, terms))
            index.append((d, i, j + 1))

    weil = WeilSystem(n, system.s, tuple(polys), tuple(index))
    logger.debug('Weil restriction: %d polynomials in %d variables', len(polys), weil.nvars)
    return weil


def _expand(field: NumberField, poly: Polynomial) -> VectorPoly:
    """Expand a K-polynomial in the integer coordinates of its variables."""
    n = field.n
    nvars = poly.nvars * n
    basis = [FieldElement.basis(n, k) for k in range(n)]
    result = {}  # type: VectorPoly
    linear_cache = {}  # type: Dict[int, VectorPoly]

    def linear(v: int) -> VectorPoly:
        if v not in linear_cache:
            linear_cache[v] = {_unit(nvars, v * n + k): basis[k].coords for k in range(n)}
        return linear_cache[v]

    for exponent, coeff in poly.terms:
        term = {(0,) * nvars: coeff.coords}  # type: VectorPoly
        for v, k in enumerate(exponent):
            for _ in range(k):
                term = _multiply(field, term, linear(v))
        for e, c in term.items():
            previous = result.get(e)
            result[e] = c if previous is None else tuple(a + b for a, b in zip(previous, c))

    return {e: c for e, c in result.items() if any(c)}


def _multiply(field: NumberField, a: VectorPoly, b: VectorPoly) -> VectorPoly:
    result = {}  # type: VectorPoly
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = field.mul(FieldElement(ca), FieldElement(cb)).coords
            previous = result.get(e)
            result[e] = c if previous is None else tuple(x + y for x, y in zip(previous, c))
    return result


def _unit(n: int, k: int) -> Exponent:
    return tuple(1 if i == k else 0 for i in range(n))
