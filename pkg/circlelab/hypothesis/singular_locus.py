"""Dimension of the singular locus S_d = {x : rank J_d(x) < t_d} by point counting.

Over a prime p of K of residue degree one, theta maps to a root r of the
defining polynomial modulo p, which reduces the leading forms to F_p. The
number of F_p-points of S_d grows like p^{B_d}.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np
import sympy

from .. import default_settings
from ..nf import NumberField
from ..nf.field import _x
from ..parallel import chunk_ranges, map_chunks, mixed_radix_points
from ..polys import PolySystem, IntPolynomial, Polynomial
from .enum import BdMethod, BdConfidence
from .errors import InconclusiveDimensionError

logger = logging.getLogger(__name__)


class BdEstimate(NamedTuple):
    d: int
    value: int
    confidence: BdConfidence
    counts: Dict[int, int]
    slope: Optional[float] = None


def estimate_Bd(field: NumberField, system: PolySystem, d: int,
                method: BdMethod = BdMethod.FiniteFieldDimension, value: Optional[int] = None,
                primes: Optional[Sequence[int]] = None, point_budget: int = None,
                tolerance: float = None, threads: int = None) -> BdEstimate:
    """Estimate B_d for a degree d of the system.

    Args:
        method (BdMethod): Override or finite field fit.
        value (int): The asserted value when `method` is an override.
        primes: Rational primes to try; only those with a residue degree one prime above them are used.
        point_budget (int): Largest p^s enumerated.
        tolerance (float): Largest accepted distance between the fitted slope and an integer.

    Raises:
        ValueError: d is not a degree of the system, or an override lacks its value.
        InconclusiveDimensionError: the counts do not determine an integer exponent.
    """
    method = BdMethod(method)
    if system.t(d) == 0:
        raise ValueError('no polynomial of degree {} in the system'.format(d))
    if method == BdMethod.UserOverride:
        if value is None:
            raise ValueError('user_override needs a value for B_{}'.format(d))
        return BdEstimate(d, int(value), BdConfidence.Asserted, {})

    primes = primes or default_settings.BD_PRIMES
    point_budget = point_budget or default_settings.BD_POINT_BUDGET
    tolerance = default_settings.BD_FIT_TOLERANCE if tolerance is None else tolerance
    forms = system.forms_of_degree(d)

    counts = {}  # type: Dict[int, int]
    for p in primes:
        if p ** system.s > point_budget:
            logger.debug('Skipping p=%d: %d points exceed the budget', p, p ** system.s)
            continue
        root = _residue_root(field, p)
        if root is None:
            continue
        jacobian = [[_reduce(field, form.derivative(j), root, p) for j in range(system.s)] for form in forms]
        counts[p] = _count_locus(jacobian, system.s, p, threads)
        logger.debug('#S_%d(F_%d) = %d', d, p, counts[p])

    if len(counts) < 2:
        raise InconclusiveDimensionError(d, counts, reason='fewer than two usable primes')
    if not any(counts.values()):
        return BdEstimate(d, -1, BdConfidence.Convention, counts)
    if not all(counts.values()):
        raise InconclusiveDimensionError(d, counts, reason='the locus is empty modulo some primes only')

    ps = sorted(counts)
    slope = float(np.polyfit(np.log(ps), np.log([counts[p] for p in ps]), 1)[0])
    B = int(round(slope))
    if abs(slope - B) > tolerance:
        raise InconclusiveDimensionError(d, counts, slope)
    B = max(0, min(B, system.s))
    logger.info('B_%d fitted as %d (slope %.3f over primes %s)', d, B, slope, ps)
    return BdEstimate(d, B, BdConfidence.Fitted, counts, slope)


def _residue_root(field: NumberField, p: int) -> Optional[int]:
    """A root of the defining polynomial modulo p, for a good prime p with a degree one prime above it."""
    if field.index % p == 0:
        return None
    poly = sympy.Poly(list(field.min_poly), _x, domain=sympy.ZZ)
    if sympy.discriminant(poly.as_expr(), _x) % p == 0:
        return None
    for r in range(p):
        if poly.eval(r) % p == 0:
            return r
    return None


def _reduce(field: NumberField, poly: Polynomial, root: int, p: int) -> IntPolynomial:
    """Image of a polynomial over O_K in F_p[x] under theta -> root."""
    terms = {}
    for exponent, coeff in poly.terms:
        value = Fraction(0)
        for k, c in enumerate(field.to_power(coeff)):
            value += c * root ** k
        terms[exponent] = value.numerator * pow(value.denominator, -1, p) % p
    return IntPolynomial.from_dict(poly.nvars, terms)


def _count_locus(jacobian: List[List[IntPolynomial]], s: int, p: int, threads: int = None) -> int:
    t = len(jacobian)
    total = p ** s
    lows = np.zeros(s, dtype=np.int64)
    sizes = np.full(s, p, dtype=np.int64)

    def count_chunk(chunk) -> int:
        start, stop = chunk
        points = mixed_radix_points(lows, sizes, start, stop)
        m = stop - start
        values = [[np.asarray(_values(entry, points, m)) % p for entry in row] for row in jacobian]
        if t > s:
            return m
        deficient = np.ones(m, dtype=bool)
        for columns in itertools.combinations(range(s), t):
            det = np.zeros(m, dtype=np.int64)
            for perm in itertools.permutations(range(t)):
                term = np.ones(m, dtype=np.int64)
                for i in range(t):
                    term = term * values[i][columns[perm[i]]] % p
                det = (det + _sign(perm) * term) % p
            deficient &= det == 0
        return int(deficient.sum())

    return sum(map_chunks(count_chunk, chunk_ranges(total, default_settings.CHUNK_SIZE), threads))


def _values(poly: IntPolynomial, points: np.ndarray, m: int) -> np.ndarray:
    if poly.is_zero():
        return np.zeros(m, dtype=np.int64)
    return poly.evaluate_array(points).astype(np.int64)


def _sign(perm) -> int:
    inversions = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inversions % 2 else 1
