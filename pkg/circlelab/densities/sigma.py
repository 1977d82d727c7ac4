"""Complete character sums Sigma(gamma).

For gamma in K^T with common denominator m of its omega-coordinates the phase
Tr(sum gamma_i G_i(x)) equals W(X) / m with the integer polynomial

    W = sum over i, k of (m gamma_{i,k}) G*_{i,k}.

Sums are kept as counts of W(X) mod m, so a sum is an element of Z[zeta_m]
that can be reduced exactly modulo the m-th cyclotomic polynomial.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from .. import default_settings
from ..nf import NumberField, FieldElement, IdealLattice, denominator_ideal, ideal_to_omega
from ..polys import PolySystem, IntPolynomial, weil_restrict, variable_components
from ..tables import value_table

logger = logging.getLogger(__name__)

_z = sympy.Symbol('z')

GammaLike = Union[FieldElement, Fraction, int]


class PhaseCounts(NamedTuple):
    """``counts[r]`` points have phase numerator r modulo `modulus`."""
    modulus: int
    counts: Tuple[int, ...]


def as_gamma(field: NumberField, system: PolySystem, gamma) -> Tuple[FieldElement, ...]:
    """Normalize a single element or a T-sequence of elements or rationals."""
    if isinstance(gamma, (FieldElement, Fraction, int)):
        gamma = [gamma]
    gamma = tuple(g if isinstance(g, FieldElement) else field.one.scale(g) for g in gamma)
    if len(gamma) != system.T:
        raise ValueError('gamma has {} components, the system has {} polynomials'.format(len(gamma), system.T))
    return gamma


def weighted_polynomial(field: NumberField, system: PolySystem, gamma: Sequence[FieldElement],
                        m: int) -> IntPolynomial:
    """m * Tr(sum gamma_i G_i) as an integer polynomial in the ns coordinates."""
    weil = weil_restrict(field, system)
    n = field.n
    terms = {}
    for p, g in enumerate(gamma):
        for k in range(n):
            weight = g.coords[k] * m
            if weight.denominator != 1:
                raise ValueError('modulus {} does not clear the denominators of {}'.format(m, g))
            weight = int(weight)
            if not weight:
                continue
            for exponent, c in weil.star_polys[p * n + k].terms:
                terms[exponent] = terms.get(exponent, 0) + weight * c
    return IntPolynomial.from_dict(weil.nvars, terms)


def residue_ranges(field: NumberField, a: IdealLattice, s: int) -> List[Tuple[int, int]]:
    """Integer ranges of the HNF box of (n / a n)^s, one per integer coordinate."""
    hnf = ideal_to_omega(field, a)
    return [(0, hnf[k][k] - 1) for _ in range(s) for k in range(field.n)]


def phase_counts(field: NumberField, system: PolySystem, gamma, modulus: Optional[int] = None,
                 ideal: Optional[IdealLattice] = None, budget: int = None) -> PhaseCounts:
    """Distribution of the phase numerators of gamma over (n / a n)^s.

    Args:
        modulus (int): A multiple of the common denominator of gamma; default the denominator itself.
        ideal (IdealLattice): Summation range n / a n; default the denominator ideal of gamma.
        budget (int): Largest residue box of one variable component.
    """
    budget = budget or default_settings.RESIDUE_BUDGET
    gamma = as_gamma(field, system, gamma)
    m = 1
    for g in gamma:
        m = m * g.denominator // math.gcd(m, g.denominator)
    if modulus is not None:
        if modulus % m:
            raise ValueError('modulus {} is not a multiple of the denominator {}'.format(modulus, m))
        m = modulus
    a = ideal if ideal is not None else denominator_ideal(field, gamma)

    W = weighted_polynomial(field, system, gamma, m)
    ranges = residue_ranges(field, a, system.s)
    counts = np.zeros(m, dtype=np.int64)
    counts[W.constant % m] = 1
    for component in variable_components([W], len(ranges)):
        table = value_table([W.restrict(component)], [ranges[v] for v in component], modulus=((m,),),
                            budget=budget)
        vector = np.zeros(m, dtype=np.int64)
        vector[table.keys[:, 0].astype(np.int64)] = table.counts
        counts = cyclic_convolve(counts, vector)
    return PhaseCounts(m, tuple(int(c) for c in counts))


def cyclic_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = a.shape[0]
    full = np.convolve(a, b)
    folded = full[:m].copy()
    folded[:full.shape[0] - m] += full[m:]
    return folded


@lru_cache(maxsize=256)
def _cyclotomic(m: int) -> sympy.Poly:
    return sympy.Poly(sympy.cyclotomic_poly(m, _z), _z, domain=sympy.ZZ)


def cyclotomic_reduce(counts: Sequence[int], m: int) -> Tuple[int, ...]:
    """Coefficients (ascending) of sum counts[r] z^r reduced modulo the m-th cyclotomic polynomial."""
    if m == 1:
        return (sum(int(c) for c in counts),)
    poly = sympy.Poly(list(reversed([int(c) for c in counts])), _z, domain=sympy.ZZ)
    remainder = poly.rem(_cyclotomic(m))
    return tuple(int(c) for c in reversed(remainder.all_coeffs()))


def exact_integer_sum(counts: Sequence[int], m: int) -> int:
    """sum counts[r] e(r / m) as an integer.

    Raises:
        ValueError: the sum is not rational.
    """
    reduced = cyclotomic_reduce(counts, m)
    if any(reduced[1:]):
        raise ValueError('character sum with conductor {} is not rational'.format(m))
    return reduced[0] if reduced else 0


def phase_sum(phases: PhaseCounts, exact: Optional[bool] = None) -> complex:
    """sum counts[r] e(r / m), exact in Z[zeta_m] for small conductors and compensated otherwise."""
    m, counts = phases
    if exact is None:
        exact = m <= default_settings.EXACT_CONDUCTOR_MAX
    if exact:
        coefficients = cyclotomic_reduce(counts, m)
        pairs = [(c, r) for r, c in enumerate(coefficients) if c]
    else:
        pairs = [(c, r) for r, c in enumerate(counts) if c]
    real = math.fsum(c * math.cos(2 * math.pi * r / m) for c, r in pairs)
    imag = math.fsum(c * math.sin(2 * math.pi * r / m) for c, r in pairs)
    return complex(real, imag)


def complete_sum_sigma(field: NumberField, system: PolySystem, gamma, budget: int = None) -> complex:
    """Sigma(gamma): the sum of Phi(sum gamma_i G_i(x)) over x in (n / a_gamma n)^s.

    Raises:
        BudgetExceededError: a residue box exceeds the budget.
    """
    return phase_sum(phase_counts(field, system, gamma, budget=budget))
