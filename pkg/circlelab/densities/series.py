"""The truncated singular series in its two forms.

The arc-center form sums Sigma(gamma) / N(a_gamma)^s over all gamma with
N(a_gamma) <= H, grouped by denominator ideal. The Euler form multiplies the
depth-stabilized local factors of every prime ideal above p <= prime_cutoff.
Restricting the Euler product to the ideals of norm at most H gives a second,
independent evaluation of the arc-center sum.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import sympy

from .. import default_settings
from ..errors import BudgetExceededError, check_budget
from ..nf import NumberField, IdealLattice, PrimeIdeal, ResidueMode, residue_system, enumerate_ideals, \
    denominator_ideal, primes_above, ideal_power
from ..nf.errors import UnsupportedPrimeError
from ..parallel import map_chunks
from ..polys import PolySystem
from .enum import DensityMethod, SeriesStatus
from .local import partial_factor, primitive_solution_exists, prime_valuation
from .sigma import phase_counts, exact_integer_sum

logger = logging.getLogger(__name__)

# Two consecutive depths closer than this count as stabilized
STABILIZATION_TOLERANCE = 1e-9


@dataclass
class EulerFactor:
    """Local factor at one prime ideal.

    Attributes:
        prime (PrimeIdeal): The prime ideal.
        depth (int): Last depth evaluated.
        factor (Fraction): Partial factor at that depth.
        stabilized (bool): Whether the last two depths agree.
        history (List[Fraction]): Partial factors for depths 0, 1, ..., depth.
        method (str): Evaluation method of the last depth.
        solvable (bool): Whether a primitive solution modulo p^depth was found, None if not searched.
    """
    prime: PrimeIdeal
    depth: int
    factor: Fraction
    stabilized: bool
    history: List[Fraction]
    method: str
    solvable: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.prime.p,
            'ideal': [list(row) for row in self.prime.ideal.hnf_basis],
            'norm': self.prime.norm,
            'depth': self.depth,
            'factor': float(self.factor),
            'exact': str(self.factor),
            'stabilized': self.stabilized,
            'method': self.method,
            'solvable': self.solvable,
        }


@dataclass
class DensityReport:
    """Both truncations of the singular series with their cross-checks.

    Attributes:
        H (int): Norm bound of the arc-center sum.
        gamma_sum (Fraction): The arc-center sum at H.
        gamma_sum_by_H (Dict[int, Fraction]): Arc-center sums over the dyadic bounds up to H.
        euler (List[EulerFactor]): Local factors, ordered by prime.
        product (float): Product of the local factors.
        matched_product (Fraction): Euler product restricted to ideals of norm at most H.
        agreement_delta (float): |gamma_sum - matched_product|.
        tail_fit (float): Slope of log |S(H) - S(H')| against log H', None with fewer than two points.
        status (SeriesStatus): Unverified when the hypothesis of the asymptotic formula fails.
        skipped_primes (List[int]): Rational primes whose factorization was unsupported.
    """
    H: int
    gamma_sum: Fraction
    gamma_sum_by_H: Dict[int, Fraction]
    euler: List[EulerFactor]
    product: float
    matched_product: Fraction
    agreement_delta: float
    tail_fit: Optional[float]
    status: SeriesStatus
    skipped_primes: List[int] = dataclass_field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'H': self.H,
            'gamma_sum': float(self.gamma_sum),
            'gamma_sum_by_H': {str(h): float(v) for h, v in sorted(self.gamma_sum_by_H.items())},
            'euler': [f.to_dict() for f in self.euler],
            'product': self.product,
            'matched_product': float(self.matched_product),
            'agreement_delta': self.agreement_delta,
            'tail_fit': self.tail_fit,
            'status': self.status.value,
            'skipped_primes': list(self.skipped_primes),
        }


def ideal_coefficient(field: NumberField, system: PolySystem, a: IdealLattice, budget: int = None) -> Fraction:
    """A(a): the sum of Sigma(gamma) / N(a)^s over the gamma with a_gamma = a exactly.

    Raises:
        BudgetExceededError: the centers and residue boxes exceed the budget.
    """
    budget = budget or default_settings.RESIDUE_BUDGET
    N = a.norm
    if N == 1:
        return Fraction(1)
    check_budget('arc-center sum', N ** (system.T + system.s), budget, 'lower H')
    centers = residue_system(field, a, ResidueMode.Fractional)
    total = np.zeros(N, dtype=object)
    for gamma in itertools.product(centers, repeat=system.T):
        if denominator_ideal(field, gamma).hnf_basis != a.hnf_basis:
            continue
        counts = phase_counts(field, system, gamma, modulus=N, ideal=a, budget=budget).counts
        total += np.array(counts, dtype=object)
    return Fraction(exact_integer_sum([int(c) for c in total], N), N ** system.s)


def gamma_sum(field: NumberField, system: PolySystem, H: int,
              budget: int = None) -> Tuple[Dict[IdealLattice, Fraction], Dict[int, Fraction]]:
    """Coefficients A(a) for N(a) <= H and the partial sums over the dyadic bounds 1, 2, 4, ..., H."""
    coefficients = {}
    for a in enumerate_ideals(field, H):
        coefficients[a] = ideal_coefficient(field, system, a, budget)
        logger.debug('A(%s) = %s', a, coefficients[a])

    bounds = _dyadic(H)
    sums = {h: sum((c for a, c in coefficients.items() if a.norm <= h), Fraction(0)) for h in bounds}
    return coefficients, sums


def euler_factor(field: NumberField, system: PolySystem, prime: PrimeIdeal, depth: int,
                 method: Union[DensityMethod, str] = DensityMethod.Auto, budget: int = None,
                 tolerance: float = STABILIZATION_TOLERANCE, solubility: bool = True) -> EulerFactor:
    """Iterate the depth until two consecutive partial factors agree or `depth` is reached.

    A depth that exceeds the budget ends the iteration with the factor of the previous depth.
    """
    history = [Fraction(1)]
    used = DensityMethod(method).value
    stabilized = False
    for j in range(1, depth + 1):
        try:
            local = partial_factor(field, system, ideal_power(field, prime.ideal, j), method, budget)
        except BudgetExceededError as e:
            logger.warning('Euler factor at %s stopped at depth %d: %s', prime.ideal, j - 1, e.detail)
            break
        history.append(local.value)
        used = local.method.value
        if j >= 2 and abs(float(history[j] - history[j - 1])) < tolerance:
            stabilized = True
            break

    reached = len(history) - 1
    solvable = None
    if solubility and reached:
        solvable = primitive_solution_exists(field, system, prime, reached, budget)
    return EulerFactor(prime, reached, history[-1], stabilized, history, used, solvable)


def matched_product(field: NumberField, system: PolySystem, ideals: List[IdealLattice], budget: int = None,
                    method: Union[DensityMethod, str] = DensityMethod.Counting) -> Fraction:
    """Sum over the given ideals of the product of A(p^v) = F_v - F_{v-1} over their prime powers."""
    cache = {}  # type: Dict[Tuple[IdealLattice, int], Fraction]

    def partial(p: IdealLattice, v: int) -> Fraction:
        if v == 0:
            return Fraction(1)
        if (p, v) not in cache:
            cache[(p, v)] = partial_factor(field, system, ideal_power(field, p, v), method, budget).value
        return cache[(p, v)]

    total = Fraction(0)
    for a in ideals:
        term = Fraction(1)
        remaining = a.norm
        for p in sympy.primefactors(a.norm):
            for prime in primes_above(field, p):
                v = prime_valuation(field, prime.ideal, a)
                if v:
                    term *= partial(prime.ideal, v) - partial(prime.ideal, v - 1)
                    remaining //= prime.norm ** v
        if remaining != 1:
            raise ValueError('prime factorization of {} does not account for its norm'.format(a))
        total += term
    return total


def singular_series(field: NumberField, system: PolySystem, H: int = None, prime_cutoff: int = None,
                    depth: int = None, hypothesis_ok: Optional[bool] = None,
                    method: Union[DensityMethod, str] = DensityMethod.Auto, budget: int = None,
                    threads: int = None) -> DensityReport:
    """Truncated singular series with its double-entry check.

    Args:
        H (int): Norm bound of the arc-center sum.
        prime_cutoff (int): Largest rational prime of the Euler product.
        depth (int): Largest depth per prime ideal.
        hypothesis_ok (bool): Verdict of the hypothesis check; False marks the report unverified.
    """
    H = H or default_settings.SERIES_H
    prime_cutoff = prime_cutoff or default_settings.SERIES_PRIME_CUTOFF
    depth = depth or default_settings.SERIES_DEPTH
    budget = budget or default_settings.RESIDUE_BUDGET
    status = SeriesStatus.Unverified if hypothesis_ok is False else SeriesStatus.Verified
    if status == SeriesStatus.Unverified:
        logger.warning('The hypothesis fails; convergence of the singular series is not guaranteed')

    coefficients, by_H = gamma_sum(field, system, H, budget)
    total = by_H[max(by_H)]

    primes = []  # type: List[PrimeIdeal]
    skipped = []
    for p in sympy.primerange(2, prime_cutoff + 1):
        try:
            primes.extend(primes_above(field, int(p)))
        except UnsupportedPrimeError as e:
            logger.warning('Skipping p=%d: %s', p, e)
            skipped.append(int(p))

    euler = map_chunks(lambda prime: euler_factor(field, system, prime, depth, method, budget), primes, threads)
    product = Fraction(1)
    for f in euler:
        product *= f.factor
        logger.debug('Euler factor at p=%d norm %d: %s (depth %d)', f.prime.p, f.prime.norm, f.factor, f.depth)

    matched = matched_product(field, system, list(coefficients), budget)
    delta = abs(float(total - matched))
    logger.info('Singular series: gamma sum %.10g, Euler product %.10g, agreement %.3g',
                float(total), float(product), delta)

    return DensityReport(H, total, by_H, euler, float(product), matched, delta, _tail_fit(by_H), status, skipped)


def _dyadic(H: int) -> List[int]:
    bounds = [1]
    while bounds[-1] * 2 <= H:
        bounds.append(bounds[-1] * 2)
    if bounds[-1] != H:
        bounds.append(H)
    return bounds


def _tail_fit(by_H: Dict[int, Fraction]) -> Optional[float]:
    last = max(by_H)
    points = [(h, abs(float(by_H[last] - v))) for h, v in by_H.items() if h < last]
    points = [(h, d) for h, d in points if d > 0]
    if len(points) < 2:
        return None
    slope = np.polyfit([math.log(h) for h, _ in points], [math.log(d) for _, d in points], 1)[0]
    return float(slope)
