"""Weyl-type dichotomy for a point alpha.

With |S(alpha)| = P^{ns} L, Q_{D+1} = 1 and Q_d = (log P)^{e(d)} L^{-s_d/n} for
d in Delta (degrees outside Delta borrow Q of the next degree in Delta), the
bound at degree j is

    L^{2^{j-1}} <= (Q_{j+1} / P)^{n(s - B_j)} (log P)^{ns + 1}.

alpha lies in I_d^(1) when the bound holds at d and fails above d, and in I^(2)
when it fails at every degree. The approximation chain (q_j, nu_j) is searched
exhaustively in house-norm balls.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .. import default_settings
from ..errors import check_budget
from ..hypothesis import s_values
from ..nf import NumberField, FieldElement
from ..polys import PolySystem, BoxRegion
from .enum import Membership
from .sums import as_flat_alpha, exp_sum

logger = logging.getLogger(__name__)

# Slack on the approximation inequalities
APPROXIMATION_SLACK = 1e-9


class ApproximationLink(NamedTuple):
    """One step (q_j, nu_j) of the approximation chain; q and nu are None when the search failed."""
    j: int
    Q: float
    q: Optional[Tuple[int, ...]]
    nu: Optional[Tuple[Tuple[int, ...], ...]]

    @property
    def found(self) -> bool:
        return self.q is not None


@dataclass
class ArcClassification:
    """Measured size of S(alpha) and the resulting membership.

    Attributes:
        L (float): |S(alpha)| P^{-ns}.
        verdicts (Dict[int, bool]): Whether the bound holds, per degree in Delta.
        membership (Membership): I^(1) at `degree` or I^(2).
        degree (int): The d of I_d^(1), None for I^(2).
        Q (Dict[int, float]): Q_d for 1 <= d <= D + 1.
        chain (List[ApproximationLink]): Searched approximations, largest degree first.
        e_exponent (Dict[int, float]): The stand-in exponents e(d).
    """
    P: Any
    S: complex
    L: float
    verdicts: Dict[int, bool]
    membership: Membership
    degree: Optional[int]
    Q: Dict[int, float]
    chain: List[ApproximationLink]
    e_exponent: Dict[int, float]

    @property
    def label(self) -> str:
        if self.membership == Membership.Degree:
            return 'I_{}^(1)'.format(self.degree)
        return 'I^(2)'

    @property
    def chain_found(self) -> bool:
        return all(link.found for link in self.chain)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'P': float(self.P),
            're_S': self.S.real,
            'im_S': self.S.imag,
            'L': self.L,
            'verdicts': {str(d): v for d, v in self.verdicts.items()},
            'membership': self.label,
            'Q': {str(d): q for d, q in self.Q.items()},
            'chain': [{'j': link.j, 'Q': link.Q, 'q': list(link.q) if link.q else None,
                       'nu': [list(v) for v in link.nu] if link.nu else None} for link in self.chain],
            'e_exponent': {str(d): e for d, e in self.e_exponent.items()},
        }


def _exponents(system: PolySystem, e_exponent: Union[None, float, Mapping[int, float]]) -> Dict[int, float]:
    if e_exponent is None:
        e_exponent = default_settings.E_EXPONENT
    if isinstance(e_exponent, Mapping):
        return {d: float(e_exponent.get(d, default_settings.E_EXPONENT)) for d in range(1, system.D + 1)}
    return {d: float(e_exponent) for d in range(1, system.D + 1)}


def q_levels(system: PolySystem, n: int, L: float, P, B: Mapping[int, int],
             e_exponent: Mapping[int, float]) -> Dict[int, float]:
    """Q_d for 1 <= d <= D + 1; infinite when L = 0."""
    D = system.D
    s_vals = s_values(system, B)
    log_log = math.log(math.log(float(P)))
    levels = {D + 1: 1.0}
    for d in range(D, 0, -1):
        if d not in system.delta:
            levels[d] = levels[d + 1]
            continue
        if L <= 0:
            levels[d] = math.inf
            continue
        log_q = e_exponent[d] * log_log - float(s_vals[d]) / n * math.log(L)
        levels[d] = math.exp(min(log_q, 700.0))
    return levels


def bound_holds(system: PolySystem, n: int, j: int, L: float, P, B: Mapping[int, int],
                levels: Mapping[int, float]) -> bool:
    """Whether L^{2^{j-1}} <= (Q_{j+1} / P)^{n(s - B_j)} (log P)^{ns + 1}, compared in logarithms."""
    if L <= 0:
        return True
    s = system.s
    log_p = math.log(float(P))
    lhs = 2 ** (j - 1) * math.log(L)
    rhs = n * (s - B[j]) * (math.log(levels[j + 1]) - log_p) + (n * s + 1) * math.log(log_p)
    return lhs <= rhs


def _ball(n: int, radius: int, budget: int) -> List[Tuple[int, ...]]:
    """Nonzero integer vectors of house norm <= radius, by house norm, then l1 norm, then descending."""
    check_budget('approximation search', (2 * radius + 1) ** n, budget, 'lower the search radius')
    points = [c for c in itertools.product(range(-radius, radius + 1), repeat=n) if any(c)]
    points.sort(key=lambda c: (max(abs(x) for x in c), sum(abs(x) for x in c), tuple(-x for x in c)))
    return points


def find_approximation(field: NumberField, components: Sequence[Sequence[float]], Q: float, P, j: int,
                       divisor: Optional[Tuple[int, ...]] = None,
                       budget: int = None) -> Optional[Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]]:
    """Smallest q in n with |q| <= max(1, Q) and |q alpha_i - nu_i| <= Q P^{-j} for every component alpha_i.

    nu_i is the nearest point of n to q alpha_i. With `divisor`, q must be a multiple of it in O_K.

    Returns:
        (q, nu) in omega-coordinates, or None.
    """
    budget = budget or default_settings.SEARCH_BUDGET
    n = field.n
    radius = max(1, int(math.floor(Q * (1 + APPROXIMATION_SLACK))))
    tolerance = Q * float(P) ** -j * (1 + APPROXIMATION_SLACK) + 1e-12
    alphas = np.array([[float(c) for c in component] for component in components], dtype=float)
    tensor = field.mult_tensor.astype(float)
    divisor_element = FieldElement(divisor) if divisor is not None else None

    for q in _ball(n, radius, budget):
        products = np.einsum('k,il,klm->im', np.asarray(q, dtype=float), alphas, tensor)
        nu = np.rint(products)
        if np.max(np.abs(products - nu), initial=0.0) > tolerance:
            continue
        if divisor_element is not None and not field.divides(divisor_element, FieldElement(q)):
            continue
        return tuple(q), tuple(tuple(int(v) for v in row) for row in nu)
    return None


def _components_of_degree(field: NumberField, system: PolySystem, flat: Sequence, j: int) -> List[List]:
    n = field.n
    return [list(flat[p * n:(p + 1) * n]) for p, (d, _, _) in enumerate(system.entries) if d == j]


def classify(field: NumberField, system: PolySystem, alpha, P, B: Optional[Mapping[int, int]] = None,
             e_exponent: Union[None, float, Mapping[int, float]] = None, box: Optional[BoxRegion] = None,
             search_budget: int = None, S: Optional[complex] = None) -> ArcClassification:
    """Place alpha in the dichotomy and search the approximation chain its membership promises.

    Args:
        B: B_d per degree, as produced by the hypothesis check; missing degrees count as 0.
        e_exponent: e(d) as one number or per degree.
        box (BoxRegion): Defaults to [-1, 1]^{ns}.
        S (complex): A precomputed S(alpha).

    Raises:
        BudgetExceededError: the exponential sum or the q-search exceeds its budget.
    """
    if P < 2:
        raise ValueError('classify needs P >= 2')
    n, s = field.n, system.s
    B = {d: int((B or {}).get(d, 0)) for d in range(1, system.D + 1)}
    exponents = _exponents(system, e_exponent)
    box = box or BoxRegion.cube(n * s)
    flat = as_flat_alpha(field, system, alpha)
    if S is None:
        S = exp_sum(field, system, flat, box, P)
    L = abs(S) / float(P) ** (n * s)

    levels = q_levels(system, n, L, P, B, exponents)
    verdicts = {j: bound_holds(system, n, j, L, P, B, levels) for j in system.delta}
    holding = [j for j in system.delta if verdicts[j]]
    if holding:
        membership, degree = Membership.Degree, max(holding)
        wanted = [j for j in system.delta if j > degree]
    else:
        membership, degree = Membership.Approximable, None
        wanted = list(system.delta)

    chain = []
    divisor = None
    for j in sorted(wanted, reverse=True):
        Q = levels[j]
        found = None
        if math.isfinite(Q):
            found = find_approximation(field, _components_of_degree(field, system, flat, j), Q, P, j, divisor,
                                       search_budget)
        if found is None:
            chain.append(ApproximationLink(j, Q, None, None))
            logger.info('No approximation at degree %d with Q=%.4g', j, Q)
            break
        divisor = found[0]
        chain.append(ApproximationLink(j, Q, found[0], found[1]))

    result = ArcClassification(P, S, L, verdicts, membership, degree, levels, chain, exponents)
    logger.debug('alpha=%s at P=%s: L=%.4g, %s', flat, P, L, result.label)
    return result


def classify_e_grid(field: NumberField, system: PolySystem, alpha, P, B: Optional[Mapping[int, int]] = None,
                    e_values: Sequence[float] = (0, 1, 2), box: Optional[BoxRegion] = None,
                    search_budget: int = None) -> Dict[float, str]:
    """Membership labels for several stand-in exponents e, sharing one evaluation of S(alpha)."""
    box = box or BoxRegion.cube(field.n * system.s)
    S = exp_sum(field, system, as_flat_alpha(field, system, alpha), box, P)
    return {e: classify(field, system, alpha, P, B, e, box, search_budget, S).label for e in e_values}
