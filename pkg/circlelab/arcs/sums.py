"""Exponential sums S(alpha) over the box P*B.

A point alpha holds T elements of V, each given by its omega-coordinates. In
the Weil restricted form the phase of an integer point X is

    sum over the flat positions k of alpha_k * G*_k(X),

so S(alpha) factors over the variable components of the restricted system and
every component only needs its value table. Rational alpha are evaluated with
exact phase numerators; real alpha reduce every column modulo 1 before summing.
"""
import logging
import math
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .. import default_settings
from ..counting import CountJob, Engine, count_points, box_component_tables
from ..errors import check_budget
from ..nf import NumberField
from ..polys import PolySystem, BoxRegion, weil_restrict, flat_coordinates
from .dissection import DissectionPlan, dissect

logger = logging.getLogger(__name__)


class ArcPoint(NamedTuple):
    """alpha as T tuples of n omega-coordinates, at scale P."""
    alpha: Tuple[Tuple[Union[float, Fraction], ...], ...]
    P: Union[int, float, Fraction]

    @property
    def flat(self) -> Tuple[Union[float, Fraction], ...]:
        return tuple(c for component in self.alpha for c in component)

    def normalized(self) -> 'ArcPoint':
        """Coordinates reduced into [0, 1)."""
        return ArcPoint(tuple(tuple(c - math.floor(c) for c in component) for component in self.alpha), self.P)


def as_flat_alpha(field: NumberField, system: PolySystem, alpha) -> list:
    """Flatten an :class:`ArcPoint` or anything :func:`~circlelab.polys.flat_coordinates` accepts."""
    if isinstance(alpha, ArcPoint):
        alpha = alpha.flat
    return flat_coordinates(field.n, system.T, alpha)


def _exact_grid(alphas: Sequence[Sequence]) -> Optional[Tuple[np.ndarray, int]]:
    """(numerators, m) when every coordinate is rational, else None."""
    if not all(isinstance(c, (int, Fraction)) for row in alphas for c in row):
        return None
    m = 1
    for row in alphas:
        for c in row:
            d = Fraction(c).denominator
            m = m * d // math.gcd(m, d)
    numerators = np.array([[int(Fraction(c) * m) % m for c in row] for row in alphas], dtype=np.int64)
    return numerators, m


def _key_phases(keys: np.ndarray, alphas, exact: Optional[Tuple[np.ndarray, int]]) -> np.ndarray:
    """Phases in [0, 1) of every key (rows) at every alpha (columns)."""
    if exact is not None:
        numerators, m = exact
        reduced = np.mod(keys, m).astype(np.int64)
        phase = np.zeros((keys.shape[0], numerators.shape[0]), dtype=np.int64)
        for col in range(keys.shape[1]):
            phase = (phase + np.outer(reduced[:, col], numerators[:, col]) % m) % m
        return phase / m

    alphas = np.asarray(alphas, dtype=float)
    values = keys.astype(float)
    phase = np.zeros((keys.shape[0], alphas.shape[0]))
    for col in range(keys.shape[1]):
        phase = np.mod(phase + np.mod(np.outer(values[:, col], alphas[:, col]), 1.0), 1.0)
    return phase


def _weighted_sums(counts: np.ndarray, phase: np.ndarray) -> np.ndarray:
    """sum_r counts[r] e(phase[r, g]) per column g, compensated."""
    weights = [float(c) for c in counts]
    cos = np.cos(2 * np.pi * phase)
    sin = np.sin(2 * np.pi * phase)
    result = np.empty(phase.shape[1], dtype=complex)
    for g in range(phase.shape[1]):
        real = math.fsum(w * c for w, c in zip(weights, cos[:, g]))
        imag = math.fsum(w * s for w, s in zip(weights, sin[:, g]))
        result[g] = complex(real, imag)
    return result


def exp_sum_grid(field: NumberField, system: PolySystem, alphas: Sequence, box: BoxRegion, P,
                 budget: int = None, chunk_size: int = None, threads: int = None) -> np.ndarray:
    """S(alpha) for every alpha of a grid.

    Args:
        alphas: Flat alpha vectors, one per row; rows of Fractions are evaluated with exact phases.

    Raises:
        BudgetExceededError: the box or the grid exceeds its budget.
    """
    rows = [as_flat_alpha(field, system, a) for a in alphas]
    check_budget('alpha grid', len(rows), default_settings.ALPHA_GRID_BUDGET, 'use a coarser grid')
    weil = weil_restrict(field, system)
    tables, constants = box_component_tables(weil, box, P, budget=budget, chunk_size=chunk_size, threads=threads)

    exact = _exact_grid(rows)
    total = np.ones(len(rows), dtype=complex)
    for component in tables:
        phase = _key_phases(component.table.keys, rows, exact)
        total *= _weighted_sums(component.table.counts, phase)

    shift = _key_phases(np.array([constants], dtype=object), rows, exact)
    total *= np.exp(2j * np.pi * shift[0])
    return total


def exp_sum(field: NumberField, system: PolySystem, alpha, box: BoxRegion, P=None,
            budget: int = None, chunk_size: int = None, threads: int = None) -> complex:
    """S(alpha): the sum of e(Tr(sum alpha_{d,i} G_{d,i}(x))) over x in n^s with coordinates in P*B.

    Args:
        alpha: An :class:`ArcPoint` or the omega-coordinates of its T components.
        P: The scale; taken from `alpha` when it is an :class:`ArcPoint`.
    """
    if P is None:
        if not isinstance(alpha, ArcPoint):
            raise ValueError('P is required unless alpha is an ArcPoint')
        P = alpha.P
    return complex(exp_sum_grid(field, system, [alpha], box, P, budget, chunk_size, threads)[0])


class CircleIdentityReport(NamedTuple):
    """The discrete circle identity: the mean of S(k/G) over k mod G equals N(P)."""
    P: object
    G: int
    count: int
    mean: complex
    error: float
    holds: bool


def value_bound(field: NumberField, system: PolySystem, box: BoxRegion, P) -> int:
    """Largest |G*_k(X)| over the integer points of P*B, bounded termwise."""
    weil = weil_restrict(field, system)
    max_abs = [max(abs(low), abs(high)) for low, high in box.integer_ranges(P)]
    return int(math.ceil(max(p.magnitude_bound(max_abs) for p in weil.star_polys)))


def circle_identity_check(field: NumberField, system: PolySystem, box: BoxRegion, P, G: int = None,
                          tolerance: float = None, budget: int = None) -> CircleIdentityReport:
    """Check (1 / G^{nT}) sum over k in (Z/G)^{nT} of S(k / G) = N(P) for G beyond the value range."""
    tolerance = tolerance or default_settings.IDENTITY_TOLERANCE
    nT = field.n * system.T
    G = G or 2 * value_bound(field, system, box, P) + 1
    check_budget('circle identity grid', G ** nT, default_settings.ALPHA_GRID_BUDGET, 'lower P')

    grid = [tuple(Fraction(k, G) for k in point) for point in np.ndindex(*([G] * nT))]
    sums = exp_sum_grid(field, system, grid, box, P, budget)
    mean = complex(math.fsum(s.real for s in sums) / G ** nT, math.fsum(s.imag for s in sums) / G ** nT)

    count = count_points(CountJob(field, system, box, P, Engine.Auto), budget).count
    error = abs(mean - count)
    holds = error <= tolerance * max(1, count)
    logger.info('Circle identity at P=%s with G=%d: mean %.6g vs N(P)=%d', P, G, mean.real, count)
    return CircleIdentityReport(P, G, count, mean, error, holds)


class MinorArcReport(NamedTuple):
    """Riemann sums of |S(alpha)| over the alpha grid split by the dissection.

    Attributes:
        minor_integral: Grid mean of |S| over the minor arc points.
        normalized: minor_integral / P^{n(s - calD)}.
        major_share: Fraction of the total grid mass of |S| lying on major arcs.
    """
    P: object
    grid: int
    minor_points: int
    minor_integral: float
    major_integral: float
    normalized: float
    major_share: float


def minor_arc_integral(field: NumberField, system: PolySystem, box: BoxRegion, P, grid: int = None,
                       plan: Optional[DissectionPlan] = None, budget: int = None) -> MinorArcReport:
    """Measure the integral of |S(alpha)| over the minor arcs on a regular grid of [0, 1)^{nT}."""
    grid = grid or default_settings.MINOR_ARC_GRID
    nT = field.n * system.T
    plan = plan or dissect(field, system, P, strict=False)
    points = [tuple(Fraction(k, grid) for k in point) for point in np.ndindex(*([grid] * nT))]
    sums = np.abs(exp_sum_grid(field, system, points, box, P, budget))

    on_major = np.array([plan.locate([float(c) for c in point]) is not None for point in points], dtype=bool)
    cells = grid ** nT
    minor = math.fsum(sums[~on_major]) / cells
    major = math.fsum(sums[on_major]) / cells
    exponent = field.n * (system.s - system.calD_total)
    normalized = minor / float(P) ** exponent
    share = major / (major + minor) if major + minor else 0.0
    logger.info('Minor arc integral at P=%s: %.6g (normalized %.6g), major share %.3f', P, minor, normalized, share)
    return MinorArcReport(P, grid, int((~on_major).sum()), minor, major, normalized, share)


def minor_arc_sweep(field: NumberField, system: PolySystem, box: BoxRegion, Ps: Sequence, grid: int = None,
                    budget: int = None) -> Tuple[List[MinorArcReport], bool]:
    """Minor arc integrals over a list of P and whether the normalized values strictly decrease."""
    reports = [minor_arc_integral(field, system, box, P, grid, budget=budget) for P in Ps]
    values = [r.normalized for r in reports]
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    if not decreasing:
        logger.warning('Normalized minor arc integrals do not decrease: %s', values)
    return reports, decreasing
