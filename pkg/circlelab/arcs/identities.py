"""Exact identities behind the arc estimates, checked on instances.

Weyl differencing: for g(X) = chi(X) e(phi(X)) with chi the indicator of P*B,
any q in O_K and H >= 1,

    H^{ns} sum_X g(X) = sum over u in {1..H}^{ns} of sum_X g(X + q u),

and Cauchy's inequality over the enlarged box E gives

    |sum g|^2 <= |E| H^{-ns} sum_{|h| < H} |sum_Y g(Y + q h) conj(g(Y))|.

Major arcs: for alpha = gamma + theta,

    S(alpha) = N(a_gamma)^{-s} P^{ns} Sigma(gamma) J(theta_{d,i} P^d) + residual.
"""
import itertools
import logging
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import default_settings
from ..archimedean import eval_J
from ..densities import complete_sum_sigma
from ..densities.sigma import as_gamma
from ..errors import check_budget
from ..nf import NumberField, FieldElement, denominator_ideal
from ..parallel import mixed_radix_points
from ..polys import PolySystem, BoxRegion, weil_restrict
from .dissection import varpi
from .errors import PreconditionError
from .sums import as_flat_alpha, exp_sum, _exact_grid, _key_phases

logger = logging.getLogger(__name__)


class _Summand:
    """g(X) = chi(X) e(sum alpha_k G*_k(X)) on integer points."""

    def __init__(self, field: NumberField, system: PolySystem, flat: Sequence, box: BoxRegion, P):
        self.polys = weil_restrict(field, system).star_polys
        self.flat = list(flat)
        self.exact = _exact_grid([self.flat])
        ranges = box.integer_ranges(P)
        self.lows = np.array([low for low, _ in ranges], dtype=np.int64)
        self.highs = np.array([high for _, high in ranges], dtype=np.int64)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        inside = np.all((points >= self.lows) & (points <= self.highs), axis=1)
        values = np.zeros(len(points), dtype=complex)
        if inside.any():
            keys = np.stack([p.evaluate_array(points[inside]) for p in self.polys], axis=1)
            phase = _key_phases(keys, [self.flat], self.exact)[:, 0]
            values[inside] = np.exp(2j * np.pi * phase)
        return values


def _grid(lows: np.ndarray, highs: np.ndarray) -> np.ndarray:
    sizes = np.maximum(highs - lows + 1, 0)
    return mixed_radix_points(lows, sizes, 0, int(np.prod(sizes)))


def _shifts(field: NumberField, q: FieldElement, s: int, values: Sequence[int]) -> np.ndarray:
    """omega-coordinates of q * u for every u with coordinates in `values`, one row per u."""
    n = field.n
    rows = []
    for u in itertools.product(values, repeat=n * s):
        row = []
        for v in range(s):
            product = field.mul(q, FieldElement(u[v * n:(v + 1) * n]))
            row.extend(int(c) for c in product.coords)
        rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n * s)


def _fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


@dataclass
class WeylTrial:
    """One alpha: both sides of the averaging identity and the differencing ratio.

    Attributes:
        rho (float): |Sigma|^2 / ((P / H)^{ns} sum_h |inner(h)|).
        rho_bound (float): |E| / P^{ns}, the exact Cauchy bound on rho.
    """
    alpha: Tuple[float, ...]
    lhs: complex
    rhs: complex
    error: float
    holds: bool
    rho: float
    rho_bound: float

    def to_dict(self) -> Dict[str, Any]:
        return {'alpha': [float(a) for a in self.alpha], 're_lhs': self.lhs.real, 'im_lhs': self.lhs.imag,
                're_rhs': self.rhs.real, 'im_rhs': self.rhs.imag, 'error': self.error, 'holds': self.holds,
                'rho': self.rho, 'rho_bound': self.rho_bound}


@dataclass
class WeylReport:
    q: Tuple[Fraction, ...]
    H: int
    P: Any
    trials: List[WeylTrial]

    @property
    def holds(self) -> bool:
        return all(t.holds for t in self.trials)

    @property
    def rho_max(self) -> float:
        return max((t.rho for t in self.trials), default=0.0)

    @property
    def bounded(self) -> bool:
        return all(t.rho <= t.rho_bound * (1 + 1e-9) for t in self.trials)

    def to_dict(self) -> Dict[str, Any]:
        return {'q': [str(c) for c in self.q], 'H': self.H, 'P': float(self.P), 'holds': self.holds,
                'rho_max': self.rho_max, 'bounded': self.bounded, 'trials': [t.to_dict() for t in self.trials]}


def weyl_identity_check(field: NumberField, system: PolySystem, q, H: int, P, box: Optional[BoxRegion] = None,
                        alphas: Optional[Sequence] = None, trials: int = 1, seed: int = None,
                        tolerance: float = None, budget: int = None) -> WeylReport:
    """Evaluate both sides of the differencing identity and the ratio rho for several alpha.

    The left side is S(alpha) from the factored value tables, the right side a direct sum over
    the enlarged box with every shift q u applied.

    Args:
        q: An element of O_K, as a :class:`FieldElement` or its omega-coordinates.
        alphas: Explicit points; otherwise `trials` points are drawn uniformly from [0, 1)^{nT}.

    Raises:
        PreconditionError: H < 1, q is not integral, or H exceeds P / |q|.
        BudgetExceededError: the shifted enumeration exceeds the budget.
    """
    n, s = field.n, system.s
    ns = n * s
    if isinstance(q, (int, Fraction)):
        q = field.one.scale(q)
    elif not isinstance(q, FieldElement):
        q = FieldElement(tuple(q))
    if H < 1:
        raise PreconditionError('H must be at least 1, got {}'.format(H))
    if q.is_zero() or any(c.denominator != 1 for c in field.to_order(q)):
        raise PreconditionError('q = {} is not a nonzero element of O_K'.format(q))
    if H > float(P) / float(q.house):
        raise PreconditionError('H = {} exceeds P / |q| = {:.4g}'.format(H, float(P) / float(q.house)))
    box = box or BoxRegion.cube(ns)
    tolerance = tolerance or default_settings.IDENTITY_TOLERANCE
    budget = budget or default_settings.ENUMERATION_BUDGET

    if alphas is None:
        seed = default_settings.SEED if seed is None else seed
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
        alphas = [tuple(rng.random(n * system.T)) for _ in range(trials)]

    u_shifts = _shifts(field, q, s, range(1, H + 1))
    h_shifts = _shifts(field, q, s, range(1 - H, H))
    ranges = box.integer_ranges(P)
    lows = np.array([low for low, _ in ranges], dtype=np.int64)
    highs = np.array([high for _, high in ranges], dtype=np.int64)
    enlarged_lows = lows - u_shifts.max(axis=0)
    enlarged_highs = highs - u_shifts.min(axis=0)
    enlarged = int(np.prod(np.maximum(enlarged_highs - enlarged_lows + 1, 0)))
    inner_points = box.point_count(P)
    check_budget('Weyl identity', enlarged * len(u_shifts) + inner_points * len(h_shifts), budget,
                 'lower P or H')
    outer = _grid(enlarged_lows, enlarged_highs)
    points = _grid(lows, highs)
    volume_scale = float(P) ** ns

    results = []
    for alpha in alphas:
        flat = as_flat_alpha(field, system, alpha)
        g = _Summand(field, system, flat, box, P)
        lhs = H ** ns * exp_sum(field, system, flat, box, P, budget)
        rhs = _fsum_complex(complex(np.sum(g(outer + shift))) for shift in u_shifts)
        error = abs(lhs - rhs)
        holds = error <= tolerance * max(1.0, float(H ** ns * inner_points))

        base = np.conj(g(points))
        inner = math.fsum(abs(complex(np.sum(g(points + shift) * base))) for shift in h_shifts)
        sigma = lhs / H ** ns
        denominator = (float(P) / H) ** ns * inner
        rho = abs(sigma) ** 2 / denominator if denominator else 0.0
        results.append(WeylTrial(tuple(flat), lhs, rhs, error, holds, rho, enlarged / volume_scale))
        if not holds:
            logger.warning('Differencing identity off by %.3g at alpha=%s', error, flat)

    report = WeylReport(q.coords, H, P, results)
    logger.info('Weyl identity with q=%s, H=%d, P=%s: holds=%s, rho_max=%.4g', q, H, P, report.holds,
                report.rho_max)
    return report


@dataclass
class MajorArcReport:
    """Both sides of the major arc expansion at one P.

    Attributes:
        main (complex): N(a)^{-s} P^{ns} Sigma(gamma) J(theta P^d).
        bound_shape (float): N(a) sum_{d,i} |theta_{d,i}| P^{ns+d-1} + N(a) P^{ns-1}.
        ratio (float): residual / bound_shape.
        on_major_arc (bool): |theta_{d,i}| <= P^{-d+varpi} for every d, i.
    """
    P: Any
    gamma: Tuple[Fraction, ...]
    theta: Tuple[float, ...]
    norm: int
    S: complex
    sigma: complex
    J: complex
    main: complex
    residual: float
    bound_shape: float
    ratio: float
    on_major_arc: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'P': float(self.P), 'gamma': [str(c) for c in self.gamma], 'theta': list(self.theta),
            'norm': self.norm, 're_S': self.S.real, 'im_S': self.S.imag,
            're_sigma': self.sigma.real, 'im_sigma': self.sigma.imag, 're_J': self.J.real, 'im_J': self.J.imag,
            're_main': self.main.real, 'im_main': self.main.imag, 'residual': self.residual,
            'bound_shape': self.bound_shape, 'ratio': self.ratio, 'on_major_arc': self.on_major_arc,
        }


def _flat_degrees(field: NumberField, system: PolySystem) -> List[int]:
    return [d for d, _, _ in system.entries for _ in range(field.n)]


def major_arc_expansion_check(field: NumberField, system: PolySystem, gamma, theta, P,
                              box: Optional[BoxRegion] = None, budget: int = None,
                              nodes: int = None) -> MajorArcReport:
    """Measure the residual of the major arc expansion of S(gamma + theta).

    Args:
        gamma: T elements of K (FieldElements or rationals).
        theta: nT flat omega-coordinates of the offset.
    """
    n, s = field.n, system.s
    ns = n * s
    box = box or BoxRegion.cube(ns)
    gamma = as_gamma(field, system, gamma)
    gamma_flat = [c for g in gamma for c in g.coords]
    theta = [float(t) for t in as_flat_alpha(field, system, theta)]
    degrees = _flat_degrees(field, system)
    P_float = float(P)

    if any(theta):
        alpha = [float(g) + t for g, t in zip(gamma_flat, theta)]
    else:
        alpha = list(gamma_flat)
    S = exp_sum(field, system, alpha, box, P, budget)
    norm = denominator_ideal(field, gamma).norm
    sigma = complete_sum_sigma(field, system, gamma)
    J = eval_J(field, system, [t * P_float ** d for t, d in zip(theta, degrees)], box, nodes).value
    main = norm ** -s * P_float ** ns * sigma * J
    residual = abs(S - main)

    houses = [max(abs(t) for t in theta[p * n:(p + 1) * n]) for p in range(system.T)]
    poly_degrees = [d for d, _, _ in system.entries]
    shape = norm * math.fsum(h * P_float ** (ns + d - 1) for h, d in zip(houses, poly_degrees))
    shape += norm * P_float ** (ns - 1)
    w = float(varpi(field, system))
    on_arc = all(h <= P_float ** (w - d) * (1 + 1e-12) for h, d in zip(houses, poly_degrees))
    if not on_arc:
        logger.warning('theta=%s leaves the major arc around %s at P=%s', theta, gamma_flat, P)

    report = MajorArcReport(P, tuple(gamma_flat), tuple(theta), norm, S, sigma, J, main, residual, shape,
                            residual / shape, on_arc)
    logger.debug('Major arc at P=%s: |S|=%.6g, |main|=%.6g, ratio %.4g', P, abs(S), abs(main), report.ratio)
    return report


@dataclass
class MajorArcSweep:
    """The expansion over several P with theta = beta P^{-d}.

    Attributes:
        C (float): The largest residual / bound_shape ratio.
        stable (bool): Every ratio lies within 50% of the median ratio.
    """
    reports: List[MajorArcReport]
    C: float
    stable: bool

    def to_dict(self) -> Dict[str, Any]:
        return {'C': self.C, 'stable': self.stable, 'reports': [r.to_dict() for r in self.reports]}


def major_arc_sweep(field: NumberField, system: PolySystem, gamma, beta, Ps: Sequence,
                    box: Optional[BoxRegion] = None, budget: int = None, nodes: int = None) -> MajorArcSweep:
    """Run :func:`major_arc_expansion_check` at every P with theta_k = beta_k P^{-d_k} and fit C."""
    degrees = _flat_degrees(field, system)
    beta = [float(b) for b in as_flat_alpha(field, system, beta)]
    reports = []
    for P in Ps:
        theta = [b * float(P) ** -d for b, d in zip(beta, degrees)]
        reports.append(major_arc_expansion_check(field, system, gamma, theta, P, box, budget, nodes))
    ratios = [r.ratio for r in reports]
    C = max(ratios, default=0.0)
    median = statistics.median(ratios) if ratios else 0.0
    stable = all(0.5 * median <= r <= 1.5 * median for r in ratios)
    logger.info('Major arc sweep over P=%s: C=%.4g, stable=%s', list(Ps), C, stable)
    return MajorArcSweep(reports, C, stable)
