"""The oscillatory integral J(gamma) and the truncated singular integral.

For gamma in V^T with flat omega-coordinates gamma_k,

    J(gamma) = integral over B of e(sum_k gamma_k F*_k(X)) dX,

which factors over the variable components of the leading forms F*. Every
component is integrated with a tensor Gauss-Legendre rule whose node count
grows with the largest phase it can reach; the error estimate compares the rule
with its node-doubled refinement.

The singular integral J(H) integrates J over the cube |gamma| <= H of the
coordinate max norm.
"""
import functools
import logging
import math
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from .. import default_settings
from ..nf import NumberField
from ..parallel import chunk_ranges, map_chunks
from ..polys import PolySystem, BoxRegion, IntPolynomial, weil_restrict, variable_components, flat_coordinates
from .density import DensityEstimate, real_density
from .enum import OuterMethod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Component:
    """Leading forms restricted to one variable component, with that component's box."""
    variables: Tuple[int, ...]
    forms: Tuple[IntPolynomial, ...]
    bounds: Tuple[Tuple[float, float], ...]

    @property
    def constant(self) -> bool:
        return all(f.is_zero() for f in self.forms)

    @property
    def volume(self) -> float:
        return float(np.prod([b - a for a, b in self.bounds]))

    def phase_bound(self, scale: np.ndarray) -> float:
        max_abs = [max(abs(a), abs(b)) for a, b in self.bounds]
        return float(sum(s * f.magnitude_bound(max_abs) for s, f in zip(scale, self.forms)))


class JValue(NamedTuple):
    """J(gamma) with the node-doubling error estimate.

    Attributes:
        nodes: Gauss-Legendre nodes per axis, one entry per variable component.
        flagged: The error estimate exceeds the tolerance or a node count hit the quadrature budget.
    """
    value: complex
    error: float
    nodes: Tuple[int, ...]
    flagged: bool


@functools.lru_cache(maxsize=16)
def _components(field: NumberField, system: PolySystem, box: BoxRegion) -> Tuple[_Component, ...]:
    weil = weil_restrict(field, system)
    forms = weil.star_forms
    components = []
    for variables in variable_components(forms, weil.nvars):
        bounds = tuple((float(box.bounds[v][0]), float(box.bounds[v][1])) for v in variables)
        components.append(_Component(variables, tuple(f.restrict(variables) for f in forms), bounds))
    return tuple(components)


@functools.lru_cache(maxsize=32)
def _tensor_rule(bounds: Tuple[Tuple[float, float], ...], m: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = special.roots_legendre(m)
    axes = [0.5 * (a + b) + 0.5 * (b - a) * x for a, b in bounds]
    scaled = [0.5 * (b - a) * w for a, b in bounds]
    grids = np.meshgrid(*axes, indexing='ij')
    points = np.stack([g.ravel() for g in grids], axis=1)
    weights = functools.reduce(np.multiply.outer, scaled).ravel()
    return points, weights


@functools.lru_cache(maxsize=8)
def _form_values(component: _Component, m: int) -> np.ndarray:
    points, _ = _tensor_rule(component.bounds, m)
    return np.stack([f.evaluate_float(points) for f in component.forms])


def _node_count(component: _Component, scale: np.ndarray, base: int, budget: int,
                doubled: bool) -> Tuple[int, bool]:
    """Nodes per axis for the largest phase reachable with |gamma_k| <= scale[k], capped so the rule fits the budget."""
    m = base + int(math.ceil(math.pi * component.phase_bound(scale)))
    limit = max(1, int(math.floor(budget ** (1.0 / len(component.variables)) / (2 if doubled else 1))))
    if m > limit:
        return limit, True
    return m, False


def _integrate(component: _Component, betas: np.ndarray, m: int) -> np.ndarray:
    _, weights = _tensor_rule(component.bounds, m)
    values = _form_values(component, m)
    rows = max(1, default_settings.QUADRATURE_BUDGET // len(weights))
    out = np.empty(len(betas), dtype=complex)
    for start in range(0, len(betas), rows):
        phase = np.mod(betas[start:start + rows] @ values, 1.0)
        out[start:start + rows] = np.exp(2j * np.pi * phase) @ weights
    return out


def j_batch(field: NumberField, system: PolySystem, betas: np.ndarray, box: Optional[BoxRegion] = None,
            nodes: int = None, estimate_error: bool = True) -> Tuple[np.ndarray, np.ndarray, Tuple[int, ...], bool]:
    """J at every row of `betas` (shape (b, nT), flat omega-coordinates).

    Returns:
        (values, errors, nodes per component, capped). Without `estimate_error` the errors are zero.
    """
    box = box or BoxRegion.cube(field.n * system.s)
    base = nodes or default_settings.QUADRATURE_NODES
    betas = np.atleast_2d(np.asarray(betas, dtype=float))
    scale = np.max(np.abs(betas), axis=0) if len(betas) else np.zeros(betas.shape[1])
    budget = default_settings.QUADRATURE_BUDGET

    parts = []
    counts = []
    capped = False
    seen = {}  # type: Dict[_Component, Tuple[np.ndarray, np.ndarray]]
    for component in _components(field, system, box):
        if component.constant:
            parts.append((np.full(len(betas), component.volume, dtype=complex), np.zeros(len(betas))))
            counts.append(0)
            continue
        m, hit = _node_count(component, scale, base, budget, estimate_error)
        capped = capped or hit
        counts.append(m)
        key = component
        if key not in seen:
            fine = _integrate(component, betas, 2 * m if estimate_error else m)
            error = np.abs(fine - _integrate(component, betas, m)) if estimate_error else np.zeros(len(betas))
            seen[key] = (fine, error)
        parts.append(seen[key])

    values = np.ones(len(betas), dtype=complex)
    for value, _ in parts:
        values = values * value
    errors = np.zeros(len(betas))
    for c, (_, error) in enumerate(parts):
        others = np.ones(len(betas))
        for o, (value, _) in enumerate(parts):
            if o != c:
                others = others * np.abs(value)
        errors = errors + error * others
    return values, errors, tuple(counts), capped


def eval_J(field: NumberField, system: PolySystem, gamma, box: Optional[BoxRegion] = None, nodes: int = None,
           tolerance: float = None) -> JValue:
    """J(gamma) by tensor Gauss-Legendre quadrature.

    Args:
        gamma: T elements of V, or their nT flat omega-coordinates.
        nodes (int): Base nodes per axis; the phase adds more.
        tolerance (float): Error estimates above tolerance * vol(B) are flagged.
    """
    return j_values(field, system, [gamma], box, nodes, tolerance)[0]


def j_values(field: NumberField, system: PolySystem, gammas: Sequence, box: Optional[BoxRegion] = None,
             nodes: int = None, tolerance: float = None) -> List[JValue]:
    """:func:`eval_J` over a list of points, sharing one quadrature rule."""
    box = box or BoxRegion.cube(field.n * system.s)
    tolerance = tolerance or default_settings.J_TOLERANCE
    betas = np.array([[float(c) for c in flat_coordinates(field.n, system.T, g)] for g in gammas], dtype=float)
    values, errors, counts, capped = j_batch(field, system, betas, box, nodes)
    limit = tolerance * float(box.volume)
    result = []
    for value, error in zip(values, errors):
        flagged = capped or error > limit
        if flagged:
            logger.warning('J quadrature error %.3g exceeds %.3g (nodes %s)', error, limit, counts)
        result.append(JValue(complex(value), float(error), counts, bool(flagged)))
    return result


@dataclass
class IntegralReport:
    """The singular integral over a dyadic sweep of H.

    Attributes:
        J_values (List[Tuple[tuple, JValue]]): J on a small gamma grid.
        JH (Dict[float, float]): J(H') for H' in {H, 2H, 4H, ...}.
        standard_errors (Dict[float, float]): Monte Carlo standard errors; empty for quadrature.
        tail_fit (float): Log-log slope of |J(H') - J(largest H')|, None when undetermined.
        density_estimate (DensityEstimate): The independent real-density estimate, if computed.
    """
    H: float
    method: OuterMethod
    fallback: bool
    J_values: List[Tuple[tuple, JValue]]
    JH: Dict[float, float]
    standard_errors: Dict[float, float] = dataclass_field(default_factory=dict)
    tail_fit: Optional[float] = None
    density_estimate: Optional[DensityEstimate] = None
    flagged: bool = False

    @property
    def value(self) -> float:
        return self.JH[self.H]

    @property
    def agreement(self) -> Optional[float]:
        """Relative gap between J(H) and the real-density estimate."""
        if self.density_estimate is None or not self.density_estimate.value:
            return None
        return abs(self.value - self.density_estimate.value) / abs(self.density_estimate.value)

    def agrees(self, relative: float = 0.03) -> Optional[bool]:
        """Whether J(H) matches the density estimate within `relative` plus half its confidence interval."""
        estimate = self.density_estimate
        if estimate is None:
            return None
        slack = relative * abs(estimate.value) + 0.5 * (estimate.high - estimate.low)
        return abs(self.value - estimate.value) <= slack

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'H': self.H,
            'method': self.method.value,
            'fallback': 'monte_carlo' if self.fallback else None,
            'J_values': [{'gamma': [float(c) for c in g], 're': v.value.real, 'im': v.value.imag,
                          'error': v.error, 'flagged': v.flagged} for g, v in self.J_values],
            'JH': {str(h): v for h, v in self.JH.items()},
            'standard_errors': {str(h): v for h, v in self.standard_errors.items()},
            'tail_fit': self.tail_fit,
            'flagged': self.flagged,
        }
        if self.density_estimate is not None:
            data['density_estimate'] = self.density_estimate.to_dict()
            data['agreement'] = self.agreement
        return data


def _dyadic_radii(H: float) -> List[float]:
    radii = [1.0]
    while radii[-1] * 2 <= H:
        radii.append(radii[-1] * 2)
    return radii


def _default_grid(nT: int, H: float) -> List[tuple]:
    grid = [tuple([0.0] * nT)]
    for r in _dyadic_radii(H):
        for k in range(nT):
            grid.append(tuple(r if i == k else 0.0 for i in range(nT)))
    return grid


def _panel_rule(nT: int, width: float, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = special.roots_legendre(nodes)
    offsets = 0.5 * width * (x + 1)
    grids = np.meshgrid(*([offsets] * nT), indexing='ij')
    points = np.stack([g.ravel() for g in grids], axis=1)
    weights = functools.reduce(np.multiply.outer, [0.5 * width * w] * nT).ravel()
    return points, weights


def _quadrature_sweep(field, system, box, levels, width, nodes, panel_nodes, threads) -> Tuple[Dict[float, float], bool]:
    """J(H') for every level H' = count * width from panel integrals of the largest cube.

    J(-gamma) = conj(J(gamma)), so only one panel of each mirrored pair is integrated.
    """
    nT = field.n * system.T
    offsets, weights = _panel_rule(nT, width, panel_nodes)
    largest = max(count for _, count in levels)
    panels = [idx for idx in np.ndindex(*([2 * largest] * nT))]
    panels = [tuple(k - largest for k in idx) for idx in panels]
    own = [idx for idx in panels if idx <= tuple(-k - 1 for k in idx)]

    def integrate(chunk):
        results = []
        capped = False
        for idx in own[chunk[0]:chunk[1]]:
            betas = np.asarray(idx, dtype=float) * width + offsets
            values, _, _, hit = j_batch(field, system, betas, box, nodes, estimate_error=False)
            capped = capped or hit
            results.append(complex(values @ weights))
        return results, capped

    integrals = {}
    capped = False
    chunks = chunk_ranges(len(own), 16)
    for (start, stop), (results, hit) in zip(chunks, map_chunks(integrate, chunks, threads)):
        capped = capped or hit
        for idx, value in zip(own[start:stop], results):
            integrals[idx] = value
            integrals[tuple(-k - 1 for k in idx)] = value.conjugate()

    JH = {}
    for H, count in levels:
        inside = sorted(idx for idx in integrals if all(-count <= k < count for k in idx))
        JH[H] = math.fsum(integrals[idx].real for idx in inside)
        logger.info('J(%s) = %.8g from %d panels', H, JH[H], len(inside))
    return JH, capped


def _monte_carlo_sweep(field, system, box, levels, width, nodes, samples, seed, threads) \
        -> Tuple[Dict[float, float], Dict[float, float], bool]:
    nT = field.n * system.T
    streams = np.random.SeedSequence(seed).spawn(len(levels))
    JH, errors = {}, {}
    capped = False
    for (H, count), stream in zip(levels, streams):
        half = count * width
        betas = np.random.Generator(np.random.Philox(stream)).uniform(-half, half, size=(samples, nT))

        def evaluate(chunk):
            values, _, _, hit = j_batch(field, system, betas[chunk[0]:chunk[1]], box, nodes, estimate_error=False)
            return values.real, hit

        parts = map_chunks(evaluate, chunk_ranges(samples, 1024), threads)
        capped = capped or any(hit for _, hit in parts)
        real = np.concatenate([values for values, _ in parts])
        cube = (2 * half) ** nT
        JH[H] = cube * math.fsum(real) / samples
        errors[H] = cube * float(np.std(real, ddof=1)) / math.sqrt(samples) if samples > 1 else math.inf
        logger.info('J(%s) = %.8g +- %.3g by Monte Carlo over %d samples', H, JH[H], errors[H], samples)
    return JH, errors, capped


def _tail_fit(JH: Dict[float, float]) -> Optional[float]:
    """Slope of log|J(H') - J(H_max)| against log H' over the smaller H'."""
    levels = sorted(JH)
    if len(levels) < 3:
        return None
    top = JH[levels[-1]]
    points = [(math.log(h), math.log(abs(JH[h] - top))) for h in levels[:-1] if JH[h] != top]
    if len(points) < 2:
        return None
    xs, ys = zip(*points)
    return float(np.polyfit(xs, ys, 1)[0])


def singular_integral(field: NumberField, system: PolySystem, H: float = None, box: Optional[BoxRegion] = None,
                      method: OuterMethod = None, sweep: int = 3, nodes: int = None, panel_nodes: int = None,
                      samples: int = None, seed: int = None, density: bool = True, epsilon: float = None,
                      density_samples: int = None, threads: int = None) -> IntegralReport:
    """Truncated singular integral J(H) over the sweep {H, 2H, 4H}, cross-checked by the real density.

    The outer integral uses Gauss-Legendre panels of width H / ceil(H) when nT is at most
    OUTER_MAX_DIMENSION and Monte Carlo otherwise, or whenever `method` asks for it.

    Args:
        sweep (int): Number of dyadic levels.
        nodes (int): Base nodes per axis of the inner quadrature.
        panel_nodes (int): Nodes per axis and panel of the outer quadrature.
        samples (int): Monte Carlo samples per level.
        density (bool): Attach :func:`real_density` as an independent estimate.
    """
    H = float(H or default_settings.INTEGRAL_H)
    if H <= 0:
        raise ValueError('H must be positive, got {}'.format(H))
    box = box or BoxRegion.cube(field.n * system.s)
    nT = field.n * system.T
    seed = default_settings.SEED if seed is None else seed
    panel_nodes = panel_nodes or default_settings.OUTER_PANEL_NODES

    requested = method or OuterMethod.Quadrature
    fallback = requested == OuterMethod.Quadrature and nT > default_settings.OUTER_MAX_DIMENSION
    method = OuterMethod.MonteCarlo if fallback else requested
    if fallback:
        logger.warning('Outer dimension %d exceeds %d, falling back to Monte Carlo', nT,
                       default_settings.OUTER_MAX_DIMENSION)

    count = int(math.ceil(H))
    width = H / count
    levels = [(H * 2 ** k, count * 2 ** k) for k in range(sweep)]

    errors = {}  # type: Dict[float, float]
    if method == OuterMethod.Quadrature:
        JH, capped = _quadrature_sweep(field, system, box, levels, width, nodes, panel_nodes, threads)
    else:
        JH, errors, capped = _monte_carlo_sweep(field, system, box, levels, width, nodes,
                                                samples or default_settings.OUTER_MC_SAMPLES, seed, threads)

    grid = _default_grid(nT, H)
    J_values = list(zip(grid, j_values(field, system, grid, box, nodes)))
    flagged = capped or any(v.flagged for _, v in J_values)
    if capped:
        logger.warning('Inner quadrature hit the node budget; J(H) values are approximate')

    report = IntegralReport(H, method, fallback, J_values, JH, errors, _tail_fit(JH), flagged=flagged)
    if density:
        report.density_estimate = real_density(field, system, epsilon, box, density_samples, seed, threads=threads)
        logger.info('J(%s) = %.6g against real density %.6g', H, report.value, report.density_estimate.value)
    return report


class JDecayProfile(NamedTuple):
    """max |J(gamma)| over points of max norm r, per radius, with the fitted log-log slope."""
    radii: Tuple[float, ...]
    maxima: Tuple[float, ...]
    slope: float
    decreasing: bool


def j_decay_profile(field: NumberField, system: PolySystem, radii: Sequence[float] = (2, 4, 8, 16),
                    directions: int = 32, box: Optional[BoxRegion] = None, nodes: int = None,
                    seed: int = None) -> JDecayProfile:
    """Sample |J| on the spheres |gamma| = r along the coordinate axes and seeded random directions."""
    nT = field.n * system.T
    seed = default_settings.SEED if seed is None else seed
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    random = rng.uniform(-1.0, 1.0, size=(directions, nT))
    random = random / np.max(np.abs(random), axis=1, keepdims=True)
    axes = np.concatenate([np.eye(nT), -np.eye(nT)])
    units = np.concatenate([axes, random])

    maxima = []
    for r in radii:
        values, _, _, _ = j_batch(field, system, float(r) * units, box, nodes, estimate_error=False)
        maxima.append(float(np.max(np.abs(values))))
    positive = [(math.log(r), math.log(m)) for r, m in zip(radii, maxima) if m > 0]
    slope = float(np.polyfit(*zip(*positive), 1)[0]) if len(positive) >= 2 else -math.inf
    decreasing = all(b < a for a, b in zip(maxima, maxima[1:]))
    logger.info('J decay: maxima %s, slope %.3f', maxima, slope)
    return JDecayProfile(tuple(float(r) for r in radii), tuple(maxima), slope, decreasing)
