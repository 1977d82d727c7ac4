"""Monte Carlo estimate of the real density of the leading forms.

    vol{X in B : |F*_k(X)| <= eps for every k} / (2 eps)^{nT}

tends to the singular integral as eps -> 0. One sample stream serves the whole
eps sweep; batches draw from spawned Philox streams and are merged in batch
order, so estimates do not depend on the thread count.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy import stats

from .. import default_settings
from ..nf import NumberField
from ..parallel import chunk_ranges, map_chunks
from ..polys import PolySystem, BoxRegion, weil_restrict

logger = logging.getLogger(__name__)


@dataclass
class DensityEstimate:
    """The estimate at eps with its Clopper-Pearson interval.

    Attributes:
        sweep (List[Tuple[float, float, float, float, int]]): (eps, value, low, high, hits) for eps, eps/2, eps/4.
        stable (bool): Halving eps moves the estimate by less than the interval width.
    """
    epsilon: float
    value: float
    low: float
    high: float
    hits: int
    samples: int
    confidence: float
    sweep: List[Tuple[float, float, float, float, int]]
    stable: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'epsilon': self.epsilon,
            'value': self.value,
            'ci': [self.low, self.high],
            'hits': self.hits,
            'samples': self.samples,
            'confidence': self.confidence,
            'sweep': [{'epsilon': e, 'value': v, 'ci': [lo, hi], 'hits': h} for e, v, lo, hi, h in self.sweep],
            'stable': self.stable,
        }


def clopper_pearson(hits: int, samples: int, confidence: float) -> Tuple[float, float]:
    """Exact binomial interval for the hit probability; [0, upper] when there are no hits."""
    alpha = 1 - confidence
    low = 0.0 if hits == 0 else float(stats.beta.ppf(alpha / 2, hits, samples - hits + 1))
    high = 1.0 if hits == samples else float(stats.beta.ppf(1 - alpha / 2, hits + 1, samples - hits))
    return low, high


def real_density(field: NumberField, system: PolySystem, epsilon: float = None, box: Optional[BoxRegion] = None,
                 samples: int = None, seed: int = None, batch: int = None, confidence: float = 0.95,
                 threads: int = None) -> DensityEstimate:
    """Estimate the real density at eps, eps/2 and eps/4 from one sample of B.

    Raises:
        ValueError: eps is not positive.
    """
    epsilon = float(epsilon or default_settings.DENSITY_EPSILON)
    if epsilon <= 0:
        raise ValueError('epsilon must be positive, got {}'.format(epsilon))
    samples = samples or default_settings.DENSITY_SAMPLES
    batch = batch or default_settings.DENSITY_BATCH
    seed = default_settings.SEED if seed is None else seed
    box = box or BoxRegion.cube(field.n * system.s)

    forms = weil_restrict(field, system).star_forms
    nT = len(forms)
    lows = np.array([float(a) for a, _ in box.bounds])
    widths = np.array([float(b - a) for a, b in box.bounds])
    epsilons = [epsilon, epsilon / 2, epsilon / 4]
    chunks = chunk_ranges(samples, batch)
    streams = np.random.SeedSequence(seed).spawn(len(chunks))

    def count(index: int) -> List[int]:
        start, stop = chunks[index]
        rng = np.random.Generator(np.random.Philox(streams[index]))
        points = lows + widths * rng.random((stop - start, len(lows)))
        largest = np.zeros(stop - start)
        for form in forms:
            largest = np.maximum(largest, np.abs(form.evaluate_float(points)))
        return [int(np.count_nonzero(largest <= e)) for e in epsilons]

    totals = [0] * len(epsilons)
    for hits in map_chunks(count, range(len(chunks)), threads):
        totals = [t + h for t, h in zip(totals, hits)]

    volume = float(box.volume)
    sweep = []
    for e, hits in zip(epsilons, totals):
        scale = volume / (2 * e) ** nT
        low, high = clopper_pearson(hits, samples, confidence)
        if hits == 0:
            logger.warning('No samples within eps=%g of the zero set; reporting [0, %.3g]', e, high * scale)
        sweep.append((e, scale * hits / samples, scale * low, scale * high, hits))

    (_, value, low, high, hits), (_, half, half_low, half_high, _) = sweep[0], sweep[1]
    stable = abs(half - value) <= half_high - half_low
    logger.info('Real density at eps=%g: %.6g in [%.6g, %.6g] from %d of %d samples', epsilon, value, low, high,
                hits, samples)
    return DensityEstimate(epsilon, value, low, high, hits, samples, confidence, sweep, stable)
