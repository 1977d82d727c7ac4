"""Experiment orchestration.

The full run checks the hypothesis, counts N(P), truncates the singular series
and the singular integral, and compares N(P) with S J P^{n(s - calD)}. Every
stage is announced through :mod:`circlelab.signals`; an error inside a stage is
re-raised as :class:`~circlelab.errors.StageError` naming it.
"""
import logging
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from ..archimedean import IntegralReport, singular_integral
from ..arcs import ArcClassification, CircleIdentityReport, DissectionPlan, MajorArcSweep, MinorArcReport, \
    circle_identity_check, classify, dissect, major_arc_sweep, minor_arc_sweep
from ..counting import CountJob, CountResult, count_points
from ..densities import DensityReport, singular_series
from ..errors import BudgetExceededError, StageError
from ..hypothesis import BdEstimate, BdMethod, HypothesisReport, check_main_hypothesis, estimate_Bd
from ..nf import NumberField
from ..parallel import set_threads
from ..polys import PolySystem, BoxRegion
from ..signals import stage_started, stage_finished
from .schema import ExperimentConfig

logger = logging.getLogger(__name__)

E_GRID = (0, 1, 2)


class Instance(NamedTuple):
    field: NumberField
    system: PolySystem
    box: BoxRegion


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Announce a stage and wrap whatever it raises in a :class:`StageError`."""
    stage_started.send(name)
    started = time.perf_counter()
    try:
        yield
    except StageError:
        raise
    except Exception as e:
        logger.error('Stage %s failed: %s', name, e)
        raise StageError(name, e) from e
    elapsed = (time.perf_counter() - started) * 1000.0
    stage_finished.send(name, elapsed_ms=elapsed)


def prepare(config: ExperimentConfig) -> Instance:
    with stage('parse'):
        set_threads(config.threads)
        field = config.build_field()
        system = config.build_system(field)
        box = config.build_box(field, system)
    logger.info('Instance: n=%d, s=%d, profile=%s, box volume %s', field.n, system.s, system.degree_profile,
                box.volume)
    return Instance(field, system, box)


@dataclass
class ArcSample:
    """One alpha of the sums subcommand at one P."""
    alpha: Tuple[Fraction, ...]
    classification: ArcClassification
    e_grid: Dict[float, str]

    def to_row(self) -> Dict[str, Any]:
        row = {'alpha_{}'.format(k): str(c) for k, c in enumerate(self.alpha)}
        row.update({'P': str(self.classification.P), 're_S': self.classification.S.real,
                    'im_S': self.classification.S.imag, 'L': self.classification.L,
                    'membership': self.classification.label})
        return row


@dataclass
class SumsReport:
    plans: List[DissectionPlan] = dataclass_field(default_factory=list)
    samples: List[ArcSample] = dataclass_field(default_factory=list)
    circle: Optional[CircleIdentityReport] = None
    minor: List[MinorArcReport] = dataclass_field(default_factory=list)
    minor_decreasing: Optional[bool] = None
    major: Optional[MajorArcSweep] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'dissection': [plan.to_dict() for plan in self.plans],
            'alpha': [dict(s.classification.to_dict(), alpha=[str(c) for c in s.alpha],
                           e_grid={str(e): label for e, label in s.e_grid.items()}) for s in self.samples],
            'circle_identity': None if self.circle is None else {
                'P': float(self.circle.P), 'G': self.circle.G, 'count': self.circle.count,
                're_mean': self.circle.mean.real, 'im_mean': self.circle.mean.imag, 'error': self.circle.error,
                'holds': self.circle.holds},
            'minor_arcs': [dict(r._asdict(), P=float(r.P)) for r in self.minor],
            'minor_decreasing': self.minor_decreasing,
            'major_arcs': None if self.major is None else self.major.to_dict(),
        }


@dataclass
class AsymptoticReport:
    """Everything a run produced; parts of skipped stages stay empty.

    Attributes:
        expected_exponent (int): n(s - calD).
        singular_series (float): The Euler product of the singular series.
        singular_integral (float): J(H) at the configured H.
        prediction (Dict[Any, float]): S J P^{n(s - calD)} per P.
        ratios (Dict[Any, float]): N(P) / prediction.
        fitted_exponent (float): Least squares slope of log N(P) against log P, None with fewer than
            three positive counts.
        verdict (str): 'asymptotic' when the hypothesis holds, 'exploratory' otherwise.
    """
    config: Dict[str, Any]
    n: int
    s: int
    calD: int
    hypothesis: Optional[HypothesisReport] = None
    estimates: List[BdEstimate] = dataclass_field(default_factory=list)
    counts: List[CountResult] = dataclass_field(default_factory=list)
    series: Optional[DensityReport] = None
    integral: Optional[IntegralReport] = None
    sums: Optional[SumsReport] = None

    @property
    def expected_exponent(self) -> int:
        return self.n * (self.s - self.calD)

    @property
    def singular_series(self) -> Optional[float]:
        return None if self.series is None else self.series.product

    @property
    def singular_integral(self) -> Optional[float]:
        return None if self.integral is None else self.integral.value

    @property
    def prediction(self) -> Dict[Any, float]:
        if self.series is None or self.integral is None:
            return {}
        main = self.singular_series * self.singular_integral
        return {c.P: main * float(c.P) ** self.expected_exponent for c in self.counts}

    @property
    def ratios(self) -> Dict[Any, float]:
        prediction = self.prediction
        return {c.P: c.count / prediction[c.P] if prediction.get(c.P) else math.nan
                for c in self.counts if c.P in prediction}

    @property
    def fitted_exponent(self) -> Optional[float]:
        points = [(math.log(float(c.P)), math.log(c.count)) for c in self.counts if c.count > 0]
        if len(points) < 3:
            return None
        xs, ys = zip(*points)
        return float(np.polyfit(xs, ys, 1)[0])

    @property
    def verdict(self) -> str:
        if self.hypothesis is not None and self.hypothesis.overall:
            return 'asymptotic'
        return 'exploratory'

    @property
    def fallback(self) -> Optional[str]:
        if self.integral is not None and self.integral.fallback:
            return 'monte_carlo'
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'config': self.config,
            'n': self.n,
            's': self.s,
            'calD': self.calD,
            'expected_exponent': self.expected_exponent,
            'hypothesis': None if self.hypothesis is None else self.hypothesis.to_dict(),
            'B_estimates': [{'d': e.d, 'value': e.value, 'confidence': e.confidence.value,
                             'counts': {str(p): c for p, c in e.counts.items()}, 'slope': e.slope}
                            for e in self.estimates],
            'counts': [{'P': str(c.P), 'count': c.count, 'engine': c.engine} for c in self.counts],
            'series': None if self.series is None else self.series.to_dict(),
            'integral': None if self.integral is None else self.integral.to_dict(),
            'sums': None if self.sums is None else self.sums.to_dict(),
            'singular_series': self.singular_series,
            'singular_integral': self.singular_integral,
            'prediction': {str(P): v for P, v in self.prediction.items()},
            'ratios': {str(P): v for P, v in self.ratios.items()},
            'fitted_exponent': self.fitted_exponent,
            'verdict': self.verdict,
            'fallback': self.fallback,
        }


def new_report(config: ExperimentConfig, instance: Instance) -> AsymptoticReport:
    echo = {'field_poly': list(config.field_poly), 'system': config.system,
            'P_values': [str(P) for P in config.P_values], 'seed': config.seed}
    return AsymptoticReport(echo, instance.field.n, instance.system.s, instance.system.calD_total)


def run_check(config: ExperimentConfig, instance: Instance, report: AsymptoticReport) -> HypothesisReport:
    """Obtain B_d for every degree (override or finite field fit) and evaluate the hypothesis."""
    field, system, _ = instance
    with stage('hypothesis'):
        estimates = []
        for d in system.delta:
            if d in config.B_overrides:
                estimates.append(estimate_Bd(field, system, d, BdMethod.UserOverride, config.B_overrides[d]))
            else:
                estimates.append(estimate_Bd(field, system, d, threads=config.threads))
        B = {e.d: e.value for e in estimates}
        hypothesis = check_main_hypothesis(system, B, {e.d: e.confidence.value for e in estimates})
    report.estimates = estimates
    report.hypothesis = hypothesis
    logger.info('Hypothesis: overall=%s, margin=%s', hypothesis.overall, hypothesis.margin)
    return hypothesis


def run_counts(config: ExperimentConfig, instance: Instance, report: AsymptoticReport) -> List[CountResult]:
    field, system, box = instance
    with stage('counts'):
        results = []
        for P in config.scales:
            job = CountJob(field, system, box, P, config.engine, tuple(config.split) if config.split else None)
            results.append(count_points(job, config.enumeration_budget, config.chunk_size, config.threads))
    report.counts = results
    return results


def run_series(config: ExperimentConfig, instance: Instance, report: AsymptoticReport) -> DensityReport:
    field, system, _ = instance
    hypothesis_ok = None if report.hypothesis is None else report.hypothesis.overall
    with stage('series'):
        series = singular_series(field, system, config.series_H, config.series_prime_cutoff, config.series_depth,
                                 hypothesis_ok, config.density_method, config.residue_budget, config.threads)
    report.series = series
    return series


def run_integral(config: ExperimentConfig, instance: Instance, report: AsymptoticReport) -> IntegralReport:
    field, system, box = instance
    with stage('integral'):
        integral = singular_integral(field, system, config.integral_H, box, config.outer_method,
                                     nodes=config.quadrature_nodes, seed=config.seed,
                                     epsilon=config.density_epsilon, density_samples=config.density_samples,
                                     threads=config.threads)
    report.integral = integral
    return integral


def run_sums(config: ExperimentConfig, instance: Instance, report: AsymptoticReport) -> SumsReport:
    """Dissection plans, alpha classifications, the discrete circle identity and the arc measurements."""
    field, system, box = instance
    B = {} if report.hypothesis is None else dict(report.hypothesis.B)
    scales = [P for P in config.scales if P >= 2]
    sums = SumsReport()
    with stage('sums'):
        sums.plans = [dissect(field, system, P, strict=False) for P in scales]
        for alpha in config.alpha_points:
            for P in scales:
                result = classify(field, system, alpha, P, B, config.e_exponent, box, config.search_budget)
                grid = {e: classify(field, system, alpha, P, B, e, box, config.search_budget, result.S).label
                        for e in E_GRID}
                sums.samples.append(ArcSample(tuple(alpha), result, grid))
        if scales:
            try:
                sums.circle = circle_identity_check(field, system, box, scales[0],
                                                    budget=config.enumeration_budget)
            except BudgetExceededError as e:
                logger.warning('Skipping the circle identity: %s', e)
            try:
                sums.minor, sums.minor_decreasing = minor_arc_sweep(field, system, box, scales,
                                                                    config.minor_arc_grid, config.enumeration_budget)
            except BudgetExceededError as e:
                logger.warning('Skipping the minor arc integrals: %s', e)
        if config.major_arc_beta is not None and scales:
            sums.major = major_arc_sweep(field, system, [field.zero] * system.T, config.major_arc_beta, scales, box,
                                         config.enumeration_budget, config.quadrature_nodes)
    report.sums = sums
    return sums


def run_verify(config: ExperimentConfig) -> AsymptoticReport:
    """The full pipeline: hypothesis, counts, singular series, singular integral and the comparison.

    Raises:
        StageError: a stage failed; ``stage`` names it and ``cause`` holds the original error.
    """
    instance = prepare(config)
    report = new_report(config, instance)
    hypothesis = run_check(config, instance, report)
    if not hypothesis.overall:
        logger.warning('The hypothesis fails; results are exploratory')
    run_counts(config, instance, report)
    run_series(config, instance, report)
    run_integral(config, instance, report)
    with stage('asymptotic'):
        for P, ratio in sorted(report.ratios.items()):
            logger.info('N(%s) / prediction = %.6f', P, ratio)
        logger.info('Fitted exponent %s against n(s - calD) = %d', report.fitted_exponent,
                    report.expected_exponent)
    return report
