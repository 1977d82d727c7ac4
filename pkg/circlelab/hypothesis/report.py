"""Exact evaluation of the main hypothesis, the Birch-Skinner condition and the corollary bounds."""
import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Any

from ..polys import PolySystem
from .errors import StandingAssumptionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorollaryBounds:
    """Integers of the simplified sufficient condition s > B_max + s0.

    Attributes:
        u (Dict[int, int]): u_d for 1 <= d <= D + 1.
        s0_by_degree (Dict[int, int]): s0(d) for d in Delta and 0.
        s0 (int): Maximum of s0(d).
        checks (Dict[str, bool]): The displayed inequalities between s0, T, the degrees and 2-powers.
        sufficient (bool): Whether s > B_max + s0, when B was supplied.
    """
    u: Dict[int, int]
    s0_by_degree: Dict[int, int]
    s0: int
    checks: Dict[str, bool]
    sufficient: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'u': {str(d): v for d, v in self.u.items()},
            's0_by_degree': {str(d): v for d, v in self.s0_by_degree.items()},
            's0': self.s0,
            'checks': dict(self.checks),
            'sufficient': self.sufficient,
        }


@dataclass(frozen=True)
class HypothesisReport:
    """Verdict of the main hypothesis for a system and singular locus dimensions.

    Attributes:
        s (int): Number of variables.
        degree_profile (Tuple[int, ...]): (t_1, ..., t_D).
        B (Dict[int, int]): B_d for 1 <= d <= D, with B_d = 0 for degrees that do not occur.
        s_vals (Dict[int, Fraction]): s_d for 1 <= d <= D + 1.
        lhs (Dict[int, Fraction]): Left side of the hypothesis for every d in Delta and 0.
        satisfied (Dict[int, bool]): lhs(d) < 1.
        overall (bool): Conjunction over d.
        margin (Fraction): 1 - max lhs.
        birch_skinner (bool): The single-degree condition, None unless exactly one degree occurs.
        conservative_overall (bool): The verdict with every B_d = -1 replaced by 0.
        s0_data (CorollaryBounds): Simplified bounds.
        confidence (Dict[int, str]): Where each B_d came from.
    """
    s: int
    degree_profile: Tuple[int, ...]
    B: Dict[int, int]
    s_vals: Dict[int, Fraction]
    lhs: Dict[int, Fraction]
    satisfied: Dict[int, bool]
    overall: bool
    margin: Fraction
    birch_skinner: Optional[bool]
    conservative_overall: bool
    s0_data: CorollaryBounds
    confidence: Dict[int, str] = dataclass_field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            's': self.s,
            'degree_profile': list(self.degree_profile),
            'B': {str(d): b for d, b in self.B.items()},
            'confidence': {str(d): c for d, c in self.confidence.items()},
            's_vals': {str(d): str(v) for d, v in self.s_vals.items()},
            'lhs': {str(d): str(v) for d, v in self.lhs.items()},
            'satisfied': {str(d): v for d, v in self.satisfied.items()},
            'overall': self.overall,
            'margin': str(self.margin),
            'birch_skinner': self.birch_skinner,
            'conservative_overall': self.conservative_overall,
            's0': self.s0_data.to_dict(),
        }


def s_values(system: PolySystem, B: Mapping[int, int]) -> Dict[int, Fraction]:
    """s_d = sum over j >= d of 2^{j-1} (j-1) t_j / (s - B_j), with s_{D+1} = 0."""
    D, s = system.D, system.s
    values = {D + 1: Fraction(0)}
    for d in range(D, 0, -1):
        t = system.t(d)
        term = Fraction(2 ** (d - 1) * (d - 1) * t, s - B[d]) if t else Fraction(0)
        values[d] = values[d + 1] + term
    return values


def hypothesis_lhs(system: PolySystem, B: Mapping[int, int]) -> Dict[int, Fraction]:
    """Left side of the main hypothesis for d in Delta and d = 0."""
    D, s = system.D, system.s
    sv = s_values(system, B)
    lhs = {}
    for d in (0,) + system.delta:
        calD = system.calD(d) if d else 0
        head = calD * (Fraction(2 ** (d - 1), s - B[d]) + sv[d + 1]) if d else Fraction(0)
        tail = sum((sv[j] * system.t(j) for j in range(d + 1, D + 1)), Fraction(0))
        lhs[d] = head + sv[d + 1] + tail
    return lhs


def check_main_hypothesis(system: PolySystem, B: Mapping[int, int],
                          confidence: Optional[Mapping[int, str]] = None) -> HypothesisReport:
    """Evaluate the main hypothesis exactly.

    Args:
        system (PolySystem): The system.
        B: B_d for every degree d that occurs; other degrees default to 0.
        confidence: Optional provenance tag per degree, copied to the report.

    Raises:
        StandingAssumptionError: some B_d >= s.
        ValueError: B lacks a degree of the system.
    """
    s, D = system.s, system.D
    full = {}
    for d in range(1, D + 1):
        if system.t(d):
            if d not in B:
                raise ValueError('B_{} is required'.format(d))
            full[d] = int(B[d])
        else:
            full[d] = 0
        if full[d] >= s:
            raise StandingAssumptionError(d, full[d], s)

    sv = s_values(system, full)
    lhs = hypothesis_lhs(system, full)
    satisfied = {d: value < 1 for d, value in lhs.items()}
    overall = all(satisfied.values())
    margin = 1 - max(lhs.values())

    birch_skinner = None
    if len(system.delta) == 1:
        t = system.t(D)
        birch_skinner = s - full[D] > t * (t + 1) * (D - 1) * 2 ** (D - 1)

    conservative = {d: max(b, 0) for d, b in full.items()}
    conservative_overall = all(v < 1 for v in hypothesis_lhs(system, conservative).values())

    bounds = corollary_bounds(system, {d: full[d] for d in system.delta})
    report = HypothesisReport(s, system.degree_profile, full, sv, lhs, satisfied, overall, margin, birch_skinner,
                              conservative_overall, bounds, dict(confidence or {}))
    logger.info('Main hypothesis %s with margin %s', 'holds' if overall else 'fails', margin)
    return report


def corollary_bounds(system: PolySystem, B: Optional[Mapping[int, int]] = None) -> CorollaryBounds:
    """u_d, s0(d), s0 and the inequalities relating s0 to the degree profile."""
    D, T = system.D, system.T
    calD = system.calD_total
    u = {D + 1: 0}
    for d in range(D, 0, -1):
        u[d] = u[d + 1] + 2 ** (d - 1) * (d - 1) * system.t(d)

    s0_by_degree = {}
    for d in (0,) + system.delta:
        calD_d = system.calD(d) if d else 0
        head = calD_d * (2 ** (d - 1) + u[d + 1]) if d else 0
        s0_by_degree[d] = head + u[d + 1] + sum(u[j] * system.t(j) for j in range(d + 1, D + 1))
    s0 = max(s0_by_degree.values())

    checks = {
        's0 + T - 1 <= calD^2 2^(D-1)': s0 + T - 1 <= calD ** 2 * 2 ** (D - 1),
        'calD^2 2^(D-1) <= T^2 D^2 2^(D-1)': calD ** 2 <= T ** 2 * D ** 2,
        's0 + T - 1 <= (calD - 1) 2^calD': s0 + T - 1 <= (calD - 1) * 2 ** calD,
    }
    sufficient = None
    if B:
        sufficient = system.s > max(B.values()) + s0
    return CorollaryBounds(u, s0_by_degree, s0, checks, sufficient)
