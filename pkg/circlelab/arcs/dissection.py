"""Major and minor arcs.

The major arc around gamma in (R cap K)^T with N(a_gamma) <= P^varpi is

    M_gamma = {alpha : |alpha_{d,i} - gamma_{d,i}| <= P^{-d + varpi} for all d, i},

distances taken coordinatewise modulo n, with varpi = 1 / (4 + (n + 1) T).
"""
import itertools
import logging
import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..nf import NumberField, FieldElement, IdealLattice, ResidueMode, residue_system, enumerate_ideals, \
    denominator_ideal
from ..polys import PolySystem
from .errors import ArcOverlapError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArcCenter:
    gamma: Tuple[FieldElement, ...]
    ideal: IdealLattice

    @property
    def norm(self) -> int:
        return self.ideal.norm

    @property
    def coords(self) -> Tuple[Fraction, ...]:
        return tuple(c for g in self.gamma for c in g.coords)


@dataclass
class DissectionPlan:
    """Centers and radii of the major arcs at one scale.

    Attributes:
        P: The scale.
        varpi (Fraction): 1 / (4 + (n + 1) T).
        norm_bound (int): Largest admissible N(a_gamma), the integer part of P^varpi.
        radii (Dict[int, float]): P^{-d + varpi} per degree.
        flat_radii (Tuple[float, ...]): Radius of every flat alpha coordinate.
        centers (List[ArcCenter]): Centers with their exact denominator ideals.
        raw_count (int): Sum of N(a)^T over the enumerated ideals, every residue tuple counted.
        arc_volume (float): Sum of the major arc volumes, each a box of side min(1, 2 r) per
            coordinate. Without capping this is exactly 2^{nT} reference_volume; it equals the
            volume of their union only when the arcs are disjoint.
        reference_volume (float): P^{-n calD + nT varpi} times the number of centers.
        disjoint (bool): Whether no two major arcs intersect.
        overlap (tuple): The first intersecting pair of centers, if any.
    """
    P: Any
    varpi: Fraction
    norm_bound: int
    radii: Dict[int, float]
    flat_radii: Tuple[float, ...]
    centers: List[ArcCenter]
    raw_count: int
    arc_volume: float
    reference_volume: float
    disjoint: bool
    overlap: Optional[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]] = None
    _matrix: np.ndarray = dataclass_field(default=None, repr=False)

    def __post_init__(self):
        self._matrix = np.array([[float(c) for c in center.coords] for center in self.centers], dtype=float)

    def locate(self, alpha: Sequence[float]) -> Optional[ArcCenter]:
        """The first center whose major arc contains alpha, or None on the minor arcs."""
        if not self.centers:
            return None
        radii = np.asarray(self.flat_radii)
        distance = _circular(self._matrix - np.asarray(alpha, dtype=float))
        inside = np.all(distance <= radii, axis=1)
        hits = np.nonzero(inside)[0]
        return self.centers[int(hits[0])] if hits.size else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'P': float(self.P),
            'varpi': str(self.varpi),
            'norm_bound': self.norm_bound,
            'radii': {str(d): r for d, r in self.radii.items()},
            'centers': [{'gamma': [str(c) for c in center.coords], 'norm': center.norm} for center in self.centers],
            'raw_count': self.raw_count,
            'arc_volume': self.arc_volume,
            'reference_volume': self.reference_volume,
            'disjoint': self.disjoint,
            'overlap': [[str(c) for c in side] for side in self.overlap] if self.overlap else None,
        }


def varpi(field: NumberField, system: PolySystem) -> Fraction:
    return Fraction(1, 4 + (field.n + 1) * system.T)


def _circular(differences: np.ndarray) -> np.ndarray:
    return np.abs(np.mod(differences + 0.5, 1.0) - 0.5)


def dissect(field: NumberField, system: PolySystem, P, strict: bool = True) -> DissectionPlan:
    """Enumerate the arc centers at scale P and check that their major arcs are disjoint.

    Args:
        strict (bool): Raise on the first intersecting pair instead of recording it.

    Raises:
        PreconditionError: P < 2.
        ArcOverlapError: two major arcs intersect and `strict` is set.
    """
    if P < 2:
        raise PreconditionError('the dissection needs P >= 2, got {}'.format(P))
    n, T = field.n, system.T
    w = varpi(field, system)
    bound = int(math.floor(float(P) ** float(w) * (1 + 1e-12)))
    radii = {d: float(P) ** (float(w) - d) for d in system.delta}
    flat_radii = tuple(radii[d] for d, _, _ in system.entries for _ in range(n))

    centers = []
    raw = 0
    for a in enumerate_ideals(field, bound):
        raw += a.norm ** T
        residues = residue_system(field, a, ResidueMode.Fractional)
        for gamma in itertools.product(residues, repeat=T):
            if denominator_ideal(field, gamma).hnf_basis == a.hnf_basis:
                centers.append(ArcCenter(tuple(gamma), a))
    logger.info('Dissection at P=%s: varpi=%s, %d centers over ideals of norm <= %d', P, w, len(centers), bound)

    cell = 1.0
    for r in flat_radii:
        cell *= min(1.0, 2 * r)
    arc_volume = cell * len(centers)
    reference = float(P) ** (-n * system.calD_total + n * T * float(w)) * len(centers)

    plan = DissectionPlan(P, w, bound, radii, flat_radii, centers, raw, arc_volume, reference, True)
    overlap = _first_overlap(plan)
    if overlap is not None:
        plan.disjoint = False
        plan.overlap = (overlap[0].coords, overlap[1].coords)
        if strict:
            raise ArcOverlapError(plan.overlap[0], plan.overlap[1], P)
        logger.warning('Major arcs around %s and %s intersect at P=%s', plan.overlap[0], plan.overlap[1], P)
    return plan


def _first_overlap(plan: DissectionPlan) -> Optional[Tuple[ArcCenter, ArcCenter]]:
    radii = 2 * np.asarray(plan.flat_radii)
    matrix = plan._matrix
    for i in range(len(plan.centers) - 1):
        distance = _circular(matrix[i + 1:] - matrix[i])
        hits = np.nonzero(np.all(distance <= radii, axis=1))[0]
        if hits.size:
            return plan.centers[i], plan.centers[i + 1 + int(hits[0])]
    return None
