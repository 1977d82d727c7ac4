from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from ..nf import NumberField
from ..polys import PolySystem, BoxRegion
from .enum import Engine
from .errors import InvalidJobError


@dataclass(frozen=True)
class CountJob:
    """One evaluation of N(P).

    Attributes:
        field (NumberField): The field K.
        system (PolySystem): The system G_{d,i}.
        box (BoxRegion): The box B, one interval per integer coordinate.
        P (Fraction): Scale, at least 1.
        engine (Engine): Counting engine.
        split (Tuple[int, ...]): Left K-variables (1-based) of a meet-in-the-middle split.
    """
    field: NumberField
    system: PolySystem
    box: BoxRegion
    P: Union[int, float, Fraction]
    engine: Engine = Engine.Direct
    split: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'engine', Engine(self.engine))
        if self.P < 1:
            raise InvalidJobError('scale P must be at least 1, got {}'.format(self.P))
        if self.box.dimension != self.field.n * self.system.s:
            raise InvalidJobError('box has {} intervals, expected n*s = {}'.format(
                self.box.dimension, self.field.n * self.system.s))
        if self.split is not None:
            split = tuple(sorted(set(int(v) for v in self.split)))
            if any(v < 1 or v > self.system.s for v in split):
                raise InvalidJobError('split variables must lie in 1..{}'.format(self.system.s))
            object.__setattr__(self, 'split', split)
