import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, List, Union

from .errors import BoxError

Real = Union[int, float, Fraction]


@dataclass(frozen=True)
class BoxRegion:
    """An axis aligned box inside [-1, 1]^{ns}, one interval per integer coordinate.

    Attributes:
        bounds (Tuple[Tuple[Fraction, Fraction], ...]): Interval pairs (a, b) with a <= b.
    """
    bounds: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        bounds = tuple((Fraction(a), Fraction(b)) for a, b in self.bounds)
        for a, b in bounds:
            if a > b:
                raise BoxError('interval [{}, {}] is empty'.format(a, b))
            if a < -1 or b > 1:
                raise BoxError('interval [{}, {}] leaves [-1, 1]'.format(a, b))
        object.__setattr__(self, 'bounds', bounds)

    @classmethod
    def cube(cls, dimension: int, low: Real = -1, high: Real = 1) -> 'BoxRegion':
        return cls(tuple((low, high) for _ in range(dimension)))

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @property
    def volume(self) -> Fraction:
        v = Fraction(1)
        for a, b in self.bounds:
            v *= b - a
        return v

    @property
    def is_symmetric(self) -> bool:
        return all(a == -b for a, b in self.bounds)

    def integer_ranges(self, P: Real) -> List[Tuple[int, int]]:
        """Closed integer ranges ceil(aP) <= X <= floor(bP); an empty range has low > high."""
        P = Fraction(P)
        return [(math.ceil(a * P), math.floor(b * P)) for a, b in self.bounds]

    def point_count(self, P: Real) -> int:
        total = 1
        for low, high in self.integer_ranges(P):
            total *= max(0, high - low + 1)
        return total

    def restrict(self, axes: Sequence[int]) -> 'BoxRegion':
        return BoxRegion(tuple(self.bounds[a] for a in axes))

    def lows(self) -> Tuple[Fraction, ...]:
        return tuple(a for a, _ in self.bounds)

    def widths(self) -> Tuple[Fraction, ...]:
        return tuple(b - a for a, b in self.bounds)
