"""Sparse polynomials keyed by exponent vectors.

:class:`Polynomial` carries field coefficients and is evaluated exactly with a
:class:`~circlelab.nf.NumberField`. :class:`IntPolynomial` carries integer
coefficients (the Weil restricted system) and evaluates vectorized over numpy
arrays of integer points.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Sequence, Tuple, Iterable, Optional

import numpy as np

from ..nf import NumberField, FieldElement

Exponent = Tuple[int, ...]

INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class Polynomial:
    """A polynomial in `nvars` variables with coefficients in K (omega-coordinates).

    Attributes:
        nvars (int): Number of variables.
        terms (Tuple): Sorted pairs (exponent, coefficient) with nonzero coefficients.
    """
    nvars: int
    terms: Tuple[Tuple[Exponent, FieldElement], ...]

    @classmethod
    def from_dict(cls, nvars: int, terms: Dict[Exponent, FieldElement]) -> 'Polynomial':
        return cls(nvars, tuple(sorted((e, c) for e, c in terms.items() if not c.is_zero())))

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> 'Polynomial':
        return Polynomial(self.nvars, tuple((e, c) for e, c in self.terms if sum(e) == d))

    @property
    def leading_form(self) -> 'Polynomial':
        return self.homogeneous_part(self.degree)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    @property
    def variables(self) -> FrozenSet[int]:
        return frozenset(v for e, _ in self.terms for v, k in enumerate(e) if k)

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, var: int) -> 'Polynomial':
        result = {}
        for e, c in self.terms:
            if e[var]:
                lowered = e[:var] + (e[var] - 1,) + e[var + 1:]
                result[lowered] = c.scale(e[var])
        return Polynomial.from_dict(self.nvars, result)

    def evaluate(self, field: NumberField, point: Sequence[FieldElement]) -> FieldElement:
        """Exact value at a point of K^s, reusing the powers of each coordinate."""
        powers = {}  # type: Dict[Tuple[int, int], FieldElement]

        def power(v: int, k: int) -> FieldElement:
            if k == 1:
                return point[v]
            if (v, k) not in powers:
                powers[(v, k)] = field.mul(power(v, k - 1), point[v])
            return powers[(v, k)]

        total = field.zero
        for e, c in self.terms:
            value = c
            for v, k in enumerate(e):
                if k:
                    value = field.mul(value, power(v, k))
            total = total + value
        return total


@dataclass(frozen=True)
class IntPolynomial:
    """A polynomial in `nvars` variables with integer coefficients."""
    nvars: int
    terms: Tuple[Tuple[Exponent, int], ...]

    @classmethod
    def from_dict(cls, nvars: int, terms: Dict[Exponent, int]) -> 'IntPolynomial':
        return cls(nvars, tuple(sorted((e, int(c)) for e, c in terms.items() if c)))

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> 'IntPolynomial':
        return IntPolynomial(self.nvars, tuple((e, c) for e, c in self.terms if sum(e) == d))

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    @property
    def variables(self) -> FrozenSet[int]:
        return frozenset(v for e, _ in self.terms for v, k in enumerate(e) if k)

    @property
    def constant(self) -> int:
        return sum(c for e, c in self.terms if not any(e))

    def is_zero(self) -> bool:
        return not self.terms

    def restrict(self, variables: Iterable[int], with_constant: bool = False) -> 'IntPolynomial':
        """Terms whose variables all lie in `variables`, re-indexed to that ordered subset."""
        variables = list(variables)
        allowed = set(variables)
        terms = {}
        for e, c in self.terms:
            used = {v for v, k in enumerate(e) if k}
            if not used and not with_constant:
                continue
            if used <= allowed:
                terms[tuple(e[v] for v in variables)] = c
        return IntPolynomial.from_dict(len(variables), terms)

    def evaluate(self, point: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms:
            value = c
            for v, k in enumerate(e):
                if k:
                    value *= int(point[v]) ** k
            total += value
        return total

    def magnitude_bound(self, max_abs: Sequence[float]) -> float:
        """Upper bound of |value| when |X_v| <= max_abs[v]."""
        bound = 0.0
        for e, c in self.terms:
            term = float(abs(c))
            for v, k in enumerate(e):
                if k:
                    term *= float(max_abs[v]) ** k
            bound += term
        return bound

    def evaluate_array(self, points: np.ndarray, exact: Optional[bool] = None) -> np.ndarray:
        """Values at the rows of an integer array of shape (m, nvars).

        int64 arithmetic is used whenever the magnitude bound allows it, otherwise
        Python integers in an object array.
        """
        m = points.shape[0]
        if exact is None:
            max_abs = np.abs(points).max(axis=0) if m else np.zeros(self.nvars)
            exact = self.magnitude_bound(max_abs) >= INT64_SAFE
        dtype = object if exact else np.int64
        data = points.astype(dtype) if exact else points
        total = np.zeros(m, dtype=dtype)
        cache = {}
        for e, c in self.terms:
            value = np.full(m, c, dtype=dtype)
            for v, k in enumerate(e):
                if k:
                    if (v, k) not in cache:
                        cache[(v, k)] = data[:, v] ** k
                    value = value * cache[(v, k)]
            total = total + value
        return total

    def evaluate_float(self, points: np.ndarray) -> np.ndarray:
        """Values at real points, shape (m, nvars) float64."""
        total = np.zeros(points.shape[0])
        for e, c in self.terms:
            value = np.full(points.shape[0], float(c))
            for v, k in enumerate(e):
                if k:
                    value = value * points[:, v] ** k
            total = total + value
        return total
