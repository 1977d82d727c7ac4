"""Polar multilinear forms by inclusion-exclusion.

For a form F of degree d the polar form is

    F(x_1 | ... | x_d) = sum over S of (-1)^(d - |S|) F(sum_{i in S} x_i)

which is symmetric, multilinear and satisfies F(x | ... | x) = d! F(x).
"""
import itertools
from typing import Sequence, Union, Optional

import numpy as np

from ..nf import NumberField, FieldElement
from .errors import PolarArityError
from .polynomial import Polynomial, IntPolynomial


def polar_eval(form: Union[Polynomial, IntPolynomial], points: Sequence[Sequence],
               field: Optional[NumberField] = None):
    """Evaluate the polar form of a homogeneous `form` at d points.

    Args:
        form: A homogeneous form of degree d, with field coefficients (then `field`
            is required and the points are sequences of :class:`FieldElement`) or
            integer coefficients (points are integer sequences).
        points: Exactly d points.
        field (NumberField): Arithmetic for field coefficients.

    Raises:
        PolarArityError: the slot count differs from the degree.
        ValueError: the form is not homogeneous.
    """
    d = form.degree
    if not form.is_homogeneous:
        raise ValueError('polar forms need a homogeneous form')
    if len(points) != d:
        raise PolarArityError('form of degree {} takes {} slots, got {}'.format(d, d, len(points)))

    if isinstance(form, IntPolynomial):
        total = 0
        for size in range(1, d + 1):
            sign = -1 if (d - size) % 2 else 1
            for subset in itertools.combinations(range(d), size):
                z = [sum(int(points[i][v]) for i in subset) for v in range(form.nvars)]
                total += sign * form.evaluate(z)
        return total

    if field is None:
        raise ValueError('field coefficients need a NumberField')
    total = field.zero
    for size in range(1, d + 1):
        sign = -1 if (d - size) % 2 else 1
        for subset in itertools.combinations(range(d), size):
            z = [_sum(field, [points[i][v] for i in subset]) for v in range(form.nvars)]
            value = form.evaluate(field, z)
            total = total + (value if sign > 0 else -value)
    return total


def polar_eval_array(form: IntPolynomial, slots: Sequence[np.ndarray]) -> np.ndarray:
    """Vectorized integer polar form; every slot is an array of shape (m, nvars)."""
    k = len(slots)
    if k != form.degree:
        raise PolarArityError('form of degree {} takes {} slots, got {}'.format(form.degree, form.degree, k))

    total = None
    for size in range(1, k + 1):
        sign = -1 if (k - size) % 2 else 1
        for subset in itertools.combinations(range(k), size):
            z = slots[subset[0]]
            for i in subset[1:]:
                z = z + slots[i]
            value = form.evaluate_array(z)
            value = value if sign > 0 else -value
            total = value if total is None else total + value
    return total


def _sum(field: NumberField, values: Sequence) -> FieldElement:
    total = field.zero
    for v in values:
        total = total + (v if isinstance(v, FieldElement) else field.one.scale(v))
    return total
