import itertools
import logging
import math
from typing import List

import numpy as np

from .. import default_settings
from ..errors import check_budget
from ..nf import NumberField
from ..parallel import chunk_ranges, map_chunks, mixed_radix_points
from ..polys import PolySystem, IntPolynomial, coordinate_polynomials, polar_eval_array

logger = logging.getLogger(__name__)


def count_singular_multilinear(field: NumberField, system: PolySystem, d: int, P, budget: int = None,
                               chunk_size: int = None, threads: int = None) -> int:
    """Count the tuples (x_1, ..., x_{d-1}) of n^s with house norm at most P on which the
    polar Jacobian of the degree-d forms has rank below t_d.

    Entry (i, j) of the polar Jacobian is F_{d,i}(x_1 | ... | x_{d-1} | e_j), the polar form of
    the partial derivative of F_{d,i} in x_j.

    Raises:
        ValueError: no polynomial has degree d.
        BudgetExceededError: too many tuples.
    """
    budget = budget or default_settings.ENUMERATION_BUDGET
    chunk_size = chunk_size or default_settings.CHUNK_SIZE
    forms = system.forms_of_degree(d)
    t = len(forms)
    if not t:
        raise ValueError('the system has no polynomial of degree {}'.format(d))

    n, s = field.n, system.s
    entries = _entry_polynomials(field, forms, s)

    radius = math.floor(P)
    slots = d - 1
    dimension = n * s * slots
    total = (2 * radius + 1) ** dimension if radius >= 0 else 0
    if total == 0:
        return 0
    check_budget('count_singular_multilinear', total, budget, 'lower P')

    lows = np.full(dimension, -radius, dtype=np.int64)
    sizes = np.full(dimension, 2 * radius + 1, dtype=np.int64)

    def count_chunk(chunk) -> int:
        start, stop = chunk
        m = stop - start
        points = mixed_radix_points(lows, sizes, start, stop) if dimension else np.zeros((1, 0), dtype=np.int64)
        blocks = [points[:, k * n * s:(k + 1) * n * s] for k in range(slots)]
        # values[i][j] is an (m, n) array of omega-coordinates
        values = [[np.stack([_polar_values(c, blocks, m) for c in entries[i][j]], axis=1).astype(np.int64)
                   for j in range(s)] for i in range(t)]
        return int(_rank_deficient(field, values, t, s, m).sum())

    chunks = chunk_ranges(total, chunk_size)
    count = sum(map_chunks(count_chunk, chunks, threads))
    logger.debug('M0(P=%s) for d=%d: %d of %d tuples', P, d, count, total)
    return count


def _entry_polynomials(field: NumberField, forms, s: int) -> List[List[List[IntPolynomial]]]:
    """Coordinate polynomials of every partial derivative, scaled to one common denominator."""
    raw = []
    denominator = 1
    for form in forms:
        row = []
        for j in range(s):
            polys, den = coordinate_polynomials(field, form.derivative(j))
            row.append((polys, den))
            denominator = denominator * den // math.gcd(denominator, den)
        raw.append(row)

    entries = []
    for row in raw:
        scaled_row = []
        for polys, den in row:
            factor = denominator // den
            scaled_row.append([IntPolynomial(p.nvars, tuple((e, c * factor) for e, c in p.terms)) for p in polys])
        entries.append(scaled_row)
    return entries


def _polar_values(poly: IntPolynomial, blocks, m: int) -> np.ndarray:
    if poly.is_zero():
        return np.zeros(m, dtype=np.int64)
    if not blocks:
        return np.full(m, poly.constant, dtype=np.int64)
    return np.asarray(polar_eval_array(poly, blocks))


def _rank_deficient(field: NumberField, values, t: int, s: int, m: int) -> np.ndarray:
    """True where every t x t minor of the (t, s) matrix over K vanishes."""
    if t > s:
        return np.ones(m, dtype=bool)
    deficient = np.ones(m, dtype=bool)
    for columns in itertools.combinations(range(s), t):
        det = np.zeros((m, field.n), dtype=np.int64)
        for perm in itertools.permutations(range(t)):
            term = values[0][columns[perm[0]]]
            for i in range(1, t):
                term = field.mul_arrays(term, values[i][columns[perm[i]]])
            det = det + _sign(perm) * term
        deficient &= np.all(det == 0, axis=1)
        if not deficient.any():
            break
    return deficient


def _sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign
