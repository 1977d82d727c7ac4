"""Value-multiplicity tables.

A :class:`ValueTable` records how often every integer value vector occurs when
a family of integer polynomials runs over a box (or over a residue system, with
values reduced modulo a lattice). Tables of independent variable groups are
combined by convolution, and zeros of a sum h(x_L) + k(x_R) are counted by
matching a left table against the negated right table.
"""
import logging
from typing import Optional, Sequence, Tuple, List

import numpy as np

from . import default_settings
from .errors import check_budget
from .nf.hnf import IntMatrix, reduce_rows
from .parallel import chunk_ranges, map_chunks, mixed_radix_points

logger = logging.getLogger(__name__)

# Dense 1-D convolution is used while the value span stays below this many cells
DENSE_SPAN_LIMIT = 1 << 24


class ValueTable(object):
    """Distinct value vectors with their multiplicities.

    Attributes:
        keys (np.ndarray): Shape (m, width), unique rows in lexicographic order.
        counts (np.ndarray): Shape (m,), positive int64 multiplicities.
    """

    def __init__(self, keys: np.ndarray, counts: np.ndarray):
        self.keys = keys
        self.counts = counts

    @property
    def width(self) -> int:
        return self.keys.shape[1]

    @property
    def size(self) -> int:
        return self.keys.shape[0]

    @property
    def total(self) -> int:
        return sum(int(c) for c in self.counts)

    def shifted(self, vector: Sequence[int]) -> 'ValueTable':
        if not any(vector):
            return self
        return ValueTable(self.keys + np.asarray(vector, dtype=self.keys.dtype), self.counts)

    def negated(self) -> 'ValueTable':
        return aggregate(-self.keys, self.counts)

    def __repr__(self):
        return 'ValueTable(width={}, size={}, total={})'.format(self.width, self.size, self.total)


def empty_table(width: int) -> ValueTable:
    return ValueTable(np.zeros((0, width), dtype=np.int64), np.zeros(0, dtype=np.int64))


def aggregate(keys: np.ndarray, counts: np.ndarray, modulus: Optional[IntMatrix] = None) -> ValueTable:
    """Merge equal rows of `keys`, adding their counts. Rows are reduced modulo `modulus` first."""
    width = keys.shape[1]
    if keys.shape[0] == 0:
        return empty_table(width)
    if modulus is not None:
        keys = reduce_rows(modulus, keys)
    if width == 0:
        return ValueTable(np.zeros((1, 0), dtype=np.int64), np.array([counts.sum()], dtype=np.int64))

    if keys.dtype == object:
        merged = {}
        for row, c in zip(map(tuple, keys), counts):
            merged[row] = merged.get(row, 0) + int(c)
        rows = sorted(merged)
        return ValueTable(np.array(rows, dtype=object).reshape(len(rows), width),
                          np.array([merged[r] for r in rows], dtype=np.int64))

    unique, inverse = np.unique(keys, axis=0, return_inverse=True)
    merged = np.zeros(unique.shape[0], dtype=np.int64)
    np.add.at(merged, inverse.reshape(-1), counts)
    return ValueTable(unique, merged)


def value_table(polys: Sequence, ranges: Sequence[Tuple[int, int]], modulus: Optional[IntMatrix] = None,
                chunk_size: int = None, budget: int = None, threads: int = None) -> ValueTable:
    """Tabulate the value vectors of integer polynomials over a box of integer points.

    Args:
        polys: :class:`~circlelab.polys.IntPolynomial` objects in ``len(ranges)`` variables.
        ranges: Closed integer range (low, high) per variable; low > high means empty.
        modulus (IntMatrix): Optional HNF lattice the value vectors are reduced by.
        chunk_size (int): Points per chunk.
        budget (int): Maximum number of points.

    Raises:
        BudgetExceededError: the box has more points than `budget`.
    """
    chunk_size = chunk_size or default_settings.CHUNK_SIZE
    budget = budget or default_settings.ENUMERATION_BUDGET
    width = len(polys)
    sizes = np.array([max(0, high - low + 1) for low, high in ranges], dtype=np.int64)
    lows = np.array([low for low, _ in ranges], dtype=np.int64)
    total = 1
    for size in sizes:
        total *= int(size)
    if total == 0:
        return empty_table(width)
    check_budget('value table', total, budget, 'use a smaller box or split the variables further')

    def tabulate(chunk) -> ValueTable:
        start, stop = chunk
        points = mixed_radix_points(lows, sizes, start, stop)
        if width == 0:
            return ValueTable(np.zeros((1, 0), dtype=np.int64), np.array([stop - start], dtype=np.int64))
        values = np.stack([np.asarray(p.evaluate_array(points)) for p in polys], axis=1)
        return aggregate(values, np.ones(stop - start, dtype=np.int64), modulus)

    parts = map_chunks(tabulate, chunk_ranges(total, chunk_size), threads)
    return merge(parts)


def merge(tables: Sequence[ValueTable]) -> ValueTable:
    """Union of tables over disjoint point sets."""
    tables = [t for t in tables if t.size]
    if not tables:
        return empty_table(0)
    if len(tables) == 1:
        return tables[0]
    keys = np.concatenate([t.keys for t in tables])
    counts = np.concatenate([t.counts for t in tables])
    return aggregate(keys, counts)


def convolve(a: ValueTable, b: ValueTable, modulus: Optional[IntMatrix] = None,
             block_rows: int = None) -> ValueTable:
    """The table of a + b over the product of the two point sets."""
    if a.width != b.width:
        raise ValueError('cannot convolve tables of width {} and {}'.format(a.width, b.width))
    if not a.size or not b.size:
        return empty_table(a.width)
    if a.width == 0:
        return ValueTable(np.zeros((1, 0), dtype=np.int64), np.array([a.total * b.total], dtype=np.int64))

    if a.width == 1 and a.keys.dtype != object and b.keys.dtype != object:
        span = int(a.keys[-1, 0] - a.keys[0, 0]) + int(b.keys[-1, 0] - b.keys[0, 0]) + 1
        if span <= DENSE_SPAN_LIMIT:
            return _convolve_dense(a, b, modulus)

    check_budget('table convolution', a.size * b.size, default_settings.TABLE_PAIR_BUDGET,
                 'lower the depth or the prime cutoff')
    block_rows = block_rows or default_settings.TABLE_BLOCK_ROWS
    step = max(1, block_rows // b.size)
    result = None
    for start in range(0, a.size, step):
        keys = a.keys[start:start + step, None, :] + b.keys[None, :, :]
        counts = a.counts[start:start + step, None] * b.counts[None, :]
        part = aggregate(keys.reshape(-1, a.width), counts.reshape(-1), modulus)
        result = part if result is None else merge([result, part])
    return result


def _convolve_dense(a: ValueTable, b: ValueTable, modulus: Optional[IntMatrix]) -> ValueTable:
    a0, b0 = int(a.keys[0, 0]), int(b.keys[0, 0])
    dense_a = np.zeros(int(a.keys[-1, 0]) - a0 + 1, dtype=np.int64)
    dense_b = np.zeros(int(b.keys[-1, 0]) - b0 + 1, dtype=np.int64)
    dense_a[a.keys[:, 0] - a0] = a.counts
    dense_b[b.keys[:, 0] - b0] = b.counts
    dense = np.convolve(dense_a, dense_b)
    keys = np.arange(a0 + b0, a0 + b0 + dense.shape[0], dtype=np.int64)
    nonzero = dense != 0
    keys, counts = keys[nonzero], dense[nonzero]
    if modulus is not None:
        return aggregate(keys[:, None], counts, modulus)
    return ValueTable(keys[:, None], counts)


def convolve_all(tables: Sequence[ValueTable], modulus: Optional[IntMatrix] = None) -> ValueTable:
    """Convolution of several tables, smallest first."""
    ordered = sorted(tables, key=lambda t: t.size)
    result = ordered[0]
    for table in ordered[1:]:
        result = convolve(result, table, modulus)
    return result


def zero_count(table: ValueTable) -> int:
    """Multiplicity of the all-zero value vector."""
    if table.width == 0:
        return table.total
    hits = np.all(table.keys == 0, axis=1)
    return sum(int(c) for c in table.counts[hits])


def match_count(left: ValueTable, right: ValueTable) -> int:
    """Number of pairs (l, r) with value(l) + value(r) = 0, as an exact Python integer."""
    if left.width != right.width:
        raise ValueError('cannot match tables of width {} and {}'.format(left.width, right.width))
    if not left.size or not right.size:
        return 0
    if left.width == 0:
        return left.total * right.total

    keys = np.concatenate([left.keys, -right.keys])
    unique, inverse = np.unique(keys, axis=0, return_inverse=True) if keys.dtype != object else \
        _unique_object(keys)
    inverse = np.asarray(inverse).reshape(-1)
    left_counts = np.zeros(len(unique), dtype=np.int64)
    right_counts = np.zeros(len(unique), dtype=np.int64)
    np.add.at(left_counts, inverse[:left.size], left.counts)
    np.add.at(right_counts, inverse[left.size:], right.counts)
    both = np.nonzero((left_counts > 0) & (right_counts > 0))[0]
    return sum(int(left_counts[k]) * int(right_counts[k]) for k in both)


def _unique_object(keys: np.ndarray) -> Tuple[List[tuple], np.ndarray]:
    index = {}
    inverse = np.empty(keys.shape[0], dtype=np.int64)
    for k, row in enumerate(map(tuple, keys)):
        inverse[k] = index.setdefault(row, len(index))
    return list(index), inverse
