"""Integer lattices in Hermite normal form.

All lattices are stored row-style: the rows of an upper triangular matrix with
positive diagonal and entries above the diagonal reduced into [0, d_k).
"""
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, List

import numpy as np
import sympy

IntMatrix = Tuple[Tuple[int, ...], ...]
RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


def hermite_normal_form(rows: Iterable[Sequence[int]], n: int) -> IntMatrix:
    """Compute the HNF of the full rank lattice spanned by `rows` in Z^n.

    Raises:
        ValueError: if the rows do not span a lattice of rank n.
    """
    pending = [[int(a) for a in row] for row in rows]
    pending = [row for row in pending if any(row)]
    basis = []  # type: List[List[int]]

    for col in range(n):
        active = [row for row in pending if row[col] != 0]
        rest = [row for row in pending if row[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda row: abs(row[col]))
            pivot = active[0]
            survivors = [pivot]
            for row in active[1:]:
                q = row[col] // pivot[col]
                row = [a - q * b for a, b in zip(row, pivot)]
                if row[col] != 0:
                    survivors.append(row)
                else:
                    rest.append(row)
            active = survivors

        if not active:
            raise ValueError('rows do not span a lattice of rank {}'.format(n))

        pivot = active[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        basis.append(pivot)
        pending = [row for row in rest if any(row)]

    for k in range(n):
        for i in range(k):
            q = basis[i][k] // basis[k][k]
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[k])]

    return tuple(tuple(row) for row in basis)


def kernel_lattice(matrix: Sequence[Sequence[int]], modulus: int, n: int) -> IntMatrix:
    """HNF of {b in Z^n : b . matrix = 0 mod modulus}.

    `matrix` has n rows and any number of columns.
    """
    k = len(matrix[0]) if matrix else 0
    if k == 0 or modulus == 1:
        return identity(n)

    rows = []
    for i in range(n):
        rows.append([int(a) for a in matrix[i]] + [1 if j == i else 0 for j in range(n)])
    for j in range(k):
        rows.append([modulus if c == j else 0 for c in range(k)] + [0] * n)

    hnf = hermite_normal_form(rows, k + n)
    return tuple(row[k:] for row in hnf[k:])


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def determinant(hnf: IntMatrix) -> int:
    det = 1
    for k, row in enumerate(hnf):
        det *= row[k]
    return det


def contains(hnf: IntMatrix, vector: Sequence) -> bool:
    """Whether `vector` (integer or rational) lies in the lattice."""
    v = [Fraction(a) for a in vector]
    for k, row in enumerate(hnf):
        c = v[k] / row[k]
        if c.denominator != 1:
            return False
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return not any(v)


def reduce_vector(hnf: IntMatrix, vector: Sequence) -> Tuple[Fraction, ...]:
    """Canonical representative of `vector` modulo the lattice, with 0 <= v_k < d_k."""
    v = [Fraction(a) for a in vector]
    for k, row in enumerate(hnf):
        c = v[k] // row[k]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return tuple(v)


def reduce_rows(hnf: IntMatrix, points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`reduce_vector` for an int64 array of shape (m, n)."""
    points = points.copy()
    basis = np.array(hnf, dtype=np.int64)
    for k in range(len(hnf)):
        c = np.floor_divide(points[:, k], basis[k, k])
        points -= c[:, None] * basis[k]
    return points


def rational_inverse(matrix: Sequence[Sequence]) -> RationalMatrix:
    inverse = sympy.Matrix([[sympy.Rational(Fraction(a).numerator, Fraction(a).denominator) for a in row]
                            for row in matrix]).inv()
    return tuple(tuple(_fraction(inverse[i, j]) for j in range(inverse.cols)) for i in range(inverse.rows))


def rational_determinant(matrix: Sequence[Sequence]) -> Fraction:
    if not matrix:
        return Fraction(1)
    m = sympy.Matrix([[sympy.Rational(Fraction(a).numerator, Fraction(a).denominator) for a in row]
                      for row in matrix])
    return _fraction(m.det())


def vec_mat(vector: Sequence, matrix: Sequence[Sequence]) -> Tuple[Fraction, ...]:
    """Row vector times matrix in exact arithmetic."""
    cols = len(matrix[0])
    return tuple(sum((Fraction(vector[i]) * matrix[i][j] for i in range(len(vector))), Fraction(0))
                 for j in range(cols))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> RationalMatrix:
    return tuple(vec_mat(row, b) for row in a)


def _fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))
