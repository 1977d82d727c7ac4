"""Variable components of a polynomial family.

Two variables are connected when they occur in a common monomial of some
polynomial. Sums of products over boxes factor over the connected components.
"""
from typing import Iterable, List, Sequence, Tuple


def variable_components(polys: Iterable, nvars: int) -> List[Tuple[int, ...]]:
    """Connected components of the monomial-variable incidence graph.

    Works for any polynomial type whose ``terms`` are (exponent, coefficient) pairs.
    Variables that occur nowhere form singleton components. Components are
    ordered by their smallest variable.
    """
    parent = list(range(nvars))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for poly in polys:
        for exponent, _ in poly.terms:
            used = [v for v, k in enumerate(exponent) if k]
            for v in used[1:]:
                a, b = find(used[0]), find(v)
                if a != b:
                    parent[max(a, b)] = min(a, b)

    groups = {}  # type: dict
    for v in range(nvars):
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def offending_monomial(polys: Sequence, left: Sequence[int]):
    """First (polynomial index, exponent) whose variables meet both sides of a split, else None."""
    left = set(left)
    for k, poly in enumerate(polys):
        for exponent, _ in poly.terms:
            used = {v for v, e in enumerate(exponent) if e}
            if used & left and used - left:
                return k, exponent
    return None
