"""Local densities at prime ideals.

For an integral ideal a the partial factor

    sum over gamma with a_gamma | a of Sigma(gamma) / N(a_gamma)^s

is computed either from the character sums (every gamma in n a^-1 / n) or by
orthogonality from rho(a), the number of x in (n / a n)^s whose values lie in
the trace dual of n a^-1. Both give the same rational.
"""
import itertools
import logging
from fractions import Fraction
from typing import NamedTuple, Optional, Union

import numpy as np

from .. import default_settings
from ..errors import check_budget
from ..nf import NumberField, IdealLattice, PrimeIdeal, ResidueMode, residue_system, fractional_lattice, \
    ideal_power, ideal_to_omega
from ..nf.hnf import IntMatrix, kernel_lattice, reduce_rows
from ..parallel import chunk_ranges, mixed_radix_points
from ..polys import PolySystem, weil_restrict, variable_components
from ..tables import value_table, convolve_all, aggregate, zero_count
from .enum import DensityMethod
from .sigma import phase_counts, exact_integer_sum, residue_ranges

logger = logging.getLogger(__name__)


class LocalFactor(NamedTuple):
    value: Fraction
    depth: int
    method: DensityMethod


def dual_lattice(field: NumberField, a: IdealLattice) -> IntMatrix:
    """Lattice of the vectors (Tr(omega_k y))_k of y in the trace dual of n a^-1.

    y lies in the dual iff its vector v satisfies H v = 0 mod N(a), with n a^-1 = H / N(a).
    """
    H, N = fractional_lattice(field, a)
    transposed = [[H[r][k] for r in range(field.n)] for k in range(field.n)]
    return kernel_lattice(transposed, N, field.n)


def _block_diagonal(block: IntMatrix, copies: int) -> IntMatrix:
    n = len(block)
    size = n * copies
    rows = []
    for c in range(copies):
        for row in block:
            full = [0] * size
            full[c * n:(c + 1) * n] = row
            rows.append(tuple(full))
    return tuple(rows)


def rho(field: NumberField, system: PolySystem, a: IdealLattice, budget: int = None) -> int:
    """rho(a): solutions in (n / a n)^s of G(x) in the trace dual of n a^-1."""
    weil = weil_restrict(field, system)
    lattice = _block_diagonal(dual_lattice(field, a), system.T)
    ranges = residue_ranges(field, a, system.s)
    budget = budget or default_settings.RESIDUE_BUDGET

    tables = []
    for component in variable_components(weil.star_polys, weil.nvars):
        polys = [p.restrict(component) for p in weil.star_polys]
        tables.append(value_table(polys, [ranges[v] for v in component], modulus=lattice, budget=budget))
    table = convolve_all(tables, lattice)
    constants = np.array([p.constant for p in weil.star_polys], dtype=np.int64)
    table = aggregate(table.keys + constants, table.counts, lattice)
    return zero_count(table)


def _character_partial(field: NumberField, system: PolySystem, a: IdealLattice, budget: int) -> Fraction:
    """sum over gamma in (n a^-1 / n)^T of the character sum over (n / a n)^s, divided by N(a)^s."""
    N = a.norm
    centers = residue_system(field, a, ResidueMode.Fractional)
    total = np.zeros(N, dtype=object)
    for gamma in itertools.product(centers, repeat=system.T):
        counts = phase_counts(field, system, gamma, modulus=N, ideal=a, budget=budget).counts
        total += np.array(counts, dtype=object)
    return Fraction(exact_integer_sum([int(c) for c in total], N), N ** system.s)


def character_cost(system: PolySystem, a: IdealLattice) -> int:
    return a.norm ** (system.T + system.s)


def partial_factor(field: NumberField, system: PolySystem, a: IdealLattice,
                   method: Union[DensityMethod, str] = DensityMethod.Auto, budget: int = None) -> LocalFactor:
    """The sum over gamma with a_gamma | a of Sigma(gamma) / N(a_gamma)^s."""
    method = DensityMethod(method)
    budget = budget or default_settings.RESIDUE_BUDGET
    if method == DensityMethod.Auto:
        method = DensityMethod.Character if character_cost(system, a) <= budget else DensityMethod.Counting
    if method == DensityMethod.Character:
        check_budget('character sums', character_cost(system, a), budget, 'use the counting method')
        value = _character_partial(field, system, a, budget)
    else:
        value = Fraction(rho(field, system, a, budget), a.norm ** (system.s - system.T))
    return LocalFactor(value, 0, method)


def local_density(field: NumberField, system: PolySystem, prime: Union[PrimeIdeal, IdealLattice], j: int,
                  method: Union[DensityMethod, str] = DensityMethod.Auto, budget: int = None) -> LocalFactor:
    """Depth-j partial Euler factor at a prime ideal.

    Raises:
        BudgetExceededError: the chosen method exceeds the residue budget.
    """
    ideal = prime.ideal if isinstance(prime, PrimeIdeal) else prime
    if j == 0:
        return LocalFactor(Fraction(1), 0, DensityMethod(method))
    factor = partial_factor(field, system, ideal_power(field, ideal, j), method, budget)
    return LocalFactor(factor.value, j, factor.method)


def primitive_solution_exists(field: NumberField, system: PolySystem, prime: Union[PrimeIdeal, IdealLattice],
                              j: int, budget: int = None, chunk_size: int = None) -> Optional[bool]:
    """Whether some x in (n / p^j n)^s outside (p n)^s solves the system modulo p^j.

    Returns None when the residue box exceeds the budget.
    """
    ideal = prime.ideal if isinstance(prime, PrimeIdeal) else prime
    budget = budget or default_settings.RESIDUE_BUDGET
    chunk_size = chunk_size or default_settings.CHUNK_SIZE
    a = ideal_power(field, ideal, j)
    weil = weil_restrict(field, system)
    lattice = _block_diagonal(dual_lattice(field, a), system.T)
    ranges = residue_ranges(field, a, system.s)
    total = 1
    for low, high in ranges:
        total *= high - low + 1
    if total > budget:
        return None

    p_lattice = ideal_to_omega(field, ideal)
    n = field.n
    lows = np.array([low for low, _ in ranges], dtype=np.int64)
    sizes = np.array([high - low + 1 for low, high in ranges], dtype=np.int64)

    for start, stop in chunk_ranges(total, chunk_size):
        points = mixed_radix_points(lows, sizes, start, stop)
        values = np.stack([np.asarray(p.evaluate_array(points)).astype(np.int64) for p in weil.star_polys], axis=1)
        solved = np.all(reduce_rows(lattice, values) == 0, axis=1)
        if not solved.any():
            continue
        inside = np.ones(stop - start, dtype=bool)
        for v in range(system.s):
            block = points[:, v * n:(v + 1) * n]
            inside &= np.all(reduce_rows(p_lattice, block) == 0, axis=1)
        if np.any(solved & ~inside):
            return True
    return False


def prime_valuation(field: NumberField, ideal: IdealLattice, a: IdealLattice) -> int:
    """Largest k with a contained in ideal^k."""
    k = 0
    power = ideal
    while all(power.contains(row) for row in a.hnf_basis):
        k += 1
        power = ideal_power(field, ideal, k + 1)
    return k
