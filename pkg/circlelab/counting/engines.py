"""Exact counting engines for N(P).

Both engines work on the Weil restricted system, so a point x of n^s with
coordinates X in Z^{ns} is a zero of every G_{d,i} iff it is a zero of every
G*_{d,i,j}.
"""
import logging
import math
import time
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .. import default_settings
from ..errors import check_budget
from ..parallel import chunk_ranges, map_chunks, mixed_radix_points
from ..polys import WeilSystem, BoxRegion, weil_restrict, variable_components, offending_monomial, \
    integer_variables
from ..signals import count_completed
from ..tables import ValueTable, value_table, convolve_all, match_count
from .enum import Engine
from .errors import NonSeparableSystemError
from .job import CountJob

logger = logging.getLogger(__name__)


class CountResult(NamedTuple):
    P: object
    count: int
    engine: str
    wall_time_ms: float


class ComponentTable(NamedTuple):
    variables: Tuple[int, ...]
    table: ValueTable


def count_points(job: CountJob, budget: int = None, chunk_size: int = None, threads: int = None) -> CountResult:
    """Count N(P) with the engine requested by the job and announce the result."""
    budget = budget or default_settings.ENUMERATION_BUDGET
    engine = job.engine
    if engine == Engine.Auto:
        points = job.box.point_count(job.P)
        engine = Engine.Direct if points <= min(budget, 10 ** 6) else Engine.Mitm

    started = time.perf_counter()
    if engine == Engine.Direct:
        count = count_direct(job, budget, chunk_size, threads)
    else:
        count = count_mitm(job, budget, chunk_size, threads)
    elapsed = (time.perf_counter() - started) * 1000.0

    logger.info('N(%s) = %d via %s in %.1f ms', job.P, count, engine.value, elapsed)
    count_completed.send(engine.value, P=job.P, count=count, engine=engine.value, wall_time_ms=elapsed)
    return CountResult(job.P, count, engine.value, elapsed)


def count_direct(job: CountJob, budget: int = None, chunk_size: int = None, threads: int = None) -> int:
    """N(P) by enumerating every integer point of P*B.

    Raises:
        BudgetExceededError: the box holds more than `budget` points.
    """
    budget = budget or default_settings.ENUMERATION_BUDGET
    chunk_size = chunk_size or default_settings.CHUNK_SIZE
    weil = weil_restrict(job.field, job.system)
    ranges = job.box.integer_ranges(job.P)
    total = job.box.point_count(job.P)
    if total == 0:
        return 0
    check_budget('count_direct', total, budget, 'use the mitm engine or lower P')

    lows = np.array([low for low, _ in ranges], dtype=np.int64)
    sizes = np.array([high - low + 1 for low, high in ranges], dtype=np.int64)
    polys = weil.star_polys

    def count_chunk(chunk) -> int:
        start, stop = chunk
        points = mixed_radix_points(lows, sizes, start, stop)
        alive = np.ones(stop - start, dtype=bool)
        for poly in polys:
            alive &= np.asarray(poly.evaluate_array(points) == 0, dtype=bool)
            if not alive.any():
                break
        return int(alive.sum())

    return sum(map_chunks(count_chunk, chunk_ranges(total, chunk_size), threads))


def box_component_tables(weil: WeilSystem, box: BoxRegion, P, variables: Optional[Sequence[int]] = None,
                         budget: int = None, chunk_size: int = None,
                         threads: int = None) -> Tuple[List[ComponentTable], Tuple[int, ...]]:
    """Value tables of every variable component of the Weil system over P*B.

    Args:
        variables: Restrict to these integer variables (a union of components).

    Returns:
        (tables, constants): one table per component, and the constant terms of the polynomials.
    """
    ranges = box.integer_ranges(P)
    components = variable_components(weil.star_polys, weil.nvars)
    if variables is not None:
        allowed = set(variables)
        components = [c for c in components if set(c) <= allowed]

    tables = []
    for component in components:
        polys = [p.restrict(component) for p in weil.star_polys]
        table = value_table(polys, [ranges[v] for v in component], budget=budget, chunk_size=chunk_size,
                            threads=threads)
        logger.debug('Component %s: %d distinct values', component, table.size)
        tables.append(ComponentTable(component, table))
    constants = tuple(p.constant for p in weil.star_polys)
    return tables, constants


def count_mitm(job: CountJob, budget: int = None, chunk_size: int = None, threads: int = None) -> int:
    """N(P) by matching value tables of the left and right variables.

    Raises:
        NonSeparableSystemError: a monomial mixes the two sides of the split.
    """
    weil = weil_restrict(job.field, job.system)
    n = job.field.n
    if job.box.point_count(job.P) == 0:
        return 0

    if job.split is not None:
        left = integer_variables(n, [v - 1 for v in job.split])
        offending = offending_monomial(weil.star_polys, left)
        if offending is not None:
            k, exponent = offending
            raise NonSeparableSystemError(weil.index[k], exponent)
    else:
        left = _balanced_split(weil, job.box, job.P)

    right = [v for v in range(weil.nvars) if v not in set(left)]
    tables, constants = box_component_tables(weil, job.box, job.P, budget=budget, chunk_size=chunk_size,
                                             threads=threads)
    left_set = set(left)
    left_tables = [t.table for t in tables if set(t.variables) <= left_set]
    right_tables = [t.table for t in tables if not set(t.variables) <= left_set]
    logger.debug('mitm split: %d left and %d right variables', len(left), len(right))

    width = len(weil.star_polys)
    left_table = _side(left_tables, width).shifted(constants)
    right_table = _side(right_tables, width)
    return match_count(left_table, right_table)


def _side(tables: List[ValueTable], width: int) -> ValueTable:
    if not tables:
        return ValueTable(np.zeros((1, width), dtype=np.int64), np.ones(1, dtype=np.int64))
    return convolve_all(tables)


def _balanced_split(weil: WeilSystem, box: BoxRegion, P) -> List[int]:
    """Assign whole components to the side with the smaller point count."""
    ranges = box.integer_ranges(P)
    components = variable_components(weil.star_polys, weil.nvars)
    weights = []
    for component in components:
        size = sum(math.log(max(1, ranges[v][1] - ranges[v][0] + 1)) for v in component)
        weights.append((size, component))
    weights.sort(key=lambda w: -w[0])
    left, right = [], []
    left_weight = right_weight = 0.0
    for size, component in weights:
        if left_weight <= right_weight:
            left.extend(component)
            left_weight += size
        else:
            right.extend(component)
            right_weight += size
    return sorted(left)
