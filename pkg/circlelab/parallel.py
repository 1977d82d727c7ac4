"""Deterministic chunked execution.

Chunks are dispatched to a thread pool but their results are always consumed
in submission order, so reductions over the returned list do not depend on the
number of threads.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Tuple, TypeVar

import numpy as np

from . import default_settings

logger = logging.getLogger(__name__)

R = TypeVar('R')

Chunk = Tuple[int, int]
"""Chunk: A half open range [start, stop) of a lexicographic enumeration."""

_threads = default_settings.THREADS


def set_threads(threads: int) -> None:
    """Set the global worker count used by :func:`map_chunks`."""
    global _threads
    if threads < 1:
        raise ValueError('thread count must be positive, got {}'.format(threads))
    _threads = threads


def get_threads() -> int:
    return _threads


def chunk_ranges(total: int, chunk_size: int) -> List[Chunk]:
    """Split ``range(total)`` into consecutive chunks of at most `chunk_size` items."""
    if chunk_size < 1:
        raise ValueError('chunk size must be positive')
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def map_chunks(fn: Callable[[Chunk], R], chunks: Iterable[Chunk], threads: int = None) -> List[R]:
    """Apply `fn` to every chunk and return the results in chunk order."""
    chunks = list(chunks)
    threads = threads or _threads
    if threads == 1 or len(chunks) < 2:
        return [fn(chunk) for chunk in chunks]

    logger.debug('Dispatching %d chunks to %d threads', len(chunks), threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def mixed_radix_points(lows: np.ndarray, sizes: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Decode lexicographic indices [start, stop) of a box into integer points.

    The last axis varies fastest.

    Args:
        lows (np.ndarray): Lowest coordinate per axis.
        sizes (np.ndarray): Number of integers per axis.
        start (int): First index.
        stop (int): One past the last index.

    Returns:
        Array of shape (stop - start, len(sizes)) with dtype int64.
    """
    index = np.arange(start, stop, dtype=np.int64)
    points = np.empty((stop - start, len(sizes)), dtype=np.int64)
    for axis in range(len(sizes) - 1, -1, -1):
        index, digit = np.divmod(index, sizes[axis])
        points[:, axis] = digit + lows[axis]
    return points
