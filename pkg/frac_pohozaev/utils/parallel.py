"""Deterministic parallel evaluation helpers.

Node evaluations may run on a thread pool, but results are always gathered in input
order and reduced with a fixed binary tree, so totals do not depend on the worker count.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from threading import Lock
from typing import TypeVar

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .config import resolve_thread_count

T = TypeVar("T")
R = TypeVar("R")

_POOL_LOCK = Lock()
_POOLS: dict[int, ThreadPoolExecutor] = {}

# Below this many items the pool overhead dominates.
_MIN_PARALLEL_ITEMS = 64


def _get_pool(workers: int) -> ThreadPoolExecutor:
    with _POOL_LOCK:
        pool = _POOLS.get(workers)
        if pool is None:
            pool = ThreadPoolExecutor(
                max_workers=workers, thread_name_prefix="frac-pohozaev-worker"
            )
            _POOLS[workers] = pool
        return pool


def parallel_map(
    func: Callable[[T], R],
    items: Sequence[T] | Iterable[T],
    *,
    workers: int | None = None,
) -> list[R]:
    """Apply ``func`` to every item, preserving input order.

    Args:
        func: Pure callable evaluated once per item.
        items: Items to evaluate.
        workers: Worker cap; defaults to ``FRACPOHO_THREADS``.

    Returns:
        Results in the same order as ``items``.
    """

    materialised = list(items)
    workers = workers if workers is not None else resolve_thread_count()
    if workers <= 1 or len(materialised) < _MIN_PARALLEL_ITEMS:
        return [func(item) for item in materialised]

    chunk = max(1, len(materialised) // (4 * workers))
    return list(_get_pool(workers).map(func, materialised, chunksize=chunk))


def pairwise_sum(values: ArrayLike) -> float:
    """Sum ``values`` with a fixed binary tree over the item index.

    Adjacent entries are added level by level (an odd tail is carried up unchanged),
    which bounds rounding growth by O(log n) and makes the result independent of
    how the entries were produced.
    """

    level: NDArray[np.float64] = np.asarray(values, dtype=np.float64).ravel()
    if level.size == 0:
        return 0.0
    while level.size > 1:
        if level.size % 2:
            carry = level[-1:]
            level = np.concatenate((level[:-1:2] + level[1::2], carry))
        else:
            level = level[0::2] + level[1::2]
    return float(level[0])


def shutdown_pools() -> None:
    """Shut down every worker pool (used by tests and at CLI exit)."""

    with _POOL_LOCK:
        for pool in _POOLS.values():
            pool.shutdown(wait=True)
        _POOLS.clear()
