from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """``list(map(fn, items))``, optionally spread over ``jobs`` processes.

    Results always come back in input order, so output does not depend on ``jobs``.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def chunk_ranges(total: int, chunks: int) -> list[range]:
    """Split ``range(total)`` into at most ``chunks`` contiguous pieces."""
    chunks = max(1, min(chunks, total))
    bounds = [total * i // chunks for i in range(chunks + 1)]
    return [range(lo, hi) for lo, hi in zip(bounds, bounds[1:])]
