"""Thread-pool helpers honouring the DYNCOMP_THREADS cap."""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "DYNCOMP_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def max_workers() -> int:
    """Number of worker threads to use.

    Reads ``DYNCOMP_THREADS``; falls back to the CPU count. Invalid values are
    ignored with a warning.
    """
    cpu = os.cpu_count() or 1
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or not raw.strip():
        return cpu
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV_VAR, raw)
        return cpu
    return max(1, value)


def map_ordered(func: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Apply ``func`` to every item, returning results in input order.

    Runs inline when only one worker is available, so single-threaded runs
    never touch the executor.
    """
    work = list(items)
    workers = max_workers() if workers is None else workers
    if workers <= 1 or len(work) <= 1:
        return [func(item) for item in work]
    with ThreadPoolExecutor(max_workers=min(workers, len(work))) as pool:
        return list(pool.map(func, work))
