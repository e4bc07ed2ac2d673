# ==========================================
# kyorbit — Worker Pool
# ==========================================

import logging
import os
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)

THREADS_ENV = "KYORBIT_THREADS"


def worker_count() -> int:
    """
    Worker cap from KYORBIT_THREADS, defaulting to the CPU count.
    """
    raw = os.environ.get(THREADS_ENV, "")
    if raw.strip():
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", THREADS_ENV, raw)
    return max(1, os.cpu_count() or 1)


def ordered_map(fun, items) -> list:
    """
    Applies `fun` to every item across the worker pool and returns results in
    input order, so table assembly stays deterministic.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fun(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fun, items))
