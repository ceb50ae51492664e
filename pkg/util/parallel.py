import logging
from concurrent.futures import ThreadPoolExecutor

from io_msn import get_thread_count

logger = logging.getLogger(__name__)


def parallel_map(func, items, workers=None):
    """
    Apply `func` to every item on a thread pool, keeping input order.

    Inputs are read-only network snapshots, so threads share them without
    copies. `workers` defaults to the MLSN_THREADS cap.
    """
    items = list(items)
    if workers is None:
        workers = get_thread_count()
    workers = max(1, min(workers, len(items)))

    if workers == 1:
        return [func(item) for item in items]

    logger.debug("Running %d tasks on %d threads", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
