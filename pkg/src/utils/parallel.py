"""
Worker Pool.
Deterministic fan-out of independent work items over joblib.
"""

from collections.abc import Callable, Sequence
from typing import Any

from joblib import Parallel, delayed
from tqdm import tqdm


def chunked(items: Sequence[Any], n_chunks: int) -> list[list[Any]]:
    """Splits `items` into contiguous chunks, preserving order."""
    n_chunks = max(1, min(n_chunks, len(items)))
    size, extra = divmod(len(items), n_chunks)
    chunks, start = [], 0
    for k in range(n_chunks):
        stop = start + size + (1 if k < extra else 0)
        chunks.append(list(items[start:stop]))
        start = stop
    return [c for c in chunks if c]


def run_parallel(
    func: Callable[[Any], Any],
    items: Sequence[Any],
    threads: int = 1,
    desc: str | None = None,
    progress: bool = False,
) -> list[Any]:
    """
    Applies `func` to every item and returns results in input order.

    Args:
        func: Pure function of one work item (must be picklable for threads > 1).
        items: Work items.
        threads: Worker processes; 1 runs inline.
        desc: Progress-bar label.
        progress: Show a tqdm bar on stderr.
    """
    if threads <= 1:
        return [func(item) for item in tqdm(items, desc=desc, disable=not progress)]

    results = Parallel(n_jobs=threads)(
        delayed(func)(item) for item in tqdm(items, desc=desc, disable=not progress)
    )
    return list(results)
