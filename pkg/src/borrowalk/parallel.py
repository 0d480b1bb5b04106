"""Optional worker-thread fan-out, capped by the BORROMEAN_THREADS variable."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    """Thread cap from BORROMEAN_THREADS; 0 or unset picks the machine width."""
    raw = os.environ.get("BORROMEAN_THREADS", "0").strip()
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"BORROMEAN_THREADS must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError("BORROMEAN_THREADS must be non-negative")
    if cap == 0:
        return os.cpu_count() or 1
    return cap


def ordered_map(fn, items) -> list:
    """Map preserving input order; fans out to worker threads when allowed.

    Results are collected in submission order, so output is identical to a
    sequential map regardless of the cap.
    """
    items = list(items)
    cap = worker_count()
    if cap <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(cap, len(items))) as pool:
        return list(pool.map(fn, items))
