"""Deterministic parallel map.

All engine values are immutable and exact, so results can be computed in
any process and recombined in input order: the output is independent of the
parallelism degree.  Degree <= 1 (or tiny workloads) runs sequentially.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def default_jobs() -> int:
    return os.cpu_count() or 1


def pmap(fn, items, jobs: int = 1) -> list:
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))
