"""Deterministic fan-out of independent work chunks over worker processes."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def split_range(n: int, parts: int) -> list[tuple[int, int]]:
    """Split ``range(n)`` into at most ``parts`` contiguous ``(lo, hi)`` pieces."""
    parts = max(1, min(parts, n))
    step, extra = divmod(n, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def run_chunks(fn: Callable[..., T], chunks: Sequence[tuple], workers: int = 1) -> list[T]:
    """Apply ``fn`` to every argument tuple; results keep the input order."""
    if workers <= 1 or len(chunks) <= 1:
        return [fn(*args) for args in chunks]
    with ProcessPoolExecutor(max_workers=min(workers, len(chunks))) as pool:
        futures = [pool.submit(fn, *args) for args in chunks]
        return [f.result() for f in futures]
