"""Deterministic parallel map over chunks of immutable work items.

Results are identical to the serial path for any worker count: chunks are
formed deterministically, mapped by a module-level function, and concatenated
in submission order.  Fork workers are used so the mapped function only needs
to be picklable by reference.
"""

from __future__ import annotations

import multiprocessing


def parallel_map_chunked(func, items, workers=1, chunk_size=256):
    """Apply ``func`` (list of items -> list of results) chunk by chunk.

    ``func`` must be a module-level function.  The concatenated result list
    is independent of ``workers``.
    """
    items = list(items)
    chunks = [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]
    if workers <= 1 or len(chunks) <= 1:
        out = []
        for chunk in chunks:
            out.extend(func(chunk))
        return out
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=min(workers, len(chunks))) as pool:
        mapped = pool.map(func, chunks)
    out = []
    for part in mapped:
        out.extend(part)
    return out
