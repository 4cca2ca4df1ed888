"""Wavefront ordering of lossy blocks by unconcealed-neighbor count.

Each block awaiting concealment carries a count N(b) of its 8-connected
neighbors that are lossy and not yet concealed; blocks on the image margin
get a fixed bonus standing in for the neighbors that fall outside the image
(+3 on one edge, +5 on two). Batches repeatedly take the pending blocks with
the smallest count, skipping any block adjacent to one already picked for the
same batch, so members of a batch never share window samples being written.
Counts of -1 (or below) mark blocks that are done or never needed work.
"""

from __future__ import annotations

import numpy as np

from .grid import BlockGrid, neighbors

Batch = list[int]

_MARGIN_BONUS = 3
_CORNER_BONUS = 5


class EmptyScheduleError(RuntimeError):
    """Raised when a batch is requested but no block is pending."""


def init_counts(grid: BlockGrid, lost_counts: np.ndarray) -> np.ndarray:
    """Initial neighbor counts, flat int32 over row-major block indices.

    lost_counts is the (rows, cols) per-block tally of lost samples; any
    nonzero entry marks a lossy block. Blocks without loss are set to -1.
    """
    lossy = np.asarray(lost_counts).reshape(grid.rows, grid.cols) > 0
    rows, cols = lossy.shape

    counts = np.zeros((rows, cols), dtype=np.int32)
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            dst_r = slice(max(dr, 0), rows + min(dr, 0))
            dst_c = slice(max(dc, 0), cols + min(dc, 0))
            src_r = slice(max(-dr, 0), rows + min(-dr, 0))
            src_c = slice(max(-dc, 0), cols + min(-dc, 0))
            counts[dst_r, dst_c] += lossy[src_r, src_c]

    r_idx = np.arange(rows)
    c_idx = np.arange(cols)
    edges = ((r_idx == 0).astype(np.int32) + (r_idx == rows - 1))[:, None] + (
        (c_idx == 0).astype(np.int32) + (c_idx == cols - 1)
    )[None, :]
    counts[edges == 1] += _MARGIN_BONUS
    counts[edges >= 2] += _CORNER_BONUS

    counts[~lossy] = -1
    return counts.reshape(-1)


def select_batch(grid: BlockGrid, counts: np.ndarray) -> Batch:
    """Greedy minimum-count batch, scanned row-major.

    A block joins the batch when its count equals the pending minimum and
    none of its neighbors was already taken. At least one block always
    qualifies, so every call shrinks the pending set once committed.
    """
    pending = counts >= 0
    if not pending.any():
        raise EmptyScheduleError("no blocks awaiting concealment")
    n_min = int(counts[pending].min())

    batch: Batch = []
    taken = np.zeros(grid.n_blocks, dtype=bool)
    for b in np.flatnonzero(pending):
        b = int(b)
        if counts[b] != n_min:
            continue
        if any(taken[nb] for nb in neighbors(grid, b)):
            continue
        batch.append(b)
        taken[b] = True
    return batch


def commit_batch(grid: BlockGrid, counts: np.ndarray, batch: Batch) -> None:
    """Mark batch members done and release their neighbors' counts in place.

    Committed blocks go to -1; counts of blocks that are already done may
    drift further below -1, which never affects later selection.
    """
    for b in batch:
        counts[b] = -1
        for nb in neighbors(grid, b):
            counts[nb] -= 1


def schedule_all(grid: BlockGrid, counts: np.ndarray) -> list[Batch]:
    """Full batch sequence from an initial count state (left unmodified)."""
    counts = np.array(counts, dtype=np.int32, copy=True)
    batches: list[Batch] = []
    while (counts >= 0).any():
        batch = select_batch(grid, counts)
        commit_batch(grid, counts, batch)
        batches.append(batch)
    return batches


def render_batch_trace(grid: BlockGrid, batches: list[Batch]) -> str:
    """Text grid of 1-based batch numbers per block; -1 for untouched blocks."""
    stamp = np.full(grid.n_blocks, -1, dtype=np.int64)
    for i, batch in enumerate(batches, start=1):
        for b in batch:
            stamp[b] = i
    return "\n".join(
        " ".join(str(v) for v in row) for row in stamp.reshape(grid.rows, grid.cols)
    )
