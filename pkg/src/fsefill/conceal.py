"""End-to-end concealment of the lost blocks of an image.

Two processing orders are provided. The linescan order walks blocks
row-major, strictly sequentially, and each window immediately sees the
blocks concealed before it. The optimized order runs the wavefront
schedule: within a batch every window is classified and its samples
snapshotted before any model is fitted, fits run in parallel (members of a
batch are never adjacent), and results are written back only after the
whole batch finishes -- so output is byte-identical for any thread count.

Windows with no usable samples (deep inside a large loss) are deferred and
retried in sequential row-major sweeps once everything else is done; each
sweep sees the previous sweep's results, so holes are peeled ring by ring.
Whatever still cannot be concealed is reported, never invented.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .fse import DegenerateWindowError, FseParams, extrapolate_block
from .grid import BlockGrid, Window, build_grid, classify_window, lost_per_block
from .image import LOST, RECONSTRUCTED
from .schedule import Batch, init_counts, schedule_all

LINESCAN = "linescan"
OPTIMIZED = "optimized"
ORDERS = (LINESCAN, OPTIMIZED)


@dataclass
class ConcealReport:
    order: str
    threads: int
    blocks_processed: int
    wall_time: float
    batches: list[Batch] = field(default_factory=list)
    unconcealed_blocks: list[int] = field(default_factory=list)


def _snapshot(grid: BlockGrid, image: np.ndarray, mask: np.ndarray, b: int,
              params: FseParams) -> Window:
    win = classify_window(grid, mask, b, params.d)
    r0, c0 = win.origin
    h, w = win.shape
    win.values = image[r0 : r0 + h, c0 : c0 + w].copy()
    return win


def _fit(win: Window, params: FseParams) -> np.ndarray | None:
    try:
        return extrapolate_block(win, params)
    except DegenerateWindowError:
        return None


def _write_block(grid: BlockGrid, image: np.ndarray, mask: np.ndarray, b: int,
                 block_values: np.ndarray) -> None:
    r0, r1, c0, c1 = grid.block_bounds(b)
    lost = mask[r0:r1, c0:c1] == LOST
    image[r0:r1, c0:c1][lost] = block_values[lost]
    mask[r0:r1, c0:c1][lost] = RECONSTRUCTED


def _retry_deferred(grid: BlockGrid, image: np.ndarray, mask: np.ndarray,
                    params: FseParams, deferred: list[int]) -> tuple[list[Batch], list[int]]:
    """Sequential row-major sweeps over blocks whose windows were all-lost.

    Each sweep reuses what earlier sweeps reconstructed, so at least one
    ring of a closed hole resolves per sweep; stop as soon as a sweep makes
    no progress.
    """
    batches: list[Batch] = []
    pending = sorted(deferred)
    for _ in range(max(grid.rows, grid.cols)):
        if not pending:
            break
        still: list[int] = []
        for b in pending:
            win = _snapshot(grid, image, mask, b, params)
            block = _fit(win, params)
            if block is None:
                still.append(b)
            else:
                _write_block(grid, image, mask, b, block)
                batches.append([b])
        if len(still) == len(pending):
            break
        pending = still
    return batches, pending


def conceal(
    image: np.ndarray,
    mask: np.ndarray,
    params: FseParams | None = None,
    order: str = OPTIMIZED,
    threads: int = 1,
) -> tuple[np.ndarray, np.ndarray, ConcealReport]:
    """Conceal every lost block of image according to mask.

    Returns (new image, new mask, report); inputs are not modified. mask
    uses the sample states from fsefill.image; concealed samples come back
    marked RECONSTRUCTED. order is "linescan" or "optimized"; the linescan
    order is defined as strictly sequential and rejects threads != 1.
    """
    if params is None:
        params = FseParams()
    if order not in ORDERS:
        raise ValueError(f"unknown order {order!r}")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if order == LINESCAN and threads != 1:
        raise ValueError("linescan order is sequential; threads must be 1")
    if mask.shape != image.shape:
        raise ValueError(f"mask shape {mask.shape} != image shape {image.shape}")

    image = np.array(image, dtype=np.float64, copy=True)
    mask = np.array(mask, dtype=np.uint8, copy=True)
    h, w = image.shape
    grid = build_grid(w, h, params.block_size)
    lossy = lost_per_block(grid, mask)

    start = time.perf_counter()
    batches: list[Batch] = []
    deferred: list[int] = []
    processed = 0

    if order == LINESCAN:
        for b in np.flatnonzero(lossy.reshape(-1) > 0):
            b = int(b)
            win = _snapshot(grid, image, mask, b, params)
            block = _fit(win, params)
            if block is None:
                deferred.append(b)
                continue
            _write_block(grid, image, mask, b, block)
            batches.append([b])
            processed += 1
    else:
        schedule = schedule_all(grid, init_counts(grid, lossy))
        pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
        try:
            for batch in schedule:
                wins = [_snapshot(grid, image, mask, b, params) for b in batch]
                if pool is None:
                    results = [_fit(win, params) for win in wins]
                else:
                    results = list(pool.map(_fit, wins, [params] * len(wins)))
                done: Batch = []
                for b, block in zip(batch, results):
                    if block is None:
                        deferred.append(b)
                        continue
                    _write_block(grid, image, mask, b, block)
                    done.append(b)
                    processed += 1
                if done:
                    batches.append(done)
        finally:
            if pool is not None:
                pool.shutdown()

    retry_batches, unconcealed = _retry_deferred(grid, image, mask, params, deferred)
    batches.extend(retry_batches)
    processed += sum(len(b) for b in retry_batches)
    wall = time.perf_counter() - start

    report = ConcealReport(
        order=order,
        threads=threads,
        blocks_processed=processed,
        wall_time=wall,
        batches=batches,
        unconcealed_blocks=unconcealed,
    )
    return image, mask, report
