"""Evaluation helpers: loss patterns, distortion metric, benchmark runs.

Patterns are regular lattices so results are reproducible without any image
assets: "isolated" drops a lattice of squares, "consecutive" drops
full-length horizontal and vertical stripes, and "mixed" adds a second,
half-pitch-shifted square lattice on top of the isolated one. PSNR is
measured over the originally lost samples only -- everything else is
untouched by concealment and would just dilute the number.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace

import numpy as np

from .conceal import LINESCAN, OPTIMIZED, conceal
from .fse import FseParams
from .image import KNOWN, LOST

PATTERNS = ("isolated", "consecutive", "mixed")


@dataclass(frozen=True)
class PatternSpec:
    kind: str
    loss_size: int = 16
    pitch: int = 64

    def __post_init__(self):
        if self.kind not in PATTERNS:
            raise ValueError(f"unknown pattern {self.kind!r}")
        if self.loss_size < 1:
            raise ValueError("loss_size must be >= 1")
        if self.pitch <= self.loss_size:
            raise ValueError("pitch must exceed loss_size")


def _square_lattice(mask: np.ndarray, start: int, pitch: int, size: int) -> None:
    h, w = mask.shape
    for r in range(start, h, pitch):
        for c in range(start, w, pitch):
            mask[r : r + size, c : c + size] = LOST


def gen_pattern(shape: tuple[int, int], spec: PatternSpec) -> np.ndarray:
    """Loss mask (KNOWN/LOST, uint8) for the given lattice pattern."""
    h, w = shape
    mask = np.full(shape, KNOWN, dtype=np.uint8)
    base = (spec.pitch - spec.loss_size) // 2

    if spec.kind == "consecutive":
        for r in range(base, h, spec.pitch):
            mask[r : r + spec.loss_size, :] = LOST
        for c in range(base, w, spec.pitch):
            mask[:, c : c + spec.loss_size] = LOST
        return mask

    _square_lattice(mask, base, spec.pitch, spec.loss_size)
    if spec.kind == "mixed":
        _square_lattice(mask, base + spec.pitch // 2, spec.pitch, spec.loss_size)
    return mask


def psnr(original: np.ndarray, result: np.ndarray, mask: np.ndarray) -> float:
    """Peak SNR in dB over the samples marked lost in mask (peak 255).

    mask may be the pre-concealment mask (lost samples) or the
    post-concealment one (reconstructed samples); anything not KNOWN
    counts. Identical signals give +inf; an empty region is an error.
    """
    region = mask != KNOWN
    if not region.any():
        raise ValueError("mask selects no samples to compare")
    diff = original[region] - result[region]
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return float("inf")
    return 10.0 * np.log10(255.0**2 / mse)


@dataclass(frozen=True)
class BenchRow:
    order: str
    block_size: int
    threads: int
    psnr_db: float
    seconds: float
    speedup: float


def bench(
    image: np.ndarray,
    mask: np.ndarray,
    *,
    block_sizes: tuple[int, ...] = (16,),
    threads: tuple[int, ...] = (1,),
    orders: tuple[str, ...] = (LINESCAN, OPTIMIZED),
    params: FseParams | None = None,
    repeats: int = 1,
) -> list[BenchRow]:
    """Time and score concealment over a parameter sweep.

    Lost samples are zeroed before concealment so nothing of the original
    leaks into blocks that end up unconcealed. Each configuration is run
    `repeats` times and the fastest run is kept; speedup is measured
    against the same order and block size at one thread, so a threads=1
    run is always included. The linescan order is sequential by
    definition and only appears at one thread.
    """
    if params is None:
        params = FseParams()
    damaged = np.array(image, dtype=np.float64, copy=True)
    damaged[mask == LOST] = 0.0

    rows: list[BenchRow] = []
    for block_size in block_sizes:
        p = replace(params, block_size=block_size)
        for order in orders:
            if order == LINESCAN:
                thread_list = [1]
            else:
                thread_list = sorted(set(threads) | {1})
            base_seconds = None
            for t in thread_list:
                best = None
                result = None
                for _ in range(max(1, repeats)):
                    out, _, report = conceal(damaged, mask, p, order=order, threads=t)
                    if best is None or report.wall_time < best:
                        best = report.wall_time
                        result = out
                quality = psnr(image, result, mask)
                if t == 1:
                    base_seconds = best
                rows.append(
                    BenchRow(
                        order=order,
                        block_size=block_size,
                        threads=t,
                        psnr_db=quality,
                        seconds=best,
                        speedup=base_seconds / best,
                    )
                )
    return rows


CSV_HEADER = "order,block_size,threads,psnr_db,seconds,speedup"


def write_csv(rows: list[BenchRow], out: io.TextIOBase) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in rows:
        writer.writerow(
            [r.order, r.block_size, r.threads, f"{r.psnr_db:.6f}", f"{r.seconds:.6f}", f"{r.speedup:.3f}"]
        )


def synthetic_image(shape: tuple[int, int] = (512, 512)) -> np.ndarray:
    """Deterministic grayscale test scene mixing gradients, texture, edges.

    Closed-form, so it is bit-identical everywhere and needs no assets.
    """
    h, w = shape
    y, x = np.mgrid[0:h, 0:w].astype(np.float64)
    yc, xc = (h - 1) / 2.0, (w - 1) / 2.0

    img = 110.0 + 60.0 * (x / max(w - 1, 1)) - 30.0 * (y / max(h - 1, 1))
    img += 28.0 * np.sin(2 * np.pi * x / 41.0) * np.cos(2 * np.pi * y / 29.0)
    img += 18.0 * np.cos(2 * np.pi * (x + 2.0 * y) / 53.0)

    r = np.hypot(x - xc, y - yc)
    img += np.where(r < min(h, w) * 0.28, 34.0, 0.0)
    img -= np.where((x - y) % 97 < 13, 26.0, 0.0)

    return np.clip(img, 0.0, 255.0)
