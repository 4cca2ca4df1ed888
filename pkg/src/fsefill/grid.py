"""Block partition of an image and per-window area classification.

Blocks are square (ragged at the right/bottom edge) and indexed by flat
row-major integers. The neighborhood is 8-connected: the margin (+3) and
corner (+5) bonuses used by the wavefront scheduler exactly top up the
missing neighbors of rim blocks to 8, which pins the connectivity choice.

Each extrapolation window covers one block plus a frame of d samples,
clipped at the image bounds. Every window sample falls in exactly one of
four areas: originally known support (A), losses inside the block (BI),
losses outside the block (BO), and previously reconstructed samples (R).
"""

from dataclasses import dataclass

import numpy as np

from .image import KNOWN, LOST, RECONSTRUCTED

AREA_A = np.uint8(0)
AREA_BI = np.uint8(1)
AREA_BO = np.uint8(2)
AREA_R = np.uint8(3)


@dataclass(frozen=True)
class BlockGrid:
    block_size: int
    rows: int
    cols: int
    image_h: int
    image_w: int

    @property
    def n_blocks(self) -> int:
        return self.rows * self.cols

    def block_rc(self, b: int) -> tuple[int, int]:
        if not 0 <= b < self.n_blocks:
            raise IndexError(f"block index {b} out of range 0..{self.n_blocks - 1}")
        return divmod(b, self.cols)

    def block_index(self, row: int, col: int) -> int:
        return row * self.cols + col

    def block_bounds(self, b: int) -> tuple[int, int, int, int]:
        """Image-space sample bounds (r0, r1, c0, c1) of block b, half-open."""
        row, col = self.block_rc(b)
        r0 = row * self.block_size
        c0 = col * self.block_size
        return r0, min(r0 + self.block_size, self.image_h), c0, min(
            c0 + self.block_size, self.image_w
        )

    def edges_touched(self, b: int) -> int:
        row, col = self.block_rc(b)
        return (
            int(row == 0)
            + int(row == self.rows - 1)
            + int(col == 0)
            + int(col == self.cols - 1)
        )


@dataclass
class Window:
    """Extrapolation area of one block: origin in image space, per-sample
    area classes, the block's sub-rectangle in window coordinates, and the
    sample values (filled in by the caller from its snapshot)."""

    origin: tuple[int, int]
    cls: np.ndarray
    block_rect: tuple[int, int, int, int]
    values: np.ndarray | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.cls.shape


def build_grid(image_w: int, image_h: int, block_size: int) -> BlockGrid:
    if image_w < 1 or image_h < 1:
        raise ValueError(f"image dimensions must be positive, got {image_w}x{image_h}")
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    cols = -(-image_w // block_size)
    rows = -(-image_h // block_size)
    return BlockGrid(block_size, rows, cols, image_h, image_w)


def neighbors(grid: BlockGrid, b: int) -> list[int]:
    """8-connected neighbors of block b that exist in the grid, row-major."""
    row, col = grid.block_rc(b)
    out = []
    for dr in (-1, 0, 1):
        r = row + dr
        if not 0 <= r < grid.rows:
            continue
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            c = col + dc
            if 0 <= c < grid.cols:
                out.append(grid.block_index(r, c))
    return out


def classify_window(grid: BlockGrid, mask: np.ndarray, b: int, d: int) -> Window:
    """Classify the window of block b against the given mask state.

    The window is the block dilated by d samples per side, clipped to the
    image. Pure in (grid, mask, b, d); the values plane is left unset.
    """
    if mask.shape != (grid.image_h, grid.image_w):
        raise ValueError(
            f"mask shape {mask.shape} does not match image "
            f"{(grid.image_h, grid.image_w)}"
        )
    r0, r1, c0, c1 = grid.block_bounds(b)
    wr0, wc0 = max(0, r0 - d), max(0, c0 - d)
    wr1, wc1 = min(grid.image_h, r1 + d), min(grid.image_w, c1 + d)
    sub = mask[wr0:wr1, wc0:wc1]

    cls = np.full(sub.shape, AREA_A, dtype=np.uint8)
    cls[sub == RECONSTRUCTED] = AREA_R
    lost = sub == LOST
    inside = np.zeros(sub.shape, dtype=bool)
    inside[r0 - wr0 : r1 - wr0, c0 - wc0 : c1 - wc0] = True
    cls[lost & inside] = AREA_BI
    cls[lost & ~inside] = AREA_BO
    return Window(
        origin=(wr0, wc0),
        cls=cls,
        block_rect=(r0 - wr0, r1 - wr0, c0 - wc0, c1 - wc0),
    )


def lost_per_block(grid: BlockGrid, mask: np.ndarray) -> np.ndarray:
    """Count of LOST samples per block, shape (rows, cols)."""
    lost = (mask == LOST).astype(np.int64)
    row_starts = np.arange(grid.rows) * grid.block_size
    col_starts = np.arange(grid.cols) * grid.block_size
    by_rows = np.add.reduceat(lost, row_starts, axis=0)
    return np.add.reduceat(by_rows, col_starts, axis=1)
