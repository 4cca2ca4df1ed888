import numpy as np
import pytest

from fsefill.grid import (
    AREA_A,
    AREA_BI,
    AREA_BO,
    AREA_R,
    build_grid,
    classify_window,
    lost_per_block,
    neighbors,
)
from fsefill.image import KNOWN, LOST, RECONSTRUCTED


def test_build_grid_rounds_up():
    g = build_grid(33, 17, 16)
    assert (g.rows, g.cols) == (2, 3)
    assert g.n_blocks == 6


def test_block_rc_index_round_trip():
    g = build_grid(64, 48, 16)
    for b in range(g.n_blocks):
        r, c = g.block_rc(b)
        assert g.block_index(r, c) == b
    with pytest.raises(IndexError):
        g.block_rc(g.n_blocks)
    with pytest.raises(IndexError):
        g.block_rc(-1)


def test_block_bounds_clip_at_image_edge():
    g = build_grid(33, 17, 16)
    assert g.block_bounds(0) == (0, 16, 0, 16)
    # last column block is 1 sample wide, last row block 1 sample tall
    assert g.block_bounds(2) == (0, 16, 32, 33)
    assert g.block_bounds(5) == (16, 17, 32, 33)


def test_edges_touched():
    g = build_grid(48, 48, 16)  # 3x3 blocks
    assert g.edges_touched(g.block_index(0, 0)) == 2
    assert g.edges_touched(g.block_index(0, 1)) == 1
    assert g.edges_touched(g.block_index(1, 1)) == 0
    single = build_grid(8, 8, 16)
    assert single.edges_touched(0) == 4


def test_neighbors_counts_and_order():
    g = build_grid(48, 48, 16)
    assert neighbors(g, g.block_index(0, 0)) == [1, 3, 4]
    assert len(neighbors(g, g.block_index(0, 1))) == 5
    center = g.block_index(1, 1)
    assert neighbors(g, center) == [0, 1, 2, 3, 5, 6, 7, 8]


def test_neighbors_single_block_grid():
    assert neighbors(build_grid(4, 4, 16), 0) == []


def test_classify_window_clips_and_labels():
    g = build_grid(32, 32, 8)
    mask = np.full((32, 32), KNOWN, dtype=np.uint8)
    # block (1,1): samples 8..15 x 8..15 lost, plus a lost patch outside it
    mask[8:16, 8:16] = LOST
    mask[4:6, 10:12] = LOST
    mask[20:24, 4:8] = RECONSTRUCTED
    win = classify_window(g, mask, g.block_index(1, 1), d=16)

    assert win.origin == (0, 0)  # clipped at top-left
    assert win.shape == (32, 32)  # 8 + 16 + 8 clip on each side
    assert win.block_rect == (8, 16, 8, 16)
    cls = win.cls
    assert (cls[8:16, 8:16] == AREA_BI).all()
    assert (cls[4:6, 10:12] == AREA_BO).all()
    assert (cls[20:24, 4:8] == AREA_R).all()
    assert cls[0, 0] == AREA_A
    counts = {v: int((cls == v).sum()) for v in (AREA_A, AREA_BI, AREA_BO, AREA_R)}
    assert counts[AREA_BI] == 64 and counts[AREA_BO] == 4 and counts[AREA_R] == 16
    assert sum(counts.values()) == 32 * 32


def test_classify_window_interior_not_clipped():
    g = build_grid(64, 64, 8)
    mask = np.full((64, 64), KNOWN, dtype=np.uint8)
    win = classify_window(g, mask, g.block_index(3, 3), d=4)
    assert win.origin == (20, 20)
    assert win.shape == (16, 16)
    assert win.block_rect == (4, 12, 4, 12)
    assert (win.cls == AREA_A).all()


def test_classify_window_rejects_shape_mismatch():
    g = build_grid(32, 32, 8)
    with pytest.raises(ValueError):
        classify_window(g, np.zeros((16, 16), dtype=np.uint8), 0, 4)


def test_lost_per_block_matches_brute_force():
    rng = np.random.default_rng(3)
    mask = np.where(rng.uniform(size=(37, 53)) < 0.3, LOST, KNOWN).astype(np.uint8)
    g = build_grid(53, 37, 8)
    table = lost_per_block(g, mask)
    assert table.shape == (g.rows, g.cols)
    for b in range(g.n_blocks):
        r0, r1, c0, c1 = g.block_bounds(b)
        r, c = g.block_rc(b)
        assert table[r, c] == int((mask[r0:r1, c0:c1] == LOST).sum())
