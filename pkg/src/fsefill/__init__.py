"""Concealment of lost blocks in grayscale images by sparse
frequency-domain extrapolation, with a parallel wavefront block order."""

from .conceal import LINESCAN, OPTIMIZED, ConcealReport, conceal
from .evalkit import (
    BenchRow,
    PatternSpec,
    bench,
    gen_pattern,
    psnr,
    synthetic_image,
    write_csv,
)
from .fse import (
    DegenerateWindowError,
    FseParams,
    Model,
    dft_basis,
    extrapolate_block,
    generate_model,
    get_backend,
    set_backend,
    weight,
    weight_plane,
)
from .grid import (
    AREA_A,
    AREA_BI,
    AREA_BO,
    AREA_R,
    BlockGrid,
    Window,
    build_grid,
    classify_window,
    lost_per_block,
    neighbors,
)
from .image import (
    KNOWN,
    LOST,
    RECONSTRUCTED,
    PgmFormatError,
    load_mask_pgm,
    load_pgm,
    save_pgm,
)
from .schedule import (
    EmptyScheduleError,
    commit_batch,
    init_counts,
    render_batch_trace,
    schedule_all,
    select_batch,
)

__version__ = "0.1.0"

__all__ = [
    "AREA_A",
    "AREA_BI",
    "AREA_BO",
    "AREA_R",
    "BenchRow",
    "BlockGrid",
    "ConcealReport",
    "DegenerateWindowError",
    "EmptyScheduleError",
    "FseParams",
    "KNOWN",
    "LINESCAN",
    "LOST",
    "Model",
    "OPTIMIZED",
    "PatternSpec",
    "PgmFormatError",
    "RECONSTRUCTED",
    "Window",
    "bench",
    "build_grid",
    "classify_window",
    "commit_batch",
    "conceal",
    "dft_basis",
    "extrapolate_block",
    "gen_pattern",
    "generate_model",
    "get_backend",
    "init_counts",
    "load_mask_pgm",
    "load_pgm",
    "lost_per_block",
    "neighbors",
    "psnr",
    "render_batch_trace",
    "save_pgm",
    "schedule_all",
    "select_batch",
    "set_backend",
    "synthetic_image",
    "weight",
    "weight_plane",
    "write_csv",
]
