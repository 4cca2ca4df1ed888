"""Sparse frequency-domain model fitting for a single extrapolation window.

A window is an M x N cutout around one lost block.  The signal model is a
weighted sum of 2-D DFT basis functions; basis functions are picked one per
iteration by largest weighted projection and their coefficients accumulated
with a fixed step size.  Samples are weighted by reliability: known original
samples decay isotropically with distance from the window centre, previously
reconstructed samples get the same decay scaled down, and lost samples carry
zero weight.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .grid import AREA_A, AREA_R, Window

from . import _kernel_py

_BACKENDS = {"python": _kernel_py}
try:  # compiled core is optional; the pure path is always available
    from . import _kernel

    _BACKENDS["compiled"] = _kernel
except ImportError:  # pragma: no cover - depends on build environment
    pass

_active = "python"
if "compiled" in _BACKENDS and not os.environ.get("FSEFILL_PURE"):
    _active = "compiled"


def get_backend() -> str:
    """Name of the kernel currently in use: 'compiled' or 'python'."""
    return _active


def set_backend(name: str) -> None:
    """Switch the model-fitting kernel. Raises ValueError if unavailable."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(
            f"backend {name!r} not available (have: {sorted(_BACKENDS)})"
        )
    _active = name


class DegenerateWindowError(ValueError):
    """Raised when a window has no positively weighted samples to fit."""


@dataclass(frozen=True)
class FseParams:
    """Tuning knobs for model generation.

    d: border width in samples around the lost block.
    rho: isotropic weight decay per unit distance from the window centre.
    delta: extra down-scaling applied to reconstructed samples.
    gamma: fraction of each projection added to the model per iteration.
    iterations: number of basis-selection iterations.
    block_size: side length of the square block grid.
    """

    d: int = 16
    rho: float = 0.8
    delta: float = 0.2
    gamma: float = 0.5
    iterations: int = 200
    block_size: int = 16

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if not 0.0 < self.rho < 1.0:
            raise ValueError("rho must lie in (0, 1)")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must lie in [0, 1]")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")
        if self.iterations < 0:
            raise ValueError("iterations must be >= 0")
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")


@dataclass
class Model:
    """Fitted window model.

    coeffs maps (k1, k2) basis indices to complex expansion coefficients
    (conjugate-symmetric, so the synthesized signal is real).  synthesized
    is the model evaluated over the full window; energies[i] is the weighted
    residual energy after i iterations (energies[0] is the initial energy).
    """

    coeffs: dict[tuple[int, int], complex]
    synthesized: np.ndarray
    energies: np.ndarray
    picks: np.ndarray = field(repr=False, default=None)


def weight_plane(shape: tuple[int, int], classes: np.ndarray, params: FseParams) -> np.ndarray:
    """Reliability weights for every sample of a window.

    Distance is measured from the geometric centre ((M-1)/2, (N-1)/2) of the
    window, including for windows clipped at the image boundary.
    """
    m, n = shape
    dm = np.arange(m, dtype=np.float64) - (m - 1) / 2.0
    dn = np.arange(n, dtype=np.float64) - (n - 1) / 2.0
    dist = np.sqrt(dm[:, None] ** 2 + dn[None, :] ** 2)
    decay = params.rho**dist
    w = np.zeros(shape, dtype=np.float64)
    w[classes == AREA_A] = decay[classes == AREA_A]
    w[classes == AREA_R] = params.delta * decay[classes == AREA_R]
    return w


def weight(m: int, n: int, shape: tuple[int, int], cls: int, params: FseParams) -> float:
    """Weight of the single sample at (m, n); cls is its area class."""
    mm, nn = shape
    dist = np.sqrt((m - (mm - 1) / 2.0) ** 2 + (n - (nn - 1) / 2.0) ** 2)
    if cls == AREA_A:
        return float(params.rho**dist)
    if cls == AREA_R:
        return float(params.delta * params.rho**dist)
    return 0.0


def dft_basis(shape: tuple[int, int], k: tuple[int, int]) -> np.ndarray:
    """Unit-magnitude 2-D DFT basis function exp(+j2pi(k1 m/M + k2 n/N))."""
    m, n = shape
    k1, k2 = k
    row = np.exp(2j * np.pi * k1 * np.arange(m) / m)
    col = np.exp(2j * np.pi * k2 * np.arange(n) / n)
    return np.outer(row, col)


def generate_model(win: Window, params: FseParams) -> Model:
    """Fit a sparse model to one window and synthesize it.

    Raises DegenerateWindowError when no sample has positive weight (the
    window contains nothing to extrapolate from).
    """
    values = np.ascontiguousarray(win.values, dtype=np.float64)
    weights = weight_plane(values.shape, win.cls, params)
    if not (weights > 0.0).any():
        raise DegenerateWindowError("window has no usable samples")

    kernel = _BACKENDS[_active]
    coeff, picks, energies, _ = kernel.run_fse(
        values, weights, params.iterations, params.gamma
    )

    m, n = values.shape
    synthesized = (np.fft.ifft2(coeff) * (m * n)).real

    coeffs: dict[tuple[int, int], complex] = {}
    for a, b in picks:
        a = int(a)
        b = int(b)
        coeffs[(a, b)] = complex(coeff[a, b])
        pa, pb = (m - a) % m, (n - b) % n
        coeffs[(pa, pb)] = complex(coeff[pa, pb])

    return Model(coeffs=coeffs, synthesized=synthesized, energies=energies, picks=picks)


def extrapolate_block(win: Window, params: FseParams) -> np.ndarray:
    """Model values over the window's lost block, row-major, as a 2-D array."""
    model = generate_model(win, params)
    r0, r1, c0, c1 = win.block_rect
    return model.synthesized[r0:r1, c0:c1].copy()
