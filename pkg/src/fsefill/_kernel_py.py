"""Pure-numpy fallback for the model-generation kernel.

Same contract as the compiled extension in _kernel.pyx: greedy selection of
DFT basis functions against a weighted residual, one conjugate pair per
iteration, coefficient updates damped by gamma. The per-iteration projections
onto every basis function are computed with one FFT of the weighted residual,
which equals the direct weighted sums up to rounding.
"""

import numpy as np


def run_fse(
    values: np.ndarray, weights: np.ndarray, iterations: int, gamma: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Run the basis-selection loop on one window.

    Args:
        values: (M, N) float64 window samples; entries with zero weight are
            ignored.
        weights: (M, N) float64 nonnegative weight plane, positive somewhere.
        iterations: number of selection steps; a conjugate pair counts as one.
        gamma: coefficient damping factor in (0, 1].

    Returns:
        (coeff, picks, energies, residual): complex128 (M, N) expansion
        coefficient grid, int32 (iterations, 2) selected indices, float64
        (iterations + 1,) weighted residual energies (index 0 = initial),
        and the float64 (M, N) final residual over the window.
    """
    m, n = values.shape
    total_weight = float(weights.sum())
    residual = np.where(weights > 0.0, values, 0.0)
    coeff = np.zeros((m, n), dtype=np.complex128)
    picks = np.empty((iterations, 2), dtype=np.int32)
    energies = np.empty(iterations + 1, dtype=np.float64)
    energies[0] = float((weights * residual * residual).sum())

    tw_m = np.exp(2j * np.pi * np.arange(m) / m)
    tw_n = np.exp(2j * np.pi * np.arange(n) / n)
    idx_m = np.arange(m)
    idx_n = np.arange(n)

    for it in range(iterations):
        spectrum = np.fft.fft2(weights * residual)
        energy = spectrum.real**2 + spectrum.imag**2
        # argmax returns the first maximum in row-major order, which is the
        # documented tie-break.
        a, b = divmod(int(np.argmax(energy)), n)
        picks[it, 0] = a
        picks[it, 1] = b
        p = spectrum[a, b] / total_weight

        basis = np.outer(tw_m[(a * idx_m) % m], tw_n[(b * idx_n) % n])
        self_conjugate = (2 * a) % m == 0 and (2 * b) % n == 0
        if self_conjugate:
            p_real = p.real
            coeff[a, b] += gamma * p_real
            residual -= gamma * p_real * basis.real
        else:
            coeff[a, b] += gamma * p
            coeff[(m - a) % m, (n - b) % n] += gamma * np.conj(p)
            residual -= 2.0 * gamma * (p * basis).real
        energies[it + 1] = float((weights * residual * residual).sum())

    return coeff, picks, energies, residual
