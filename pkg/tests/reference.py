"""Slow, obviously-correct reference implementations used as test oracles.

Everything here is written from the definitions: projections are direct
summations (dense DFT matrices, no FFT), the scheduler re-simulation uses
plain dicts over (row, col) pairs. Nothing is imported from the package's
own kernels, so agreement is meaningful.
"""

from __future__ import annotations

import numpy as np


def direct_spectrum(weights: np.ndarray, residual: np.ndarray) -> np.ndarray:
    """P[a, b] = sum_{m,n} w[m,n] r[m,n] exp(-j2pi(am/M + bn/N)) via dense
    DFT matrices."""
    m, n = residual.shape
    km = np.exp(-2j * np.pi * np.outer(np.arange(m), np.arange(m)) / m)
    kn = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
    return km @ (weights * residual) @ kn.T


def run_fse_reference(values, weights, iterations, gamma):
    """Direct-summation twin of fsefill's run_fse kernel contract."""
    m, n = values.shape
    total = float(weights.sum())
    residual = np.where(weights > 0.0, values, 0.0).astype(np.float64)
    coeff = np.zeros((m, n), dtype=np.complex128)
    picks = np.zeros((iterations, 2), dtype=np.int32)
    energies = [float((weights * residual * residual).sum())]

    grid_m = np.arange(m)[:, None]
    grid_n = np.arange(n)[None, :]
    for it in range(iterations):
        spectrum = direct_spectrum(weights, residual)
        a, b = divmod(int(np.argmax(spectrum.real**2 + spectrum.imag**2)), n)
        picks[it] = (a, b)
        p = spectrum[a, b] / total
        basis = np.exp(2j * np.pi * (a * grid_m / m + b * grid_n / n))
        if (2 * a) % m == 0 and (2 * b) % n == 0:
            coeff[a, b] += gamma * p.real
            residual = residual - gamma * p.real * basis.real
        else:
            coeff[a, b] += gamma * p
            coeff[(m - a) % m, (n - b) % n] += gamma * np.conj(p)
            residual = residual - 2.0 * gamma * (p * basis).real
        energies.append(float((weights * residual * residual).sum()))
    return coeff, picks, np.asarray(energies), residual


def synthesize_reference(coeff: np.ndarray) -> np.ndarray:
    """g[m, n] = sum_k c_k exp(+j2pi(k1 m/M + k2 n/N)), direct sums."""
    m, n = coeff.shape
    km = np.exp(2j * np.pi * np.outer(np.arange(m), np.arange(m)) / m)
    kn = np.exp(2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
    return (km @ coeff @ kn.T).real


def canonical_picks(picks, shape):
    """Fold each pick onto its lexicographically smaller conjugate twin.

    Conjugate partners carry equal spectral magnitude for a real residual,
    so which of the two gets reported is a floating-point coin toss; folding
    makes pick sequences comparable across implementations.
    """
    m, n = shape
    out = []
    for a, b in picks:
        a, b = int(a), int(b)
        out.append(min((a, b), ((m - a) % m, (n - b) % n)))
    return out


def schedule_reference(rows: int, cols: int, lossy: set[tuple[int, int]]):
    """Dict-based re-simulation of the wavefront batch order.

    Returns batches as lists of (row, col) pairs.
    """

    def nbs(r, c):
        return [
            (r + dr, c + dc)
            for dr in (-1, 0, 1)
            for dc in (-1, 0, 1)
            if (dr, dc) != (0, 0) and 0 <= r + dr < rows and 0 <= c + dc < cols
        ]

    counts: dict[tuple[int, int], int] = {}
    for r in range(rows):
        for c in range(cols):
            if (r, c) not in lossy:
                counts[(r, c)] = -1
                continue
            n = sum(1 for x in nbs(r, c) if x in lossy)
            edges = (r == 0) + (r == rows - 1) + (c == 0) + (c == cols - 1)
            if edges == 1:
                n += 3
            elif edges >= 2:
                n += 5
            counts[(r, c)] = n

    batches = []
    while any(v >= 0 for v in counts.values()):
        n_min = min(v for v in counts.values() if v >= 0)
        batch, taken = [], set()
        for r in range(rows):
            for c in range(cols):
                if counts[(r, c)] != n_min:
                    continue
                if any(x in taken for x in nbs(r, c)):
                    continue
                batch.append((r, c))
                taken.add((r, c))
        for r, c in batch:
            counts[(r, c)] = -1
            for x in nbs(r, c):
                counts[x] -= 1
        batches.append(batch)
    return batches
