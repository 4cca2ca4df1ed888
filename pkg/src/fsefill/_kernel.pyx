# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled model-generation kernel.

Same selection loop as _kernel_py.run_fse. Subtracting a damped basis pair
from the residual shifts the weight spectrum in frequency, so the projection
spectrum of the weighted residual can be updated in place and the full FFT is
needed only once per window. The loop itself runs without the GIL, which is
what lets block-level worker threads scale.
"""

import numpy as np


cdef void _iterate(
    double[:, ::1] g_re, double[:, ::1] g_im,
    double[:, ::1] wf_re, double[:, ::1] wf_im,
    double[:, ::1] res, double[:, ::1] w,
    double[:, ::1] c_re, double[:, ::1] c_im,
    double[::1] em_re, double[::1] em_im,
    double[::1] en_re, double[::1] en_im,
    int[:, ::1] picks, double[::1] energies,
    Py_ssize_t iterations, double gamma, double total_weight,
) noexcept nogil:
    cdef Py_ssize_t m = res.shape[0]
    cdef Py_ssize_t n = res.shape[1]
    cdef Py_ssize_t it, u, v, i, j, a, b, ia, ib, iu, iv, ju, jv
    cdef double best, e, p_re, p_im, t_re, t_im, wr, wi, ur, ui
    cdef double br, bi, mr, mi, term, energy
    cdef bint self_conj

    for it in range(iterations):
        # Row-major scan with strict > keeps the first maximum on ties.
        best = -1.0
        a = 0
        b = 0
        for u in range(m):
            for v in range(n):
                e = g_re[u, v] * g_re[u, v] + g_im[u, v] * g_im[u, v]
                if e > best:
                    best = e
                    a = u
                    b = v
        picks[it, 0] = <int> a
        picks[it, 1] = <int> b

        p_re = g_re[a, b] / total_weight
        p_im = g_im[a, b] / total_weight
        self_conj = (2 * a) % m == 0 and (2 * b) % n == 0

        if self_conj:
            c_re[a, b] += gamma * p_re
            for u in range(m):
                iu = u - a
                if iu < 0:
                    iu += m
                iv = -b
                if iv < 0:
                    iv += n
                for v in range(n):
                    g_re[u, v] -= gamma * p_re * wf_re[iu, iv]
                    g_im[u, v] -= gamma * p_re * wf_im[iu, iv]
                    iv += 1
                    if iv == n:
                        iv = 0
        else:
            c_re[a, b] += gamma * p_re
            c_im[a, b] += gamma * p_im
            iu = (m - a) % m
            iv = (n - b) % n
            c_re[iu, iv] += gamma * p_re
            c_im[iu, iv] -= gamma * p_im
            for u in range(m):
                iu = u - a
                if iu < 0:
                    iu += m
                ju = u + a
                if ju >= m:
                    ju -= m
                iv = -b
                if iv < 0:
                    iv += n
                jv = b
                for v in range(n):
                    wr = wf_re[iu, iv]
                    wi = wf_im[iu, iv]
                    ur = wf_re[ju, jv]
                    ui = wf_im[ju, jv]
                    t_re = p_re * (wr + ur) - p_im * (wi - ui)
                    t_im = p_re * (wi + ui) + p_im * (wr - ur)
                    g_re[u, v] -= gamma * t_re
                    g_im[u, v] -= gamma * t_im
                    iv += 1
                    if iv == n:
                        iv = 0
                    jv += 1
                    if jv == n:
                        jv = 0

        # Spatial residual update and energy tracking in one pass.
        energy = 0.0
        ia = 0
        for i in range(m):
            mr = em_re[ia]
            mi = em_im[ia]
            ia += a
            if ia >= m:
                ia -= m
            if self_conj:
                t_re = gamma * p_re * mr
                t_im = gamma * p_re * mi
            else:
                t_re = 2.0 * gamma * (p_re * mr - p_im * mi)
                t_im = 2.0 * gamma * (p_re * mi + p_im * mr)
            ib = 0
            for j in range(n):
                br = en_re[ib]
                bi = en_im[ib]
                ib += b
                if ib >= n:
                    ib -= n
                # real part of (scaled coefficient) * basis[i, j]
                term = t_re * br - t_im * bi
                res[i, j] -= term
                energy += w[i, j] * res[i, j] * res[i, j]
        energies[it + 1] = energy


def run_fse(values, weights, int iterations, double gamma):
    """Run the basis-selection loop on one window.

    Contract identical to fsefill._kernel_py.run_fse; see there.
    """
    cdef double[:, ::1] mv_g_re, mv_g_im, mv_wf_re, mv_wf_im
    cdef double[:, ::1] mv_res, mv_w, mv_c_re, mv_c_im
    cdef double[::1] mv_em_re, mv_em_im, mv_en_re, mv_en_im, mv_energies
    cdef int[:, ::1] mv_picks
    cdef double c_gamma = gamma
    cdef double c_weight
    cdef Py_ssize_t c_iters = iterations

    values = np.ascontiguousarray(values, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    m, n = values.shape
    total_weight = float(weights.sum())

    residual = np.where(weights > 0.0, values, 0.0)
    spectrum = np.fft.fft2(weights * residual)
    wspec = np.fft.fft2(weights)
    tw_m = np.exp(2j * np.pi * np.arange(m) / m)
    tw_n = np.exp(2j * np.pi * np.arange(n) / n)

    g_re = np.ascontiguousarray(spectrum.real)
    g_im = np.ascontiguousarray(spectrum.imag)
    wf_re = np.ascontiguousarray(wspec.real)
    wf_im = np.ascontiguousarray(wspec.imag)
    c_re = np.zeros((m, n), dtype=np.float64)
    c_im = np.zeros((m, n), dtype=np.float64)
    picks = np.empty((iterations, 2), dtype=np.int32)
    energies = np.empty(iterations + 1, dtype=np.float64)
    energies[0] = float((weights * residual * residual).sum())

    if iterations > 0:
        mv_g_re = g_re
        mv_g_im = g_im
        mv_wf_re = wf_re
        mv_wf_im = wf_im
        mv_res = residual
        mv_w = weights
        mv_c_re = c_re
        mv_c_im = c_im
        mv_em_re = np.ascontiguousarray(tw_m.real)
        mv_em_im = np.ascontiguousarray(tw_m.imag)
        mv_en_re = np.ascontiguousarray(tw_n.real)
        mv_en_im = np.ascontiguousarray(tw_n.imag)
        mv_picks = picks
        mv_energies = energies
        c_weight = total_weight
        with nogil:
            _iterate(
                mv_g_re, mv_g_im, mv_wf_re, mv_wf_im,
                mv_res, mv_w, mv_c_re, mv_c_im,
                mv_em_re, mv_em_im, mv_en_re, mv_en_im,
                mv_picks, mv_energies,
                c_iters, c_gamma, c_weight,
            )

    return c_re + 1j * c_im, picks, energies, residual
