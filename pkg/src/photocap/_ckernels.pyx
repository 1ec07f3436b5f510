# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled step loops for the discharge engines."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def single_run(long long n0, energies, double k0_scale):
    cdef const double[::1] e = np.ascontiguousarray(energies, dtype=np.float64)
    cdef Py_ssize_t size = e.shape[0] if n0 > 0 else 0
    out_before = np.empty(size, dtype=np.int64)
    out_after = np.empty(size, dtype=np.int64)
    out_emitted = np.empty(size, dtype=np.uint8)
    out_work = np.empty(size, dtype=np.int64)
    out_k0 = np.empty(size, dtype=np.float64)
    out_ke = np.empty(size, dtype=np.float64)
    out_cum = np.empty(size, dtype=np.int64)
    cdef long long[::1] before = out_before
    cdef long long[::1] after = out_after
    cdef unsigned char[::1] emitted = out_emitted
    cdef long long[::1] work = out_work
    cdef double[::1] k0 = out_k0
    cdef double[::1] ke = out_ke
    cdef long long[::1] cum = out_cum
    cdef long long n = n0
    cdef long long total = 0
    cdef long long w
    cdef double r
    cdef Py_ssize_t i = 0
    while i < size and n > 0:
        before[i] = n
        if e[i] >= 1.0:
            w = 2 * n - 1
            r = (e[i] - 1.0) * k0_scale
            n -= 1
            emitted[i] = 1
        else:
            w = 0
            r = 0.0
            emitted[i] = 0
        after[i] = n
        work[i] = w
        k0[i] = r
        ke[i] = <double>w + r
        total += w
        cum[i] = total
        i += 1
    return (out_before[:i], out_after[:i], out_emitted[:i].view(np.bool_), out_work[:i],
            out_k0[:i], out_ke[:i], out_cum[:i])


def twin_run(long long n1, long long n2):
    cdef Py_ssize_t size = (n1 - n2) // 2 if n1 - n2 >= 2 else 0
    out_before = np.empty(size, dtype=np.int64)
    out_work = np.empty(size, dtype=np.int64)
    out_cum = np.empty(size, dtype=np.int64)
    cdef long long[::1] before = out_before
    cdef long long[::1] work = out_work
    cdef long long[::1] cum = out_cum
    cdef long long total = 0
    cdef long long w
    cdef Py_ssize_t i = 0
    while i < size:
        w = 2 * (n1 - n2 - 1)
        if w <= 0:
            break
        before[i] = n1
        work[i] = w
        total += w
        cum[i] = total
        n1 -= 1
        n2 += 1
        i += 1
    return out_before[:i], out_work[:i], out_cum[:i]
