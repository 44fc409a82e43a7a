# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sphere/simplex kernels; same streams as ``_pykernels``, GIL released."""
import numpy as np

from libc.math cimport cos, log, sin, sqrt
from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

NAME = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL
cdef double TWO_PI = 6.283185307179586
cdef double INV53 = 1.0 / 9007199254740992.0


cdef inline double _uniform(uint64_t key, uint64_t counter) noexcept nogil:
    cdef uint64_t z = key + (counter + 1) * GOLDEN
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    z = z ^ (z >> 31)
    return <double>((z >> 11) + 1) * INV53


cdef inline void _sphere(uint64_t key, uint64_t idx, Py_ssize_t n,
                         double* re, double* im) noexcept nogil:
    cdef Py_ssize_t j
    cdef uint64_t c
    cdef double r, th, norm = 0.0
    for j in range(n):
        c = 2 * (idx * <uint64_t>n + <uint64_t>j)
        r = sqrt(-log(_uniform(key, c)))
        th = TWO_PI * _uniform(key, c + 1)
        re[j] = r * cos(th)
        im[j] = r * sin(th)
        norm += re[j] * re[j] + im[j] * im[j]
    norm = sqrt(norm)
    for j in range(n):
        re[j] /= norm
        im[j] /= norm


def sphere_block(Py_ssize_t n, uint64_t key, uint64_t start, Py_ssize_t count):
    out = np.empty((count, n), dtype=np.complex128)
    cdef double[:, ::1] o = out.view(np.float64)
    cdef double* re = <double*>malloc(n * sizeof(double))
    cdef double* im = <double*>malloc(n * sizeof(double))
    cdef Py_ssize_t s, j
    if re == NULL or im == NULL:
        free(re)
        free(im)
        raise MemoryError()
    with nogil:
        for s in range(count):
            _sphere(key, start + <uint64_t>s, n, re, im)
            for j in range(n):
                o[s, 2 * j] = re[j]
                o[s, 2 * j + 1] = im[j]
    free(re)
    free(im)
    return out


def quad_forms_block(mats, uint64_t key, uint64_t start, Py_ssize_t count):
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    cdef Py_ssize_t m = mats.shape[0]
    cdef Py_ssize_t n = mats.shape[1]
    cdef double[:, :, ::1] a = mats.view(np.float64)
    out = np.empty((count, m), dtype=np.complex128)
    cdef double[:, ::1] o = out.view(np.float64)
    cdef double* re = <double*>malloc(n * sizeof(double))
    cdef double* im = <double*>malloc(n * sizeof(double))
    cdef Py_ssize_t s, t, r, c
    cdef double yr, yi, qr, qi, ar, ai
    if re == NULL or im == NULL:
        free(re)
        free(im)
        raise MemoryError()
    with nogil:
        for s in range(count):
            _sphere(key, start + <uint64_t>s, n, re, im)
            for t in range(m):
                qr = 0.0
                qi = 0.0
                for r in range(n):
                    yr = 0.0
                    yi = 0.0
                    for c in range(n):
                        ar = a[t, r, 2 * c]
                        ai = a[t, r, 2 * c + 1]
                        yr += ar * re[c] - ai * im[c]
                        yi += ar * im[c] + ai * re[c]
                    # conj(xi_r) * y_r
                    qr += re[r] * yr + im[r] * yi
                    qi += re[r] * yi - im[r] * yr
                o[s, 2 * t] = qr
                o[s, 2 * t + 1] = qi
    free(re)
    free(im)
    return out


def simplex_block(Py_ssize_t n, uint64_t key, uint64_t start, Py_ssize_t count):
    out = np.empty((count, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t s, j
    cdef double tot
    cdef uint64_t idx
    with nogil:
        for s in range(count):
            idx = start + <uint64_t>s
            tot = 0.0
            for j in range(n):
                o[s, j] = -log(_uniform(key, idx * <uint64_t>n + <uint64_t>j))
                tot += o[s, j]
            for j in range(n):
                o[s, j] /= tot
    return out
