# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Dense Gaussian elimination over F_p for p < 2^31."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline uint64_t _inv_mod(uint64_t a, uint64_t p) noexcept nogil:
    # a^(p-2) mod p, p prime
    cdef uint64_t result = 1
    cdef uint64_t base = a % p
    cdef uint64_t e = p - 2
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef Py_ssize_t _rank_inplace(int64_t[:, ::1] A, uint64_t p) noexcept nogil:
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t m = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef uint64_t inv, f, t
    cdef int64_t tmp
    for c in range(m):
        if r == n:
            break
        piv = -1
        for i in range(r, n):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, m):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv_mod(<uint64_t>A[r, c], p)
        for j in range(c, m):
            A[r, j] = <int64_t>((<uint64_t>A[r, j] * inv) % p)
        for i in range(r + 1, n):
            f = <uint64_t>A[i, c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, m):
                t = <uint64_t>A[r, j]
                if t:
                    A[i, j] = <int64_t>((<uint64_t>A[i, j] + f * t) % p)
        r += 1
    return r


def rank_mod_p_dense(M, long long p):
    """Rank of an integer matrix modulo a prime p < 2^31 (input is not modified)."""
    A = np.ascontiguousarray(np.mod(M, p), dtype=np.int64)
    if A.ndim != 2 or A.size == 0:
        return 0
    cdef int64_t[:, ::1] view = A
    cdef Py_ssize_t r
    with nogil:
        r = _rank_inplace(view, <uint64_t>p)
    return int(r)


def rank_mod_p_batch(M, long long p):
    """Ranks of a stack of matrices modulo p; returns an int64 array."""
    A = np.ascontiguousarray(np.mod(M, p), dtype=np.int64)
    cdef Py_ssize_t b, nb = A.shape[0]
    out = np.zeros(nb, dtype=np.int64)
    if A.shape[1] == 0 or A.shape[2] == 0:
        return out
    cdef int64_t[:, :, ::1] view = A
    cdef int64_t[::1] res = out
    with nogil:
        for b in range(nb):
            res[b] = _rank_inplace(view[b], <uint64_t>p)
    return out
