# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bit-packed GF(2) elimination kernels.

Matrices are numpy uint64 arrays of shape (nrows, nwords); bit j of row i
lives at word j >> 6, position j & 63.  The pure fallback in _f2pure
implements the same two entry points.
"""

import numpy as np

cimport numpy as cnp


def rref_inplace(cnp.uint64_t[:, ::1] data, Py_ssize_t ncols):
    """Reduce to reduced row echelon form in place; return pivot column list."""
    cdef Py_ssize_t nrows = data.shape[0]
    cdef Py_ssize_t nwords = data.shape[1]
    cdef Py_ssize_t r = 0, c, w, i, j, p
    cdef int b
    cdef cnp.uint64_t bit, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        b = c & 63
        bit = (<cnp.uint64_t> 1) << b
        p = -1
        for i in range(r, nrows):
            if data[i, w] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nwords):
                tmp = data[r, j]
                data[r, j] = data[p, j]
                data[p, j] = tmp
        for i in range(nrows):
            if i != r and (data[i, w] & bit):
                for j in range(nwords):
                    data[i, j] ^= data[r, j]
        pivots.append(c)
        r += 1
    return pivots


def xor_selected(cnp.uint64_t[:, ::1] acc, cnp.uint64_t[:, ::1] rows,
                 cnp.uint8_t[:, ::1] select):
    """acc[i] ^= XOR of rows[j] over j with select[i, j] set (GF(2) matmul core)."""
    cdef Py_ssize_t m = select.shape[0]
    cdef Py_ssize_t k = select.shape[1]
    cdef Py_ssize_t nwords = rows.shape[1]
    cdef Py_ssize_t i, j, t
    for i in range(m):
        for j in range(k):
            if select[i, j]:
                for t in range(nwords):
                    acc[i, t] ^= rows[j, t]
