# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same signatures and conventions as ``_core_py``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int8_t

cnp.import_array()

cdef uint64_t WORD_MASK = 0xFFFFFFFFFFFFFFFF


def rref_rows(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nwords = (ncols + 63) // 64 if ncols > 0 else 1
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] buf = np.zeros((nrows, nwords), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = buf
    cdef Py_ssize_t i, j, k, col, top, found, wi
    cdef uint64_t bit, tmp
    py_mask = (1 << 64) - 1
    for i in range(nrows):
        r = int(rows[i])
        for k in range(nwords):
            w[i, k] = <uint64_t>((r >> (64 * k)) & py_mask)

    pivots = []
    top = 0
    for col in range(ncols):
        if top == nrows:
            break
        wi = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        found = -1
        for i in range(top, nrows):
            if w[i, wi] & bit:
                found = i
                break
        if found < 0:
            continue
        if found != top:
            for k in range(nwords):
                tmp = w[top, k]
                w[top, k] = w[found, k]
                w[found, k] = tmp
        for i in range(nrows):
            if i != top and (w[i, wi] & bit):
                # columns below wi are already zero in the pivot row
                for k in range(wi, nwords):
                    w[i, k] ^= w[top, k]
        pivots.append(col)
        top += 1

    reduced = []
    for i in range(top):
        r = 0
        for k in range(nwords - 1, -1, -1):
            r = (r << 64) | int(w[i, k])
        reduced.append(r)
    return reduced, pivots


cdef inline int parity64(uint64_t a) nogil:
    a ^= a >> 32
    a ^= a >> 16
    a ^= a >> 8
    a ^= a >> 4
    a ^= a >> 2
    a ^= a >> 1
    return <int>(a & 1)


def pauli_dense(rmasks, smasks, coeffs, int num_qubits):
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << num_qubits
    cdef Py_ssize_t nterms = len(coeffs)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef uint64_t[::1] rr = np.asarray(rmasks, dtype=np.uint64).reshape(-1)
    cdef uint64_t[::1] ss = np.asarray(smasks, dtype=np.uint64).reshape(-1)
    cdef double complex[::1] cc = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    cdef Py_ssize_t t, v
    cdef uint64_t r, s
    cdef double complex c
    with nogil:
        for t in range(nterms):
            r = rr[t]
            s = ss[t]
            c = cc[t]
            for v in range(dim):
                if parity64(s & <uint64_t>v):
                    o[<Py_ssize_t>(r ^ <uint64_t>v), v] -= c
                else:
                    o[<Py_ssize_t>(r ^ <uint64_t>v), v] += c
    return out


def perm_images_signs(perm, int num_qubits):
    cdef Py_ssize_t dim = (<Py_ssize_t>1) << num_qubits
    cdef cnp.ndarray[cnp.int64_t, ndim=1] images = np.empty(dim, dtype=np.int64)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] signs = np.empty(dim, dtype=np.int8)
    cdef int64_t[::1] im = images
    cdef int8_t[::1] sg = signs
    cdef int64_t[::1] p = np.asarray(perm, dtype=np.int64).reshape(-1)
    cdef int64_t seq[64]
    cdef Py_ssize_t v, j, a, b, n
    cdef int top = num_qubits - 1
    cdef int inv
    cdef int64_t img
    if num_qubits > 62:
        raise ValueError("too many qubits for a dense sign table")
    with nogil:
        for v in range(dim):
            n = 0
            for j in range(num_qubits):
                if (v >> (top - j)) & 1:
                    seq[n] = p[j]
                    n += 1
            inv = 0
            img = 0
            for a in range(n):
                img |= (<int64_t>1) << (top - seq[a])
                for b in range(a + 1, n):
                    if seq[a] > seq[b]:
                        inv += 1
            im[v] = img
            sg[v] = -1 if (inv & 1) else 1
    return images, signs
