"""Pure-Python implementations of the hot kernels.

Selected automatically when the compiled ``_core`` extension is missing,
or forced with ``FERMISYM_PURE_PYTHON=1``.  Signatures mirror ``_core.pyx``
exactly; ``tests/test_kernels.py`` runs both against the same cases.

Conventions shared by both backends:

* GF(2) rows are Python ints, column ``c`` stored at bit ``c``.
* Dense basis indices put qubit 1 in the most significant bit, so a qubit
  mask passed to :func:`pauli_dense` is already in index convention.
"""

from __future__ import annotations

import numpy as np


def rref_rows(rows, ncols):
    """Gauss-Jordan elimination over GF(2).

    Pivot columns are chosen left to right (increasing column index).

    Args:
        rows: sequence of int bitsets, one per matrix row.
        ncols: number of columns; bits at or above ``ncols`` must be clear.

    Returns:
        ``(reduced, pivots)`` where ``reduced`` holds the nonzero rows of the
        reduced row echelon form, in pivot order, and ``pivots`` their pivot
        columns.
    """
    work = [int(r) for r in rows]
    pivots = []
    top = 0
    for col in range(ncols):
        bit = 1 << col
        found = -1
        for i in range(top, len(work)):
            if work[i] & bit:
                found = i
                break
        if found < 0:
            continue
        work[top], work[found] = work[found], work[top]
        prow = work[top]
        for i in range(len(work)):
            if i != top and work[i] & bit:
                work[i] ^= prow
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def pauli_dense(rmasks, smasks, coeffs, num_qubits):
    """Assemble ``sum_k c_k X^{r_k} Z^{s_k}`` as a dense matrix.

    ``X^r Z^s |v> = (-1)^{popcount(s & v)} |v ^ r>``.
    """
    dim = 1 << num_qubits
    out = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim, dtype=np.int64)
    for r, s, c in zip(rmasks, smasks, coeffs):
        parity = _popcount_parity(cols & int(s))
        vals = np.where(parity, -c, c)
        out[cols ^ int(r), cols] += vals
    return out


def perm_images_signs(perm, num_qubits):
    """Image index and fermionic sign of every basis state under a mode permutation.

    Args:
        perm: 0-based images, ``perm[j]`` is where mode ``j`` goes.
        num_qubits: number of modes.

    Returns:
        ``(images, signs)``: int64 and int8 arrays of length ``2**num_qubits``.
        The sign is the parity of the image sequence ``P(j_1), ..., P(j_N)``
        of the occupied modes taken in increasing order.
    """
    dim = 1 << num_qubits
    images = np.empty(dim, dtype=np.int64)
    signs = np.empty(dim, dtype=np.int8)
    top = num_qubits - 1
    for v in range(dim):
        seq = [perm[j] for j in range(num_qubits) if (v >> (top - j)) & 1]
        inv = 0
        for a in range(len(seq)):
            pa = seq[a]
            for b in range(a + 1, len(seq)):
                if pa > seq[b]:
                    inv += 1
        img = 0
        for p in seq:
            img |= 1 << (top - p)
        images[v] = img
        signs[v] = -1 if inv & 1 else 1
    return images, signs


def _popcount_parity(a):
    a = a.astype(np.uint64)
    a ^= a >> np.uint64(32)
    a ^= a >> np.uint64(16)
    a ^= a >> np.uint64(8)
    a ^= a >> np.uint64(4)
    a ^= a >> np.uint64(2)
    a ^= a >> np.uint64(1)
    return (a & np.uint64(1)).astype(bool)
