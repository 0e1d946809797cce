"""Dense Hermitian eigenvalues and multiset comparison for the oracle checks."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from fermisym.pauli import PauliSum

HERMITIAN_TOL = 1e-10
MAX_DIM = 4096


class NotHermitianError(ValueError):
    pass


def eigenvalues_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (or a :class:`PauliSum`)."""
    if isinstance(m, PauliSum):
        m = m.to_dense()
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {m.shape[0]} exceeds {MAX_DIM}")
    if m.size and np.max(np.abs(m - m.conj().T)) > tol:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(m)


def multiset_equal(a: Sequence[float], b: Sequence[float], tol: float) -> bool:
    """Pair sorted values one to one; every pair must agree within ``tol``."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        return False
    return bool(np.all(np.abs(a - b) <= tol))


def commutator_norm(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a @ b - b @ a))) if a.size else 0.0
