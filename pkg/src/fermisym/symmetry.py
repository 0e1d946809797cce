"""Clifford tableaux induced by mode permutations, and the dense ``C_P`` oracle.

A tableau maps the exponent vector ``q = (r, s)`` of ``X^r Z^s`` through the
block matrix ``[[x_block, 0], [mix_block, z_block]]``.  For a permutation
``P`` the blocks are ``Pi_P``, ``Q_P = L Pi_P + Pi_P L`` and ``Pi_P``, with
``L`` strictly lower triangular and all ones.

Conjugation is evaluated as the ordered product of the images of the single
generators ``X_i`` and ``Z_i``.  The bare block map drops a sign whenever two
X images carry Z factors that meet X factors of another image, so the
products are needed to get the exact phase of strings with several X's.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from fermisym._backend import kernels
from fermisym.fock import Permutation, reorder_sign, to_matrix
from fermisym.gf2 import DimensionError, Gf2Matrix, Gf2Vector, block, inverse, multiply, submatrix
from fermisym.pauli import DENSE_CAP, DenseCapError, PauliString, PauliSum, ZERO_TOL


class MixedCompositionError(ValueError):
    """Composition of a permutation tableau with an affine one."""


def strict_lower_ones(m: int) -> Gf2Matrix:
    return Gf2Matrix(m, m, tuple((1 << i) - 1 for i in range(m)))


@dataclass(frozen=True)
class CliffordTableau:
    num_qubits: int
    x_block: Gf2Matrix
    z_block: Gf2Matrix
    mix_block: Gf2Matrix
    sign_vector: Gf2Vector
    kind: str = "permutation"
    _images: list = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        m = self.num_qubits
        for name in ("x_block", "z_block", "mix_block"):
            if getattr(self, name).shape != (m, m):
                raise DimensionError(f"{name} must be {m}x{m}")
        if self.sign_vector.n != 2 * m:
            raise DimensionError(f"sign vector must have length {2 * m}")
        # generator images: (rbits, sbits, phase_k) for X_1..X_M, then Z_1..Z_M
        xs, zs, mix = self.x_block, self.z_block, self.mix_block
        imgs = []
        for i in range(m):
            imgs.append((xs.column(i).bits, mix.column(i).bits, 2 * self.sign_vector[i]))
        for i in range(m):
            imgs.append((0, zs.column(i).bits, 2 * self.sign_vector[m + i]))
        object.__setattr__(self, "_images", imgs)

    def matrix(self) -> Gf2Matrix:
        m = self.num_qubits
        return block([[self.x_block, Gf2Matrix.zeros(m, m)], [self.mix_block, self.z_block]])

    def is_identity(self) -> bool:
        return self.matrix().is_identity() and self.sign_vector.is_zero()

    def image_of(self, op: str, qubit: int) -> PauliString:
        """Image of ``X_qubit`` or ``Z_qubit`` (1-based) under conjugation."""
        m = self.num_qubits
        idx = (qubit - 1) + (m if op.upper() == "Z" else 0)
        r, s, k = self._images[idx]
        return PauliString.from_bits(m, r, s, k)

    def to_grid(self) -> str:
        """0/1 grid with block separators."""
        m = self.num_qubits
        full = self.matrix()
        lines = []
        for i in range(2 * m):
            if i == m:
                lines.append("-" * (2 * m - 1) + "-+-" + "-" * (2 * m - 1))
            left = " ".join(str(full[i, j]) for j in range(m))
            right = " ".join(str(full[i, j]) for j in range(m, 2 * m))
            lines.append(f"{left} | {right}")
        return "\n".join(lines)

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "matrix": self.matrix().to_array().tolist(),
            "sign_vector": self.sign_vector.to_list(),
        }


def tableau_from_permutation(p: Permutation) -> CliffordTableau:
    m = p.size
    pi = to_matrix(p)
    low = strict_lower_ones(m)
    q = multiply(low, pi) + multiply(pi, low)
    return CliffordTableau(m, pi, pi, q, Gf2Vector.zeros(2 * m), "permutation")


def conjugate_string(t: CliffordTableau, p: PauliString) -> PauliString:
    """``C p C^dagger`` for the unitary ``C`` described by ``t``."""
    if p.num_qubits != t.num_qubits:
        raise DimensionError(f"{p.num_qubits}-qubit string vs {t.num_qubits}-qubit tableau")
    m = t.num_qubits
    r_acc, s_acc, k = 0, 0, p.phase_k
    imgs = t._images
    for offset, bits in ((0, p.r.bits), (m, p.s.bits)):
        i = 0
        while bits:
            if bits & 1:
                r2, s2, k2 = imgs[offset + i]
                k += k2 + 2 * ((s_acc & r2).bit_count() & 1)
                r_acc ^= r2
                s_acc ^= s2
            bits >>= 1
            i += 1
    return PauliString.from_bits(m, r_acc, s_acc, k)


def conjugate_sum(t: CliffordTableau, h: PauliSum) -> PauliSum:
    if h.num_qubits != t.num_qubits:
        raise DimensionError(f"{h.num_qubits}-qubit sum vs {t.num_qubits}-qubit tableau")
    out = PauliSum(h.num_qubits)
    for c, p in h:
        out.add(c, conjugate_string(t, p))
    return out


def compose(t2: CliffordTableau, t1: CliffordTableau) -> CliffordTableau:
    """Tableau of ``C_2 C_1`` (``t1`` acts first): block product ``M_2 M_1``.

    Only same-kind tableaux are composed.
    """
    if t1.num_qubits != t2.num_qubits:
        raise DimensionError("tableaux act on different qubit counts")
    if t1.kind != t2.kind:
        raise MixedCompositionError(f"cannot compose {t2.kind} with {t1.kind} tableau")
    m = t1.num_qubits
    full = multiply(t2.matrix(), t1.matrix())
    g = t1.sign_vector + t1.matrix().transpose().matvec(t2.sign_vector)
    top, bot = range(0, m), range(m, 2 * m)
    return CliffordTableau(
        m,
        submatrix(full, top, top),
        submatrix(full, bot, bot),
        submatrix(full, bot, top),
        g,
        t1.kind,
    )


def symplectic_form(m: int) -> Gf2Matrix:
    eye, zero = Gf2Matrix.identity(m), Gf2Matrix.zeros(m, m)
    return block([[zero, eye], [eye, zero]])


def is_symplectic(t: CliffordTableau) -> bool:
    full = t.matrix()
    omega = symplectic_form(t.num_qubits)
    return multiply(multiply(full.transpose(), omega), full) == omega


def cp_sign(p: Permutation, nu: Gf2Vector | Sequence[int]) -> int:
    """``(-1)^{tau_P(nu)}``: parity of the image sequence of the occupied modes."""
    if not isinstance(nu, Gf2Vector):
        nu = Gf2Vector.from_bits(nu)
    if nu.n != p.size:
        raise DimensionError(f"occupation vector of length {nu.n} for {p.size} modes")
    return reorder_sign([p(j + 1) for j in nu.support()])


def cp_dense(p: Permutation, num_qubits: int | None = None, cap: int = DENSE_CAP) -> np.ndarray:
    """``sum_v (-1)^{tau_P(v)} |Pi_P v><v|`` as a dense matrix."""
    m = p.size if num_qubits is None else num_qubits
    if m != p.size:
        raise DimensionError(f"permutation of {p.size} modes on {m} qubits")
    if m > cap:
        raise DenseCapError(f"{m} qubits exceeds the dense cap of {cap}")
    images, signs = kernels.perm_images_signs([p(j) - 1 for j in range(1, m + 1)], m)
    dim = 1 << m
    out = np.zeros((dim, dim))
    out[images, np.arange(dim)] = signs
    return out


def verify_invariance(h: PauliSum, p: Permutation, tol: float = ZERO_TOL) -> bool:
    """Whether conjugation by ``C_P`` leaves ``h`` unchanged term for term."""
    if p.size != h.num_qubits:
        raise DimensionError(f"permutation of {p.size} modes for a {h.num_qubits}-qubit sum")
    return conjugate_sum(tableau_from_permutation(p), h).equals(h, tol)


def affine_tableau(a: Gf2Matrix, b: Gf2Vector) -> CliffordTableau:
    """Tableau of ``|x> -> |A x + b>``.

    ``X^r Z^s`` goes to ``(-1)^{mu} X^{A r} Z^{(A^-1)^T s}`` with
    ``mu = (A^-1)^T s . b = s . (A^-1 b)``, so the sign vector is ``(0, A^-1 b)``.
    """
    m = a.nrows
    if b.n != m:
        raise DimensionError(f"offset of length {b.n} for a {m}x{m} matrix")
    ainv = inverse(a)
    g = Gf2Vector(2 * m, ainv.matvec(b).bits << m)
    return CliffordTableau(m, a, ainv.transpose(), Gf2Matrix.zeros(m, m), g, "affine")
