"""Qubit removal through Z-string symmetries and affine qubit encodings.

The steps are: collect the symplectic rows ``(r_i, s_i)`` of the Hamiltonian,
solve for the pure-Z strings commuting with every term, extend those strings
to an invertible matrix ``A``, conjugate by ``|x> -> |A x + b>`` so each
string becomes a single ``Z_i``, then replace those ``Z_i`` by +/-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from fermisym.gf2 import (
    DimensionError,
    Gf2Matrix,
    Gf2Vector,
    complete_to_invertible,
    kernel,
    reverse_bits,
)
from fermisym.pauli import DENSE_CAP, DenseCapError, PauliString, PauliSum
from fermisym.symmetry import CliffordTableau, affine_tableau, conjugate_sum


class TaperingError(ValueError):
    """A term acts with X or Y on a qubit that the plan removes."""


@dataclass(frozen=True)
class SectorAssignment:
    eigenvalues: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(e) for e in self.eigenvalues)
        if any(e not in (1, -1) for e in vals):
            raise ValueError(f"sector eigenvalues must be +1 or -1, got {vals}")
        object.__setattr__(self, "eigenvalues", vals)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __str__(self) -> str:
        return " ".join(f"{e:+d}" for e in self.eigenvalues)


@dataclass(frozen=True)
class TaperingPlan:
    """Affine encoding ``(A, b)`` whose first rows are the symmetry Z-strings."""

    num_qubits: int
    z_strings: tuple[Gf2Vector, ...]
    a: Gf2Matrix
    b: Gf2Vector

    @property
    def k(self) -> int:
        return len(self.z_strings)

    @property
    def tapered_qubits(self) -> list[int]:
        return list(range(1, self.k + 1))

    @cached_property
    def tableau(self) -> CliffordTableau:
        return affine_tableau(self.a, self.b)

    def sector_of_state(self, x: Gf2Vector | Sequence[int]) -> SectorAssignment:
        """Eigenvalues of ``Z_1..Z_k`` on the image ``|A x + b>`` of a basis state."""
        if not isinstance(x, Gf2Vector):
            x = Gf2Vector.from_bits(x)
        y = self.a.matvec(x) + self.b
        return SectorAssignment(tuple(-1 if y[i] else 1 for i in range(self.k)))

    def to_record(self) -> dict:
        return {
            "z_strings": [v.to_list() for v in self.z_strings],
            "A": self.a.to_array().tolist(),
            "b": self.b.to_list(),
            "tapered_qubits": self.tapered_qubits,
        }


def build_k_matrix(h: PauliSum) -> Gf2Matrix:
    """One row ``(r_i, s_i)`` per collected term, lexicographic in ``(r, s)``."""
    m = h.num_qubits
    rows = tuple(p.r.bits | (p.s.bits << m) for _, p in h)
    return Gf2Matrix(len(rows), 2 * m, rows)


def commuting_strings(h: PauliSum) -> list[PauliString]:
    """Basis of all strings ``X^{r'} Z^{s'}`` commuting with every term of ``h``.

    A kernel vector of ``K`` is read as ``(s', r')``.
    """
    m = h.num_qubits
    mask = (1 << m) - 1
    out = []
    for v in kernel(build_k_matrix(h)):
        s_part, r_part = v.bits & mask, v.bits >> m
        out.append(PauliString.from_bits(m, r_part, s_part))
    return out


def find_z_symmetries(h: PauliSum) -> list[Gf2Vector]:
    """Canonical basis of ``{s' : (s', 0) in ker K}``.

    With ``r' = 0`` the kernel condition reduces to ``r_i . s' = 0`` for every
    term, so the pure-Z part is the kernel of the X-exponent rows alone.
    """
    m = h.num_qubits
    rows = tuple(p.r.bits for _, p in h)
    return kernel(Gf2Matrix(len(rows), m, rows))


def number_conservation_strings(spin_partition: Iterable[Iterable[int]], num_modes: int) -> list[Gf2Vector]:
    """Indicator vector ``n_sigma`` of each (1-based) mode set."""
    seen: set[int] = set()
    out = []
    for modes in spin_partition:
        modes = list(modes)
        overlap = seen.intersection(modes)
        if overlap:
            raise ValueError(f"modes {sorted(overlap)} appear in more than one set")
        seen.update(modes)
        out.append(Gf2Vector.from_support(num_modes, [j - 1 for j in modes]))
    return out


def boolean_symmetry_to_zstring(eigenvalues: Sequence[int]) -> Gf2Vector:
    """``gamma_k = 1`` exactly where the one-body eigenvalue is -1."""
    if any(e not in (1, -1) for e in eigenvalues):
        raise ValueError(f"eigenvalues must be +1 or -1, got {list(eigenvalues)}")
    return Gf2Vector.from_bits(1 if e == -1 else 0 for e in eigenvalues)


def build_plan(z_strings: Sequence[Gf2Vector], num_qubits: int, b: Gf2Vector | None = None) -> TaperingPlan:
    if b is None:
        b = Gf2Vector.zeros(num_qubits)
    if b.n != num_qubits:
        raise DimensionError(f"offset of length {b.n} for {num_qubits} qubits")
    a = complete_to_invertible(list(z_strings), num_qubits)
    return TaperingPlan(num_qubits, tuple(z_strings), a, b)


def affine_dense(a: Gf2Matrix, b: Gf2Vector, num_qubits: int | None = None, cap: int = DENSE_CAP) -> np.ndarray:
    """0/1 matrix of ``sum_x |A x + b><x|``."""
    m = a.nrows if num_qubits is None else num_qubits
    if a.shape != (m, m) or b.n != m:
        raise DimensionError(f"affine map of shape {a.shape}, offset {b.n}, on {m} qubits")
    if m > cap:
        raise DenseCapError(f"{m} qubits exceeds the dense cap of {cap}")
    dim = 1 << m
    out = np.zeros((dim, dim))
    for idx in range(dim):
        x = Gf2Vector(m, reverse_bits(idx, m))
        y = a.matvec(x) + b
        out[y.to_index(), idx] = 1.0
    return out


def taper_sector(h_conjugated: PauliSum, plan: TaperingPlan, sector: SectorAssignment) -> PauliSum:
    """Replace ``Z_1..Z_k`` by the sector eigenvalues and drop those qubits.

    Remaining qubits are renumbered ``1..M-k`` in their original order.
    """
    k = plan.k
    if len(sector) != k:
        raise ValueError(f"sector has {len(sector)} eigenvalues, plan tapers {k} qubits")
    if h_conjugated.num_qubits != plan.num_qubits:
        raise DimensionError("Hamiltonian and plan act on different qubit counts")
    low = (1 << k) - 1
    flip = 0
    for i, e in enumerate(sector.eigenvalues):
        if e == -1:
            flip |= 1 << i
    out = PauliSum(plan.num_qubits - k)
    for (r, s), c in h_conjugated.terms.items():
        if r & low:
            raise TaperingError(
                f"term {PauliString.from_bits(plan.num_qubits, r, s).label()} "
                f"acts with X on a tapered qubit"
            )
        sign = -1 if (s & flip).bit_count() & 1 else 1
        out._add(r >> k, s >> k, sign * c)
    return out


def enumerate_sectors(h: PauliSum, plan: TaperingPlan, *, conjugated: bool = False):
    """All ``2**k`` tapered Hamiltonians as ``(SectorAssignment, PauliSum)`` pairs.

    Sectors are listed with +1 before -1 in each position, first qubit slowest.
    """
    hc = h if conjugated else conjugate_sum(plan.tableau, h)
    return [
        (sec, taper_sector(hc, plan, sec))
        for sec in (SectorAssignment(e) for e in itertools.product((1, -1), repeat=plan.k))
    ]


def choose_z_strings(h: PauliSum, preferred: Sequence[Gf2Vector] = ()) -> list[Gf2Vector]:
    """Independent basis of the Z-symmetries of ``h``, preferred strings first.

    Preferred strings that do not commute with ``h`` or are dependent on the
    ones already chosen are skipped; the canonical kernel basis fills the rest.
    """
    symmetries = find_z_symmetries(h)
    m = h.num_qubits
    chosen: list[Gf2Vector] = []
    basis: dict[int, int] = {}

    def insert(x: int) -> bool:
        while x:
            lead = x.bit_length() - 1
            if lead not in basis:
                basis[lead] = x
                return True
            x ^= basis[lead]
        return False

    for v in preferred:
        if v.n != m or v.is_zero():
            continue
        if not commutator_free(h, v):
            continue
        if insert(v.bits):
            chosen.append(v)
    for v in symmetries:
        if insert(v.bits):
            chosen.append(v)
    return chosen


def commutator_free(h: PauliSum, z: Gf2Vector) -> bool:
    """Whether ``Z^z`` commutes with every term of ``h``."""
    return all((r & z.bits).bit_count() % 2 == 0 for r, _ in h.terms)
