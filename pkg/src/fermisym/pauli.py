"""Pauli strings in symplectic form and weighted sums of them.

A string is ``i**phase_k * X^r Z^s`` with ``X^r = X_1^{r_1} ... X_M^{r_M}``
written to the left of all Z factors.  ``Y`` never appears internally; it is
rewritten as ``i X Z`` on input.  Qubit labels in text are 1-based and the
dense basis index of ``|v_1 ... v_M>`` is ``sum_j v_j 2**(M-j)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from fermisym._backend import kernels
from fermisym.gf2 import DimensionError, Gf2Vector, reverse_bits

ZERO_TOL = 1e-12
DENSE_CAP = 12
_PHASES = (1, 1j, -1, -1j)


class DenseCapError(ValueError):
    """Raised when a dense matrix would exceed the configured qubit cap."""


@dataclass(frozen=True, slots=True)
class PauliString:
    r: Gf2Vector
    s: Gf2Vector
    phase_k: int = 0

    def __post_init__(self):
        if self.r.n != self.s.n:
            raise DimensionError(f"X part has length {self.r.n}, Z part {self.s.n}")
        object.__setattr__(self, "phase_k", self.phase_k % 4)

    @property
    def num_qubits(self) -> int:
        return self.r.n

    @property
    def key(self) -> tuple[int, int]:
        return (self.r.bits, self.s.bits)

    @classmethod
    def identity(cls, num_qubits: int) -> "PauliString":
        return cls(Gf2Vector.zeros(num_qubits), Gf2Vector.zeros(num_qubits))

    @classmethod
    def from_bits(cls, num_qubits: int, rbits: int, sbits: int, phase_k: int = 0) -> "PauliString":
        return cls(Gf2Vector(num_qubits, rbits), Gf2Vector(num_qubits, sbits), phase_k)

    @classmethod
    def single(cls, op: str, qubit: int, num_qubits: int) -> "PauliString":
        """One-qubit operator ``op`` in ``IXYZ`` on 1-based ``qubit``."""
        if not 1 <= qubit <= num_qubits:
            raise DimensionError(f"qubit {qubit} out of range 1..{num_qubits}")
        bit = 1 << (qubit - 1)
        op = op.upper()
        if op == "I":
            return cls.identity(num_qubits)
        if op == "X":
            return cls.from_bits(num_qubits, bit, 0)
        if op == "Z":
            return cls.from_bits(num_qubits, 0, bit)
        if op == "Y":
            return cls.from_bits(num_qubits, bit, bit, 1)
        raise ValueError(f"unknown Pauli operator {op!r}")

    @classmethod
    def from_label(cls, label: str, num_qubits: int) -> "PauliString":
        """Parse ``"X1 Z2 Y3"``; factors are multiplied left to right.

        A leading ``-``, ``i`` or ``-i`` sets the overall phase.
        """
        text = label.strip()
        phase = 0
        m = re.match(r"^([+-]?)(i?)\s*", text)
        if m:
            if m.group(1) == "-":
                phase += 2
            if m.group(2):
                phase += 1
            text = text[m.end():]
        out = cls(Gf2Vector.zeros(num_qubits), Gf2Vector.zeros(num_qubits), phase)
        for tok in text.replace("*", " ").split():
            if tok.upper() == "I":
                continue
            mt = re.fullmatch(r"([IXYZixyz])(\d+)", tok)
            if not mt:
                raise ValueError(f"bad Pauli factor {tok!r} in {label!r}")
            out = multiply(out, cls.single(mt.group(1), int(mt.group(2)), num_qubits))
        return out

    def is_hermitian(self) -> bool:
        # (i^k X^r Z^s)^dagger = i^-k (-1)^{r.s} X^r Z^s
        return (self.phase_k + 2 * self.r.dot(self.s)) % 4 == (-self.phase_k) % 4

    def without_phase(self) -> "PauliString":
        return PauliString(self.r, self.s, 0)

    def to_dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        return PauliSum.from_string(self).to_dense(cap)

    def label(self) -> str:
        return _body(self.r.bits, self.s.bits, self.num_qubits)

    def __mul__(self, other):
        if isinstance(other, PauliString):
            return multiply(self, other)
        return NotImplemented

    def __str__(self) -> str:
        prefix = ("+", "+i", "-", "-i")[self.phase_k]
        return f"{prefix} {self.label()}"


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Product ``p q`` with exact phase: ``Z^{s_p} X^{r_q} = (-1)^{s_p.r_q} X^{r_q} Z^{s_p}``."""
    if p.num_qubits != q.num_qubits:
        raise DimensionError(f"cannot multiply {p.num_qubits}- and {q.num_qubits}-qubit strings")
    k = p.phase_k + q.phase_k + 2 * ((p.s.bits & q.r.bits).bit_count() & 1)
    return PauliString(p.r + q.r, p.s + q.s, k)


def commutes(p: PauliString, q: PauliString) -> bool:
    if p.num_qubits != q.num_qubits:
        raise DimensionError(f"cannot compare {p.num_qubits}- and {q.num_qubits}-qubit strings")
    return (p.r.dot(q.s) + p.s.dot(q.r)) % 2 == 0


def _body(rbits: int, sbits: int, n: int) -> str:
    parts = [f"X{j + 1}" for j in range(n) if (rbits >> j) & 1]
    parts += [f"Z{j + 1}" for j in range(n) if (sbits >> j) & 1]
    return " ".join(parts) if parts else "I"


def format_coeff(c: complex) -> str:
    """Signed coefficient with 12 significant digits."""
    c = complex(c)
    re_, im = c.real, c.imag
    if abs(im) < ZERO_TOL:
        return f"{re_ + 0.0:+.12g}"
    if abs(re_) < ZERO_TOL:
        return f"{im + 0.0:+.12g}i"
    return f"+({re_:.12g}{im:+.12g}i)"


def _lex_key(item, n):
    (r, s), _ = item
    return (reverse_bits(r, n), reverse_bits(s, n))


class PauliSum:
    """Weighted sum of Pauli strings keyed by ``(r, s)``.

    String phases are folded into the complex coefficients, and slots whose
    magnitude drops below ``ZERO_TOL`` are removed.
    """

    def __init__(self, num_qubits: int, terms: dict[tuple[int, int], complex] | None = None):
        if num_qubits < 0:
            raise DimensionError("negative qubit count")
        self.num_qubits = num_qubits
        self.terms: dict[tuple[int, int], complex] = {}
        for (r, s), c in (terms or {}).items():
            self._add(r, s, c)

    @classmethod
    def from_string(cls, p: PauliString, coeff: complex = 1.0) -> "PauliSum":
        out = cls(p.num_qubits)
        out.add(coeff, p)
        return out

    @classmethod
    def from_labels(cls, num_qubits: int, items) -> "PauliSum":
        """Build from ``[(coeff, "X1 Z2"), ...]``."""
        out = cls(num_qubits)
        for c, label in items:
            out.add(c, PauliString.from_label(label, num_qubits))
        return out

    @classmethod
    def identity(cls, num_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls.from_string(PauliString.identity(num_qubits), coeff)

    def _add(self, r: int, s: int, c: complex) -> None:
        key = (r, s)
        v = self.terms.get(key, 0j) + complex(c)
        if abs(v) < ZERO_TOL:
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    def add(self, coeff: complex, p: PauliString) -> "PauliSum":
        if p.num_qubits != self.num_qubits:
            raise DimensionError(f"{p.num_qubits}-qubit string added to {self.num_qubits}-qubit sum")
        self._add(p.r.bits, p.s.bits, complex(coeff) * _PHASES[p.phase_k])
        return self

    def copy(self) -> "PauliSum":
        out = PauliSum(self.num_qubits)
        out.terms = dict(self.terms)
        return out

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[complex, PauliString]]:
        """Yield ``(coeff, string)`` in lexicographic ``(r, s)`` order."""
        n = self.num_qubits
        for (r, s), c in sorted(self.terms.items(), key=lambda it: _lex_key(it, n)):
            yield c, PauliString.from_bits(n, r, s)

    def coefficient(self, p: PauliString) -> complex:
        """Coefficient multiplying ``p`` (phase included) in this sum."""
        return self.terms.get(p.key, 0j) / _PHASES[p.phase_k]

    def __add__(self, other: "PauliSum") -> "PauliSum":
        _check_sum(self, other)
        out = self.copy()
        for (r, s), c in other.terms.items():
            out._add(r, s, c)
        return out

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other * -1

    def __mul__(self, scalar) -> "PauliSum":
        if isinstance(scalar, PauliSum):
            return NotImplemented
        out = PauliSum(self.num_qubits)
        for (r, s), c in self.terms.items():
            out._add(r, s, c * scalar)
        return out

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        _check_sum(self, other)
        out = PauliSum(self.num_qubits)
        for (r1, s1), c1 in self.terms.items():
            for (r2, s2), c2 in other.terms.items():
                sign = -1 if (s1 & r2).bit_count() & 1 else 1
                out._add(r1 ^ r2, s1 ^ s2, sign * c1 * c2)
        return out

    def dagger(self) -> "PauliSum":
        out = PauliSum(self.num_qubits)
        for (r, s), c in self.terms.items():
            sign = -1 if (r & s).bit_count() & 1 else 1
            out._add(r, s, sign * c.conjugate())
        return out

    def is_hermitian(self, tol: float = ZERO_TOL) -> bool:
        return self.equals(self.dagger(), tol)

    def equals(self, other: "PauliSum", tol: float = ZERO_TOL) -> bool:
        if other.num_qubits != self.num_qubits:
            return False
        for key in self.terms.keys() | other.terms.keys():
            if abs(self.terms.get(key, 0j) - other.terms.get(key, 0j)) > tol:
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def to_dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        n = self.num_qubits
        if n > cap:
            raise DenseCapError(f"{n} qubits exceeds the dense cap of {cap}")
        keys = list(self.terms)
        rm = [reverse_bits(r, n) for r, _ in keys]
        sm = [reverse_bits(s, n) for _, s in keys]
        coeffs = np.array([self.terms[k] for k in keys], dtype=complex)
        return kernels.pauli_dense(rm, sm, coeffs, n)

    def lines(self) -> list[str]:
        """One ``"+0.5 X1 X2 Z3"`` line per term."""
        return [f"{format_coeff(c)} {p.label()}" for c, p in self]

    def to_records(self) -> list[dict]:
        return [
            {"coeff": [c.real, c.imag], "x": p.r.to_list(), "z": p.s.to_list(), "label": p.label()}
            for c, p in self
        ]

    def __str__(self) -> str:
        return "\n".join(self.lines()) if self.terms else "0"

    def __repr__(self) -> str:
        return f"PauliSum({self.num_qubits}, {len(self.terms)} terms)"


def _check_sum(a: PauliSum, b: PauliSum) -> None:
    if a.num_qubits != b.num_qubits:
        raise DimensionError(f"{a.num_qubits}- and {b.num_qubits}-qubit sums are incompatible")


def add_term(h: PauliSum, coeff: complex, p: PauliString) -> PauliSum:
    return h.add(coeff, p)


def commutator_is_zero(h: PauliSum, p: PauliString) -> bool:
    """Whether every collected term of ``h`` commutes with ``p``.

    Distinct ``(r, s)`` slots give linearly independent commutator terms, so
    this is also necessary for ``[h, p] = 0``.
    """
    if p.num_qubits != h.num_qubits:
        raise DimensionError(f"{p.num_qubits}-qubit string vs {h.num_qubits}-qubit sum")
    pr, ps = p.r.bits, p.s.bits
    return all(((r & ps).bit_count() + (s & pr).bit_count()) % 2 == 0 for r, s in h.terms)


def to_dense(h: PauliSum | PauliString, cap: int = DENSE_CAP) -> np.ndarray:
    return h.to_dense(cap)
