"""Bit-packed linear algebra over GF(2).

Vectors and matrix rows are Python ints used as bitsets: component ``j``
(0-based) lives at bit ``j``.  Elimination runs in the kernel backend
(compiled when available), which works on whole machine words at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from fermisym._backend import kernels


class Gf2Error(ValueError):
    """Base class for GF(2) linear algebra errors."""


class DimensionError(Gf2Error):
    pass


class SingularMatrixError(Gf2Error):
    pass


class DependentRowsError(Gf2Error):
    pass


@dataclass(frozen=True, slots=True)
class Gf2Vector:
    """Fixed-length bit vector; ``+`` is XOR and ``dot`` the parity of AND."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise DimensionError(f"negative length {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise DimensionError(f"bits {self.bits:#x} do not fit in length {self.n}")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "Gf2Vector":
        values = list(values)
        bits = 0
        for j, b in enumerate(values):
            if int(b) & 1:
                bits |= 1 << j
        return cls(len(values), bits)

    @classmethod
    def zeros(cls, n: int) -> "Gf2Vector":
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, j: int) -> "Gf2Vector":
        if not 0 <= j < n:
            raise DimensionError(f"unit index {j} out of range for length {n}")
        return cls(n, 1 << j)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "Gf2Vector":
        """Vector with ones at the given 0-based positions."""
        bits = 0
        for j in support:
            if not 0 <= j < n:
                raise DimensionError(f"index {j} out of range for length {n}")
            bits ^= 1 << j
        return cls(n, bits)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, j: int) -> int:
        if j < 0:
            j += self.n
        if not 0 <= j < self.n:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __iter__(self):
        return (((self.bits >> j) & 1) for j in range(self.n))

    def __add__(self, other: "Gf2Vector") -> "Gf2Vector":
        _check_len(self, other)
        return Gf2Vector(self.n, self.bits ^ other.bits)

    __xor__ = __add__

    def dot(self, other: "Gf2Vector") -> int:
        _check_len(self, other)
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [j for j in range(self.n) if (self.bits >> j) & 1]

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_list(self) -> list[int]:
        return list(self)

    def to_index(self) -> int:
        """Basis-state index with component 0 as the most significant bit."""
        return reverse_bits(self.bits, self.n)

    @classmethod
    def from_index(cls, n: int, index: int) -> "Gf2Vector":
        return cls(n, reverse_bits(index, n))

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


def _check_len(a: Gf2Vector, b: Gf2Vector) -> None:
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} vs {b.n}")


def reverse_bits(x: int, n: int) -> int:
    out = 0
    for _ in range(n):
        out = (out << 1) | (x & 1)
        x >>= 1
    return out


@dataclass(frozen=True, slots=True)
class Gf2Matrix:
    """Dense GF(2) matrix stored as one int bitset per row."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise DimensionError(f"row {r:#x} does not fit in {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]] | np.ndarray, ncols: int | None = None) -> "Gf2Matrix":
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            if ncols is None:
                ncols = arr.shape[1] if arr.ndim == 2 else 0
            return cls(0, ncols, ())
        if arr.ndim != 2:
            raise DimensionError("expected a 2-d array of bits")
        packed = tuple(Gf2Vector.from_bits(row).bits for row in arr)
        return cls(arr.shape[0], arr.shape[1], packed)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Gf2Vector], ncols: int | None = None) -> "Gf2Matrix":
        if not vectors:
            return cls(0, ncols or 0, ())
        n = vectors[0].n
        for v in vectors:
            if v.n != n:
                raise DimensionError("vectors of unequal length")
        return cls(len(vectors), n, tuple(v.bits for v in vectors))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Gf2Matrix":
        return cls(nrows, ncols, (0,) * nrows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> Gf2Vector:
        return Gf2Vector(self.ncols, self.rows[i])

    def column(self, j: int) -> Gf2Vector:
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return Gf2Vector(self.nrows, bits)

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                out[i, j] = (r >> j) & 1
        return out

    def transpose(self) -> "Gf2Matrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    cols[j] |= 1 << i
                r >>= 1
                j += 1
        return Gf2Matrix(self.ncols, self.nrows, tuple(cols))

    @property
    def T(self) -> "Gf2Matrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, Gf2Matrix):
            return multiply(self, other)
        if isinstance(other, Gf2Vector):
            return self.matvec(other)
        return NotImplemented

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")
        return Gf2Matrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def matvec(self, v: Gf2Vector) -> Gf2Vector:
        if v.n != self.ncols:
            raise DimensionError(f"cannot apply {self.shape} matrix to length-{v.n} vector")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return Gf2Vector(self.nrows, bits)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(r == 1 << i for i, r in enumerate(self.rows))

    def __str__(self) -> str:
        return "\n".join(" ".join(str((r >> j) & 1) for j in range(self.ncols)) for r in self.rows)


def multiply(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """Matrix product mod 2."""
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    out = []
    for r in a.rows:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc ^= b.rows[k]
            r >>= 1
            k += 1
        out.append(acc)
    return Gf2Matrix(a.nrows, b.ncols, tuple(out))


def block(blocks: Sequence[Sequence[Gf2Matrix]]) -> Gf2Matrix:
    """Assemble a matrix from a grid of blocks (like ``numpy.block``)."""
    out = []
    ncols = None
    for brow in blocks:
        height = brow[0].nrows
        widths = [b.ncols for b in brow]
        if any(b.nrows != height for b in brow):
            raise DimensionError("blocks in a row must share a height")
        total = sum(widths)
        if ncols is None:
            ncols = total
        elif total != ncols:
            raise DimensionError("block rows have different widths")
        for i in range(height):
            acc, shift = 0, 0
            for b in brow:
                acc |= b.rows[i] << shift
                shift += b.ncols
            out.append(acc)
    return Gf2Matrix(len(out), ncols or 0, tuple(out))


def submatrix(m: Gf2Matrix, rows: range | Sequence[int], cols: range) -> Gf2Matrix:
    """Rows by index list, columns by a contiguous range."""
    lo, width = cols.start, len(cols)
    mask = (1 << width) - 1
    return Gf2Matrix(len(rows), width, tuple((m.rows[i] >> lo) & mask for i in rows))


def rref(m: Gf2Matrix) -> tuple[Gf2Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    reduced, pivots = kernels.rref_rows(m.rows, m.ncols)
    return Gf2Matrix(len(reduced), m.ncols, tuple(reduced)), list(pivots)


def rank(m: Gf2Matrix) -> int:
    return len(kernels.rref_rows(m.rows, m.ncols)[1])


def kernel(m: Gf2Matrix) -> list[Gf2Vector]:
    """Canonical basis of ``{x : m x = 0}``.

    One basis vector per free column, in increasing column order; the free
    coordinate is 1, other free coordinates 0, pivot coordinates solved from
    the reduced rows.
    """
    reduced, pivots = kernels.rref_rows(m.rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        x = 1 << f
        for row, p in zip(reduced, pivots):
            if (row >> f) & 1:
                x |= 1 << p
        basis.append(Gf2Vector(m.ncols, x))
    return basis


def inverse(m: Gf2Matrix) -> Gf2Matrix:
    n = m.nrows
    if m.ncols != n:
        raise DimensionError(f"cannot invert non-square {m.shape} matrix")
    augmented = [r | (1 << (n + i)) for i, r in enumerate(m.rows)]
    reduced, pivots = kernels.rref_rows(augmented, 2 * n)
    if len(pivots) < n or (n and pivots[n - 1] >= n):
        raise SingularMatrixError(f"matrix is singular (rank < {n})")
    return Gf2Matrix(n, n, tuple(r >> n for r in reduced[:n]))


def span_contains(vectors: Sequence[Gf2Vector], v: Gf2Vector) -> bool:
    if not vectors:
        return v.is_zero()
    m = Gf2Matrix.from_vectors(vectors)
    return rank(m) == rank(Gf2Matrix.from_vectors([*vectors, v]))


def same_span(a: Sequence[Gf2Vector], b: Sequence[Gf2Vector], n: int) -> bool:
    """True iff the two vector lists span the same subspace of GF(2)^n."""
    ma = Gf2Matrix.from_vectors(a, n) if a else Gf2Matrix.zeros(0, n)
    mb = Gf2Matrix.from_vectors(b, n) if b else Gf2Matrix.zeros(0, n)
    both = Gf2Matrix(ma.nrows + mb.nrows, n, ma.rows + mb.rows)
    r = rank(both)
    return r == rank(ma) == rank(mb)


def complete_to_invertible(rows: Sequence[Gf2Vector], n: int) -> Gf2Matrix:
    """Extend independent rows to an invertible ``n x n`` matrix.

    The input rows are kept verbatim as the leading rows.  Missing rows are
    standard basis vectors, tried from the last coordinate down to the first
    and accepted whenever they raise the rank.

    Raises:
        DependentRowsError: if the input rows are linearly dependent.
    """
    for v in rows:
        if v.n != n:
            raise DimensionError(f"row of length {v.n} in a {n}-dimensional completion")
    if len(rows) > n:
        raise DependentRowsError(f"{len(rows)} rows cannot be independent in dimension {n}")

    # echelon basis keyed by the highest set bit
    basis: dict[int, int] = {}

    def insert(x: int) -> bool:
        while x:
            lead = x.bit_length() - 1
            if lead not in basis:
                basis[lead] = x
                return True
            x ^= basis[lead]
        return False

    out = []
    for v in rows:
        if not insert(v.bits):
            raise DependentRowsError("input rows are linearly dependent over GF(2)")
        out.append(v.bits)
    for j in range(n - 1, -1, -1):
        if len(out) == n:
            break
        if insert(1 << j):
            out.append(1 << j)
    return Gf2Matrix(n, n, tuple(out))
