"""Second-quantized Hamiltonians and the ordered-ket Fock-space oracle.

Mode labels are 1-based throughout.  A ket ``|j_1 ... j_N>`` with
``j_1 < ... < j_N`` is ``a+_{j_N} ... a+_{j_1} |0>``; two-body terms are
``v_ijkl a+_i a+_j a_k a_l`` with no reordering of the indices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from fermisym.gf2 import Gf2Matrix
from fermisym.pauli import ZERO_TOL

SECTOR_CAP = 4096


class SectorCapError(ValueError):
    pass


class NonBooleanError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..M}``; ``image[j-1]`` is ``P(j)``."""

    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(x) for x in self.image)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"{img} is not a permutation of 1..{len(img)}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, j: int) -> int:
        return self.image[j - 1]

    def compose(self, first: "Permutation") -> "Permutation":
        """``self o first``: apply ``first``, then ``self``."""
        if first.size != self.size:
            raise ValueError("permutations of different sizes")
        return Permutation(tuple(self(first(j)) for j in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for j, pj in enumerate(self.image, start=1):
            inv[pj - 1] = j
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return self.image == tuple(range(1, self.size + 1))

    def order(self) -> int:
        out = 1
        for cyc in self.cycles():
            out = math.lcm(out, len(cyc))
        return out

    def is_boolean(self) -> bool:
        return self.compose(self).is_identity()

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cyc = []
            j = start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return " ".join(map(str, self.image))


def to_matrix(p: Permutation) -> Gf2Matrix:
    """``Pi[i][j] = 1`` iff ``i = P(j)``."""
    rows = [0] * p.size
    for j in range(1, p.size + 1):
        rows[p(j) - 1] |= 1 << (j - 1)
    return Gf2Matrix(p.size, p.size, tuple(rows))


@dataclass
class SecondQuantizedHamiltonian:
    num_modes: int
    one_body: list[tuple[int, int, complex]] = field(default_factory=list)
    two_body: list[tuple[int, int, int, int, complex]] = field(default_factory=list)

    def __post_init__(self):
        if self.num_modes < 1:
            raise ValueError("need at least one mode")
        for term in self.one_body:
            self._check(term[:2])
        for term in self.two_body:
            self._check(term[:4])

    def _check(self, idx):
        for i in idx:
            if not 1 <= i <= self.num_modes:
                raise ValueError(f"mode index {i} out of range 1..{self.num_modes}")

    def collected_one_body(self) -> dict[tuple[int, int], complex]:
        return _collect((t[:2], t[2]) for t in self.one_body)

    def collected_two_body(self) -> dict[tuple[int, int, int, int], complex]:
        return _collect((t[:4], t[4]) for t in self.two_body)

    def collected(self) -> "SecondQuantizedHamiltonian":
        """Same operator with duplicate index tuples merged, in sorted order."""
        h = self.collected_one_body()
        v = self.collected_two_body()
        return SecondQuantizedHamiltonian(
            self.num_modes,
            [(*k, h[k]) for k in sorted(h)],
            [(*k, v[k]) for k in sorted(v)],
        )

    def operator_terms(self):
        """Yield ``(coeff, ops)`` with ``ops`` a left-to-right list of ``(mode, dagger)``."""
        for i, j, c in self.one_body:
            yield c, [(i, True), (j, False)]
        for i, j, k, l, c in self.two_body:
            yield c, [(i, True), (j, True), (k, False), (l, False)]


def _collect(items) -> dict:
    out: dict = {}
    for key, c in items:
        out[tuple(key)] = out.get(tuple(key), 0j) + complex(c)
    return {k: v for k, v in out.items() if abs(v) >= ZERO_TOL}


# ordered kets --------------------------------------------------------------

def apply_annihilation(i: int, ket: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """``a_i |J>``: sign ``(-1)^{N+l}`` with ``l`` the 1-based position of ``i``."""
    ket = tuple(ket)
    try:
        pos = ket.index(i)
    except ValueError:
        return 0, None
    n = len(ket)
    sign = -1 if (n + pos + 1) % 2 else 1
    return sign, ket[:pos] + ket[pos + 1:]


def apply_creation(i: int, ket: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    """``a+_i |J>``, the adjoint of :func:`apply_annihilation`."""
    ket = tuple(ket)
    if i in ket:
        return 0, None
    new = tuple(sorted(ket + (i,)))
    pos = new.index(i)
    sign = -1 if (len(new) + pos + 1) % 2 else 1
    return sign, new


def sector_basis(num_modes: int, n: int) -> list[tuple[int, ...]]:
    """Ordered kets with ``n`` particles, lexicographic."""
    return list(itertools.combinations(range(1, num_modes + 1), n))


def _check_cap(num_modes: int, n: int) -> None:
    if not 0 <= n <= num_modes:
        raise ValueError(f"particle number {n} outside 0..{num_modes}")
    if math.comb(num_modes, n) > SECTOR_CAP:
        raise SectorCapError(f"sector dimension {math.comb(num_modes, n)} exceeds {SECTOR_CAP}")


def sector_matrix(h: SecondQuantizedHamiltonian, n: int) -> np.ndarray:
    """``<K|H|L>`` over the ordered ``n``-particle kets."""
    _check_cap(h.num_modes, n)
    basis = sector_basis(h.num_modes, n)
    index = {k: a for a, k in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=complex)
    terms = list(h.operator_terms())
    for col, ket in enumerate(basis):
        for coeff, ops in terms:
            sign, cur = 1, ket
            for mode, dagger in reversed(ops):
                step, cur = (apply_creation if dagger else apply_annihilation)(mode, cur)
                if not step:
                    break
                sign *= step
            else:
                out[index[cur], col] += sign * coeff
    return out


def reorder_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (inversion-count parity)."""
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def permutation_rep(p: Permutation, n: int) -> np.ndarray:
    """Signed permutation matrix with ``U|K> = (-1)^{pi_P(K)} |sorted P(K)>``."""
    _check_cap(p.size, n)
    basis = sector_basis(p.size, n)
    index = {k: a for a, k in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)))
    for col, ket in enumerate(basis):
        img = [p(j) for j in ket]
        out[index[tuple(sorted(img))], col] = reorder_sign(img)
    return out


def check_coefficient_symmetry(h: SecondQuantizedHamiltonian, p: Permutation, tol: float = ZERO_TOL) -> bool:
    """Whether the collected coefficient maps are invariant under relabeling by ``p``."""
    if p.size != h.num_modes:
        raise ValueError(f"permutation of {p.size} labels for {h.num_modes} modes")
    for coeffs in (h.collected_one_body(), h.collected_two_body()):
        moved = {tuple(p(i) for i in key): c for key, c in coeffs.items()}
        for key in coeffs.keys() | moved.keys():
            if abs(coeffs.get(key, 0j) - moved.get(key, 0j)) > tol:
                return False
    return True


def relabel(h: SecondQuantizedHamiltonian, p: Permutation) -> SecondQuantizedHamiltonian:
    """Hamiltonian with every mode index ``i`` replaced by ``P(i)``."""
    return SecondQuantizedHamiltonian(
        h.num_modes,
        [(p(i), p(j), c) for i, j, c in h.one_body],
        [(p(i), p(j), p(k), p(l), c) for i, j, k, l, c in h.two_body],
    )


def symmetrize(h: SecondQuantizedHamiltonian, p: Permutation) -> SecondQuantizedHamiltonian:
    """Average of ``h`` over the cyclic group generated by ``p``."""
    order = p.order()
    one, two = [], []
    cur = Permutation.identity(p.size)
    for _ in range(order):
        g = relabel(h, cur)
        one += [(i, j, c / order) for i, j, c in g.one_body]
        two += [(i, j, k, l, c / order) for i, j, k, l, c in g.two_body]
        cur = p.compose(cur)
    return SecondQuantizedHamiltonian(h.num_modes, one, two).collected()


def boolean_diagonalizer(p: Permutation) -> tuple[np.ndarray, list[int]]:
    """Real orthogonal ``V`` with ``V Pi_P V^T = diag(lambda)`` for an involution.

    A fixed point ``i`` gives the row ``e_i`` (eigenvalue +1); a transposition
    ``(i j)`` gives ``(e_i + e_j)/sqrt2`` (+1) then ``(e_i - e_j)/sqrt2`` (-1).
    Rows are ordered by the smallest mode they involve.
    """
    if not p.is_boolean():
        raise NonBooleanError(f"permutation {p} has order {p.order()} > 2")
    m = p.size
    v = np.zeros((m, m))
    lam = []
    row = 0
    r2 = 1 / math.sqrt(2)
    for cyc in sorted(p.cycles()):
        if len(cyc) == 1:
            v[row, cyc[0] - 1] = 1.0
            lam.append(1)
            row += 1
        else:
            i, j = sorted(cyc)
            v[row, i - 1], v[row, j - 1] = r2, r2
            v[row + 1, i - 1], v[row + 1, j - 1] = r2, -r2
            lam += [1, -1]
            row += 2
    return v, lam


def rotate_basis(h: SecondQuantizedHamiltonian, v: np.ndarray, tol: float = ZERO_TOL) -> SecondQuantizedHamiltonian:
    """Rewrite ``h`` in the operators ``c_a = sum_j V_aj a_j`` (real orthogonal ``V``).

    ``h'_ab = sum V_ai h_ij V_bj`` and each of the four two-body indices is
    contracted with one factor of ``V``.
    """
    v = np.asarray(v, dtype=float)
    m = h.num_modes
    if v.shape != (m, m):
        raise ValueError(f"rotation of shape {v.shape} for {m} modes")
    one = np.zeros((m, m), dtype=complex)
    for (i, j), c in h.collected_one_body().items():
        one[i - 1, j - 1] += c
    two = np.zeros((m,) * 4, dtype=complex)
    for (i, j, k, l), c in h.collected_two_body().items():
        two[i - 1, j - 1, k - 1, l - 1] += c
    one_new = v @ one @ v.T
    two_new = np.einsum("ai,bj,ck,dl,ijkl->abcd", v, v, v, v, two, optimize=True)
    one_body = [
        (a + 1, b + 1, complex(one_new[a, b]))
        for a, b in itertools.product(range(m), repeat=2)
        if abs(one_new[a, b]) >= tol
    ]
    two_body = [
        (a + 1, b + 1, c + 1, d + 1, complex(two_new[a, b, c, d]))
        for a, b, c, d in itertools.product(range(m), repeat=4)
        if abs(two_new[a, b, c, d]) >= tol
    ]
    return SecondQuantizedHamiltonian(m, one_body, two_body)


# model builders ------------------------------------------------------------

def triangle_hamiltonian() -> SecondQuantizedHamiltonian:
    """Spinless hopping on a three-site ring, unit amplitude."""
    pairs = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]
    return SecondQuantizedHamiltonian(3, [(i, j, 1.0) for i, j in pairs])


def hubbard_dimer(t: float = 1.0, u: float = 4.0) -> SecondQuantizedHamiltonian:
    """Two-site Hubbard model, modes ``(up 1, up 2, down 1, down 2)``.

    ``n_1 n_3 = a+_1 a_1 a+_3 a_3 = a+_1 a+_3 a_3 a_1`` is stored as ``v_{1331}``.
    """
    one = [(1, 2, -t), (2, 1, -t), (3, 4, -t), (4, 3, -t)]
    two = [(1, 3, 3, 1, u), (2, 4, 4, 2, u)]
    return SecondQuantizedHamiltonian(4, one, two)
