"""Jordan-Wigner lowering of fermionic modes and Hamiltonians to Pauli sums."""

from __future__ import annotations

from functools import lru_cache

from fermisym.fock import SecondQuantizedHamiltonian
from fermisym.pauli import PauliSum


@lru_cache(maxsize=1024)
def _mode(k: int, dagger: bool, num_modes: int) -> PauliSum:
    if not 1 <= k <= num_modes:
        raise ValueError(f"mode {k} out of range 1..{num_modes}")
    x = 1 << (k - 1)
    tail = 0
    for j in range(k, num_modes):
        tail |= 1 << j
    # sigma^- = (X - iY)/2 = (X + XZ)/2 raises occupation; sigma^+ = (X - XZ)/2
    zsign = 0.5 if dagger else -0.5
    return PauliSum(num_modes, {(x, tail): 0.5, (x, tail | x): zsign})


def jw_lower_mode(k: int, dagger: bool, num_modes: int) -> PauliSum:
    """``A_k`` (or ``A_k^dagger``) = sigma^{+/-}_k Z_{k+1} ... Z_M."""
    return _mode(k, bool(dagger), num_modes).copy()


def jw_lower_hamiltonian(h: SecondQuantizedHamiltonian) -> PauliSum:
    m = h.num_modes
    out = PauliSum(m)
    for coeff, ops in h.operator_terms():
        prod = _mode(ops[0][0], ops[0][1], m)
        for mode, dagger in ops[1:]:
            prod = prod @ _mode(mode, dagger, m)
        for (r, s), c in prod.terms.items():
            out._add(r, s, coeff * c)
    return out


def number_operator(num_modes: int) -> PauliSum:
    """Total particle number ``sum_k (1 - Z_k)/2``."""
    out = PauliSum(num_modes)
    for k in range(num_modes):
        out._add(0, 0, 0.5)
        out._add(0, 1 << k, -0.5)
    return out
