"""Fermionic Hamiltonians on qubits: Jordan-Wigner lowering, permutation
symmetries as Clifford tableaux, and qubit tapering over GF(2)."""

from fermisym._backend import BACKEND
from fermisym.fock import Permutation, SecondQuantizedHamiltonian, hubbard_dimer, triangle_hamiltonian
from fermisym.gf2 import Gf2Matrix, Gf2Vector
from fermisym.jw import jw_lower_hamiltonian, jw_lower_mode
from fermisym.pauli import PauliString, PauliSum
from fermisym.symmetry import CliffordTableau, conjugate_string, conjugate_sum, tableau_from_permutation
from fermisym.taper import SectorAssignment, TaperingPlan, build_plan, enumerate_sectors, find_z_symmetries

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CliffordTableau",
    "Gf2Matrix",
    "Gf2Vector",
    "PauliString",
    "PauliSum",
    "Permutation",
    "SecondQuantizedHamiltonian",
    "SectorAssignment",
    "TaperingPlan",
    "build_plan",
    "conjugate_string",
    "conjugate_sum",
    "enumerate_sectors",
    "find_z_symmetries",
    "hubbard_dimer",
    "jw_lower_hamiltonian",
    "jw_lower_mode",
    "tableau_from_permutation",
    "triangle_hamiltonian",
]
