"""Report builders behind the CLI subcommands.

Each builder returns ``(report, ok)``: a JSON-ready dict and whether every
verification it ran passed.  Floats are rounded to 12 significant digits.
"""

from __future__ import annotations

import numpy as np

from fermisym.exact import commutator_norm, eigenvalues_hermitian, multiset_equal
from fermisym.fock import (
    Permutation,
    SecondQuantizedHamiltonian,
    boolean_diagonalizer,
    check_coefficient_symmetry,
    permutation_rep,
    rotate_basis,
    sector_matrix,
)
from fermisym.gf2 import Gf2Vector, span_contains
from fermisym.hamfile import HamiltonianFile
from fermisym.jw import jw_lower_hamiltonian
from fermisym.pauli import DENSE_CAP, PauliString, PauliSum, format_coeff
from fermisym.symmetry import conjugate_string, conjugate_sum, cp_dense, tableau_from_permutation
from fermisym.taper import (
    SectorAssignment,
    boolean_symmetry_to_zstring,
    build_plan,
    choose_z_strings,
    enumerate_sectors,
    find_z_symmetries,
    number_conservation_strings,
    taper_sector,
)

SPECTRUM_TOL = 1e-9
FOCK_TOL = 1e-10


def sig12(x: float) -> float:
    return float(f"{float(x):.12g}") + 0.0


def _spectrum(values) -> list[float]:
    return [sig12(v) for v in values]


def _zlabel(v: Gf2Vector) -> str:
    return " ".join(f"Z{j + 1}" for j in v.support()) or "I"


def _coeff_record(c: complex):
    c = complex(c)
    return sig12(c.real) if c.imag == 0 else [sig12(c.real), sig12(c.imag)]


def jw_report(f: HamiltonianFile):
    h = jw_lower_hamiltonian(f.hamiltonian)
    herm = h.is_hermitian()
    return {
        "command": "jw",
        "modes": f.num_modes,
        "num_terms": len(h),
        "hermitian": herm,
        "terms": h.lines(),
    }, herm


def resolve_permutation(f: HamiltonianFile, spec: str) -> tuple[str, Permutation]:
    """A declared name, or an inline image list such as ``"2 3 1"``."""
    if spec in f.permutations:
        return spec, f.permutations[spec]
    try:
        image = tuple(int(x) for x in spec.replace(",", " ").split())
    except ValueError:
        raise ValueError(f"unknown permutation {spec!r}") from None
    if len(image) != f.num_modes:
        raise ValueError(f"permutation {spec!r} needs {f.num_modes} entries")
    return spec, Permutation(image)


def _dense_invariant(h: PauliSum, p: Permutation) -> bool:
    c = cp_dense(p)
    hd = h.to_dense()
    return bool(np.max(np.abs(c @ hd @ c.T - hd)) < 1e-12)


def symmetry_report(f: HamiltonianFile, perms: list[tuple[str, Permutation]]):
    h = jw_lower_hamiltonian(f.hamiltonian)
    m = f.num_modes
    entries, ok = [], True
    for name, p in perms:
        t = tableau_from_permutation(p)
        invariant = h.equals(conjugate_sum(t, h))
        images = {}
        for op in "XZ":
            for i in range(1, m + 1):
                img = conjugate_string(t, PauliString.single(op, i, m))
                images[f"{op}{i}"] = str(img).lstrip("+ ").strip() if img.phase_k == 0 else str(img)
        entry = {
            "name": name,
            "permutation": list(p.image),
            "coefficient_symmetric": check_coefficient_symmetry(f.hamiltonian, p),
            "tableau": t.to_grid().splitlines(),
            "images": images,
            "status": "INVARIANT" if invariant else "NOT INVARIANT",
        }
        if m <= DENSE_CAP:
            dense = _dense_invariant(h, p)
            entry["dense_invariant"] = dense
            ok &= dense == invariant
        ok &= invariant
        entries.append(entry)
    return {"command": "symmetry", "modes": m, "permutations": entries}, ok


def adapt(f: HamiltonianFile, p: Permutation):
    """Rotate to the Boolean-adapted basis of ``p`` and lower to qubits."""
    v, lam = boolean_diagonalizer(p)
    rotated = rotate_basis(f.hamiltonian, v)
    return v, lam, rotated, jw_lower_hamiltonian(rotated)


def _model_record(h: SecondQuantizedHamiltonian) -> dict:
    h = h.collected()
    return {
        "one_body": [[i, j, _coeff_record(c)] for i, j, c in h.one_body],
        "two_body": [[i, j, k, l, _coeff_record(c)] for i, j, k, l, c in h.two_body],
    }


def adapt_report(f: HamiltonianFile, name: str, p: Permutation):
    v, lam, rotated, hq = adapt(f, p)
    gamma = boolean_symmetry_to_zstring(lam)
    commutes = all((r & gamma.bits).bit_count() % 2 == 0 for r, _ in hq.terms)
    return {
        "command": "adapt",
        "permutation": {"name": name, "image": list(p.image)},
        "eigenvalues": lam,
        "rotation": [[sig12(x) for x in row] for row in v],
        "model": _model_record(rotated),
        "jw_terms": hq.lines(),
        "gamma": gamma.to_list(),
        "gamma_string": _zlabel(gamma),
        "gamma_commutes": commutes,
    }, commutes


def default_adapt_permutation(f: HamiltonianFile) -> tuple[str, Permutation] | None:
    for name, p in f.permutations.items():
        if p.is_boolean() and not p.is_identity():
            return name, p
    return None


def taper_report(
    f: HamiltonianFile,
    adapt_with: tuple[str, Permutation] | None,
    b: Gf2Vector | None = None,
    sector: SectorAssignment | None = None,
    spectra: bool = False,
):
    m = f.num_modes
    preferred = number_conservation_strings(f.spins.values(), m) if f.spins else []
    if adapt_with is not None:
        _, lam, _, h = adapt(f, adapt_with[1])
        preferred.append(boolean_symmetry_to_zstring(lam))
    else:
        h = jw_lower_hamiltonian(f.hamiltonian)
    # Qubit 1 as the most significant bit, largest first: Z1Z2, Z2Z4, Z3Z4.
    zs = sorted(choose_z_strings(h, preferred), key=lambda v: v.to_index(), reverse=True)
    plan = build_plan(zs, m, b)
    hc = conjugate_sum(plan.tableau, h)

    if sector is not None:
        pairs = [(sector, taper_sector(hc, plan, sector))]
    else:
        pairs = enumerate_sectors(hc, plan, conjugated=True)

    report = {
        "command": "taper",
        "modes": m,
        "adapted_with": None if adapt_with is None else {"name": adapt_with[0], "image": list(adapt_with[1].image)},
        "z_strings": [_zlabel(v) for v in zs],
        "plan": plan.to_record(),
        "tableau": plan.tableau.to_grid().splitlines(),
        "conjugated_terms": hc.lines(),
        "num_sectors": len(pairs),
        "sectors": [],
    }
    ok = True
    union = []
    for sec, hs in pairs:
        entry = {"eigenvalues": list(sec.eigenvalues), "num_qubits": hs.num_qubits, "terms": hs.lines()}
        if spectra:
            ev = eigenvalues_hermitian(hs.to_dense())
            union.extend(ev)
            entry["spectrum"] = _spectrum(ev)
        report["sectors"].append(entry)
    if spectra and sector is None:
        full = eigenvalues_hermitian(h.to_dense())
        match = multiset_equal(union, full, SPECTRUM_TOL)
        report["full_spectrum"] = _spectrum(full)
        report["verification"] = {"spectrum_union_matches": match, "tolerance": SPECTRUM_TOL}
        ok &= match
    return report, ok


def spectrum_report(f: HamiltonianFile):
    h = f.hamiltonian
    full = eigenvalues_hermitian(jw_lower_hamiltonian(h).to_dense())
    by_n, union = {}, []
    for n in range(h.num_modes + 1):
        ev = eigenvalues_hermitian(sector_matrix(h, n))
        by_n[str(n)] = _spectrum(ev)
        union.extend(ev)
    match = multiset_equal(union, full, FOCK_TOL)
    return {
        "command": "spectrum",
        "modes": h.num_modes,
        "spectrum": _spectrum(full),
        "fock_sectors": by_n,
        "verification": {"fock_matches_qubit": match, "tolerance": FOCK_TOL},
    }, match


def verify_report(f: HamiltonianFile):
    """Run every oracle check that applies to the model."""
    checks = []

    def check(name, passed, detail=""):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    model = f.hamiltonian
    m = model.num_modes
    h = jw_lower_hamiltonian(model)
    check("jw_hermitian", h.is_hermitian())
    _, spec_ok = spectrum_report(f)
    check("fock_spectrum_matches_qubit_spectrum", spec_ok)

    for name, p in f.permutations.items():
        sym = check_coefficient_symmetry(model, p)
        check(f"{name}: coefficient_symmetry", sym)
        if not sym:
            continue
        comm = max(
            commutator_norm(sector_matrix(model, n), permutation_rep(p, n)) for n in range(m + 1)
        )
        check(f"{name}: fock_rep_commutes", comm == 0.0, f"max |[H_N, U_N]| = {comm:.3g}")
        t = tableau_from_permutation(p)
        check(f"{name}: tableau_invariance", h.equals(conjugate_sum(t, h)))
        c = cp_dense(p)
        worst = 0.0
        for op in "XZ":
            for i in range(1, m + 1):
                g = PauliString.single(op, i, m)
                diff = conjugate_string(t, g).to_dense() - c @ g.to_dense() @ c.T
                worst = max(worst, float(np.max(np.abs(diff))))
        check(f"{name}: generator_images_match_dense", worst < 1e-12, f"max deviation {worst:.3g}")
        check(f"{name}: dense_invariance", _dense_invariant(h, p))

    zs = find_z_symmetries(h)
    for label, modes in f.spins.items():
        n_sigma = number_conservation_strings([modes], m)[0]
        check(f"spins {label}: number_string_is_symmetry", span_contains(zs, n_sigma), _zlabel(n_sigma))

    adapt_with = default_adapt_permutation(f)
    if adapt_with is not None and not check_coefficient_symmetry(model, adapt_with[1]):
        adapt_with = None
    tap, tap_ok = taper_report(f, adapt_with, spectra=True)
    check("taper_spectrum_union", tap_ok, f"{tap['num_sectors']} sectors")

    ok = all(c["passed"] for c in checks)
    return {"command": "verify", "modes": m, "checks": checks, "all_passed": ok}, ok
