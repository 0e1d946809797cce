import json
import subprocess
import sys

import numpy as np
import pytest

from fermisym.cli import EXIT_INPUT, EXIT_OK, EXIT_VERIFY, main, render_text
from fermisym.hamfile import shipped


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_jw_triangle(capsys):
    code, out, _ = run(capsys, "jw", str(shipped("triangle.ham")))
    assert code == EXIT_OK
    assert "+0.5 X1 X2" in out and "-0.5 X1 X3 Z1 Z2 Z3" in out


def test_bundled_name_fallback(capsys):
    code, report = run_json(capsys, "jw", "triangle")
    assert code == EXIT_OK and report["num_terms"] == 6


def test_symmetry_inline(capsys):
    code, out, _ = run(capsys, "symmetry", "triangle.ham", "--perm", "2 3 1")
    assert code == EXIT_OK
    assert "INVARIANT" in out and "NOT INVARIANT" not in out
    assert "1 1 0 | 0 0 1" in out


def test_symmetry_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "chain.ham"
    path.write_text("modes 3\nh 1 2 1\nh 2 1 1\nh 2 3 1\nh 3 2 1\n")
    code, report = run_json(capsys, "symmetry", str(path), "--perm", "2 3 1")
    assert code == EXIT_VERIFY
    assert report["permutations"][0]["status"] == "NOT INVARIANT"
    assert report["permutations"][0]["dense_invariant"] is False


def test_adapt(capsys):
    code, report = run_json(capsys, "adapt", "hubbard_dimer")
    assert code == EXIT_OK
    assert report["eigenvalues"] == [1, -1, 1, -1]
    assert report["gamma_string"] == "Z2 Z4"


def test_taper_spectra(capsys):
    code, report = run_json(capsys, "taper", "hubbard_dimer", "--spectra")
    assert code == EXIT_OK
    assert report["num_sectors"] == 8
    assert report["z_strings"] == ["Z1 Z2", "Z2 Z4", "Z3 Z4"]
    assert report["verification"]["spectrum_union_matches"]
    gerade = next(s for s in report["sectors"] if s["eigenvalues"] == [-1, 1, -1])
    np.testing.assert_allclose(gerade["spectrum"], [2 - 2 * np.sqrt(2), 2 + 2 * np.sqrt(2)], atol=1e-9)


def test_taper_without_adaptation(capsys):
    code, report = run_json(capsys, "taper", "hubbard_dimer", "--no-adapt", "--spectra")
    assert code == EXIT_OK
    assert report["num_sectors"] == 4
    assert report["adapted_with"] is None


def test_taper_single_sector_with_offset(capsys):
    code, report = run_json(capsys, "taper", "hubbard_dimer", "--sector", "-1 1 -1", "--b", "0100")
    assert code == EXIT_OK
    assert report["plan"]["b"] == [0, 1, 0, 0]
    assert len(report["sectors"]) == 1


def test_spectrum_and_verify(capsys):
    code, report = run_json(capsys, "spectrum", "hubbard_dimer")
    assert code == EXIT_OK and report["verification"]["fock_matches_qubit"]
    assert len(report["spectrum"]) == 16
    code, report = run_json(capsys, "verify", "triangle")
    assert code == EXIT_OK and report["all_passed"]


@pytest.mark.parametrize(
    "argv",
    [
        ["jw", "no_such_file.ham"],
        ["symmetry", "triangle", "--perm", "1 2"],
        ["symmetry", "triangle", "--perm", "nope"],
        ["adapt", "triangle", "--perm", "cycle"],
        ["taper", "hubbard_dimer", "--b", "01"],
        ["taper", "hubbard_dimer", "--sector", "1 2 1"],
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("error: ") and out == ""


def test_text_mirrors_json(capsys):
    _, report = run_json(capsys, "spectrum", "triangle")
    _, out, _ = run(capsys, "spectrum", "triangle")
    assert out.strip() == render_text(report)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fermisym", "jw", "triangle", "--json"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["hermitian"] is True
