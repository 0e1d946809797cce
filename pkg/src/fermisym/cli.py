"""Command-line front end.

Exit status is 0 when every verification the subcommand ran passed, 1 on an
input error and 2 when a verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from fermisym import reports
from fermisym.gf2 import Gf2Error, Gf2Vector
from fermisym.hamfile import HamiltonianFileError, parse, shipped
from fermisym.pauli import DenseCapError
from fermisym.taper import SectorAssignment, TaperingError

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class InputError(ValueError):
    pass


def load(path: str, strict: bool = False):
    """Parse ``path``; a bare name like ``hubbard_dimer.ham`` falls back to the bundled data."""
    p = Path(path)
    if not p.exists():
        candidate = shipped(path if path.endswith(".ham") else path + ".ham")
        if candidate.exists():
            p = candidate
    return parse(p, strict=strict)


def _bits(text: str, n: int) -> Gf2Vector:
    cleaned = text.replace(",", "").replace(" ", "")
    if len(cleaned) != n or set(cleaned) - {"0", "1"}:
        raise InputError(f"--b needs {n} bits of 0/1, got {text!r}")
    return Gf2Vector.from_bits(int(c) for c in cleaned)


def _sector(text: str) -> SectorAssignment:
    try:
        return SectorAssignment(tuple(int(x) for x in text.replace(",", " ").split()))
    except ValueError as exc:
        raise InputError(f"bad --sector {text!r}: {exc}") from None


def _run(args) -> tuple[dict, bool]:
    f = load(args.file, strict=args.strict)
    cmd = args.command
    if cmd == "jw":
        return reports.jw_report(f)
    if cmd == "symmetry":
        specs = args.perm or list(f.permutations)
        if not specs:
            raise InputError("no permutation given and none declared in the file")
        return reports.symmetry_report(f, [reports.resolve_permutation(f, s) for s in specs])
    if cmd == "adapt":
        if args.perm:
            name, p = reports.resolve_permutation(f, args.perm)
        else:
            found = reports.default_adapt_permutation(f)
            if found is None:
                raise InputError("no Boolean permutation given and none declared in the file")
            name, p = found
        return reports.adapt_report(f, name, p)
    if cmd == "taper":
        if args.no_adapt:
            adapt_with = None
        elif args.perm:
            adapt_with = reports.resolve_permutation(f, args.perm)
        else:
            adapt_with = reports.default_adapt_permutation(f)
        b = _bits(args.b, f.num_modes) if args.b is not None else None
        sector = _sector(args.sector) if args.sector is not None else None
        return reports.taper_report(f, adapt_with, b, sector, args.spectra)
    if cmd == "spectrum":
        return reports.spectrum_report(f)
    if cmd == "verify":
        return reports.verify_report(f)
    raise InputError(f"unknown command {cmd!r}")


def render_text(report, indent: int = 0) -> str:
    """Structured text with the same nesting as the JSON report."""
    pad = "  " * indent
    out = []
    for key, value in report.items():
        if isinstance(value, dict):
            out.append(f"{pad}{key}:")
            out.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            out.append(f"{pad}{key}:")
            for item in value:
                body = render_text(item, indent + 2).splitlines()
                out.append(f"{pad}  - {body[0].lstrip()}")
                out.extend(body[1:])
        elif isinstance(value, list) and value and all(isinstance(v, str) for v in value):
            out.append(f"{pad}{key}:")
            out.extend(f"{pad}  {v}" for v in value)
        else:
            out.append(f"{pad}{key}: {_scalar(value)}")
    return "\n".join(line for line in out if line)


def _scalar(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermisym", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="Hamiltonian file, or the name of a bundled model")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--strict", action="store_true", help="reject non-Hermitian models")

    sub.add_parser("jw", parents=[common], help="Jordan-Wigner term list")
    p = sub.add_parser("symmetry", parents=[common], help="tableau and invariance check")
    p.add_argument("--perm", action="append", help='declared name or inline image, e.g. "2 3 1"')
    p = sub.add_parser("adapt", parents=[common], help="rotate to a Boolean-adapted basis")
    p.add_argument("--perm", help="Boolean permutation (default: first declared)")
    p = sub.add_parser("taper", parents=[common], help="remove qubits via Z-string symmetries")
    p.add_argument("--perm", help="Boolean permutation to adapt with (default: first declared)")
    p.add_argument("--no-adapt", action="store_true", help="taper the plain JW form")
    p.add_argument("--b", help="offset bits of the affine encoding, e.g. 0100")
    p.add_argument("--sector", help='one sector only, e.g. "-1 1 -1"')
    p.add_argument("--spectra", action="store_true", help="sector spectra and union check")
    sub.add_parser("spectrum", parents=[common], help="dense spectrum, per particle number too")
    sub.add_parser("verify", parents=[common], help="run every applicable oracle check")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, ok = _run(args)
    except (HamiltonianFileError, InputError, TaperingError, DenseCapError, Gf2Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
