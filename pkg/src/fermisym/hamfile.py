"""Line-based Hamiltonian files.

::

    # triangle, spinless
    modes 3
    h 1 2 1.0          # h i j re [im]
    v 1 3 3 1 4.0      # v i j k l re [im]
    perm cyc 2 3 1     # perm NAME P(1) ... P(M)
    spins up 1 2       # spins LABEL modes...

Indices are 1-based.  Duplicate ``h``/``v`` lines are summed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from fermisym.fock import Permutation, SecondQuantizedHamiltonian
from fermisym.jw import jw_lower_hamiltonian


class HamiltonianFileError(ValueError):
    def __init__(self, message: str, source: str = "<string>", line: int | None = None, column: int | None = None):
        self.source, self.line, self.column = source, line, column
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")


@dataclass
class HamiltonianFile:
    hamiltonian: SecondQuantizedHamiltonian
    permutations: dict[str, Permutation] = field(default_factory=dict)
    spins: dict[str, list[int]] = field(default_factory=dict)

    @property
    def num_modes(self) -> int:
        return self.hamiltonian.num_modes


def _tokens(line: str):
    """Whitespace tokens with 1-based start columns, comments stripped."""
    text = line.split("#", 1)[0]
    out, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], i + 1))
        i = j
    return out


def parse_text(text: str, source: str = "<string>", strict: bool = False) -> HamiltonianFile:
    modes = None
    one, two = [], []
    perms: dict[str, Permutation] = {}
    spins: dict[str, list[int]] = {}

    def err(msg, lineno, col=None):
        return HamiltonianFileError(msg, source, lineno, col)

    def integer(tok, lineno):
        word, col = tok
        try:
            return int(word)
        except ValueError:
            raise err(f"expected an integer, got {word!r}", lineno, col) from None

    def number(tok, lineno):
        word, col = tok
        try:
            return float(word)
        except ValueError:
            raise err(f"expected a number, got {word!r}", lineno, col) from None

    def index(tok, lineno):
        if modes is None:
            raise err("'modes' must be declared before any index", lineno, tok[1])
        i = integer(tok, lineno)
        if not 1 <= i <= modes:
            raise err(f"index {i} out of range 1..{modes}", lineno, tok[1])
        return i

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        key, kcol = toks[0]
        args = toks[1:]
        if key == "modes":
            if modes is not None:
                raise err("'modes' declared twice", lineno, kcol)
            if len(args) != 1:
                raise err("expected 'modes M'", lineno, kcol)
            modes = integer(args[0], lineno)
            if modes < 1:
                raise err("mode count must be positive", lineno, args[0][1])
        elif key in ("h", "v"):
            nidx = 2 if key == "h" else 4
            if len(args) not in (nidx + 1, nidx + 2):
                raise err(f"expected '{key}' + {nidx} indices + re [im]", lineno, kcol)
            idx = [index(t, lineno) for t in args[:nidx]]
            re_ = number(args[nidx], lineno)
            im = number(args[nidx + 1], lineno) if len(args) == nidx + 2 else 0.0
            coeff = complex(re_, im)
            (one if key == "h" else two).append((*idx, coeff))
        elif key == "perm":
            if len(args) < 2:
                raise err("expected 'perm NAME p1 ... pM'", lineno, kcol)
            name = args[0][0]
            if name in perms:
                raise err(f"permutation {name!r} declared twice", lineno, args[0][1])
            image = [index(t, lineno) for t in args[1:]]
            if len(image) != modes:
                raise err(f"permutation needs {modes} entries, got {len(image)}", lineno, args[1][1])
            try:
                perms[name] = Permutation(tuple(image))
            except ValueError as exc:
                raise err(str(exc), lineno, args[1][1]) from None
        elif key == "spins":
            if len(args) < 2:
                raise err("expected 'spins LABEL i1 i2 ...'", lineno, kcol)
            label = args[0][0]
            spins.setdefault(label, []).extend(index(t, lineno) for t in args[1:])
        else:
            raise err(f"unknown keyword {key!r}", lineno, kcol)

    if modes is None:
        raise HamiltonianFileError("missing 'modes' declaration", source)
    seen: dict[int, str] = {}
    for label, idx in spins.items():
        for i in idx:
            if i in seen:
                raise HamiltonianFileError(f"mode {i} listed under spins {seen[i]!r} and {label!r}", source)
            seen[i] = label

    ham = SecondQuantizedHamiltonian(modes, one, two).collected()
    if strict and not jw_lower_hamiltonian(ham).is_hermitian():
        raise HamiltonianFileError("Hamiltonian is not Hermitian", source)
    return HamiltonianFile(ham, perms, spins)


def parse(path, strict: bool = False) -> HamiltonianFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise HamiltonianFileError(f"cannot read file: {exc.strerror or exc}", str(path)) from None
    return parse_text(text, str(path), strict)


def _num(x: float) -> str:
    return repr(float(x))


def emit(f: HamiltonianFile) -> str:
    """Serialize so that :func:`parse_text` reproduces the same model."""
    h = f.hamiltonian
    lines = [f"modes {h.num_modes}"]
    for i, j, c in h.one_body:
        c = complex(c)
        tail = f" {_num(c.imag)}" if c.imag else ""
        lines.append(f"h {i} {j} {_num(c.real)}{tail}")
    for i, j, k, l, c in h.two_body:
        c = complex(c)
        tail = f" {_num(c.imag)}" if c.imag else ""
        lines.append(f"v {i} {j} {k} {l} {_num(c.real)}{tail}")
    for name, p in f.permutations.items():
        lines.append(f"perm {name} {p}")
    for label, idx in f.spins.items():
        lines.append(f"spins {label} " + " ".join(map(str, idx)))
    return "\n".join(lines) + "\n"


def shipped(name: str) -> Path:
    """Path of a model file bundled with the package (e.g. ``hubbard_dimer.ham``)."""
    return Path(str(resources.files("fermisym") / "data" / name))
