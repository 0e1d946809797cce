"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each case checks that both backends agree before timing them.
"""

from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from fermisym import _core_py
from fermisym._backend import compiled


def cases():
    rng = random.Random(0)
    n = 256
    rows = [rng.getrandbits(n) for _ in range(n)]
    yield "rref 256x256", "rref_rows", (rows, n)

    half = 128
    augmented = [(r >> half) | (1 << (half + i)) for i, r in enumerate(rows[:half])]
    yield "rref [A|I] 128x256", "rref_rows", (augmented, 2 * half)

    m = 10
    g = np.random.default_rng(0)
    nterms = 200
    r = g.integers(0, 1 << m, size=nterms)
    s = g.integers(0, 1 << m, size=nterms)
    c = g.normal(size=nterms) + 1j * g.normal(size=nterms)
    yield f"pauli_dense M={m}, {nterms} terms", "pauli_dense", (r, s, c, m)

    m = 12
    perm = list(g.permutation(m))
    yield f"perm signs M={m}", "perm_images_signs", (perm, m)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.allclose(a, b)
    return a == b


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'case':<32}{'python [ms]':>14}{'compiled [ms]':>16}{'speedup':>10}")
    for label, name, call_args in cases():
        py = getattr(_core_py, name)
        t_py = min(timeit.repeat(lambda: py(*call_args), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{label:<32}{t_py:>14.2f}{'-':>16}{'-':>10}")
            continue
        fast = getattr(compiled, name)
        if not same(py(*call_args), fast(*call_args)):
            raise SystemExit(f"backends disagree on {label}")
        t_c = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<32}{t_py:>14.2f}{t_c:>16.2f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
