"""Both kernel backends against brute-force references and each other."""

import itertools
import random

import numpy as np
import pytest

from fermisym import _backend, _core_py

BACKENDS = [pytest.param(_core_py, id="python")]
if _backend.compiled is not None:
    BACKENDS.append(pytest.param(_backend.compiled, id="compiled"))


def test_backend_flag_is_consistent():
    assert _backend.BACKEND in ("compiled", "python")
    assert (_backend.BACKEND == "compiled") == (_backend.kernels is _backend.compiled)


def _is_rref(rows, pivots, ncols):
    for i, (r, p) in enumerate(zip(rows, pivots)):
        assert r & ((1 << p) - 1) == 0, "bits left of the pivot"
        assert r >> p & 1
        for j, other in enumerate(rows):
            if j != i:
                assert not other >> p & 1
    assert pivots == sorted(pivots)


def _rank_bruteforce(rows, ncols):
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span).bit_length() - 1


@pytest.mark.parametrize("core", BACKENDS)
@pytest.mark.parametrize("seed", range(20))
def test_rref_small_against_bruteforce(core, seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 7), rng.randint(1, 9)
    rows = [rng.getrandbits(ncols) for _ in range(nrows)]
    reduced, pivots = core.rref_rows(rows, ncols)
    assert len(reduced) == len(pivots) == _rank_bruteforce(rows, ncols)
    _is_rref(reduced, pivots, ncols)
    # same row space
    assert _rank_bruteforce(rows + reduced, ncols) == len(reduced)


@pytest.mark.parametrize("core", BACKENDS)
@pytest.mark.parametrize("ncols", [63, 64, 65, 130])
def test_rref_across_word_boundaries(core, ncols):
    rng = random.Random(ncols)
    rows = [rng.getrandbits(ncols) for _ in range(ncols // 2)]
    rows.append(rows[0] ^ rows[1])
    reduced, pivots = core.rref_rows(rows, ncols)
    _is_rref(reduced, pivots, ncols)
    assert (reduced, pivots) == _core_py.rref_rows(rows, ncols)


@pytest.mark.parametrize("core", BACKENDS)
def test_rref_empty(core):
    assert core.rref_rows([], 4) == ([], [])
    assert core.rref_rows([0, 0], 3) == ([], [])


@pytest.mark.parametrize("core", BACKENDS)
def test_pauli_dense_single_terms(core):
    x = np.array([[0, 1], [1, 0]])
    z = np.diag([1, -1])
    # index convention: mask bit 1 is qubit 1 of two
    np.testing.assert_array_equal(core.pauli_dense([2], [0], [1.0], 2).real, np.kron(x, np.eye(2)))
    np.testing.assert_array_equal(core.pauli_dense([0], [1], [1.0], 2).real, np.kron(np.eye(2), z))
    np.testing.assert_array_equal(core.pauli_dense([1], [1], [1.0], 1).real, x @ z)


@pytest.mark.parametrize("core", BACKENDS)
def test_pauli_dense_sum_matches_python(core):
    rng = np.random.default_rng(3)
    m = 5
    r = rng.integers(0, 1 << m, size=12)
    s = rng.integers(0, 1 << m, size=12)
    c = rng.normal(size=12) + 1j * rng.normal(size=12)
    np.testing.assert_allclose(core.pauli_dense(r, s, c, m), _core_py.pauli_dense(r, s, c, m), atol=1e-14)


def _inversions(seq):
    return sum(1 for a, b in itertools.combinations(seq, 2) if a > b)


@pytest.mark.parametrize("core", BACKENDS)
@pytest.mark.parametrize("perm", list(itertools.permutations(range(4))))
def test_perm_images_signs(core, perm):
    m = 4
    images, signs = core.perm_images_signs(list(perm), m)
    for v in range(1 << m):
        occ = [j for j in range(m) if v >> (m - 1 - j) & 1]
        mapped = [perm[j] for j in occ]
        assert images[v] == sum(1 << (m - 1 - q) for q in mapped)
        assert signs[v] == (-1) ** _inversions(mapped)
