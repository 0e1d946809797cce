import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fermisym.fock import Permutation, triangle_hamiltonian
from fermisym.gf2 import Gf2Matrix, Gf2Vector, inverse, rank
from fermisym.jw import jw_lower_hamiltonian, jw_lower_mode
from fermisym.pauli import PauliString
from fermisym.symmetry import (
    MixedCompositionError,
    affine_tableau,
    compose,
    conjugate_string,
    conjugate_sum,
    cp_dense,
    cp_sign,
    is_symplectic,
    tableau_from_permutation,
    verify_invariance,
)


def perms(m):
    return st.permutations(range(1, m + 1)).map(lambda xs: Permutation(tuple(xs)))


def invertible(m):
    full = [Gf2Matrix(m, m, rows) for rows in itertools.product(range(1 << m), repeat=m)]
    return st.sampled_from([a for a in full if rank(a) == m])


GL3 = invertible(3)


@pytest.mark.parametrize("image", list(itertools.permutations((1, 2, 3, 4))))
def test_cp_dense_matches_operator_definition(image):
    p = Permutation(image)
    np.testing.assert_array_equal(cp_dense(p), oracles.permutation_unitary(p).real)


@given(perms(5))
@settings(max_examples=30)
def test_cp_conjugates_creation_operators(p):
    c = cp_dense(p)
    for j in range(1, 6):
        lhs = c @ jw_lower_mode(j, True, 5).to_dense() @ c.T
        np.testing.assert_allclose(lhs, jw_lower_mode(p(j), True, 5).to_dense(), atol=1e-14)


@given(perms(5))
def test_permutation_tableau_is_symplectic(p):
    assert is_symplectic(tableau_from_permutation(p))


@given(perms(4), st.integers(0, 15), st.integers(0, 15), st.integers(0, 3))
@settings(max_examples=200)
def test_conjugation_matches_dense(p, r, s, k):
    t = tableau_from_permutation(p)
    sigma = PauliString.from_bits(4, r, s, k)
    c = cp_dense(p)
    np.testing.assert_allclose(conjugate_string(t, sigma).to_dense(), c @ sigma.to_dense() @ c.T, atol=1e-12)


def test_block_map_alone_misses_phase():
    # X1 X3 under the 3-cycle: the bare (r, s) map gives +X1 X2 Z1 Z2 Z3,
    # the true image carries a minus sign
    p = Permutation((2, 3, 1))
    out = conjugate_string(tableau_from_permutation(p), PauliString.from_label("X1 X3", 3))
    assert out.label() == "X1 X2 Z1 Z2 Z3"
    assert out.phase_k == 2


def test_identity_tableau():
    t = tableau_from_permutation(Permutation.identity(3))
    assert t.is_identity()


def test_image_of():
    t = tableau_from_permutation(Permutation((2, 3, 1)))
    assert t.image_of("X", 3).label() == "X1 Z2 Z3"
    assert t.image_of("Z", 1).label() == "Z2"


@pytest.mark.parametrize("nu, sign", [((1, 0, 1), -1), ((1, 1, 0), 1), ((0, 0, 0), 1), ((1, 1, 1), 1)])
def test_cp_sign_cycle(nu, sign):
    assert cp_sign(Permutation((2, 3, 1)), nu) == sign


@given(perms(5), perms(5))
def test_compose_is_homomorphism(p2, p1):
    t = compose(tableau_from_permutation(p2), tableau_from_permutation(p1))
    assert t.matrix() == tableau_from_permutation(p2.compose(p1)).matrix()


def test_compose_rejects_mixed_kinds():
    tp = tableau_from_permutation(Permutation((2, 1)))
    ta = affine_tableau(Gf2Matrix.identity(2), Gf2Vector.zeros(2))
    with pytest.raises(MixedCompositionError):
        compose(tp, ta)


def test_verify_invariance():
    h = jw_lower_hamiltonian(triangle_hamiltonian())
    assert verify_invariance(h, Permutation((2, 3, 1)))
    h.add(1.0, PauliString.from_label("Z1", 3))
    assert not verify_invariance(h, Permutation((2, 3, 1)))
    assert verify_invariance(h, Permutation((1, 3, 2)))


class TestAffine:
    @given(st.data())
    @settings(max_examples=60)
    def test_conjugation_matches_dense(self, data):
        m = 3
        a = data.draw(GL3)
        b = Gf2Vector(m, data.draw(st.integers(0, (1 << m) - 1)))
        sigma = PauliString.from_bits(m, data.draw(st.integers(0, 7)), data.draw(st.integers(0, 7)))
        u = oracles.affine_unitary(a.to_array(), b.to_list())
        got = conjugate_string(affine_tableau(a, b), sigma).to_dense()
        np.testing.assert_allclose(got, u @ sigma.to_dense() @ u.T, atol=1e-14)

    @given(st.data())
    @settings(max_examples=30)
    def test_is_symplectic_and_composes(self, data):
        m = 3
        a1, a2 = data.draw(GL3), data.draw(GL3)
        b1 = Gf2Vector(m, data.draw(st.integers(0, 7)))
        b2 = Gf2Vector(m, data.draw(st.integers(0, 7)))
        t1, t2 = affine_tableau(a1, b1), affine_tableau(a2, b2)
        assert is_symplectic(t1)
        t = compose(t2, t1)
        # x -> A2 (A1 x + b1) + b2
        direct = affine_tableau(a2 @ a1, a2.matvec(b1) + b2)
        assert t.matrix() == direct.matrix()
        assert t.sign_vector == direct.sign_vector

    def test_blocks(self):
        a = Gf2Matrix.from_rows([[1, 1], [0, 1]])
        t = affine_tableau(a, Gf2Vector.from_bits([0, 1]))
        assert t.x_block == a
        assert t.z_block == inverse(a).T
        assert t.sign_vector.to_list() == [0, 0, 1, 1]


def test_conjugate_sum_preserves_spectrum():
    rng = np.random.default_rng(11)
    model = oracles.random_hermitian_model(rng, 4)
    h = jw_lower_hamiltonian(model)
    p = Permutation((4, 1, 3, 2))
    c = cp_dense(p)
    np.testing.assert_allclose(conjugate_sum(tableau_from_permutation(p), h).to_dense(), c @ h.to_dense() @ c.T, atol=1e-12)
