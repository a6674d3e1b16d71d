import numpy as np
import pytest
from hypothesis import given, settings

from conftest import seeds
from quatfa.errors import AlgebraClosureError, NotCommutativeError
from quatfa.hbstar import (
    AlgebraElement,
    HStarAlgebra,
    bstar_norm,
    commutator_defect,
    complexify_algebra,
    decompose,
    diagonal_algebra,
    fixture_algebras,
    gelfand_transform,
    gn_representation,
    is_normal_algebra,
    jk_embedding,
    matrix_algebra,
    quaternion_algebra,
    real_representation,
    reassemble,
)
from quatfa.hhilbert import HilbertHBimodule, rep_intertwiner
from quatfa.quat_core import LEFT_BASIS, Quaternion, to_m4

E = np.eye(4)


def test_fixture_dimensions():
    dims = {name: A.dim_re for name, A in fixture_algebras().items()}
    assert dims == {"H": 1, "diag-3": 3, "M2": 4}
    # closure recovers all matrix units from a single superdiagonal unit
    np.testing.assert_allclose(matrix_algebra(2).basis.reshape(4, 4), np.eye(4), atol=1e-12)


def test_closure_errors():
    with pytest.raises(AlgebraClosureError):
        HStarAlgebra(2, (np.eye(2),), unital=False)
    with pytest.raises(ValueError):
        HStarAlgebra(2, (np.eye(3),))


def test_spec_roundtrip():
    A = diagonal_algebra(3)
    B = HStarAlgebra.from_spec(A.to_spec())
    np.testing.assert_allclose(A.basis, B.basis)
    with pytest.raises(KeyError):
        HStarAlgebra.from_spec({"n": 2})


def test_decompose_examples():
    A = diagonal_algebra(3)
    d = np.diag([1.0, -2.0, 0.5])
    a = decompose(np.kron(d, np.eye(4)), A)
    np.testing.assert_allclose(a.components[0], d, atol=1e-14)
    np.testing.assert_allclose(a.components[1:], 0, atol=1e-14)
    H = quaternion_algebra()
    i = decompose(LEFT_BASIS[1], H)
    np.testing.assert_allclose(i.components[:, 0, 0], [0, 1, 0, 0], atol=1e-14)
    with pytest.raises(ValueError):
        decompose(np.kron(np.ones((3, 3)), np.eye(4)), A)
    with pytest.raises(ValueError):
        decompose(np.kron(np.eye(1), np.diag([1.0, 2, 1, 1])), H)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_decompose_is_a_star_isomorphism(seed):
    rng = np.random.default_rng(seed)
    for A in fixture_algebras().values():
        a, b = A.random_element(rng), A.random_element(rng)
        assert decompose(reassemble(a), A).allclose(a)
        assert decompose(a.matrix @ b.matrix, A).allclose(a * b, atol=1e-9)
        np.testing.assert_allclose(a.star().matrix, a.matrix.T, atol=1e-12)


def test_bstar_norm_examples():
    for A in fixture_algebras().values():
        assert bstar_norm(A.identity()) == pytest.approx(1.0)
        alpha = Quaternion(1, -2, 3, 0.5)
        assert bstar_norm(A.scalar(alpha)) == pytest.approx(alpha.norm())


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_cstar_identity_and_submultiplicativity(seed):
    rng = np.random.default_rng(seed)
    for A in fixture_algebras().values():
        a, b = A.random_element(rng), A.random_element(rng)
        n = bstar_norm(a)
        assert abs(bstar_norm(a.star() * a) - n**2) <= 1e-9 * n**2
        assert bstar_norm(a * b) <= n * bstar_norm(b) * (1 + 1e-12)


def test_gn_on_quaternions_matches_matrix_image():
    A = quaternion_algebra()
    rep = real_representation(A)
    reps = np.stack([rep(A.scalar(e)) for e in E])
    target = np.stack([to_m4(e) for e in E])
    U = rep_intertwiner(reps, np.eye(4), target, np.eye(4))
    for e in range(4):
        np.testing.assert_allclose(U @ reps[e], target[e] @ U, atol=1e-12)
    np.testing.assert_allclose(rep(A.identity()), np.eye(4), atol=1e-14)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_gn_representation_properties(seed):
    rng = np.random.default_rng(seed)
    for A in fixture_algebras().values():
        rho = gn_representation(A)
        a, b = A.random_element(rng), A.random_element(rng)
        ra = rho(a)
        assert np.linalg.norm(ra, 2) == pytest.approx(bstar_norm(a), rel=1e-9)
        np.testing.assert_allclose(rho(a * b), ra @ rho(b), atol=1e-9)
        np.testing.assert_allclose(rho(a.star()), ra.T, atol=1e-9)
        beta = rng.normal(size=4)
        R = rho.right_action(beta)
        np.testing.assert_allclose(ra @ R, R @ ra, atol=1e-9)


def test_jk_embedding(rng):
    K = HilbertHBimodule.standard(3)
    J = jk_embedding(K)
    np.testing.assert_allclose(J(np.eye(3), E[0]), np.eye(12), atol=1e-14)
    for e in E:
        np.testing.assert_allclose(J(np.eye(3), e), J.theta(e), atol=1e-12)
    T = rng.normal(size=(3, 3))
    alpha, beta = rng.normal(size=(2, 4))
    M = J(T, alpha)
    R = K.module.right(beta)
    np.testing.assert_allclose(M @ R, R @ M, atol=1e-10)


def test_normality():
    assert is_normal_algebra(quaternion_algebra())
    assert is_normal_algebra(diagonal_algebra(3))
    res = is_normal_algebra(matrix_algebra(2))
    assert not res
    assert res.defect > 1e-6
    # the witness is the unit E12
    np.testing.assert_allclose(res.witness.components[0], [[0, 1], [0, 0]])
    assert commutator_defect(res.witness) == pytest.approx(res.defect)


def test_gelfand_examples(rng):
    G = gelfand_transform(quaternion_algebra())
    assert G.points == 1
    q = rng.normal(size=4)
    np.testing.assert_allclose(G(quaternion_algebra().scalar(q)), q[None, :], atol=1e-14)
    A = diagonal_algebra(3)
    G = gelfand_transform(A)
    assert G.points == 3
    np.testing.assert_allclose(G.characters, np.eye(3), atol=1e-12)
    with pytest.raises(NotCommutativeError) as info:
        gelfand_transform(matrix_algebra(2))
    assert info.value.defect > 1e-6


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_gelfand_properties(seed):
    rng = np.random.default_rng(seed)
    A = diagonal_algebra(3)
    G = gelfand_transform(A)
    a, b = A.random_element(rng), A.random_element(rng)
    ga = G(a)
    assert G.sup_norm(ga) == pytest.approx(bstar_norm(a), rel=1e-9)
    assert G.inverse(ga).allclose(a, atol=1e-9)
    from quatfa.quat_core import qconj, qmul

    np.testing.assert_allclose(G(a * b), qmul(ga, G(b)), atol=1e-9)
    np.testing.assert_allclose(G(a.star()), qconj(ga), atol=1e-12)


def test_complexify_algebra():
    C = complexify_algebra(quaternion_algebra())
    assert C.dim == 1 and C.slice_dim == 2
    C3 = complexify_algebra(diagonal_algebra(3))
    assert C3.dim == 3 and C3.is_commutative()
    assert C3.closure_residual() < 1e-12
    CM = complexify_algebra(matrix_algebra(2))
    assert not CM.is_commutative()
    assert CM.closure_residual() < 1e-12
    A = diagonal_algebra(3)
    z = C3.to_complex(A.element(np.stack([np.eye(3), 2 * np.eye(3), np.zeros((3, 3)), np.zeros((3, 3))])))
    np.testing.assert_allclose(z, (1 + 2j) * np.eye(3))
    with pytest.raises(ValueError):
        C3.to_complex(A.scalar(E[2]))


def test_element_arithmetic(rng):
    A = matrix_algebra(2)
    a = A.random_element(rng)
    assert (a - a).norm() == 0.0
    assert (-a + a).norm() == 0.0
    alpha = rng.normal(size=4)
    np.testing.assert_allclose(a.lmul(alpha).matrix, A.scalar(alpha).matrix @ a.matrix, atol=1e-12)
    np.testing.assert_allclose(a.rmul(alpha).matrix, a.matrix @ A.scalar(alpha).matrix, atol=1e-12)
    assert isinstance(a * a, AlgebraElement)
