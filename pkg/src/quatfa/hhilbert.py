"""Quaternionic Hilbert spaces in their one-sided, bimodule and two-sided forms.

:class:`RightHModule` stores coordinates in H^n with an H-valued Gram matrix
G, so ``<x, y> = sum_pq conj(x_p) G_pq y_q``.  :class:`HilbertHBimodule` is an
:class:`~quatfa.hmodule.HBimodule` with a real Gram matrix making both actions
orthogonal; its H-valued inner product is ``<x, y>_e = (x e, y)``.
:class:`TwoSidedInner` is an H (x) H valued pairing built from a real inner
product on the real part.  The converters below pass between these forms.

Quaternion vectors are arrays of shape ``(n, 4)`` and quaternion matrices
``(n, n, 4)``; realified coordinates index slot ``p`` and basis element
``e`` as ``4 p + e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import _linalg
from .errors import InvalidRepresentationError, RankDeficiencyError
from .hmodule import (
    _TABLE,
    VALIDATION_ATOL,
    BoundedHMap,
    HBimodule,
    HVector,
    make_hthr,
    quaternionize,
    structure_iso,
)
from .hnormed import HNorm, check_norm_equivalence
from .quat_core import CONJ_SIGNS, LEFT_BASIS, RIGHT_BASIS, Quaternion, qconj, qmul

# J = diag(1, -1, -1, -1): coefficient-wise conjugation
CONJ = np.diag(CONJ_SIGNS)
# MULT @ vec(p) = m(p) for p stored row-major (index 4 s + t)
MULT = _TABLE.reshape(16, 4).T.copy()
PSD_RTOL = 1e-10

HTHR = make_hthr()


def _coeffs(q) -> np.ndarray:
    return q.to_array() if isinstance(q, Quaternion) else np.asarray(q, dtype=float).reshape(4)


def _lmat(q) -> np.ndarray:
    return np.tensordot(_coeffs(q), LEFT_BASIS, axes=1)


def _rmat(q) -> np.ndarray:
    return np.tensordot(_coeffs(q), RIGHT_BASIS, axes=1)


# -- quaternion matrices -------------------------------------------------------


def realify(qmat) -> np.ndarray:
    """Real 4n x 4m matrix of the quaternion matrix acting by left multiplication."""
    qmat = np.asarray(qmat, dtype=float)
    blocks = np.tensordot(qmat, LEFT_BASIS, axes=([2], [0]))  # (n, m, 4, 4)
    n, m = qmat.shape[:2]
    return blocks.transpose(0, 2, 1, 3).reshape(4 * n, 4 * m)


def qmatvec(qmat, x) -> np.ndarray:
    return qmul(np.asarray(qmat)[:, :, :], np.asarray(x)[None, :, :]).sum(axis=1)


def qconj_transpose(qmat) -> np.ndarray:
    return qconj(np.asarray(qmat).transpose(1, 0, 2))


def right_blocks(n: int) -> np.ndarray:
    """(4, 4n, 4n) matrices of coordinatewise right multiplication by the basis."""
    return np.stack([np.kron(np.eye(n), RIGHT_BASIS[e]) for e in range(4)])


# -- right modules ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RightHModule:
    """H^n with the inner product given by a positive quaternion Gram matrix.

    ``embedding`` optionally records where the coordinates came from: a real
    matrix sending realified coordinates to vectors of an ambient space.
    """

    gram: np.ndarray
    embedding: np.ndarray | None = None

    def __post_init__(self):
        g = np.array(self.gram, dtype=float)
        if g.ndim != 3 or g.shape[0] != g.shape[1] or g.shape[2] != 4:
            raise ValueError(f"gram must have shape (n, n, 4), got {g.shape}")
        object.__setattr__(self, "gram", g)
        herm = np.max(np.abs(g - qconj_transpose(g)))
        if herm > VALIDATION_ATOL * max(1.0, float(np.max(np.abs(g)))):
            raise ValueError(f"gram is not hermitian (residual {herm:.3e})")
        eig = np.linalg.eigvalsh(self.form)
        if eig[0] <= PSD_RTOL * max(1.0, eig[-1]):
            raise RankDeficiencyError(f"gram is not positive definite (smallest eigenvalue {eig[0]:.3e})")

    @property
    def rank(self) -> int:
        return self.gram.shape[0]

    @cached_property
    def form(self) -> np.ndarray:
        """Real Gram matrix Re<x, y> on realified coordinates."""
        f = realify(self.gram)
        return 0.5 * (f + f.T)

    @cached_property
    def right_basis(self) -> np.ndarray:
        return right_blocks(self.rank)

    def inner(self, x, y) -> np.ndarray:
        return qmul(qconj(np.asarray(x))[:, None, :], qmul(self.gram, np.asarray(y)[None, :, :])).sum(axis=(0, 1))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.inner(x, x)[0], 0.0)))

    def to_spec(self) -> dict:
        return {"rank": self.rank, "gram": self.gram.tolist()}

    @classmethod
    def from_spec(cls, spec: dict) -> RightHModule:
        gram = np.asarray(spec["gram"], dtype=float)
        if gram.shape[:2] != (spec["rank"], spec["rank"]):
            raise ValueError(f"gram does not match rank {spec['rank']}")
        return cls(gram)

    @classmethod
    def standard(cls, n: int) -> RightHModule:
        gram = np.zeros((n, n, 4))
        gram[np.arange(n), np.arange(n), 0] = 1.0
        return cls(gram)


def _qgram_schmidt(inner, n, tol):
    cands = [np.eye(n)[p][:, None] * np.eye(4)[0] for p in range(n)]
    basis = []
    while cands:
        sizes = [inner(v, v)[0] for v in cands]
        best = int(np.argmax(sizes))
        v = cands.pop(best)
        if sizes[best] <= tol:
            raise RankDeficiencyError(f"residual norm^2 {sizes[best]:.3e} at step {len(basis)}")
        u = v / np.sqrt(sizes[best])
        basis.append(u)
        cands = [w - qmul(u, inner(u, w)) for w in cands]
    return np.stack(basis, axis=1)


def gram_schmidt(module) -> np.ndarray:
    """Orthonormal basis of a right module, as an (n, n, 4) array of columns.

    Candidates are the standard vectors, picked greedily by largest residual
    norm; each is normalised on the right by a positive real.  Accepts a
    :class:`RightHModule` or a raw Gram array.
    """
    if isinstance(module, RightHModule):
        gram = module.gram
    else:
        gram = np.asarray(module, dtype=float)
    n = gram.shape[0]

    def inner(x, y):
        return qmul(qconj(x)[:, None, :], qmul(gram, y[None, :, :])).sum(axis=(0, 1))

    scale = max(1.0, float(np.max(np.abs(gram))))
    return _qgram_schmidt(inner, n, 1e-12 * scale)


# -- bimodules ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HilbertHBimodule:
    """A bimodule with a real inner product making both actions orthogonal.

    The H-valued inner product is ``<x, y> = sum_e (x e, y) e``; it is right
    H-linear in ``y`` and satisfies ``<alpha x, y> = <x, alpha* y>``.
    """

    module: HBimodule
    form: np.ndarray
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "form", np.array(self.form, dtype=float))
        # HNorm validates symmetry, positivity and orthogonality of the actions
        try:
            HNorm(self.module, "hilbertian", self.form)
        except ValueError as exc:
            raise InvalidRepresentationError(f"not a Hilbert H-bimodule: {exc}") from exc

    @property
    def dim(self) -> int:
        return self.module.dim

    @cached_property
    def hnorm(self) -> HNorm:
        return HNorm(self.module, "hilbertian", self.form)

    def inner(self, x, y) -> np.ndarray:
        """H-valued inner product of coordinate vectors (or HVectors)."""
        x = getattr(x, "coords", x)
        y = getattr(y, "coords", y)
        gy = self.form @ y
        return np.array([(self.module.right_basis[e] @ x) @ gy for e in range(4)])

    def norm(self, x) -> float:
        x = getattr(x, "coords", x)
        return float(np.sqrt(max(x @ self.form @ x, 0.0)))

    @cached_property
    def orthonormal_real_basis(self) -> np.ndarray:
        return _linalg.gram_orthonormalize(self.module.real_basis, self.form)

    @cached_property
    def real_form(self) -> np.ndarray:
        B = self.module.real_basis
        return B.T @ self.form @ B

    def left_structure(self) -> tuple[np.ndarray, np.ndarray]:
        return self.module.left_i, self.module.left_j

    def vector(self, coords) -> HVector:
        return HVector(self.module, coords)

    @classmethod
    def from_right_module(cls, M: RightHModule, left_i, left_j, name: str = "") -> HilbertHBimodule:
        rb = M.right_basis
        try:
            module = HBimodule(left_i, left_j, rb[1], rb[2], name=name)
        except ValueError as exc:
            raise InvalidRepresentationError(f"left structure is not compatible: {exc}") from exc
        return cls(module, M.form, name=name)

    @classmethod
    def standard(cls, n: int, real_form=None) -> HilbertHBimodule:
        """R^n (x) H with the inner product extended from ``real_form``."""
        q = np.eye(n) if real_form is None else np.asarray(real_form, dtype=float)
        return cls(quaternionize(n), np.kron(q, np.eye(4)), name=f"R^{n}(x)H")


def induce_left_mult(M: RightHModule) -> HilbertHBimodule:
    """Left multiplication transported from H^n along an orthonormal basis."""
    U = realify(gram_schmidt(M))
    U_inv = np.linalg.inv(U)
    lam = [U @ np.kron(np.eye(M.rank), LEFT_BASIS[e]) @ U_inv for e in (1, 2)]
    return HilbertHBimodule.from_right_module(M, *lam, name="induced")


def _right_frame(K: HilbertHBimodule) -> np.ndarray:
    """Columns b_p e for an orthonormal real-part basis b_p; index 4p + e."""
    B = K.orthonormal_real_basis
    rb = K.module.right_basis
    return np.stack([rb[e] @ B for e in range(4)], axis=2).reshape(K.dim, -1)


def intertwine_left_structures(M: RightHModule, lam1, lam2) -> BoundedHMap:
    """Unitary right-module map U with lam2(alpha) = U lam1(alpha) U^-1.

    ``lam1`` and ``lam2`` are pairs (image of i, image of j) of left
    structures on the realified coordinates of ``M``.  U matches orthonormal
    bases of the two real parts.
    """
    K1 = HilbertHBimodule.from_right_module(M, *lam1)
    K2 = HilbertHBimodule.from_right_module(M, *lam2)
    W1, W2 = _right_frame(K1), _right_frame(K2)
    U = W2 @ np.linalg.inv(W1)
    return BoundedHMap(K1.module, K2.module, U)


# -- two-sided inner products and H (x) H -------------------------------------


@dataclass(frozen=True, eq=False)
class HTensorElement:
    """Element sum_st coeffs[s, t] e_s (x) e_t of H (x) H."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.array(self.coeffs, dtype=float).reshape(4, 4))

    @classmethod
    def from_vector(cls, vec) -> HTensorElement:
        return cls(np.asarray(vec, dtype=float).reshape(4, 4))

    @classmethod
    def simple(cls, alpha, beta) -> HTensorElement:
        """alpha (x) beta."""
        return cls(np.outer(np.asarray(alpha, dtype=float), np.asarray(beta, dtype=float)))

    def to_vector(self) -> np.ndarray:
        return self.coeffs.reshape(16).copy()

    def m(self) -> np.ndarray:
        """Image under the multiplication H (x) H -> H."""
        return MULT @ self.to_vector()

    def sharp(self) -> HTensorElement:
        """(a (x) b)# = b* (x) a*."""
        return HTensorElement(CONJ @ self.coeffs.T @ CONJ)

    def lmul_first(self, alpha) -> HTensorElement:
        """(alpha (x) 1) p."""
        return HTensorElement(_lmat(alpha) @ self.coeffs)

    def rmul_first(self, beta) -> HTensorElement:
        """p (beta (x) 1)."""
        return HTensorElement(_rmat(beta) @ self.coeffs)

    def lmul_second(self, alpha) -> HTensorElement:
        """(1 (x) alpha) p."""
        return HTensorElement(self.coeffs @ _lmat(alpha).T)

    def rmul_second(self, beta) -> HTensorElement:
        """p (1 (x) beta)."""
        return HTensorElement(self.coeffs @ _rmat(beta).T)

    def __add__(self, other):
        return HTensorElement(self.coeffs + other.coeffs)

    def __sub__(self, other):
        return HTensorElement(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return HTensorElement(self.coeffs * float(scalar))

    __rmul__ = __mul__

    def allclose(self, other, atol=1e-10) -> bool:
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)


THETA = HTensorElement(np.eye(4))


def cone_membership(p: HTensorElement) -> bool:
    """Whether p is a finite sum of elements alpha* (x) alpha.

    With coefficient array M, alpha* (x) alpha has ``J M = a a^T``; so p is in
    the cone exactly when ``J M`` is symmetric positive semidefinite.
    """
    jm = CONJ @ p.coeffs
    scale = float(np.max(np.abs(jm), initial=0.0)) + 1.0
    if np.max(np.abs(jm - jm.T)) > PSD_RTOL * scale:
        return False
    eig = np.linalg.eigvalsh(0.5 * (jm + jm.T))
    return bool(eig[0] >= -PSD_RTOL * (np.max(np.abs(eig)) + 1.0))


def cone_generators(p: HTensorElement) -> list[np.ndarray]:
    """Quaternions alpha_i with p = sum alpha_i* (x) alpha_i (p must be in the cone)."""
    jm = CONJ @ p.coeffs
    eig, vec = np.linalg.eigh(0.5 * (jm + jm.T))
    return [np.sqrt(lam) * vec[:, i] for i, lam in enumerate(eig) if lam > 0]


def epsilon_norm(p: HTensorElement) -> float:
    """Injective norm: spectral norm of the map x -> sum M_st x_s e_t on H."""
    return float(np.linalg.norm(p.coeffs, 2))


def hil_norm(p: HTensorElement) -> float:
    return float(np.linalg.norm(p.coeffs))


@dataclass(frozen=True, eq=False)
class TwoSidedInner:
    """<<y (x) alpha, z (x) beta>> = <y, z> alpha* (x) beta on X_Re (x) H.

    ``real_form`` is the inner product on the canonical real-part basis of
    ``module``.
    """

    module: HBimodule
    real_form: np.ndarray

    def __post_init__(self):
        q = np.array(self.real_form, dtype=float)
        object.__setattr__(self, "real_form", q)
        if q.shape != (self.module.real_dim,) * 2 or np.linalg.eigvalsh(0.5 * (q + q.T))[0] <= 0:
            raise ValueError("real_form must be a positive definite Gram matrix on the real part")

    def components(self, x) -> np.ndarray:
        """(4, r) real-part coordinates of the polarization components."""
        x = getattr(x, "coords", x)
        return self.module.polar_matrices @ x

    def pair(self, x, y) -> HTensorElement:
        cx, cy = self.components(x), self.components(y)
        return HTensorElement(CONJ @ (cx @ self.real_form @ cy.T))

    def norm(self, x) -> float:
        return float(np.sqrt(max(self.pair(x, x).m()[0], 0.0)))


def two_sided_from_bimodule(Y: HilbertHBimodule) -> TwoSidedInner:
    return TwoSidedInner(Y.module, Y.real_form)


def collapse_two_sided(P: TwoSidedInner) -> HilbertHBimodule:
    """The bimodule with <x, y> = m(<<x, y>>); its real form is Re m(<<., .>>)."""
    comps = P.module.polar_matrices  # components of every basis vector at once
    pairs = np.einsum("e,era,rs,fsb->efab", CONJ_SIGNS, comps, P.real_form, comps, optimize=True)
    form = np.einsum("ef,efab->ab", _TABLE[:, :, 0], pairs)
    return HilbertHBimodule(P.module, 0.5 * (form + form.T), name="collapsed")


# -- opposite, representations of H, and the real-part isometries -------------


def delta_iso(X: HilbertHBimodule) -> BoundedHMap:
    """sum_e x_e e -> sum_e x_e (x) e with x_e in an orthonormal real-part basis."""
    return structure_iso(X.module, basis=X.orthonormal_real_basis)


def opposite(K: HilbertHBimodule) -> HilbertHBimodule:
    """K^op on K_Re (x) H: alpha.(x (x) g).beta = x (x) beta* g alpha*.

    The inner product is <x (x) a, y (x) b> = (y, x) a b*; coordinates are
    those of :func:`delta_iso`.
    """
    r = K.module.real_dim
    eye = np.eye(r)
    module = HBimodule(
        np.kron(eye, -RIGHT_BASIS[1]),
        np.kron(eye, -RIGHT_BASIS[2]),
        np.kron(eye, -LEFT_BASIS[1]),
        np.kron(eye, -LEFT_BASIS[2]),
        name=f"{K.name or K.module.name}^op",
    )
    return HilbertHBimodule(module, np.eye(4 * r), name=module.name)


def validate_pi(form, pi_i, pi_j) -> np.ndarray:
    """Check a unital *-representation of H; return images of the basis."""
    form = np.asarray(form, dtype=float)
    pi_i = np.asarray(pi_i, dtype=float)
    pi_j = np.asarray(pi_j, dtype=float)
    d = form.shape[0]
    if pi_i.shape != (d, d) or pi_j.shape != (d, d):
        raise InvalidRepresentationError("representation matrices do not match the space")
    reps = np.stack([np.eye(d), pi_i, pi_j, pi_i @ pi_j])
    worst = 0.0
    for e in range(4):
        # adjoint w.r.t. form is pi(e*)
        worst = max(worst, np.max(np.abs(reps[e].T @ form - CONJ_SIGNS[e] * form @ reps[e])))
        for f in range(4):
            worst = max(worst, np.max(np.abs(reps[e] @ reps[f] - np.tensordot(_TABLE[e, f], reps, axes=1))))
    if worst > VALIDATION_ATOL * max(1.0, float(np.max(np.abs(form)))):
        raise InvalidRepresentationError(f"not a unital *-representation of H (residual {worst:.3e})")
    return reps


def bracket(form, reps, x, y) -> np.ndarray:
    """[x, y] = sum_e (x, pi(e) y) e."""
    return np.array([x @ form @ reps[e] @ y for e in range(4)])


def from_pi(form, pi_i, pi_j) -> RightHModule:
    """Right module on a real Hilbert space from a *-representation of H.

    The right action is x . alpha = pi(alpha*) x.  A right basis is chosen
    greedily from the standard vectors; the returned module has the Gram
    matrix of the bracket on that basis, and ``embedding`` maps realified
    coordinates back to the original space.
    """
    form = np.asarray(form, dtype=float)
    if np.linalg.eigvalsh(0.5 * (form + form.T))[0] <= 0 or np.max(np.abs(form - form.T)) > VALIDATION_ATOL:
        raise InvalidRepresentationError("form is not a real inner product")
    reps = validate_pi(form, pi_i, pi_j)
    d = form.shape[0]
    if d % 4:
        raise InvalidRepresentationError(f"dimension {d} is not a multiple of 4")
    right = CONJ_SIGNS[:, None, None] * reps  # x . e = pi(e*) x
    chosen, frame = [], np.zeros((d, 0))
    for a in range(d):
        block = right[:, :, a].T  # columns: eps_a . e
        trial = np.hstack([frame, block])
        if np.linalg.matrix_rank(trial, tol=1e-9) == trial.shape[1]:
            chosen.append(a)
            frame = trial
        if frame.shape[1] == d:
            break
    n = len(chosen)
    basis = np.eye(d)[:, chosen]
    gram = np.array([[bracket(form, reps, basis[:, p], basis[:, q]) for q in range(n)] for p in range(n)])
    return RightHModule(gram, embedding=frame)


def rep_intertwiner(reps1, form1, reps2, form2) -> np.ndarray:
    """Isometry U: (R^d, form1) -> (R^d, form2) with U rep1(e) = rep2(e) U.

    Both arguments are (4, d, d) stacks of images of the basis under unital
    *-representations of H.
    """
    frames = [_rep_frame(r, f) for r, f in ((reps1, form1), (reps2, form2))]
    if frames[0].shape != frames[1].shape:
        raise InvalidRepresentationError("representations have different dimensions")
    return frames[1] @ np.linalg.inv(frames[0])


def _rep_frame(reps, form):
    d = form.shape[0]
    frame = np.zeros((d, 0))
    for a in range(d):
        v = np.eye(d)[:, a]
        v = v - frame @ (frame.T @ form @ v)
        nrm = np.sqrt(v @ form @ v)
        if nrm > 1e-8:
            v = v / nrm
            frame = np.hstack([frame, np.stack([reps[e] @ v for e in range(4)], axis=1)])
        if frame.shape[1] == d:
            break
    return frame


def right_module_pi(K: HilbertHBimodule) -> np.ndarray:
    """The representation pi(alpha) = left multiplication, stacked over the basis."""
    return K.module.left_basis


class NormPair(NamedTuple):
    first: float
    second: float


def phi_isometry_check(T: BoundedHMap, X: HilbertHBimodule, Y: HilbertHBimodule) -> NormPair:
    """(||T restricted to real parts||, ||T||); equal for Hilbert bimodules."""
    cmp = check_norm_equivalence(T, X.hnorm, Y.hnorm)
    return NormPair(cmp.restricted, cmp.full)


# -- the dual Y^r and Riesz representation -------------------------------------


@dataclass(frozen=True, eq=False)
class DualElementYr:
    """Bimodule map T: Y -> H (x) H (scalars acting on the second factor).

    ``matrix`` is 16 x dim(Y), output index 4 s + t for e_s (x) e_t.
    """

    space: HilbertHBimodule
    matrix: np.ndarray
    _map: BoundedHMap = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.array(self.matrix, dtype=float))
        object.__setattr__(self, "_map", BoundedHMap(self.space.module, HTHR, self.matrix))

    def __call__(self, x) -> HTensorElement:
        x = getattr(x, "coords", x)
        return HTensorElement.from_vector(self.matrix @ x)

    @cached_property
    def m_matrix(self) -> np.ndarray:
        return MULT @ self.matrix

    @cached_property
    def real_restriction(self) -> np.ndarray:
        """T on an orthonormal real-part basis, as H-valued (first factor) columns."""
        return self.matrix[0::4] @ self.space.orthonormal_real_basis

    @cached_property
    def norm(self) -> float:
        """Norm into H (x)_eps H: sup over unit f of ||(f (x) id) o T||."""
        return float(np.linalg.norm(self.real_restriction, 2))

    @cached_property
    def norm_L(self) -> float:  # noqa: N802
        return _linalg.op_norm(self.m_matrix, self.space.form)

    def scale(self, alpha=None, beta=None) -> DualElementYr:
        """alpha . T . beta: x -> (alpha (x) 1) T(x) (beta (x) 1)."""
        m = self.matrix
        if alpha is not None:
            m = np.kron(_lmat(alpha), np.eye(4)) @ m
        if beta is not None:
            m = np.kron(_rmat(beta), np.eye(4)) @ m
        return DualElementYr(self.space, m)


def dual_from_real(Y: HilbertHBimodule, A) -> DualElementYr:
    """The element of Y^r restricting to ``A``: Y_Re -> H on orthonormal coordinates.

    T(sum_t z_t t) = sum_t A(z_t) (x) t.
    """
    A = np.asarray(A, dtype=float).reshape(4, Y.module.real_dim)
    coords = np.linalg.pinv(Y.orthonormal_real_basis) @ Y.module.re_matrix
    rows = np.zeros((4, 4, Y.dim))
    for t in range(4):
        comp = coords @ (CONJ_SIGNS[t] * Y.module.left_basis[t])
        rows[:, t, :] = A @ comp
    return DualElementYr(Y, rows.reshape(16, Y.dim))


def t_y(Y: HilbertHBimodule, y) -> DualElementYr:
    """T_y(x) = <<y, x>>."""
    P = two_sided_from_bimodule(Y)
    eye = np.eye(Y.dim)
    matrix = np.stack([P.pair(y, eye[a]).to_vector() for a in range(Y.dim)], axis=1)
    return DualElementYr(Y, matrix)


def dual_norms(T: DualElementYr) -> NormPair:
    """(||T||, ||T||_L) with ||T|| <= ||T||_L checked."""
    n, nl = T.norm, T.norm_L
    if n > nl + 1e-9 * max(1.0, nl):
        raise ArithmeticError(f"||T|| = {n} exceeds ||T||_L = {nl}")
    return NormPair(n, nl)


def riesz_represent(T: DualElementYr) -> HVector:
    """The unique y with m(T(x)) = <y, x> for all x.

    On the real part T(z) = sum_f <y_f, z> f (x) 1 for real-part vectors
    y_f, and y = sum_f f* y_f.
    """
    Y = T.space
    O = Y.orthonormal_real_basis
    A = T.real_restriction  # rows f: coordinates of y_f in the basis O
    lb = Y.module.left_basis
    y = sum(CONJ_SIGNS[f] * lb[f] @ (O @ A[f]) for f in range(4))
    return HVector(Y.module, y)


def example_dual_gap() -> DualElementYr:
    """T on C (x) H = span{1, i} (x) H sending 1 (x) b1 + i (x) bi to 1 (x) b1 + i (x) bi in H (x) H.

    Here ||T|| = 1 while ||T||_L = sqrt(2).
    """
    Y = HilbertHBimodule.standard(2)
    matrix = np.zeros((16, 8))
    for slot, s in ((0, 0), (1, 1)):  # 1 -> e_0, i -> e_1 in the first factor
        for t in range(4):
            matrix[4 * s + t, 4 * slot + t] = 1.0
    return DualElementYr(Y, matrix)
