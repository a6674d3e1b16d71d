"""Finite-dimensional H-B*-algebras presented as A_Re (x) H.

``A_Re`` is a real *-algebra of n x n matrices (involution: transpose).  An
element ``a = sum_e a_e (x) e`` is stored by its four components in A_Re and
acts on R^n (x) H through ``sum_e kron(a_e, L(e))``; the B*-norm is the
operator norm of that 4n x 4n matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

import numpy as np

from . import _linalg
from .errors import AlgebraClosureError, NotCommutativeError
from .hhilbert import HilbertHBimodule, delta_iso
from .hmodule import _TABLE, VALIDATION_ATOL, complexify, quaternionize
from .quat_core import CONJ_SIGNS, LEFT_BASIS, RIGHT_BASIS, I, Quaternion

NORMAL_DEFECT = 1e-6
SPLIT_RTOL = 1e-8


def _qarr(q) -> np.ndarray:
    return Quaternion.coerce(q).to_array()


def _assemble(components) -> np.ndarray:
    """sum_e kron(components[e], L(e))."""
    c = np.asarray(components)
    n = c.shape[1]
    return np.einsum("epq,eab->paqb", c, LEFT_BASIS).reshape(4 * n, 4 * n)


@lru_cache(maxsize=32)
def _scalar_mats(n: int) -> np.ndarray:
    return np.stack([np.kron(np.eye(n), LEFT_BASIS[e]) for e in range(4)])


@dataclass(frozen=True, eq=False)
class HStarAlgebra:
    """The algebra A_Re (x) H with A_Re generated as a unital *-algebra.

    The span of the generators is completed under products and transposes
    until its dimension stabilises.  ``basis`` is the pivoted echelon basis
    of A_Re (matrix units come back as matrix units) and ``ortho_basis`` a
    Frobenius-orthonormal one.
    """

    n: int
    generators: tuple
    unital: bool = True
    name: str = ""

    def __post_init__(self):
        n = int(self.n)
        gens = tuple(np.array(g, dtype=float) for g in self.generators)
        for g in gens:
            if g.shape != (n, n):
                raise ValueError(f"generators must be {n}x{n}, got {g.shape}")
        if not self.unital:
            raise AlgebraClosureError("only unital algebras are supported")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_span", self._close(gens))

    def _close(self, gens) -> np.ndarray:
        n = self.n
        vecs = [np.eye(n).ravel()] + [g.ravel() for g in gens] + [g.T.ravel() for g in gens]
        span = _linalg.range_basis(np.stack(vecs, axis=1))
        for _ in range(n * n + 1):
            mats = [v.reshape(n, n) for v in span.T]
            new = [a @ b for a in mats for b in mats] + [a.T for a in mats]
            grown = _linalg.range_basis(np.hstack([span, np.stack([m.ravel() for m in new], axis=1)]))
            if grown.shape[1] == span.shape[1]:
                return span
            span = grown
        raise AlgebraClosureError(f"span did not close within {n * n} steps")

    @property
    def dim_re(self) -> int:
        return self._span.shape[1]

    @cached_property
    def basis(self) -> np.ndarray:
        """(m, n, n) echelon basis of A_Re."""
        return _linalg.canonical_basis(self._span).T.reshape(-1, self.n, self.n)

    @cached_property
    def ortho_basis(self) -> np.ndarray:
        return self._span.T.reshape(-1, self.n, self.n)

    @cached_property
    def _coords(self) -> np.ndarray:
        return np.linalg.pinv(self.basis.reshape(self.dim_re, -1).T)

    def re_coords(self, matrix) -> np.ndarray:
        """Coordinates of an A_Re matrix in :attr:`basis`."""
        return self._coords @ np.asarray(matrix, dtype=float).ravel()

    def re_residual(self, matrix) -> float:
        v = np.asarray(matrix, dtype=float).ravel()
        # _span has orthonormal columns
        return float(np.linalg.norm(v - self._span @ (self._span.T @ v)))

    def element(self, components) -> AlgebraElement:
        return AlgebraElement(self, components)

    def from_coords(self, coords) -> AlgebraElement:
        """Element from a (4, m) array of A_Re coordinates, one row per basis quaternion."""
        c = np.asarray(coords, dtype=float).reshape(4, self.dim_re)
        return AlgebraElement(self, np.tensordot(c, self.basis, axes=1))

    def identity(self) -> AlgebraElement:
        return self.scalar(1.0)

    def scalar(self, alpha) -> AlgebraElement:
        a = _qarr(alpha)
        return AlgebraElement(self, a[:, None, None] * np.eye(self.n))

    def random_element(self, rng, scale=1.0) -> AlgebraElement:
        return self.from_coords(rng.normal(scale=scale, size=(4, self.dim_re)))

    @cached_property
    def bimodule(self):
        """A as an H-bimodule in coordinates 4 k + e."""
        return quaternionize(self.dim_re)

    def to_spec(self) -> dict:
        return {"n": self.n, "generators": [g.tolist() for g in self.generators], "unital": True}

    @classmethod
    def from_spec(cls, spec: dict) -> HStarAlgebra:
        for key in ("n", "generators"):
            if key not in spec:
                raise KeyError(key)
        return cls(int(spec["n"]), tuple(spec["generators"]), bool(spec.get("unital", True)))


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """sum_e components[e] (x) e with components in A_Re."""

    algebra: HStarAlgebra
    components: np.ndarray

    def __post_init__(self):
        c = np.array(self.components, dtype=float)
        n = self.algebra.n
        if c.shape != (4, n, n):
            raise ValueError(f"components must have shape (4, {n}, {n}), got {c.shape}")
        object.__setattr__(self, "components", c)

    @cached_property
    def matrix(self) -> np.ndarray:
        return _assemble(self.components)

    def star(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, CONJ_SIGNS[:, None, None] * self.components.transpose(0, 2, 1))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            # (a_e (x) e)(b_f (x) f) = a_e b_f (x) ef
            prods = np.einsum("epq,fqr->efpr", self.components, other.components)
            return AlgebraElement(self.algebra, np.einsum("efg,efpr->gpr", _TABLE, prods))
        if np.isscalar(other):
            return AlgebraElement(self.algebra, self.components * float(other))
        return self.rmul(other)

    def __rmul__(self, other):
        if np.isscalar(other):
            return AlgebraElement(self.algebra, self.components * float(other))
        return self.lmul(other)

    def lmul(self, alpha) -> AlgebraElement:
        """alpha a."""
        return AlgebraElement(self.algebra, np.tensordot(left_coeff_matrix(alpha), self.components, axes=1))

    def rmul(self, alpha) -> AlgebraElement:
        """a alpha."""
        return AlgebraElement(self.algebra, np.tensordot(right_coeff_matrix(alpha), self.components, axes=1))

    def __add__(self, other):
        return AlgebraElement(self.algebra, self.components + other.components)

    def __sub__(self, other):
        return AlgebraElement(self.algebra, self.components - other.components)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.components)

    def norm(self) -> float:
        return bstar_norm(self)

    def coords(self) -> np.ndarray:
        return np.stack([self.algebra.re_coords(c) for c in self.components])

    def allclose(self, other, atol=1e-10) -> bool:
        return bool(np.max(np.abs(self.components - other.components)) <= atol)


def left_coeff_matrix(alpha) -> np.ndarray:
    return np.tensordot(_qarr(alpha), LEFT_BASIS, axes=1)


def right_coeff_matrix(alpha) -> np.ndarray:
    return np.tensordot(_qarr(alpha), RIGHT_BASIS, axes=1)


def decompose(a, algebra: HStarAlgebra) -> AlgebraElement:
    """Components Re(e* a) of a 4n x 4n matrix commuting with the scalars.

    Re is the average (1/4) sum_e e* x e for the bimodule structure given by
    multiplying with kron(I, L(e)) on either side.
    """
    a = np.asarray(getattr(a, "matrix", a), dtype=float)
    n = algebra.n
    scal = _scalar_mats(n)
    # Re(y) = (1/4) sum_f f* y f, applied to y = e* a for every e
    ya = scal.transpose(0, 2, 1) @ a  # L(e)^T = L(e*)
    re = 0.25 * sum(scal[f].T @ ya @ scal[f] for f in range(4))
    comps = re[:, ::4, ::4]
    lifted = np.einsum("epq,ab->epaqb", comps, np.eye(4)).reshape(re.shape)
    if np.max(np.abs(re - lifted)) > VALIDATION_ATOL * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix is not in A_Re (x) H")
    for c in comps:
        if algebra.re_residual(c) > VALIDATION_ATOL * max(1.0, np.max(np.abs(c))):
            raise ValueError("component lies outside A_Re")
    return AlgebraElement(algebra, np.stack(comps))


def reassemble(a: AlgebraElement) -> np.ndarray:
    return _assemble(a.components)


def bstar_norm(a: AlgebraElement) -> float:
    return float(np.linalg.norm(a.matrix, 2))


def commutator_defect(a: AlgebraElement) -> float:
    """||a* a - a a*|| in the defining representation."""
    m = a.matrix
    return float(np.linalg.norm(m.T @ m - m @ m.T, 2))


# -- representations -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GNRepresentation:
    """Left-regular representation of A_Re on itself, tensored with H.

    K0 = A_Re with the trace inner product, coordinates in
    ``algebra.ortho_basis``; an element acts on K0 (x) H by
    ``sum_e kron(pi(a_e), L(e))``, which commutes with the right action.
    """

    algebra: HStarAlgebra

    @cached_property
    def space(self) -> HilbertHBimodule:
        return HilbertHBimodule.standard(self.algebra.dim_re)

    def pi_re(self, x) -> np.ndarray:
        O = self.algebra.ortho_basis
        return np.einsum("kab,ac,lcb->kl", O, np.asarray(x, dtype=float), O)

    def __call__(self, a: AlgebraElement) -> np.ndarray:
        return _assemble(np.stack([self.pi_re(c) for c in a.components]))

    def right_action(self, beta) -> np.ndarray:
        return np.kron(np.eye(self.algebra.dim_re), right_coeff_matrix(beta))


def gn_representation(A: HStarAlgebra) -> GNRepresentation:
    return GNRepresentation(A)


def real_representation(A: HStarAlgebra) -> GNRepresentation:
    """The representation of :func:`gn_representation` read as real matrices on K0 (x) H."""
    return GNRepresentation(A)


@dataclass(frozen=True, eq=False)
class JKEmbedding:
    """L_R(K_Re) (x) H -> right-linear operators on K: T (x) alpha acts as x (x) b -> T x (x) alpha b."""

    space: HilbertHBimodule

    @cached_property
    def _delta(self) -> np.ndarray:
        return delta_iso(self.space).matrix

    def __call__(self, T, alpha) -> np.ndarray:
        inner = np.kron(np.asarray(T, dtype=float), left_coeff_matrix(alpha))
        return np.linalg.solve(self._delta, inner @ self._delta)

    def theta(self, alpha) -> np.ndarray:
        """Left multiplication by alpha on K."""
        return self.space.module.left(alpha)


def jk_embedding(K: HilbertHBimodule) -> JKEmbedding:
    return JKEmbedding(K)


# -- normality and the Gelfand transform ----------------------------------------


class NormalityResult(NamedTuple):
    normal: bool
    witness: AlgebraElement | None
    defect: float

    def __bool__(self):
        return self.normal


def is_normal_algebra(A: HStarAlgebra) -> NormalityResult:
    """Every element is normal iff A_Re is commutative with a symmetric basis.

    On failure the witness is the first non-normal element among ``u``,
    ``u + v``, ``u + v i`` and ``j + u k`` for basis matrices u, v.
    """
    B = A.basis
    scale = max(1.0, float(np.max(np.abs(B))))
    comm = max((np.max(np.abs(x @ y - y @ x)) for x in B for y in B), default=0.0)
    sym = max((np.max(np.abs(x - x.T)) for x in B), default=0.0)
    if max(comm, sym) <= VALIDATION_ATOL * scale**2:
        return NormalityResult(True, None, 0.0)
    zero = np.zeros_like(B[0])

    def elem(*parts):
        return AlgebraElement(A, np.stack(parts))

    def candidates():
        for u in B:
            yield elem(u, zero, zero, zero)
        for p, u in enumerate(B):
            for v in B[p + 1:]:
                yield elem(u + v, zero, zero, zero)
                yield elem(u, v, zero, zero)
        eye = np.eye(A.n)
        for u in B:
            yield elem(zero, zero, eye, u)

    best = None
    for a in candidates():
        d = commutator_defect(a)
        if d > NORMAL_DEFECT:
            return NormalityResult(False, a, d)
        if best is None or d > best[1]:
            best = (a, d)
    return NormalityResult(False, best[0], best[1])


def _split(vectors, matrix, scale):
    blk = vectors.T @ matrix @ vectors
    w, v = np.linalg.eigh(0.5 * (blk + blk.T))
    cuts = np.flatnonzero(np.diff(w) > SPLIT_RTOL * scale) + 1
    return [vectors @ v[:, idx] for idx in np.split(np.arange(len(w)), cuts)]


@dataclass(frozen=True, eq=False)
class GelfandTransform:
    """a -> (chi_j(a))_j in H^m, chi_j(sum a_e (x) e) = sum_e chi_j(a_e) e.

    ``characters[j, k]`` is the value of the j-th character on ``basis[k]``;
    ``eigenspaces[j]`` spans the joint eigenspace on which it is read off.
    """

    algebra: HStarAlgebra
    characters: np.ndarray
    eigenspaces: tuple

    @property
    def points(self) -> int:
        return self.characters.shape[0]

    def character(self, j, matrix) -> float:
        V = self.eigenspaces[j]
        return float(np.trace(V.T @ matrix @ V) / V.shape[1])

    def __call__(self, a: AlgebraElement) -> np.ndarray:
        """(m, 4) array of quaternion values."""
        return self.characters @ a.coords().T

    def inverse(self, values) -> AlgebraElement:
        values = np.asarray(values, dtype=float).reshape(self.points, 4)
        return self.algebra.from_coords(np.linalg.solve(self.characters, values).T)

    @staticmethod
    def sup_norm(values) -> float:
        return float(np.max(np.linalg.norm(np.asarray(values), axis=1)))

    def to_spec(self) -> dict:
        return {"points": self.points, "characters": self.characters.tolist()}


def gelfand_transform(A: HStarAlgebra, seed: int = 0) -> GelfandTransform:
    """Characters of a normal algebra from a joint diagonalization of A_Re.

    A random combination of the basis is diagonalised and its eigenspaces
    refined by each basis matrix.  Raises :class:`NotCommutativeError` with a
    non-normal witness when A is not normal.
    """
    check = is_normal_algebra(A)
    if not check.normal:
        raise NotCommutativeError("algebra has a non-normal element", check.witness, check.defect)
    B = A.basis
    m = A.dim_re
    scale = max(1.0, float(np.max(np.abs(B))))
    rng = np.random.default_rng(seed)
    spaces = _split(np.eye(A.n), np.tensordot(rng.normal(size=m), B, axes=1), scale)
    for b in B:
        spaces = [part for V in spaces for part in _split(V, b, scale)]
    if len(spaces) != m:
        raise ArithmeticError(f"found {len(spaces)} characters for an algebra of dimension {m}")
    # order points by the first coordinate their eigenspace touches
    spaces.sort(key=lambda V: int(np.argmax(np.linalg.norm(V, axis=1) > 1e-6)))
    chars = np.array([[np.trace(V.T @ b @ V) / V.shape[1] for b in B] for V in spaces])
    return GelfandTransform(A, chars, tuple(spaces))


# -- complexification -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ComplexAlgebra:
    """A_Re + A_Re i as complex matrices a + sqrt(-1) b; involution is conjugate transpose."""

    algebra: HStarAlgebra
    basis: np.ndarray
    slice_dim: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def to_complex(self, a: AlgebraElement) -> np.ndarray:
        if np.max(np.abs(a.components[2:])) > VALIDATION_ATOL:
            raise ValueError("element is not in the i-slice")
        return a.components[0] + 1j * a.components[1]

    def closure_residual(self) -> float:
        """Distance of products and adjoints of basis elements from the complex span."""
        flat = self.basis.reshape(self.dim, -1).T
        realified = np.vstack([np.hstack([flat.real, -flat.imag]), np.hstack([flat.imag, flat.real])])
        prods = [x @ y for x in self.basis for y in self.basis] + [x.conj().T for x in self.basis]
        vecs = np.stack([p.ravel() for p in prods], axis=1)
        return _linalg.span_residual(realified, np.vstack([vecs.real, vecs.imag]))

    def is_commutative(self) -> bool:
        return all(np.allclose(x @ y, y @ x, atol=VALIDATION_ATOL) for x in self.basis for y in self.basis)


def complexify_algebra(A: HStarAlgebra) -> ComplexAlgebra:
    """The complex *-algebra of elements commuting with the scalar i."""
    slc = complexify(A.bimodule, I)
    return ComplexAlgebra(A, A.basis.astype(complex), slc.basis.shape[1])


# -- fixtures ------------------------------------------------------------------------


def quaternion_algebra() -> HStarAlgebra:
    return HStarAlgebra(1, (np.eye(1),), name="H")


def diagonal_algebra(n: int = 3) -> HStarAlgebra:
    gens = tuple(np.diag(np.eye(n)[p]) for p in range(n))
    return HStarAlgebra(n, gens, name=f"diag-{n}")


def matrix_algebra(n: int = 2) -> HStarAlgebra:
    """M_n(R) (x) H, generated by the matrix units above the diagonal."""
    gens = tuple(np.outer(np.eye(n)[p], np.eye(n)[p + 1]) for p in range(n - 1))
    return HStarAlgebra(n, gens, name=f"M{n}(R)")


def fixture_algebras() -> dict:
    return {"H": quaternion_algebra(), "diag-3": diagonal_algebra(3), "M2": matrix_algebra(2)}
