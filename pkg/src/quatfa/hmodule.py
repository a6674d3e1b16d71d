"""H-bimodules on finite-dimensional real coordinate spaces.

A bimodule is given by the real matrices of left and right multiplication by
``i`` and ``j``; the images of ``k`` are derived (``L(k) = L(i) L(j)``,
``R(k) = R(j) R(i)``).  The real part and everything built on it are
computed from these four matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import _linalg
from .errors import BimoduleValidationError, InvalidGeneratorError, NotIntertwiningError
from .quat_core import CONJ_SIGNS, LEFT_BASIS, RIGHT_BASIS, Quaternion, is_unit_imaginary, qmul

VALIDATION_ATOL = 1e-10

_TABLE = qmul(np.eye(4)[:, None, :], np.eye(4)[None, :, :])  # _TABLE[e, f] = e f


def _as_coeffs(q):
    return Quaternion.coerce(q).to_array()


@dataclass(frozen=True, eq=False)
class HBimodule:
    """Real space of dimension ``dim`` with commuting unital H-actions.

    Construction validates the full multiplication table for both actions,
    their commutation and the real-part dimension ``dim / 4``.
    """

    left_i: np.ndarray
    left_j: np.ndarray
    right_i: np.ndarray
    right_j: np.ndarray
    name: str = ""

    def __post_init__(self):
        for field in ("left_i", "left_j", "right_i", "right_j"):
            object.__setattr__(self, field, np.array(getattr(self, field), dtype=float))
        d = self.left_i.shape[0]
        for m in (self.left_i, self.left_j, self.right_i, self.right_j):
            if m.shape != (d, d):
                raise BimoduleValidationError(f"action matrices must all be {d}x{d}, got {m.shape}")
        if d == 0 or d % 4:
            raise BimoduleValidationError(f"real dimension must be a positive multiple of 4, got {d}")
        self._validate()

    @property
    def dim(self) -> int:
        return self.left_i.shape[0]

    @cached_property
    def left_basis(self) -> np.ndarray:
        eye = np.eye(self.dim)
        return np.stack([eye, self.left_i, self.left_j, self.left_i @ self.left_j])

    @cached_property
    def right_basis(self) -> np.ndarray:
        eye = np.eye(self.dim)
        return np.stack([eye, self.right_i, self.right_j, self.right_j @ self.right_i])

    def left(self, q) -> np.ndarray:
        """Matrix of x -> q x."""
        return np.tensordot(_as_coeffs(q), self.left_basis, axes=1)

    def right(self, q) -> np.ndarray:
        """Matrix of x -> x q."""
        return np.tensordot(_as_coeffs(q), self.right_basis, axes=1)

    def _validate(self):
        lb, rb = self.left_basis, self.right_basis
        # products[e, f] against the table image of e f, for both actions
        ll = np.einsum("eab,fbc->efac", lb, lb) - np.tensordot(_TABLE, lb, axes=1)
        rr = np.einsum("fab,ebc->efac", rb, rb) - np.tensordot(_TABLE, rb, axes=1)
        lr = np.einsum("eab,fbc->efac", lb, rb) - np.einsum("fab,ebc->efac", rb, lb)
        worst = max(np.max(np.abs(ll)), np.max(np.abs(rr)), np.max(np.abs(lr)))
        if worst > VALIDATION_ATOL:
            raise BimoduleValidationError(f"scalar actions violate the bimodule axioms (residual {worst:.3e})")
        r = self.real_basis.shape[1]
        if 4 * r != self.dim:
            raise BimoduleValidationError(f"real part has dimension {r}, expected {self.dim // 4}")

    @cached_property
    def re_matrix(self) -> np.ndarray:
        """Matrix of Re(x) = (1/4) sum_e e* x e."""
        lb, rb = self.left_basis, self.right_basis
        return 0.25 * sum(CONJ_SIGNS[e] * lb[e] @ rb[e] for e in range(4))

    @cached_property
    def real_basis(self) -> np.ndarray:
        """Basis of the real part as columns, in pivoted echelon form."""
        stacked = np.concatenate([self.left_basis[e] - self.right_basis[e] for e in (1, 2, 3)])
        return _linalg.canonical_basis(_linalg.nullspace(stacked))

    @property
    def real_dim(self) -> int:
        return self.dim // 4

    @cached_property
    def real_coords(self) -> np.ndarray:
        """Left inverse of ``real_basis``: coordinates of real-part vectors."""
        return np.linalg.pinv(self.real_basis)

    @cached_property
    def polar_matrices(self) -> np.ndarray:
        """P[e] maps x to the real-part coordinates of Re(e* x)."""
        return np.stack([self.real_coords @ self.re_matrix @ (CONJ_SIGNS[e] * self.left_basis[e]) for e in range(4)])

    def vector(self, coords) -> HVector:
        return HVector(self, coords)

    def zero(self) -> HVector:
        return HVector(self, np.zeros(self.dim))

    def random_vector(self, rng) -> HVector:
        return HVector(self, rng.normal(size=self.dim))

    def action_residual(self, matrix, other=None) -> float:
        """Max commutator defect of ``matrix`` (self -> other) with both actions."""
        other = self if other is None else other
        worst = 0.0
        for e in (1, 2, 3):
            worst = max(
                worst,
                np.max(np.abs(matrix @ self.left_basis[e] - other.left_basis[e] @ matrix)),
                np.max(np.abs(matrix @ self.right_basis[e] - other.right_basis[e] @ matrix)),
            )
        return float(worst)

    def to_spec(self) -> dict:
        return {
            "dim": self.dim,
            "left_i": self.left_i.tolist(),
            "left_j": self.left_j.tolist(),
            "right_i": self.right_i.tolist(),
            "right_j": self.right_j.tolist(),
        }

    @classmethod
    def from_spec(cls, spec: dict, name: str = "") -> HBimodule:
        mats = [np.asarray(spec[key], dtype=float) for key in ("left_i", "left_j", "right_i", "right_j")]
        if "dim" in spec and any(m.shape != (spec["dim"], spec["dim"]) for m in mats):
            raise BimoduleValidationError(f"matrices do not match declared dim {spec['dim']}")
        return cls(*mats, name=name)

    def transport(self, p, name: str = "") -> HBimodule:
        """The bimodule whose actions are conjugated by the invertible ``p``."""
        pinv = np.linalg.inv(p)
        return HBimodule(
            p @ self.left_i @ pinv,
            p @ self.left_j @ pinv,
            p @ self.right_i @ pinv,
            p @ self.right_j @ pinv,
            name=name or f"{self.name}'",
        )

    def __repr__(self):
        return f"HBimodule(name={self.name!r}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class HVector:
    """Element of an :class:`HBimodule` stored by real coordinates."""

    module: HBimodule
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float).reshape(-1)
        if c.shape != (self.module.dim,):
            raise ValueError(f"expected {self.module.dim} coordinates, got {c.shape[0]}")
        object.__setattr__(self, "coords", c)

    def lmul(self, q) -> HVector:
        return HVector(self.module, self.module.left(q) @ self.coords)

    def rmul(self, q) -> HVector:
        return HVector(self.module, self.module.right(q) @ self.coords)

    def __add__(self, other):
        return HVector(self.module, self.coords + other.coords)

    def __sub__(self, other):
        return HVector(self.module, self.coords - other.coords)

    def __neg__(self):
        return HVector(self.module, -self.coords)

    def __mul__(self, scalar):
        return HVector(self.module, self.coords * float(scalar))

    __rmul__ = __mul__

    def allclose(self, other, atol=VALIDATION_ATOL) -> bool:
        return bool(np.max(np.abs(self.coords - other.coords), initial=0.0) <= atol)


@dataclass(frozen=True, eq=False)
class BoundedHMap:
    """Real-linear map between bimodules commuting with both actions."""

    domain: HBimodule
    codomain: HBimodule
    matrix: np.ndarray
    check: bool = True

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise ValueError(f"matrix shape {m.shape} does not match {self.codomain.dim}x{self.domain.dim}")
        object.__setattr__(self, "matrix", m)
        if self.check:
            res = self.residual
            if res > VALIDATION_ATOL * max(1.0, float(np.max(np.abs(m), initial=0.0))):
                raise NotIntertwiningError("map does not intertwine the scalar actions", res)

    @cached_property
    def residual(self) -> float:
        return self.domain.action_residual(self.matrix, self.codomain)

    def __call__(self, x: HVector) -> HVector:
        return HVector(self.codomain, self.matrix @ x.coords)

    def __matmul__(self, other: BoundedHMap) -> BoundedHMap:
        return BoundedHMap(other.domain, self.codomain, self.matrix @ other.matrix)

    def __add__(self, other):
        return BoundedHMap(self.domain, self.codomain, self.matrix + other.matrix)

    def __mul__(self, scalar):
        return BoundedHMap(self.domain, self.codomain, self.matrix * float(scalar))

    __rmul__ = __mul__

    @classmethod
    def identity(cls, module: HBimodule) -> BoundedHMap:
        return cls(module, module, np.eye(module.dim))


def quaternionize(n: int) -> HBimodule:
    """The bimodule R^n (x) H; coordinate 4p + e holds the e-coefficient of slot p."""
    if int(n) != n or n < 1:
        raise ValueError(f"quaternionize needs n >= 1, got {n}")
    return _quaternionize(int(n))


@lru_cache(maxsize=64)
def _quaternionize(n: int) -> HBimodule:
    # immutable, so instances are shared
    eye = np.eye(n)
    return HBimodule(
        np.kron(eye, LEFT_BASIS[1]),
        np.kron(eye, LEFT_BASIS[2]),
        np.kron(eye, RIGHT_BASIS[1]),
        np.kron(eye, RIGHT_BASIS[2]),
        name=f"R^{n}(x)H",
    )


def make_hthr() -> HBimodule:
    """H (x) H with alpha (a (x) b) beta = a (x) alpha b beta.

    Coordinate 4*s + t is the coefficient of e_s (x) e_t.
    """
    eye = np.eye(4)
    return HBimodule(
        np.kron(eye, LEFT_BASIS[1]),
        np.kron(eye, LEFT_BASIS[2]),
        np.kron(eye, RIGHT_BASIS[1]),
        np.kron(eye, RIGHT_BASIS[2]),
        name="hthr",
    )


def make_hthlr() -> HBimodule:
    """H (x) H with alpha (a (x) b) beta = alpha a (x) b beta."""
    eye = np.eye(4)
    return HBimodule(
        np.kron(LEFT_BASIS[1], eye),
        np.kron(LEFT_BASIS[2], eye),
        np.kron(eye, RIGHT_BASIS[1]),
        np.kron(eye, RIGHT_BASIS[2]),
        name="hthlr",
    )


def re_project(x: HVector) -> HVector:
    return HVector(x.module, x.module.re_matrix @ x.coords)


def real_part_basis(module: HBimodule) -> list[HVector]:
    return [HVector(module, col) for col in module.real_basis.T]


def polarize(x: HVector) -> tuple[HVector, HVector, HVector, HVector]:
    """Components x_e = Re(e* x), all in the real part, with x = sum_e x_e e."""
    X = x.module
    return tuple(HVector(X, X.re_matrix @ (CONJ_SIGNS[e] * X.left_basis[e]) @ x.coords) for e in range(4))


def reassemble(components) -> HVector:
    X = components[0].module
    coords = sum(X.right_basis[e] @ components[e].coords for e in range(4))
    return HVector(X, coords)


def structure_iso(module: HBimodule, basis=None) -> BoundedHMap:
    """Bimodule isomorphism onto R^r (x) H through polarization coordinates.

    ``basis`` (columns, default the canonical real-part basis) fixes which
    real-part vectors become the standard ``v_p (x) 1``.
    """
    r = module.real_dim
    if basis is None:
        coords = module.real_coords
    else:
        basis = np.asarray(basis, dtype=float)
        if basis.shape != (module.dim, r):
            raise ValueError(f"real-part basis must be {module.dim}x{r}")
        coords = np.linalg.pinv(basis)
    rows = np.stack([coords @ module.re_matrix @ (CONJ_SIGNS[e] * module.left_basis[e]) for e in range(4)])
    # rows[e, p, :] -> output coordinate 4p + e
    matrix = rows.transpose(1, 0, 2).reshape(4 * r, module.dim)
    return BoundedHMap(module, quaternionize(r), matrix)


def psi_restrict(T: BoundedHMap) -> np.ndarray:
    """Matrix of T restricted to real parts, in canonical real-part bases."""
    res = T.domain.action_residual(T.matrix, T.codomain)
    if res > VALIDATION_ATOL * max(1.0, float(np.max(np.abs(T.matrix), initial=0.0))):
        raise NotIntertwiningError("only bimodule maps restrict to real parts", res)
    return T.codomain.real_coords @ T.matrix @ T.domain.real_basis


def psi_inverse(S, X: HBimodule, Y: HBimodule) -> BoundedHMap:
    """The unique bimodule map X -> Y restricting to ``S`` on real parts."""
    S = np.asarray(S, dtype=float)
    if S.shape != (Y.real_dim, X.real_dim):
        raise ValueError(f"S must be {Y.real_dim}x{X.real_dim}, got {S.shape}")
    iso_x = structure_iso(X).matrix
    iso_y = structure_iso(Y).matrix
    matrix = np.linalg.solve(iso_y, np.kron(S, np.eye(4)) @ iso_x)
    return BoundedHMap(X, Y, matrix)


def bimodule_iso(X: HBimodule, Y: HBimodule, S=None) -> BoundedHMap:
    """Isomorphism X -> Y restricting to ``S`` (default identity) on real parts.

    Any two bimodules with real parts of equal dimension are isomorphic; the
    map is assembled from the polarization coordinates of both sides.
    """
    if X.real_dim != Y.real_dim:
        raise ValueError(f"real parts differ in dimension: {X.real_dim} vs {Y.real_dim}")
    S = np.eye(X.real_dim) if S is None else np.asarray(S, dtype=float)
    if abs(np.linalg.det(S)) < 1e-12:
        raise ValueError("S must be invertible")
    return psi_inverse(S, X, Y)


@dataclass(frozen=True, eq=False)
class ComplexSlice:
    """The complex space {x : alpha x = x alpha} with i acting as alpha."""

    module: HBimodule
    alpha: Quaternion
    basis: np.ndarray
    structure: np.ndarray

    @property
    def complex_dim(self) -> int:
        return self.basis.shape[1] // 2

    def scalar(self, z) -> np.ndarray:
        """Matrix (in slice coordinates) of multiplication by complex ``z``."""
        z = complex(z)
        return z.real * np.eye(self.basis.shape[1]) + z.imag * self.structure


def complexify(module: HBimodule, alpha: Quaternion) -> ComplexSlice:
    if not is_unit_imaginary(alpha):
        raise InvalidGeneratorError(f"{alpha} is not a unit imaginary quaternion")
    kernel = _linalg.nullspace(module.left(alpha) - module.right(alpha))
    if kernel.shape[1] != 2 * module.real_dim:
        raise BimoduleValidationError(
            f"slice has real dimension {kernel.shape[1]}, expected {2 * module.real_dim}"
        )
    structure = kernel.T @ module.left(alpha) @ kernel
    return ComplexSlice(module, alpha, kernel, structure)
