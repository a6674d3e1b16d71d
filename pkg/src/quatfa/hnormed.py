"""Hilbertian bimodule norms, operator norms and quaternion-valued functionals.

Norms are carried as Gram matrices on the real coordinates of a bimodule.
A Gram matrix is an admissible bimodule norm exactly when every basis
quaternion acts orthogonally on both sides, which makes
``||alpha x beta|| = ||alpha|| ||x|| ||beta||`` hold identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from . import _linalg
from .errors import InvalidSubspaceError, NoSeparatorError, UnsupportedNormError
from .hmodule import (
    VALIDATION_ATOL,
    BoundedHMap,
    HBimodule,
    HVector,
    polarize,
    psi_restrict,
    quaternionize,
    structure_iso,
)

HILBERTIAN_KINDS = ("hilbertian", "quaternion-absolute")

H = quaternionize(1)


@dataclass(frozen=True, eq=False)
class HNorm:
    """A norm on a bimodule; Hilbertian kinds carry a Gram matrix."""

    module: HBimodule
    kind: str = "hilbertian"
    form: np.ndarray | None = None

    def __post_init__(self):
        if self.kind in HILBERTIAN_KINDS:
            if self.form is None:
                raise ValueError(f"{self.kind} norm needs a form matrix")
            form = np.array(self.form, dtype=float)
            object.__setattr__(self, "form", form)
            res = self.compatibility_residual()
            if res > VALIDATION_ATOL * max(1.0, float(np.max(np.abs(form)))):
                raise ValueError(f"form is not a bimodule norm (residual {res:.3e})")
            if np.linalg.eigvalsh(0.5 * (form + form.T))[0] <= 0:
                raise ValueError("form is not positive definite")

    @property
    def hilbertian(self) -> bool:
        return self.kind in HILBERTIAN_KINDS

    def require_hilbertian(self) -> np.ndarray:
        if not self.hilbertian:
            raise UnsupportedNormError(f"norm kind {self.kind!r} is not supported; need a Hilbertian norm")
        return self.form

    def compatibility_residual(self) -> float:
        X, G = self.module, self.form
        worst = np.max(np.abs(G - G.T))
        for e in (1, 2, 3):
            for act in (X.left_basis[e], X.right_basis[e]):
                worst = max(worst, np.max(np.abs(act.T @ G @ act - G)))
        return float(worst)

    def __call__(self, x) -> float:
        G = self.require_hilbertian()
        c = x.coords if isinstance(x, HVector) else np.asarray(x, dtype=float)
        return float(np.sqrt(max(c @ G @ c, 0.0)))

    @cached_property
    def real_form(self) -> np.ndarray:
        """Gram matrix of the restriction to the canonical real-part basis."""
        B = self.module.real_basis
        return B.T @ self.require_hilbertian() @ B

    def to_spec(self) -> dict:
        return {"kind": self.kind, "form": None if self.form is None else self.form.tolist()}


def hilbertian_norm(module: HBimodule, real_form=None) -> HNorm:
    """The Hilbertian norm induced by an inner product on the real part.

    ``real_form`` is a Gram matrix in the canonical real-part coordinates
    (identity by default); it is extended to the quaternionization and
    pulled back through :func:`structure_iso`.
    """
    r = module.real_dim
    q = np.eye(r) if real_form is None else np.asarray(real_form, dtype=float)
    s = structure_iso(module).matrix
    form = s.T @ np.kron(q, np.eye(4)) @ s
    return HNorm(module, "hilbertian", 0.5 * (form + form.T))


def standard_norm(module: HBimodule) -> HNorm:
    return hilbertian_norm(module)


def quaternion_absolute() -> HNorm:
    """The norm sqrt(a^2 + b^2 + c^2 + d^2) on H itself."""
    return HNorm(H, "quaternion-absolute", np.eye(4))


def _norm_or_default(norm, module):
    return standard_norm(module) if norm is None else norm


def op_norm(T: BoundedHMap, dom_norm: HNorm | None = None, cod_norm: HNorm | None = None) -> float:
    """Operator norm; exact largest singular value in orthonormal coordinates."""
    dom = _norm_or_default(dom_norm, T.domain).require_hilbertian()
    cod = _norm_or_default(cod_norm, T.codomain).require_hilbertian()
    return _linalg.op_norm(T.matrix, dom, cod)


def functional_norm(f, module: HBimodule, norm: HNorm | None = None) -> float:
    """Norm of a real functional on the real part, given by canonical coordinates."""
    q = _norm_or_default(norm, module).real_form
    return _linalg.op_norm(np.asarray(f, dtype=float)[None, :], q)


def functional_tilde(f, module: HBimodule) -> BoundedHMap:
    """The H-valued map x -> sum_e f(Re(e* x)) e.

    ``f`` is a real functional on the real part given by its values on the
    canonical real-part basis.
    """
    f = np.asarray(f, dtype=float).reshape(module.real_dim)
    matrix = np.stack([f @ module.polar_matrices[e] for e in range(4)])
    return BoundedHMap(module, H, matrix)


def separate_point(x: HVector, norm: HNorm | None = None) -> BoundedHMap:
    """A bimodule functional into H that does not vanish at ``x``.

    Uses the largest polarization component ``x_e`` and the real functional
    ``<x_e, .>`` on the real part, so the e-coefficient of T(x) is
    ``||x_e||^2``.
    """
    X = x.module
    G = _norm_or_default(norm, X).require_hilbertian()
    comps = polarize(x)
    sizes = [float(c.coords @ G @ c.coords) for c in comps]
    e = int(np.argmax(sizes))
    if sizes[e] <= 0.0 or not np.any(x.coords):
        raise NoSeparatorError("the zero vector cannot be separated")
    f = comps[e].coords @ G @ X.real_basis
    return functional_tilde(f, X)


@dataclass(frozen=True, eq=False)
class SubBimodule:
    """A sub-bimodule given by an orthonormal (Euclidean) inclusion matrix."""

    parent: HBimodule
    module: HBimodule
    inclusion: np.ndarray

    def induced_norm(self, norm: HNorm | None = None) -> HNorm:
        G = _norm_or_default(norm, self.parent).require_hilbertian()
        Q = self.inclusion
        return HNorm(self.module, "hilbertian", Q.T @ G @ Q)


def sub_bimodule(parent: HBimodule, span) -> SubBimodule:
    """The sub-bimodule spanned by the columns of ``span``.

    Raises :class:`InvalidSubspaceError` when the span is not closed under
    left and right multiplication by i, j and k.
    """
    span = np.atleast_2d(np.asarray(span, dtype=float))
    if span.shape[0] != parent.dim:
        span = span.T
    basis = _linalg.range_basis(span)
    if basis.shape[1] == 0:
        raise InvalidSubspaceError("spanning set is zero")
    worst = 0.0
    for e in (1, 2, 3):
        for act in (parent.left_basis[e], parent.right_basis[e]):
            worst = max(worst, _linalg.span_residual(basis, act @ basis))
    if worst > VALIDATION_ATOL:
        raise InvalidSubspaceError(f"span is not invariant under the scalar actions (residual {worst:.3e})")
    acts = [basis.T @ parent.left_basis[1] @ basis, basis.T @ parent.left_basis[2] @ basis,
            basis.T @ parent.right_basis[1] @ basis, basis.T @ parent.right_basis[2] @ basis]
    return SubBimodule(parent, HBimodule(*acts, name=f"sub({parent.name})"), basis)


def hahn_banach_extend(sub: SubBimodule, g: BoundedHMap, norm: HNorm | None = None) -> BoundedHMap:
    """Norm-preserving extension of ``g: sub -> H`` to the parent bimodule.

    The real functional Psi(g) on the real part of ``sub`` is extended by zero
    on its orthogonal complement inside the parent's real part and then
    lifted back with :func:`functional_tilde`.
    """
    X = sub.parent
    Y = sub.module
    if g.domain is not Y:
        raise ValueError("g must be defined on the sub-bimodule")
    q_x = _norm_or_default(norm, X).real_form
    phi = psi_restrict(g)[0]  # values of Psi(g) on Y's real basis
    w = X.real_coords @ sub.inclusion @ Y.real_basis
    f = phi @ np.linalg.solve(w.T @ q_x @ w, w.T @ q_x)
    return functional_tilde(f, X)


class DualModule(NamedTuple):
    """The dual X* with (alpha.f)(x) = f(x alpha) and (f.alpha)(x) = f(alpha x).

    Functionals are coordinate vectors ``phi`` with f(x) = phi . x; ``module``
    carries the induced actions and ``form`` the dual Gram matrix.
    """

    base: HBimodule
    module: HBimodule
    form: np.ndarray

    def evaluate(self, phi, x: HVector) -> float:
        return float(np.asarray(phi) @ x.coords)

    def norm(self, phi) -> float:
        phi = np.asarray(phi, dtype=float)
        return float(np.sqrt(phi @ self.form @ phi))


def dual_module(module: HBimodule, norm: HNorm | None = None) -> DualModule:
    G = _norm_or_default(norm, module).require_hilbertian()
    lb, rb = module.left_basis, module.right_basis
    dual = HBimodule(rb[1].T, rb[2].T, lb[1].T, lb[2].T, name=f"{module.name}*")
    return DualModule(module, dual, np.linalg.inv(G))


def dual_re_iso(f, module: HBimodule) -> np.ndarray:
    """The functional f o Re on the whole module, as a coordinate vector."""
    f = np.asarray(f, dtype=float).reshape(module.real_dim)
    return f @ module.real_coords @ module.re_matrix


class NormComparison(NamedTuple):
    restricted: float
    full: float

    @property
    def slack(self) -> float:
        """Distance to the nearer end of restricted <= full <= 4 restricted."""
        return min(self.full - self.restricted, 4.0 * self.restricted - self.full)


def check_norm_equivalence(
    T: BoundedHMap, dom_norm: HNorm | None = None, cod_norm: HNorm | None = None
) -> NormComparison:
    """Norms of T on the real part and on the whole module."""
    dom = _norm_or_default(dom_norm, T.domain)
    cod = _norm_or_default(cod_norm, T.codomain)
    restricted = _linalg.op_norm(psi_restrict(T), dom.real_form, cod.real_form)
    full = op_norm(T, dom, cod)
    tol = 1e-9 * max(1.0, full)
    if not (restricted <= full + tol and full <= 4.0 * restricted + tol):
        raise ArithmeticError(f"norm chain violated: restricted={restricted}, full={full}")
    return NormComparison(restricted, full)
