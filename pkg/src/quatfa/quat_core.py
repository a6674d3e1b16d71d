"""Real quaternions, their 4x4 real matrix images and dual functionals.

Quaternions are stored as four real coefficients against the basis
``1, i, j, k``.  Besides the scalar :class:`Quaternion` type the module keeps
array-level helpers working on trailing axes of length 4, which the
structure modules use for quaternion vectors and matrices.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidGeneratorError

ATOL = 1e-12

# sign of e* relative to e, indexed by basis position
CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0])


def qmul(p, q):
    """Hamilton product of quaternion arrays broadcasting over leading axes."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


def qconj(q):
    return np.asarray(q, dtype=float) * CONJ_SIGNS


def left_matrix(q):
    """Matrix of x -> q x on coefficient columns."""
    q = np.asarray(q, dtype=float)
    return qmul(q, np.eye(4)).T


def right_matrix(q):
    """Matrix of x -> x q on coefficient columns."""
    q = np.asarray(q, dtype=float)
    return qmul(np.eye(4), q).T


# L(e) and R(e) for e in the basis, shape (4, 4, 4)
LEFT_BASIS = np.stack([left_matrix(e) for e in np.eye(4)])
RIGHT_BASIS = np.stack([right_matrix(e) for e in np.eye(4)])


@dataclass(frozen=True)
class Quaternion:
    """The quaternion a + b i + c j + d k."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @classmethod
    def from_array(cls, arr) -> Quaternion:
        a, b, c, d = (float(x) for x in np.asarray(arr, dtype=float).reshape(4))
        return cls(a, b, c, d)

    @classmethod
    def coerce(cls, value) -> Quaternion:
        if isinstance(value, Quaternion):
            return value
        if np.isscalar(value):
            return cls(float(value))
        return cls.from_array(value)

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __add__(self, other):
        return Quaternion.from_array(self.to_array() + Quaternion.coerce(other).to_array())

    __radd__ = __add__

    def __sub__(self, other):
        return Quaternion.from_array(self.to_array() - Quaternion.coerce(other).to_array())

    def __rsub__(self, other):
        return Quaternion.coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if np.isscalar(other):
            return Quaternion.from_array(self.to_array() * float(other))
        return mul(self, Quaternion.coerce(other))

    def __rmul__(self, other):
        if np.isscalar(other):
            return Quaternion.from_array(self.to_array() * float(other))
        return mul(Quaternion.coerce(other), self)

    def __truediv__(self, scalar):
        return Quaternion.from_array(self.to_array() / float(scalar))

    def conj(self) -> Quaternion:
        return conj(self)

    def norm(self) -> float:
        return norm(self)

    def inv(self) -> Quaternion:
        return inv(self)

    @property
    def real(self) -> float:
        return self.a

    def isclose(self, other, atol=ATOL) -> bool:
        diff = self.to_array() - Quaternion.coerce(other).to_array()
        return bool(np.max(np.abs(diff)) <= atol)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


class BasisElement(enum.Enum):
    """The four basis quaternions, valued by coefficient index."""

    ONE = 0
    I = 1
    J = 2
    K = 3

    @property
    def quaternion(self) -> Quaternion:
        return Quaternion.from_array(np.eye(4)[self.value])

    @property
    def label(self) -> str:
        return "1ijk"[self.value]


BASIS = tuple(e.quaternion for e in BasisElement)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qmul(p.to_array(), q.to_array()))


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a, -q.b, -q.c, -q.d)


def norm(q: Quaternion) -> float:
    return math.sqrt(q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d)


def inv(q: Quaternion) -> Quaternion:
    n2 = q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d
    if n2 == 0.0:
        raise ZeroDivisionError("the zero quaternion has no inverse")
    return conj(q) / n2


def to_m4(q: Quaternion) -> np.ndarray:
    """The 4x4 real matrix attached to ``q``.

    The map is a unital injective algebra homomorphism, sends ``conj`` to the
    transpose and is isometric for the spectral norm.  Its first row holds
    the coefficients of ``q``.
    """
    a, b, c, d = q
    return np.array(
        [
            [a, b, c, d],
            [-b, a, -d, c],
            [-c, d, a, -b],
            [-d, -c, b, a],
        ]
    )


def from_m4(m) -> Quaternion:
    """Read a quaternion back off the first row of its matrix image."""
    return Quaternion.from_array(np.asarray(m)[0])


@dataclass(frozen=True, eq=False)
class DualFunctional:
    """The real functional sum_e coefficients[e] * e-hat on H."""

    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, dtype=float).reshape(4))

    def __call__(self, q) -> float:
        return float(self.coefficients @ Quaternion.coerce(q).to_array())

    def norm(self) -> float:
        # dual of the Euclidean norm is Euclidean
        return float(np.linalg.norm(self.coefficients))

    def isclose(self, other, atol=ATOL) -> bool:
        return bool(np.max(np.abs(self.coefficients - other.coefficients)) <= atol)


def hat(q: Quaternion) -> DualFunctional:
    """The functional q-hat; e-hat(f) is the Kronecker delta on the basis."""
    return DualFunctional(q.to_array())


def hat_action(beta: Quaternion, f: DualFunctional, side: str) -> DualFunctional:
    """Scalar action on H*: ``(beta . f)(x) = f(x beta)``, ``(f . beta)(x) = f(beta x)``."""
    if side == "left":
        mat = right_matrix(beta.to_array())
    elif side == "right":
        mat = left_matrix(beta.to_array())
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return DualFunctional(mat.T @ f.coefficients)


@dataclass(frozen=True)
class ComplexEmbedding:
    """The algebra map C -> R + alpha R sending the complex unit to ``alpha``."""

    alpha: Quaternion

    def __call__(self, z) -> Quaternion:
        z = complex(z)
        return Quaternion(z.real) + self.alpha * z.imag

    def inverse(self, q: Quaternion) -> complex:
        """Complex preimage of ``q``; q must lie in R + alpha R."""
        imag = float(q.to_array()[1:] @ self.alpha.to_array()[1:])
        return complex(q.a, imag)


def is_unit_imaginary(alpha: Quaternion, atol=1e-9) -> bool:
    return abs(alpha.a) <= atol and abs(norm(alpha) - 1.0) <= atol


def embed_complex(alpha: Quaternion) -> ComplexEmbedding:
    if not is_unit_imaginary(alpha):
        raise InvalidGeneratorError(f"{alpha} is not a unit imaginary quaternion")
    return ComplexEmbedding(alpha)


def random_quaternion(rng, scale=1.0) -> Quaternion:
    return Quaternion.from_array(rng.normal(scale=scale, size=4))


def random_unit_imaginary(rng) -> Quaternion:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return Quaternion(0.0, *v)
