"""Named and randomised test objects shared by the verification suites and tests."""

from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .hhilbert import HilbertHBimodule, RightHModule, qconj_transpose, realify
from .hmodule import BoundedHMap, HBimodule, make_hthlr, make_hthr, psi_inverse, quaternionize
from .quat_core import qmul


def fixture_bimodules() -> dict[str, HBimodule]:
    return {
        "R1(x)H": quaternionize(1),
        "R2(x)H": quaternionize(2),
        "R5(x)H": quaternionize(5),
        "hthr": make_hthr(),
        "hthlr": make_hthlr(),
    }


def random_orthogonal(d: int, rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    return q * np.sign(np.diag(r))


def random_invertible(d: int, rng, spread: float = 0.5) -> np.ndarray:
    """Q1 diag(s) Q2 with log-singular values uniform in [-spread, spread]."""
    s = np.exp(rng.uniform(-spread, spread, size=d))
    return random_orthogonal(d, rng) @ np.diag(s) @ random_orthogonal(d, rng)


def random_spd(n: int, rng, spread: float = 0.5) -> np.ndarray:
    q = random_orthogonal(n, rng)
    return q @ np.diag(np.exp(rng.uniform(-spread, spread, size=n))) @ q.T


def random_bimodule(n: int, rng) -> HBimodule:
    """R^n (x) H written in random well-conditioned coordinates."""
    return quaternionize(n).transport(random_invertible(4 * n, rng), name=f"random-{n}")


def random_hilbert_bimodule(n: int, rng) -> HilbertHBimodule:
    base = HilbertHBimodule.standard(n, random_spd(n, rng))
    p = random_invertible(4 * n, rng)
    p_inv = np.linalg.inv(p)
    module = base.module.transport(p, name=f"random-hilbert-{n}")
    return HilbertHBimodule(module, p_inv.T @ base.form @ p_inv, name=module.name)


def random_intertwiner(X: HBimodule, Y: HBimodule, rng) -> BoundedHMap:
    return psi_inverse(rng.normal(size=(Y.real_dim, X.real_dim)), X, Y)


def random_quaternion_matrix(n: int, m: int, rng) -> np.ndarray:
    return rng.normal(size=(n, m, 4))


def random_right_module(n: int, rng) -> RightHModule:
    """Gram matrix A* A + I for a random quaternion matrix A."""
    a = random_quaternion_matrix(n, n, rng) / np.sqrt(4 * n)
    gram = qmul(qconj_transpose(a)[:, :, None, :], a[None, :, :, :]).sum(axis=1)
    gram[np.arange(n), np.arange(n), 0] += 1.0
    return RightHModule(0.5 * (gram + qconj_transpose(gram)))


def random_quaternion_unitary(n: int, rng) -> np.ndarray:
    """Realified quaternion unitary exp(S) for a random skew-hermitian S."""
    s = random_quaternion_matrix(n, n, rng)
    s = 0.5 * (s - qconj_transpose(s))
    return sla.expm(realify(s))
