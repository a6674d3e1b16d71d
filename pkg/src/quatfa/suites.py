"""Seeded randomized verification suites, one per structural identity.

Each suite draws ``trials`` random instances, each from its own generator
seeded by (seed, suite id, trial index), so results do not depend on the
order or parallelism in which trials run.  A suite records the largest
residual of every named check and counts failures of yes/no checks.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import hbstar, hhilbert, hmodule, hnormed, quat_core
from .errors import NotCommutativeError
from .fixtures import (
    fixture_bimodules,
    random_hilbert_bimodule,
    random_intertwiner,
    random_invertible,
    random_quaternion_unitary,
    random_right_module,
)
from .hhilbert import HTensorElement
from .quat_core import CONJ_SIGNS, Quaternion, qconj, qmul, to_m4


@dataclass
class Tally:
    residuals: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def res(self, name: str, value) -> None:
        value = float(value)
        if not math.isfinite(value):
            value = math.inf
        self.residuals[name] = max(self.residuals.get(name, 0.0), value)

    def check(self, name: str, ok: bool) -> None:
        self.failures[name] = self.failures.get(name, 0) + (0 if ok else 1)


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    trials: int
    tol: float
    residuals: dict
    failures: dict
    details: dict

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol and not any(self.failures.values())

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "tol": self.tol,
            "max_residual": self.max_residual,
            "pass": self.passed,
            "residuals": dict(sorted(self.residuals.items())),
            "failures": dict(sorted(self.failures.items())),
            "details": self.details,
        }


def trial_rng(seed: int, suite: str, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(zlib.crc32(suite.encode()), trial)))


def _qdiff(p, q) -> float:
    return float(np.max(np.abs(np.asarray(p) - np.asarray(q))))


def _rand_q(rng) -> np.ndarray:
    return rng.normal(size=4)


# -- quaternions ---------------------------------------------------------------


def _quaternion(t: Tally, rngs, spec):
    for rng in rngs:
        p, q, r = (quat_core.random_quaternion(rng) for _ in range(3))
        t.res("associativity", _qdiff(((p * q) * r).to_array(), (p * (q * r)).to_array()))
        t.res("conj-antimultiplicative", _qdiff((p * q).conj().to_array(), (q.conj() * p.conj()).to_array()))
        t.res("norm-multiplicative", abs((p * q).norm() - p.norm() * q.norm()))
        t.res("inverse", _qdiff((p * p.inv()).to_array(), [1, 0, 0, 0]))
        t.res("to_m4-homomorphism", _qdiff(to_m4(p * q), to_m4(p) @ to_m4(q)))
        t.res("to_m4-involution", _qdiff(to_m4(p.conj()), to_m4(p).T))
        t.res("to_m4-isometry", abs(np.linalg.norm(to_m4(p), 2) - p.norm()))
        t.res("from_m4", _qdiff(quat_core.from_m4(to_m4(p)).to_array(), p.to_array()))
        a_hat = quat_core.hat(p)
        ab_hat = quat_core.hat(p * q).coefficients
        t.res("hat-left", _qdiff(quat_core.hat_action(q.conj(), a_hat, "left").coefficients, ab_hat))
        t.res("hat-right", _qdiff(quat_core.hat_action(p.conj(), quat_core.hat(q), "right").coefficients, ab_hat))
        t.res("hat-isometry", abs(a_hat.norm() - p.norm()))
        alpha = quat_core.random_unit_imaginary(rng)
        emb = quat_core.embed_complex(alpha)
        z, w = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        t.res("complex-embedding", _qdiff((emb(z) * emb(w)).to_array(), emb(z * w).to_array()))


# -- bimodules -------------------------------------------------------------------


def _modules(spec):
    mods = fixture_bimodules()
    if isinstance(spec, hmodule.HBimodule):
        mods["spec"] = spec
    return mods


def _polarization(t: Tally, rngs, spec):
    mods = _modules(spec)
    for rng in rngs:
        for name, X in mods.items():
            x = X.random_vector(rng)
            comps = hmodule.polarize(x)
            t.res("reassembly", np.max(np.abs(hmodule.reassemble(comps).coords - x.coords)))
            t.res("components-real", max(
                np.max(np.abs((X.left_basis[f] - X.right_basis[f]) @ c.coords)) for c in comps for f in (1, 2, 3)
            ))
            re = X.re_matrix
            t.res("re-idempotent", np.max(np.abs(re @ re @ x.coords - re @ x.coords)))
            # uniqueness: real-part components are recovered exactly
            z = X.real_basis @ rng.normal(size=(X.real_dim, 4))
            x2 = sum(X.right_basis[e] @ z[:, e] for e in range(4))
            back = hmodule.polarize(X.vector(x2))
            t.res("uniqueness", max(np.max(np.abs(back[e].coords - z[:, e])) for e in range(4)))
            # a perturbed decomposition with the same sum leaves the real part
            w = rng.normal(size=X.dim)
            delta = w - re @ w
            moved = [comps[0].coords + X.right_basis[1] @ delta, comps[1].coords - delta]
            leak = max(np.max(np.abs((X.left_basis[f] - X.right_basis[f]) @ m)) for m in moved for f in (1, 2, 3))
            t.check("perturbation-detected", leak > 1e-6 * max(1.0, np.linalg.norm(delta)))


def _category(t: Tally, rngs, spec):
    mods = _modules(spec)
    isos = {}
    for name, X in mods.items():
        t.check(f"real-dim[{name}]", X.real_basis.shape[1] == X.dim // 4)
        S = hmodule.structure_iso(X)
        t.res("structure-iso-intertwining", S.residual)
        t.check(f"structure-iso-bijective[{name}]", np.linalg.matrix_rank(S.matrix) == X.dim)
        isos[name] = S
    X, Y = hmodule.make_hthr(), hmodule.make_hthlr()
    iso = hmodule.bimodule_iso(X, Y)
    t.res("hthr-hthlr-intertwining", iso.residual)
    t.check("hthr-hthlr-bijective", np.linalg.matrix_rank(iso.matrix) == X.dim)
    for rng in rngs:
        for name, X in mods.items():
            S = isos[name]
            x = X.random_vector(rng)
            a, b = _rand_q(rng), _rand_q(rng)
            lhs = S.matrix @ X.left(a) @ X.right(b) @ x.coords
            rhs = S.codomain.left(a) @ S.codomain.right(b) @ S.matrix @ x.coords
            t.res("structure-iso-actions", np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(rhs))))
        Xr, Yr = hmodule.make_hthr(), hmodule.make_hthlr()
        sr = rng.normal(size=(Yr.real_dim, Xr.real_dim))
        T = hmodule.psi_inverse(sr, Xr, Yr)
        t.res("psi-roundtrip", np.max(np.abs(hmodule.psi_restrict(T) - sr)))
        x = Xr.random_vector(rng)
        a, b = _rand_q(rng), _rand_q(rng)
        t.res(
            "hthr-hthlr-actions",
            np.max(np.abs(iso.matrix @ Xr.left(a) @ Xr.right(b) @ x.coords - Yr.left(a) @ Yr.right(b) @ iso.matrix @ x.coords)),
        )


# -- normed bimodules -----------------------------------------------------------


def _functional_lift(t: Tally, rngs, spec):
    for rng in rngs:
        K = random_hilbert_bimodule(int(rng.integers(1, 5)), rng)
        norm = K.hnorm
        f = rng.normal(size=K.module.real_dim)
        ft = hnormed.functional_tilde(f, K.module)
        fn = hnormed.functional_norm(f, K.module, norm)
        t.res("tilde-isometry", abs(hnormed.op_norm(ft, norm, hnormed.quaternion_absolute()) - fn) / max(1.0, fn))
        t.res("tilde-restricts", np.max(np.abs(hmodule.psi_restrict(ft)[0] - f)))
        T = random_intertwiner(K.module, hnormed.H, rng)
        back = hnormed.functional_tilde(hmodule.psi_restrict(T)[0], K.module)
        t.res("tilde-inverts-psi", np.max(np.abs(back.matrix - T.matrix)))
        x = K.module.random_vector(rng)
        a, b = _rand_q(rng), _rand_q(rng)
        axb = K.module.left(a) @ K.module.right(b) @ x.coords
        t.res("norm-law", abs(norm(axb) - np.linalg.norm(a) * norm(x) * np.linalg.norm(b)) / max(1.0, norm(axb)))


def _separation(t: Tally, rngs, spec):
    for rng in rngs:
        K = random_hilbert_bimodule(int(rng.integers(1, 5)), rng)
        x = K.module.random_vector(rng) * float(np.exp(rng.uniform(-3, 3)))
        T = hnormed.separate_point(x, K.hnorm)
        t.check("separates", np.linalg.norm(T(x).coords) > 1e-12 * K.norm(x) ** 2)


def _hahn_banach(t: Tally, rngs, spec):
    for rng in rngs:
        n = int(rng.integers(2, 5))
        K = random_hilbert_bimodule(n, rng)
        X = K.module
        k = int(rng.integers(1, n))
        v = X.real_basis @ rng.normal(size=(X.real_dim, k))
        span = np.hstack([X.right_basis[e] @ v for e in range(4)])
        sub = hnormed.sub_bimodule(X, span)
        Y = sub.module
        sub_norm = sub.induced_norm(K.hnorm)
        g = hnormed.functional_tilde(rng.normal(size=Y.real_dim), Y)
        F = hnormed.hahn_banach_extend(sub, g, K.hnorm)
        habs = hnormed.quaternion_absolute()
        gn = hnormed.op_norm(g, sub_norm, habs)
        t.res("norm-preserved", abs(hnormed.op_norm(F, K.hnorm, habs) - gn) / max(1.0, gn))
        t.res("restricts", np.max(np.abs(F.matrix @ sub.inclusion - g.matrix)))


# -- Hilbert structures ----------------------------------------------------------


def _hilbert_structure(t: Tally, rngs, spec):
    for rng in rngs:
        n = int(rng.integers(1, 4))
        Y = random_hilbert_bimodule(n, rng)
        P = hhilbert.two_sided_from_bimodule(Y)
        x, y = rng.normal(size=Y.dim), rng.normal(size=Y.dim)
        a, b = _rand_q(rng), _rand_q(rng)
        pxy = P.pair(x, y)
        t.res("two-sided-collapse", _qdiff(pxy.m(), Y.inner(x, y)))
        C = hhilbert.collapse_two_sided(P)
        t.res("two-sided-roundtrip", np.max(np.abs(C.form - Y.form)))
        t.res("sharp-symmetry", np.max(np.abs(P.pair(y, x).coeffs - pxy.sharp().coeffs)))
        t.check("cone-membership", hhilbert.cone_membership(P.pair(x, x)))
        ayb = Y.module.left(a) @ Y.module.right(b) @ y
        cov = P.pair(y, x).rmul_first(qconj(a)).lmul_first(qconj(b))
        t.res("left-covariance", np.max(np.abs(P.pair(ayb, x).coeffs - cov.coeffs)) / max(1.0, np.max(np.abs(cov.coeffs))))
        cs = np.linalg.norm(pxy.m()) - P.norm(x) * P.norm(y)
        t.res("cauchy-schwarz", max(0.0, cs))
        t.res("adjoint-law-bimodule", _qdiff(Y.inner(Y.module.left(a) @ x, y), Y.inner(x, Y.module.left(qconj(a)) @ y)))
        t.res("unital", np.max(np.abs(Y.module.right([1, 0, 0, 0]) @ y - y)))
        # right module -> bimodule
        M = random_right_module(n, rng)
        K = hhilbert.induce_left_mult(M)
        U = hhilbert.gram_schmidt(M)
        gram_u = np.array([[M.inner(U[:, p], U[:, q]) for q in range(n)] for p in range(n)])
        t.res("gram-schmidt-orthonormal", np.max(np.abs(gram_u - np.eye(n)[:, :, None] * np.eye(4)[0])))
        xm, ym = rng.normal(size=(n, 4)), rng.normal(size=(n, 4))
        t.res("right-module-roundtrip", _qdiff(K.inner(xm.ravel(), ym.ravel()), M.inner(xm, ym)))
        t.res("adjoint-law-induced", _qdiff(K.inner(K.module.left(a) @ xm.ravel(), ym.ravel()), K.inner(xm.ravel(), K.module.left(qconj(a)) @ ym.ravel())))
        real = K.module.real_basis @ rng.normal(size=(n, 2))
        t.res("real-part-real-valued", np.max(np.abs(K.inner(real[:, 0], real[:, 1])[1:])))
        # left-structure uniqueness up to a unitary
        W = hhilbert.realify(U)
        V = W @ random_quaternion_unitary(n, rng) @ np.linalg.inv(W)
        lam1 = K.left_structure()
        lam2 = tuple(V @ m @ np.linalg.inv(V) for m in lam1)
        Ui = hhilbert.intertwine_left_structures(M, lam1, lam2).matrix
        Ui_inv = np.linalg.inv(Ui)
        t.res("intertwine-conjugation", max(np.max(np.abs(Ui @ l1 @ Ui_inv - l2)) for l1, l2 in zip(lam1, lam2)))
        t.res("intertwine-unitary", np.max(np.abs(Ui.T @ M.form @ Ui - M.form)))
        t.res("intertwine-right-linear", max(np.max(np.abs(Ui @ r - r @ Ui)) for r in M.right_basis))
        # representations of H -> right module -> bimodule -> representation
        p = random_invertible(4 * n, rng)
        p_inv = np.linalg.inv(p)
        form = p_inv.T @ p_inv
        pi = [p @ np.kron(np.eye(n), to_m4(Quaternion.from_array(e))) @ p_inv for e in np.eye(4)]
        R = hhilbert.from_pi(form, pi[1], pi[2])
        reps = np.stack(pi)
        z = rng.normal(size=4 * n)
        br = hhilbert.bracket(form, reps, z, z)
        t.res("pi-bracket-real", abs(br[0] - z @ form @ z) + np.max(np.abs(br[1:])))
        E = R.embedding
        t.res("pi-embedding-isometric", np.max(np.abs(E.T @ form @ E - R.form)))
        cz, cw = rng.normal(size=(R.rank, 4)), rng.normal(size=(R.rank, 4))
        t.res("pi-gram", _qdiff(R.inner(cz, cw), hhilbert.bracket(form, reps, E @ cz.ravel(), E @ cw.ravel())))
        Kpi = hhilbert.induce_left_mult(R)
        extracted = np.stack([CONJ_SIGNS[e] * Kpi.module.right_basis[e] for e in range(4)])
        Upi = hhilbert.rep_intertwiner(extracted, R.form, reps, form)
        t.res("pi-extraction-equivalent", max(np.max(np.abs(Upi @ extracted[e] - reps[e] @ Upi)) for e in range(4)))
        t.res("pi-extraction-unitary", np.max(np.abs(Upi.T @ form @ Upi - R.form)))
        # opposite bimodule
        op = hhilbert.opposite(Y)
        xo, yo = rng.normal(size=op.dim), rng.normal(size=op.dim)
        t.res("opposite-adjoint-law", _qdiff(op.inner(op.module.left(a) @ xo, yo), op.inner(xo, op.module.left(qconj(a)) @ yo)))
        explicit = qmul(xo.reshape(-1, 4), qconj(yo.reshape(-1, 4))).sum(axis=0)
        t.res("opposite-formula", _qdiff(op.inner(xo, yo), explicit))
        op2 = hhilbert.opposite(op)
        D = hhilbert.delta_iso(Y).matrix
        D2 = hhilbert.delta_iso(op2).matrix
        iso = np.linalg.solve(D2, D)
        hmodule.BoundedHMap(Y.module, op2.module, iso)
        t.res("double-opposite-isometric", np.max(np.abs(iso.T @ op2.form @ iso - Y.form)))
        # real-part isometries
        Dx = D @ x
        comps = Y.module.polar_matrices @ x
        t.res("delta-isometry", abs(np.linalg.norm(Dx) - Y.norm(x)) / max(1.0, Y.norm(x)))
        comp_norms = sum(c @ Y.real_form @ c for c in comps)
        t.res("delta-components", abs(comp_norms - Y.norm(x) ** 2) / max(1.0, Y.norm(x) ** 2))
        Z = random_hilbert_bimodule(int(rng.integers(1, 4)), rng)
        T = random_intertwiner(Y.module, Z.module, rng)
        phi, full = hhilbert.phi_isometry_check(T, Y, Z)
        t.res("phi-isometry", abs(phi - full) / max(1.0, full))


def _theta_norms(t: Tally, rngs, spec):
    theta = hhilbert.THETA
    eps, hil = hhilbert.epsilon_norm(theta), hhilbert.hil_norm(theta)
    t.res("theta-epsilon", abs(eps - 1.0))
    t.res("theta-hilbert", abs(hil - 2.0))
    t.details.update({"epsilon": eps, "hilbert": hil})
    one = HTensorElement.simple([1, 0, 0, 0], [1, 0, 0, 0])
    t.res("one-one", abs(hhilbert.epsilon_norm(one) - 1.0) + abs(hhilbert.hil_norm(one) - 1.0))
    for rng in rngs:
        p = HTensorElement(rng.normal(size=(4, 4)))
        t.check("epsilon-le-hilbert", hhilbert.epsilon_norm(p) <= hhilbert.hil_norm(p) + 1e-12)
        t.res("sharp-isometry", abs(hhilbert.epsilon_norm(p.sharp()) - hhilbert.epsilon_norm(p)) + abs(hhilbert.hil_norm(p.sharp()) - hhilbert.hil_norm(p)))
        a, b = _rand_q(rng), _rand_q(rng)
        r1 = HTensorElement.simple(a, b)
        cross = np.linalg.norm(a) * np.linalg.norm(b)
        t.res("cross-norm", (abs(hhilbert.epsilon_norm(r1) - cross) + abs(hhilbert.hil_norm(r1) - cross)) / max(1.0, cross))
        gens = rng.normal(size=(3, 4))
        member = HTensorElement(sum(np.outer(qconj(g), g) for g in gens))
        t.check("cone-accepts-sums", hhilbert.cone_membership(member))
        t.res("cone-sum-real-positive", np.max(np.abs(member.m()[1:])) + max(0.0, -member.m()[0]))
        t.check("cone-rejects-rank-one", not hhilbert.cone_membership(r1))


def _example_tl(t: Tally, rngs, spec):
    T = hhilbert.example_dual_gap()
    n, nl = hhilbert.dual_norms(T)
    t.res("norm", abs(n - 1.0))
    t.res("norm_L", abs(nl - math.sqrt(2.0)))
    t.details.update({"norm": n, "norm_L": nl})
    x_star = np.concatenate([[0, 1, 0, 0], [1, 0, 0, 0]]) / math.sqrt(2.0)
    t.res("norm_L-attained", abs(np.linalg.norm(T.m_matrix @ x_star) - math.sqrt(2.0)))
    for rng in rngs:
        x = rng.normal(size=8)
        x /= np.linalg.norm(x)
        t.check("epsilon-bound", hhilbert.epsilon_norm(T(x)) <= n + 1e-12)
        t.check("m-bound", np.linalg.norm(T.m_matrix @ x) <= nl + 1e-12)


def _riesz(t: Tally, rngs, spec):
    for rng in rngs:
        for n in (1, 3, 6):
            Y = random_hilbert_bimodule(n, rng)
            T = hhilbert.dual_from_real(Y, rng.normal(size=(4, n)))
            y = hhilbert.riesz_represent(T)
            inner_rows = np.stack([(Y.module.right_basis[e] @ y.coords) @ Y.form for e in range(4)])
            t.res("representation", np.max(np.abs(T.m_matrix - inner_rows)))
            t.res("norm_L-equals-norm-y", abs(T.norm_L - Y.norm(y)))
            t.check("norm-le-norm_L", T.norm <= T.norm_L + 1e-9)
            z = rng.normal(size=Y.dim)
            Tz = hhilbert.t_y(Y, z)
            back = hhilbert.riesz_represent(Tz).coords
            t.res("t_y-roundtrip", np.max(np.abs(back - z)) / max(1.0, np.max(np.abs(z))))
            t.check("t_y-bound", Tz.norm <= Y.norm(z) + 1e-9)


# -- algebras -------------------------------------------------------------------


def _algebras(spec):
    algs = hbstar.fixture_algebras()
    if isinstance(spec, hbstar.HStarAlgebra):
        algs["spec"] = spec
    return algs


def _cstar(t: Tally, rngs, spec):
    algs = _algebras(spec)
    for name, A in algs.items():
        t.res("identity-norm", abs(A.identity().norm() - 1.0))
    for rng in rngs:
        for name, A in algs.items():
            a, b = A.random_element(rng), A.random_element(rng)
            g = _rand_q(rng)
            na = a.norm()
            t.res("cstar-identity", abs((a.star() * a).norm() - na**2) / max(na**2, 1e-300))
            t.check("submultiplicative", (a * b).norm() <= na * b.norm() * (1 + 1e-12))
            t.res("scalar-norm", abs(A.scalar(g).norm() - np.linalg.norm(g)))
            t.res("bimodule-laws", max(
                np.max(np.abs((a.lmul(g) * b).components - (a * b).lmul(g).components)),
                np.max(np.abs((a.rmul(g) * b).components - (a * b.lmul(g)).components)),
                np.max(np.abs((a * b).rmul(g).components - (a * b.rmul(g)).components)),
            ) / max(1.0, na * b.norm()))
            t.res("involution-law", np.max(np.abs(b.lmul(g).star().components - b.star().rmul(qconj(g)).components)))
            prod = a.matrix @ b.matrix
            t.res("decompose-multiplicative", np.max(np.abs(hbstar.decompose(prod, A).matrix - prod)))
            t.res("decompose-components", max(np.max(np.abs(hbstar.decompose(a.matrix, A).components[e] - a.matrix[e::4, ::4])) for e in range(4)))


def _gn(t: Tally, rngs, spec):
    algs = _algebras(spec)
    reps = {name: hbstar.gn_representation(A) for name, A in algs.items()}
    for name, A in algs.items():
        rho = reps[name]
        one = rho(A.identity())
        t.res("unital", np.max(np.abs(one - np.eye(one.shape[0]))))
    H = hbstar.quaternion_algebra()
    rr = hbstar.real_representation(H)
    real_reps = np.stack([rr(H.scalar(e)) for e in np.eye(4)])
    m4 = np.stack([to_m4(Quaternion.from_array(e)) for e in np.eye(4)])
    U = hhilbert.rep_intertwiner(real_reps, np.eye(4), m4, np.eye(4))
    t.res("real-rep-vs-to_m4", max(np.max(np.abs(U @ real_reps[e] - m4[e] @ U)) for e in range(4)))
    for rng in rngs:
        for name, A in algs.items():
            rho = reps[name]
            a, b = A.random_element(rng), A.random_element(rng)
            ra, rb = rho(a), rho(b)
            t.res("isometric", abs(np.linalg.norm(ra, 2) - a.norm()) / max(1.0, a.norm()))
            t.res("multiplicative", np.max(np.abs(rho(a * b) - ra @ rb)) / max(1.0, a.norm() * b.norm()))
            t.res("star-preserving", np.max(np.abs(rho(a.star()) - ra.T)))
            beta = _rand_q(rng)
            r_beta = rho.right_action(beta)
            t.res("commutes-with-right-action", np.max(np.abs(ra @ r_beta - r_beta @ ra)) / max(1.0, a.norm()))
        K = random_hilbert_bimodule(int(rng.integers(1, 4)), rng)
        jk = hbstar.jk_embedding(K)
        r = K.module.real_dim
        for e in np.eye(4):
            t.res("jk-factorization", np.max(np.abs(jk(np.eye(r), e) - jk.theta(e))))
        T1, T2 = rng.normal(size=(r, r)), rng.normal(size=(r, r))
        a1, a2 = _rand_q(rng), _rand_q(rng)
        j1, j2 = jk(T1, a1), jk(T2, a2)
        t.res("jk-multiplicative", np.max(np.abs(j1 @ j2 - jk(T1 @ T2, qmul(a1, a2)))) / max(1.0, np.max(np.abs(j1 @ j2))))
        rb = K.module.right(_rand_q(rng))
        t.res("jk-right-linear", np.max(np.abs(j1 @ rb - rb @ j1)) / max(1.0, np.max(np.abs(j1))))
        adj = np.linalg.solve(K.form, j1.T @ K.form)
        t.res("jk-star", np.max(np.abs(adj - jk(T1.T, qconj(a1)))) / max(1.0, np.max(np.abs(adj))))


def _gelfand(t: Tally, rngs, spec):
    algs = _algebras(spec)
    points = {}
    transforms = {}
    for name, A in algs.items():
        verdict = hbstar.is_normal_algebra(A)
        ca = hbstar.complexify_algebra(A)
        t.res("complexification-closed", ca.closure_residual())
        t.check(f"complexification-commutative[{name}]", ca.is_commutative() == verdict.normal)
        if verdict.normal:
            G = hbstar.gelfand_transform(A)
            t.check(f"points-equal-dim[{name}]", G.points == A.dim_re)
            points[name] = G.points
            transforms[name] = G
        else:
            try:
                hbstar.gelfand_transform(A)
                t.check(f"witness[{name}]", False)
            except NotCommutativeError as exc:
                d = hbstar.commutator_defect(exc.witness)
                t.check(f"witness[{name}]", d > hbstar.NORMAL_DEFECT)
                t.details.setdefault("witness_defect", {})[name] = d
            points[name] = None
    t.details["points"] = points["spec"] if "spec" in points else points
    for rng in rngs:
        for name, G in transforms.items():
            A = G.algebra
            a, b = A.random_element(rng), A.random_element(rng)
            va, vb = G(a), G(b)
            t.res("isometric", abs(G.sup_norm(va) - a.norm()) / max(1.0, a.norm()))
            t.res("inverse", np.max(np.abs(G.inverse(va).components - a.components)))
            t.res("multiplicative", np.max(np.abs(G(a * b) - qmul(va, vb))) / max(1.0, a.norm() * b.norm()))
            t.res("star", np.max(np.abs(G(a.star()) - qconj(va))))
            t.res("unital", np.max(np.abs(G(A.identity()) - np.eye(4)[0])))


SUITES = {
    "quaternion": _quaternion,
    "polarization": _polarization,
    "category": _category,
    "functional-lift": _functional_lift,
    "separation": _separation,
    "hahn-banach": _hahn_banach,
    "hilbert-structure": _hilbert_structure,
    "theta-norms": _theta_norms,
    "example-TL": _example_tl,
    "riesz": _riesz,
    "cstar": _cstar,
    "gn": _gn,
    "gelfand": _gelfand,
}

SUITE_HELP = {
    "quaternion": "quaternion arithmetic, the 4x4 matrix image and the dual identification",
    "polarization": "polarization components, Re idempotence and uniqueness on the fixture bimodules",
    "category": "real-part dimensions, structure isomorphisms and hthr ~ hthlr",
    "functional-lift": "functional lifts f -> f~ are isometric and invert the restriction",
    "separation": "bimodule functionals separate points",
    "hahn-banach": "norm-preserving extension from sub-bimodules",
    "hilbert-structure": "converters between the three inner-product structures and their axioms",
    "theta-norms": "injective and Hilbert norms on H (x) H, cone membership",
    "example-TL": "the dual-norm gap example: ||T|| = 1, ||T||_L = sqrt(2)",
    "riesz": "Riesz representation on Hilbert bimodules of rank 1, 3 and 6",
    "cstar": "C*-identity and algebra laws on the fixture algebras",
    "gn": "isometric representations commuting with the right action",
    "gelfand": "normality test and the Gelfand transform",
}


def run_suite(name: str, seed: int = 0, trials: int = 1000, tol: float = 1e-9, spec=None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    t = Tally()
    rngs = (trial_rng(seed, name, k) for k in range(trials))
    SUITES[name](t, rngs, spec)
    return SuiteReport(name, seed, trials, tol, t.residuals, t.failures, t.details)
