"""Small dense linear-algebra helpers shared by the structure modules."""

import numpy as np
import scipy.linalg as sla

# relative singular-value cutoff for kernels of action residuals
KERNEL_RTOL = 1e-9


def nullspace(a, rtol=KERNEL_RTOL):
    """Orthonormal basis (columns) of the kernel of ``a``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    _, s, vt = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * smax)) if smax > 0 else 0
    return vt[rank:].T.copy()


def range_basis(a, rtol=KERNEL_RTOL):
    """Orthonormal basis (columns) of the column space of ``a``."""
    u, s, _ = np.linalg.svd(np.atleast_2d(np.asarray(a, dtype=float)), full_matrices=False)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * smax)) if smax > 0 else 0
    return u[:, :rank].copy()


def canonical_basis(n):
    """Re-express the column span of ``n`` in pivoted echelon form.

    Columns of the result equal the unit vector at the chosen pivot rows, so
    subspaces spanned by coordinate vectors come back as those coordinate
    vectors.  Columns are sorted by pivot position.
    """
    r = n.shape[1]
    if r == 0:
        return n.copy()
    _, _, piv = sla.qr(n.T, pivoting=True, mode="economic")
    rows = np.sort(piv[:r])
    out = n @ np.linalg.inv(n[rows, :])
    out[np.abs(out) < 1e-14] = 0.0
    return out


def span_residual(basis, vectors):
    """Largest distance of the columns of ``vectors`` from span(basis)."""
    q, _ = np.linalg.qr(basis)
    res = vectors - q @ (q.T @ vectors)
    return float(np.max(np.linalg.norm(res, axis=0), initial=0.0))


def form_factor(form):
    """Upper Cholesky factor C with form = C^T C."""
    return np.linalg.cholesky(form).T


def op_norm(matrix, dom_form=None, cod_form=None):
    """Operator norm of ``matrix`` between inner-product spaces.

    The forms are symmetric positive definite Gram matrices; ``None`` means
    the Euclidean one.  Computed exactly as the largest singular value in
    orthonormal coordinates.
    """
    m = np.atleast_2d(np.asarray(matrix, dtype=float))
    if m.size == 0:
        return 0.0
    if cod_form is not None:
        m = form_factor(cod_form) @ m
    if dom_form is not None:
        m = sla.solve_triangular(form_factor(dom_form), m.T, trans="T").T
    return float(np.linalg.norm(m, 2))


def gram_orthonormalize(vectors, form):
    """Orthonormalize the columns of ``vectors`` for the real ``form``."""
    g = vectors.T @ form @ vectors
    c = np.linalg.cholesky(g)
    return sla.solve_triangular(c, vectors.T, lower=True).T
