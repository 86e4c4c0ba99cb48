"""Dense linear-algebra kernels with tolerance-based rank decisions.

Matrices are plain numpy arrays; a float64 array is a "real" matrix and a
complex128 array is a complex one, so the dtype carries the realness of the
input.  All rank decisions are relative to the largest singular value.
"""

from dataclasses import dataclass

import numpy as np


class NumericsError(Exception):
    """Base class for kernel-level failures."""


class NotHermitian(NumericsError):
    pass


class NotSymmetric(NumericsError):
    pass


class NoConvergence(NumericsError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Relative rank threshold and absolute-ish residual threshold.

    rank_tol governs rank/nullspace decisions (relative to the largest
    singular value); residual_tol governs verification residuals (relative
    to the natural scale of the quantity checked).
    """

    rank_tol: float = 1e-10
    residual_tol: float = 1e-9

    def __post_init__(self):
        if not (0.0 < self.rank_tol < 1.0):
            raise ValueError("rank_tol must lie in (0, 1)")
        if self.residual_tol <= 0.0:
            raise ValueError("residual_tol must be positive")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class EigenPairs:
    """Spectral decomposition of a Hermitian matrix.

    values are sorted descending; vectors holds the matching unit
    eigenvectors as columns and is unitary up to the residual tolerance.
    """

    values: np.ndarray
    vectors: np.ndarray


def as_matrix(a):
    """Coerce to a 2-d float64 or complex128 array."""
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    if np.iscomplexobj(a):
        return a.astype(np.complex128, copy=False)
    return a.astype(np.float64, copy=False)


def is_real(a):
    """True iff the array carries no imaginary part (real dtype)."""
    return not np.iscomplexobj(a)


def frob(a):
    return float(np.linalg.norm(a))


def adjoint(a):
    return a.conj().T


def hermitian_eig(H, tol=DEFAULT_TOL):
    """Full spectral decomposition of a Hermitian matrix.

    Eigenvalues are returned in descending order.  Each eigenvector is
    phase-normalized so that its first component of modulus > rank_tol is
    real and positive, which makes the output deterministic.

    Raises NotHermitian if the symmetry residual exceeds the tolerance and
    NoConvergence if the underlying iteration fails.
    """
    H = as_matrix(H)
    n, m = H.shape
    if n != m:
        raise NotHermitian("matrix is not square")
    scale = frob(H)
    if frob(H - adjoint(H)) > tol.residual_tol * max(scale, 1.0):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    Hs = (H + adjoint(H)) / 2.0
    try:
        values, vectors = np.linalg.eigh(Hs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()
    vectors = _normalize_phases(vectors, tol.rank_tol)
    return EigenPairs(values=values, vectors=vectors)


def _normalize_phases(vectors, cutoff):
    vectors = vectors.copy()
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        big = np.nonzero(np.abs(col) > cutoff)[0]
        if len(big) == 0:
            continue
        lead = col[big[0]]
        if np.iscomplexobj(vectors):
            vectors[:, k] = col * (lead.conjugate() / abs(lead))
        elif lead < 0:
            vectors[:, k] = -col
    return vectors


def svd(A, tol=DEFAULT_TOL):
    """Full singular value decomposition A = U @ diag(s) @ V^*.

    Returns (U, s, V) with U, V square unitary and s descending.
    """
    A = as_matrix(A)
    try:
        U, s, Vh = np.linalg.svd(A, full_matrices=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    return U, s, adjoint(Vh)


def numerical_rank(A, tol=DEFAULT_TOL):
    """Number of singular values above rank_tol relative to the largest."""
    A = as_matrix(A)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if len(s) == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rank_tol * s[0]))


def nullspace_basis(A, tol=DEFAULT_TOL):
    """Orthonormal basis (columns) of the numerical null space of A."""
    A = as_matrix(A)
    cols = A.shape[1]
    if A.size == 0:
        return np.eye(cols, dtype=A.dtype)
    U, s, V = svd(A, tol)
    smax = s[0] if len(s) else 0.0
    rank = int(np.sum(s > tol.rank_tol * smax)) if smax > 0 else 0
    return V[:, rank:]


def orthonormal_complement(B):
    """Orthonormal basis of the orthogonal complement of the column span."""
    B = np.atleast_2d(np.asarray(B))
    n = B.shape[0]
    if B.shape[1] == 0:
        return np.eye(n, dtype=B.dtype if np.iscomplexobj(B) else float)
    U, _, _ = np.linalg.svd(B, full_matrices=True)
    return U[:, B.shape[1]:]


def takagi_symmetric(S, tol=DEFAULT_TOL):
    """Factor a complex symmetric S as G @ diag(s) @ G.T with G unitary.

    Returns (G, s) where s holds the singular values of S in descending
    order.  For a unitary symmetric input this reduces to S = G @ G.T.
    """
    S = np.asarray(S, dtype=complex)
    n, m = S.shape
    if n != m:
        raise NotSymmetric("matrix is not square")
    scale = max(frob(S), 1.0)
    if frob(S - S.T) > tol.residual_tol * scale:
        raise NotSymmetric("matrix is not complex symmetric within tolerance")
    S = (S + S.T) / 2.0
    if n == 0:
        return np.zeros((0, 0), dtype=complex), np.zeros(0)
    # unitary symmetric input: half-angle construction, one pass
    if frob(S @ S.conj() - np.eye(n)) <= 1e-8 * n:
        return unitary_symmetric_takagi(S), np.ones(n)
    return _takagi_via_svd(S)


def unitary_symmetric_takagi(S):
    """For unitary symmetric S return unitary symmetric G with G @ G.T = S.

    Writes S = X + iY with commuting real symmetric X, Y, jointly
    diagonalizes them, and takes half-angle phases on the circle
    x^2 + y^2 = 1.
    """
    R = _joint_diag_commuting(S.real, S.imag)
    dx = np.einsum("ij,ij->j", R, S.real @ R)
    dy = np.einsum("ij,ij->j", R, S.imag @ R)
    theta = np.arctan2(dy, dx)
    return (R * np.exp(0.5j * theta)) @ R.T


def _joint_diag_commuting(X, Y, gap_tol=1e-8):
    # diagonalize X, then Y inside each eigenvalue cluster of X
    lx, R = np.linalg.eigh(X)
    n = len(lx)
    scale = max(1.0, float(np.abs(lx).max())) if n else 1.0
    start = 0
    for i in range(1, n + 1):
        if i == n or lx[i] - lx[start] > gap_tol * scale:
            if i - start > 1:
                sub = R[:, start:i]
                _, Ry = np.linalg.eigh(sub.T @ Y @ sub)
                R[:, start:i] = sub @ Ry
            start = i
    return R


def _takagi_via_svd(S, group_tol=1e-8):
    # group singular values; inside each nonzero group V^T W is unitary
    # symmetric and its half-angle square root aligns the bases
    V, s, Wh = np.linalg.svd(S)
    W = adjoint(Wh)
    smax = s[0] if len(s) else 0.0
    G = np.zeros_like(V)
    start = 0
    n = len(s)
    for i in range(1, n + 1):
        if i == n or abs(s[i] - s[start]) > group_tol * max(1.0, smax):
            idx = slice(start, i)
            if s[start] <= group_tol * max(1.0, smax):
                G[:, idx] = V[:, idx]
            else:
                Z = V[:, idx].T @ W[:, idx]
                G[:, idx] = V[:, idx] @ unitary_symmetric_takagi(Z).conj()
            start = i
    return G, s
