"""Self-commutator analysis: rank condition, eigendata, defect bounds.

The self-commutator A^*A - AA^* is Hermitian with zero trace.  When its
rank is exactly two, the nonzero eigenvalues pair up as +d and -d and the
associated unit eigenvectors u1, u2 together with the projection P onto
the null space drive everything downstream.
"""

from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_TOL,
    NumericsError,
    adjoint,
    as_matrix,
    frob,
    hermitian_eig,
)


class NotSquare(NumericsError):
    pass


class ZeroMatrix(NumericsError):
    pass


class RankConditionFailed(NumericsError):
    """Commutator rank is not two; carries the inertia for diagnostics."""

    def __init__(self, message, inertia):
        super().__init__(message)
        self.inertia = inertia


@dataclass(frozen=True)
class CommutatorProfile:
    """Eigendata of the self-commutator when the rank condition holds.

    d is the positive eigenvalue, u1/u2 the unit eigenvectors for +d/-d,
    P the orthogonal projection onto the null space, null_basis an
    orthonormal basis of it.  For a numerically normal input rank_ok is
    False, is_normal is True and the eigendata fields are None.
    """

    d: float
    u1: np.ndarray
    u2: np.ndarray
    P: np.ndarray
    inertia: tuple
    rank_ok: bool
    is_normal: bool = False
    null_basis: np.ndarray = None


def self_commutator(A):
    """Return A^*A - AA^* (equals A^T A - A A^T for real input)."""
    A = as_matrix(A)
    n, m = A.shape
    if n != m:
        raise NotSquare("self-commutator needs a square matrix")
    return adjoint(A) @ A - A @ adjoint(A)


def commutator_scale(A):
    """Natural size of the self-commutator: squared Frobenius norm of A."""
    return max(frob(A) ** 2, np.finfo(float).tiny)


def inertia_of(H, threshold, tol=DEFAULT_TOL):
    """Counts of eigenvalues above/below +-threshold and in between."""
    eig = hermitian_eig(H, tol)
    plus = int(np.sum(eig.values > threshold))
    minus = int(np.sum(eig.values < -threshold))
    return (plus, minus, len(eig.values) - plus - minus)


def profile(A, tol=DEFAULT_TOL):
    """Rank-condition check and eigendata of the self-commutator.

    Returns a normal-sentinel profile when the commutator vanishes within
    tolerance.  Raises RankConditionFailed when A is not normal but the
    commutator rank differs from two (or its nonzero eigenvalues fail to
    pair as +d, -d).
    """
    A = as_matrix(A)
    n = A.shape[0]
    C = self_commutator(A)
    scale = commutator_scale(A)
    if frob(C) <= tol.rank_tol * scale:
        return CommutatorProfile(
            d=0.0, u1=None, u2=None, P=None,
            inertia=(0, 0, n), rank_ok=False, is_normal=True,
        )
    eig = hermitian_eig(C, tol)
    lam = eig.values
    cutoff = tol.rank_tol * max(abs(lam[0]), abs(lam[-1]))
    plus = int(np.sum(lam > cutoff))
    minus = int(np.sum(lam < -cutoff))
    inertia = (plus, minus, n - plus - minus)
    if plus != 1 or minus != 1:
        raise RankConditionFailed(
            f"commutator rank is {plus + minus}, not 2 (inertia {inertia})",
            inertia,
        )
    if abs(lam[0] + lam[-1]) > tol.residual_tol * frob(C):
        raise RankConditionFailed(
            "nonzero commutator eigenvalues do not pair as +d, -d", inertia
        )
    d = float(lam[0])
    u1 = eig.vectors[:, 0]
    u2 = eig.vectors[:, -1]
    P = np.eye(n, dtype=C.dtype) - np.outer(u1, u1.conj()) - np.outer(u2, u2.conj())
    null_basis = eig.vectors[:, 1:-1]
    return CommutatorProfile(
        d=d, u1=u1, u2=u2, P=P, inertia=inertia, rank_ok=True,
        null_basis=null_basis,
    )


def nd_lower_bound(A, tol=DEFAULT_TOL):
    """max(i+, i-) of the self-commutator, a lower bound for the defect."""
    A = as_matrix(A)
    C = self_commutator(A)
    plus, minus, _ = inertia_of(C, tol.rank_tol * commutator_scale(A), tol)
    return max(plus, minus)


def unitary_defect(A, tol=DEFAULT_TOL):
    """Number of singular values of A strictly below the largest one."""
    A = as_matrix(A)
    s = np.linalg.svd(A, compute_uv=False)
    smax = s[0] if len(s) else 0.0
    if smax <= 0.0:
        raise ZeroMatrix("unitary defect of the zero matrix is undefined")
    return int(np.sum(s < (1.0 - tol.rank_tol) * smax))


def minimal_unitary_completion(A, tol=DEFAULT_TOL):
    """Smallest completion of A that is a multiple of a unitary matrix.

    With A = U S V^* and J the indices of singular values below the top
    one, the bordered matrix

        [[A,                 smax * U_J @ D],
         [smax * D @ V_J^*,  -diag(s_J)   ]]

    with D = diag(sqrt(1 - (s_J/smax)^2)) satisfies B^*B = smax^2 I.  Its
    size is n plus the unitary defect of A.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape[1] != n:
        raise NotSquare("completion needs a square matrix")
    U, s, V = np.linalg.svd(A, full_matrices=True)
    V = adjoint(V)
    smax = s[0] if len(s) else 0.0
    if smax <= 0.0:
        raise ZeroMatrix("cannot complete the zero matrix")
    deficient = np.nonzero(s < (1.0 - tol.rank_tol) * smax)[0]
    k = len(deficient)
    if k == 0:
        return A.copy()
    sig = s[deficient] / smax
    dd = np.sqrt(np.clip(1.0 - sig**2, 0.0, None))
    L = U[:, deficient] * dd
    R = (V[:, deficient] * dd).conj().T
    B = np.zeros((n + k, n + k), dtype=complex)
    B[:n, :n] = A
    B[:n, n:] = smax * L
    B[n:, :n] = smax * R
    B[n:, n:] = -np.diag(s[deficient]).astype(complex)
    if not np.iscomplexobj(A):
        B = B.real
    return B
