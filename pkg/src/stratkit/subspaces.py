"""Dense small-dimension subspace primitives.

A :class:`Subspace` is a k-dimensional linear subspace of R^n stored as an
(n, k) matrix of orthonormal columns.  k = 0 is a first-class value and
represents the zero subspace {0}.  Everything downstream (metrics, tangent
spaces, regularity checks) is built on the three operations here:
orthonormalization, orthogonal projection and principal-sine decomposition.
"""

from __future__ import annotations

import numpy as np

#: Default tolerance both for the orthonormality invariant and for the rank
#: decision when orthonormalizing nearly dependent vectors.
DEFAULT_TOL = 1e-10


class DimensionMismatchError(ValueError):
    """Operands live in different ambient spaces."""


class ZeroSubspaceError(ValueError):
    """The operation is undefined for the zero subspace."""


class Subspace:
    """A linear subspace of R^n, stored as an orthonormal basis.

    The basis is an (n, k) read-only array with pairwise orthonormal columns
    (up to ``tol``).  Instances are immutable and safe to share between
    threads.
    """

    __slots__ = ("_basis",)

    def __init__(self, basis, tol: float = DEFAULT_TOL):
        B = np.array(basis, dtype=float)
        if B.ndim != 2:
            raise ValueError(f"basis must be a 2-d array, got shape {B.shape}")
        n, k = B.shape
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        if k > n:
            raise ValueError(f"cannot have {k} orthonormal vectors in R^{n}")
        if not np.all(np.isfinite(B)):
            raise ValueError("basis entries must be finite")
        if k > 0:
            gram = B.T @ B
            if np.max(np.abs(gram - np.eye(k))) > tol:
                raise ValueError(
                    "columns are not orthonormal to tolerance "
                    f"{tol:g}; use orthonormalize() first"
                )
        B.flags.writeable = False
        self._basis = B

    @classmethod
    def _wrap(cls, B: np.ndarray) -> "Subspace":
        """Wrap an already-orthonormal matrix without re-validating."""
        self = object.__new__(cls)
        B = np.asarray(B, dtype=float)
        if B.flags.writeable:
            B = B.copy()
            B.flags.writeable = False
        self._basis = B
        return self

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        """The subspace {0} of R^n."""
        return cls._wrap(np.zeros((ambient_dim, 0)))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        """All of R^n."""
        return cls._wrap(np.eye(ambient_dim))

    @classmethod
    def span(cls, vectors, tol: float = DEFAULT_TOL) -> "Subspace":
        """Convenience: the span of arbitrary (not necessarily independent) vectors."""
        return orthonormalize(vectors, tol=tol)

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def ambient_dim(self) -> int:
        return self._basis.shape[0]

    @property
    def dim(self) -> int:
        return self._basis.shape[1]

    def project(self, v) -> np.ndarray:
        """Orthogonal projection of a vector onto this subspace."""
        return project(v, self)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )


def orthonormalize(vectors, tol: float = DEFAULT_TOL) -> Subspace:
    """Span of ``vectors`` as a Subspace, via modified Gram-Schmidt.

    Runs MGS with a second re-orthogonalization pass, which is stable at the
    small dimensions (n <= ~16) this library targets.  A vector whose
    residual after projection onto the running basis has norm <= ``tol`` is
    treated as dependent and dropped; this is the rank decision.
    """
    vecs = [np.asarray(v, dtype=float).reshape(-1) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector (possibly zero) to fix the ambient dimension")
    n = vecs[0].shape[0]
    for v in vecs:
        if v.shape[0] != n:
            raise DimensionMismatchError(
                f"vectors have mixed ambient dimensions: {v.shape[0]} vs {n}"
            )
    accepted: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        if accepted:
            B = np.column_stack(accepted)
            w -= B @ (B.T @ w)
            w -= B @ (B.T @ w)  # second pass re-orthogonalizes against rounding
        norm = np.linalg.norm(w)
        if norm > tol:
            accepted.append(w / norm)
    if not accepted:
        return Subspace.zero(n)
    return Subspace._wrap(np.column_stack(accepted))


def project(v, W: Subspace) -> np.ndarray:
    """Orthogonal projection pi_W(v) = sum_i <v, b_i> b_i.

    The result lies in W and v - project(v, W) is orthogonal to W.
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape[0] != W.ambient_dim:
        raise DimensionMismatchError(
            f"vector lives in R^{v.shape[0]}, subspace in R^{W.ambient_dim}"
        )
    if W.dim == 0:
        return np.zeros_like(v)
    B = W.basis
    return B @ (B.T @ v)


def principal_sines(P: Subspace, Q: Subspace) -> np.ndarray:
    """Singular values of p -> p - pi_Q(p) restricted to P, sorted ascending.

    Expressed in an orthonormal basis of P these are the sines of the
    principal angles between P and Q, each in [0, 1].  The largest is the
    one-sided deviation sup_{p in P, |p|=1} dist(p, Q) and the smallest is
    the corresponding infimum.
    """
    _check_same_ambient(P, Q)
    if P.dim == 0:
        raise ZeroSubspaceError("principal sines are undefined for a zero-dimensional P")
    M = P.basis
    if Q.dim > 0:
        M = M - Q.basis @ (Q.basis.T @ P.basis)
    s = np.linalg.svd(M, compute_uv=False)
    return np.clip(np.sort(s), 0.0, 1.0)
