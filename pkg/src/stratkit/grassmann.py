"""Distance and angle functions on Grassmannians of R^n.

The central objects are the one-sided subspace deviation ``dist_d``, its
symmetrization ``dist_D`` (a metric on each Grassmannian), the minimal
deviation ``dist_delta`` (positive exactly when two subspaces meet only at
the origin), the chordal metric ``dist_projective`` on projective lines, and
the transversality angle ``lambda_angle`` measured orthogonally to the
intersection.  All are computed through principal sines, and all reported
values are clamped to [0, 1] so floating-point noise cannot push them out of
range.

Conventions for degenerate arguments:

* dist_vec(v, {0}) = 1, dist_d({0}, Q) = 0, dist_delta({0}, W) = 1;
* dist_D of subspaces of different dimensions is still the raw maximum of
  the two one-sided values (callers who care about the disjoint-union
  convention should compare dimensions themselves).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .subspaces import (
    DimensionMismatchError,
    Subspace,
    orthonormalize,
    principal_sines,
)

#: Containment / intersection rank tolerance used by default.  A principal
#: cosine c is counted as an intersection direction when c^2 >= 1 - tol,
#: i.e. when the corresponding eigenvalue of pi_S o pi_K is within tol of 1.
DEFAULT_ANGLE_TOL = 1e-8

_UNIT_TOL = 1e-9


class NonTransverseError(ValueError):
    """Raised where a positive transversality angle is required."""


def _as_unit(v, name: str = "v") -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > _UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector (|{name}| = {norm:.12g})")
    return v


def dist_vec(v, W: Subspace) -> float:
    """Sine of the angle between a unit vector and a subspace.

    Equals |v - pi_W(v)|, which is also the euclidean distance from v to W
    and the norm of the projection of v onto the orthogonal complement.
    Returns 1 when W = {0}.
    """
    v = _as_unit(v)
    if v.shape[0] != W.ambient_dim:
        raise DimensionMismatchError(
            f"vector lives in R^{v.shape[0]}, subspace in R^{W.ambient_dim}"
        )
    if W.dim == 0:
        return 1.0
    r = v - W.basis @ (W.basis.T @ v)
    return min(1.0, max(0.0, float(np.linalg.norm(r))))


def dist_d(P: Subspace, Q: Subspace) -> float:
    """One-sided deviation: sup over unit p in P of dist_vec(p, Q).

    Zero exactly when P is contained in Q; 0 by convention when P = {0}.
    Computed as the largest principal sine.
    """
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {P.ambient_dim} vs {Q.ambient_dim}"
        )
    if P.dim == 0:
        return 0.0
    return float(principal_sines(P, Q)[-1])


def dist_D(P: Subspace, Q: Subspace) -> float:
    """Symmetrized deviation max(dist_d(P,Q), dist_d(Q,P)); a metric on each
    Grassmannian of fixed dimension."""
    return max(dist_d(P, Q), dist_d(Q, P))


def dist_delta(V: Subspace, W: Subspace) -> float:
    """Minimal deviation: inf over unit v in V of dist_vec(v, W).

    Positive exactly when V and W intersect only at the origin; equals 1
    exactly when V is orthogonal to W, and by convention when V = {0}.
    Computed as the smallest principal sine.
    """
    if V.ambient_dim != W.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {V.ambient_dim} vs {W.ambient_dim}"
        )
    if V.dim == 0:
        return 1.0
    return float(principal_sines(V, W)[0])


@dataclass(frozen=True, eq=False)
class ProjectiveLine:
    """A point of real projective space: a sign-normalized unit direction.

    The representative is fixed by requiring the first coordinate of
    magnitude > 1e-12 to be positive, so equal projective points compare
    equal regardless of which unit vector they came from.
    """

    direction: np.ndarray = field(repr=False)

    def __init__(self, direction):
        v = np.asarray(direction, dtype=float).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ValueError("a projective line needs a nonzero direction")
        v = v / norm
        for c in v:
            if abs(c) > 1e-12:
                if c < 0:
                    v = -v
                break
        v.flags.writeable = False
        object.__setattr__(self, "direction", v)

    @property
    def ambient_dim(self) -> int:
        return self.direction.shape[0]

    def subspace(self) -> Subspace:
        return Subspace._wrap(self.direction.reshape(-1, 1))


def dist_projective(a: ProjectiveLine, b: ProjectiveLine) -> float:
    """Chordal metric on projective lines: min(|u - w|, |u + w|).

    Sandwiches the sine metric: chordal / sqrt(2) <= sine <= chordal.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    u, w = a.direction, b.direction
    return float(min(np.linalg.norm(u - w), np.linalg.norm(u + w)))


def _principal_decomposition(S: Subspace, K: Subspace, tol: float):
    """Split S and K along principal directions of the pair.

    Returns (p, S_mid, K_mid, S_rest, K_rest) where p is the number of
    principal cosines with c^2 >= 1 - tol, S_mid/K_mid are the (n, p)
    matrices of matched principal directions spanning the near-intersection,
    and S_rest/K_rest span the orthogonal complements of the intersection
    inside S and K.
    """
    C = S.basis.T @ K.basis
    U, sig, Vt = np.linalg.svd(C)
    p = int(np.sum(sig * sig >= 1.0 - tol))
    S_dirs = S.basis @ U
    K_dirs = K.basis @ Vt.T
    return p, S_dirs[:, :p], K_dirs[:, :p], S_dirs[:, p:], K_dirs[:, p:]


def intersect(S: Subspace, K: Subspace, tol: float = DEFAULT_ANGLE_TOL) -> Subspace:
    """Numerically tolerant subspace intersection.

    The intersection is spanned by the fixed directions of pi_S o pi_K,
    i.e. the principal-direction pairs whose eigenvalue (squared cosine) is
    within ``tol`` of 1.  Each accepted pair contributes its bisector, which
    treats S and K symmetrically; the bisectors are re-orthonormalized.
    The result has dimension <= min(dim S, dim K).
    """
    if S.ambient_dim != K.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {S.ambient_dim} vs {K.ambient_dim}"
        )
    n = S.ambient_dim
    if S.dim == 0 or K.dim == 0:
        return Subspace.zero(n)
    p, S_mid, K_mid, _, _ = _principal_decomposition(S, K, tol)
    if p == 0:
        return Subspace.zero(n)
    return orthonormalize((S_mid + K_mid).T * 0.5, tol=1e-6)


def lambda_angle(S: Subspace, K: Subspace, tol: float = DEFAULT_ANGLE_TOL) -> float:
    """Sine of the minimal angle between S and K measured orthogonally to S n K.

    Zero when one subspace contains the other (decided via dist_d <= tol so
    near-containment degrades continuously).  Otherwise equals
    dist_delta(S n J^perp, K n J^perp) with J = S n K; the complements are
    read off the principal decomposition, whose directions with squared
    cosine < 1 - tol span exactly those complements.
    """
    if S.ambient_dim != K.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {S.ambient_dim} vs {K.ambient_dim}"
        )
    if S.dim == 0 or K.dim == 0:
        return 0.0  # {0} is contained in everything
    if dist_d(S, K) <= tol or dist_d(K, S) <= tol:
        return 0.0
    _, _, _, S_rest, K_rest = _principal_decomposition(S, K, tol)
    S_c = Subspace._wrap(S_rest)
    K_c = Subspace._wrap(K_rest)
    if S_c.dim == 0 or K_c.dim == 0:
        return 0.0
    return dist_delta(S_c, K_c)


def projection_lipschitz_bound(alpha: float) -> float:
    """Lipschitz constant 2*sqrt(2)/alpha^2 for the projectivized projection.

    For unit vectors u, w whose lines stay at sine-distance >= alpha from
    V^perp, the projective distance of the projected lines R pi_V(u),
    R pi_V(w) is at most this constant times the distance of R u, R w.
    """
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    return 2.0 * math.sqrt(2.0) / (alpha * alpha)


def intersection_distance_bound(v, S: Subspace, K: Subspace,
                                tol: float = DEFAULT_ANGLE_TOL) -> tuple[float, float]:
    """Both sides of the transversal distance estimate for a unit vector.

    Returns (lhs, rhs) with lhs = dist_vec(v, S n K) and
    rhs = (dist_vec(v, S) + dist_vec(v, K)) / lambda(S, K); the contract is
    lhs <= rhs up to roundoff.  Raises when lambda(S, K) = 0, which signals
    a non-transverse configuration.
    """
    lam = lambda_angle(S, K, tol=tol)
    if lam <= 0.0:
        raise NonTransverseError("lambda(S, K) = 0: subspaces are not transverse")
    v = _as_unit(v)
    J = intersect(S, K, tol=tol)
    lhs = dist_vec(v, J)
    rhs = (dist_vec(v, S) + dist_vec(v, K)) / lam
    return lhs, rhs


def vertical_separation_bound(L: float) -> float:
    """Guaranteed separation of graph tangents from the vertical space.

    For an L-Lipschitz differentiable map, every tangent space of the graph
    satisfies dist_delta(T, {0} x R^m) >= 1/sqrt(1 + L^2); this returns that
    lower bound.
    """
    if L < 0:
        raise ValueError(f"Lipschitz constant must be >= 0, got {L!r}")
    return 1.0 / math.sqrt(1.0 + L * L)


def vertical_subspace(base_dim: int, fiber_dim: int) -> Subspace:
    """The subspace {0} x R^m inside R^(n+m)."""
    n, m = base_dim, fiber_dim
    B = np.zeros((n + m, m))
    B[n:, :] = np.eye(m)
    return Subspace._wrap(B)


def graph_subspace(A: np.ndarray) -> Subspace:
    """Tangent/graph subspace {(v, A v)} of a linear map A: R^n -> R^m."""
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    return orthonormalize(np.vstack([np.eye(n), A]).T)
