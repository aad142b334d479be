import numpy as np
import pytest

from stratkit import (
    DimensionMismatchError,
    Subspace,
    ZeroSubspaceError,
    orthonormalize,
    principal_sines,
    project,
)
from stratkit.fixtures import random_subspace


def test_orthonormalize_keeps_orthonormal_input():
    S = orthonormalize([[1.0, 0.0], [0.0, 1.0]])
    assert S.dim == 2
    assert np.allclose(S.basis.T @ S.basis, np.eye(2), atol=1e-14)


def test_orthonormalize_drops_dependent_vectors():
    S = orthonormalize([[1.0, 0.0], [2.0, 0.0]], tol=1e-12)
    assert S.dim == 1
    assert np.allclose(np.abs(S.basis[:, 0]), [1.0, 0.0])


def test_orthonormalize_spans_the_input():
    # independent oracle: both inputs must project onto the result with
    # negligible residual, and the result must stay inside their span
    vecs = np.array([[1.0, 1.0, 0.0], [1.0, 0.0, 1.0]])
    S = orthonormalize(vecs)
    assert S.dim == 2
    for v in vecs:
        assert np.linalg.norm(v - project(v, S)) < 1e-12
    gram = np.max(np.abs(S.basis.T @ S.basis - np.eye(2)))
    assert gram < 1e-12


def test_orthonormalize_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        orthonormalize([[1.0, 0.0], [1.0, 0.0, 0.0]])


def test_zero_and_full_subspaces():
    Z = Subspace.zero(3)
    assert Z.dim == 0 and Z.ambient_dim == 3
    F = Subspace.full(3)
    assert F.dim == 3
    assert np.allclose(project([1.0, 2.0, 3.0], Z), 0.0)


def test_subspace_rejects_non_orthonormal_basis():
    with pytest.raises(ValueError, match="not orthonormal"):
        Subspace(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(ValueError, match="finite"):
        Subspace(np.array([[np.nan], [0.0]]))


def test_subspace_basis_is_immutable():
    S = orthonormalize([[1.0, 0.0]])
    with pytest.raises(ValueError):
        S.basis[0, 0] = 5.0


def test_project_examples():
    W = orthonormalize([[1.0, 0.0]])
    assert np.allclose(project([1.0, 1.0], W), [1.0, 0.0])
    W = orthonormalize([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    assert np.allclose(project([0.0, 0.0, 1.0], W), 0.0)


def test_project_matches_grid_minimizer():
    # oracle: minimize |v - w| over a fine grid of w in W
    v = np.array([3.0, 4.0])
    W = orthonormalize([[1.0, 1.0]])
    ts = np.linspace(-10, 10, 200001)
    cand = ts[:, None] * W.basis[:, 0]
    best = cand[np.argmin(np.linalg.norm(cand - v, axis=1))]
    p = project(v, W)
    assert np.allclose(p, [3.5, 3.5], atol=1e-12)
    assert np.linalg.norm(p - best) < 2e-4  # grid resolution


def test_project_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        project([1.0, 0.0, 0.0], orthonormalize([[1.0, 0.0]]))


def test_project_idempotent_and_pythagoras():
    rng = np.random.default_rng(101)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, n + 1))
        W = random_subspace(n, k, rng)
        v = rng.standard_normal(n)
        p = project(v, W)
        assert np.linalg.norm(project(p, W) - p) < 1e-12
        assert abs(np.dot(v, v) - (np.dot(p, p) + np.dot(v - p, v - p))) < 1e-12


def test_principal_sines_trivial_cases():
    L = orthonormalize([[1.0, 0.0]])
    assert np.allclose(principal_sines(L, L), [0.0], atol=1e-14)
    M = orthonormalize([[0.0, 1.0]])
    assert np.allclose(principal_sines(L, M), [1.0], atol=1e-14)


def test_principal_sines_plane_vs_line():
    P = orthonormalize([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    Q = orthonormalize([[1.0, 0.0, 0.0]])
    sines = principal_sines(P, Q)
    assert np.allclose(sines, [0.0, 1.0], atol=1e-14)
    # oracle: grid of unit vectors in P, extremes of |u - pi_Q(u)|
    ths = np.linspace(0, 2 * np.pi, 5000, endpoint=False)
    us = np.cos(ths)[:, None] * P.basis[:, 0] + np.sin(ths)[:, None] * P.basis[:, 1]
    resid = np.linalg.norm(us - (us @ Q.basis) @ Q.basis.T, axis=1)
    assert abs(resid.max() - sines[-1]) < 1e-3
    assert abs(resid.min() - sines[0]) < 1e-3


def test_principal_sines_zero_subspace_errors():
    P = Subspace.zero(3)
    Q = orthonormalize([[1.0, 0.0, 0.0]])
    with pytest.raises(ZeroSubspaceError):
        principal_sines(P, Q)


def test_principal_sines_against_zero_target():
    P = orthonormalize([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.allclose(principal_sines(P, Subspace.zero(3)), [1.0, 1.0])


def test_principal_sines_invariant_under_basis_rotation():
    rng = np.random.default_rng(202)
    for _ in range(50):
        n = int(rng.integers(3, 9))
        k = int(rng.integers(2, n))
        l = int(rng.integers(1, n))
        P = random_subspace(n, k, rng)
        Q = random_subspace(n, l, rng)
        ref = principal_sines(P, Q)
        R, _ = np.linalg.qr(rng.standard_normal((k, k)))
        P2 = Subspace(P.basis @ R)
        assert np.max(np.abs(principal_sines(P2, Q) - ref)) < 1e-9


def test_principal_sines_max_matches_sphere_sup():
    from stratkit.fixtures import oracle_distance_extrema

    rng = np.random.default_rng(303)
    for _ in range(10):
        n = 4
        P = random_subspace(n, int(rng.integers(1, 4)), rng)
        Q = random_subspace(n, int(rng.integers(1, 4)), rng)
        lo, hi, bound = oracle_distance_extrema(P, Q, mesh=0.01)
        sines = principal_sines(P, Q)
        assert hi <= sines[-1] + 1e-9
        assert sines[-1] - hi <= bound
