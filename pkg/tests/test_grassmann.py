import math

import numpy as np
import pytest

from stratkit import (
    NonTransverseError,
    ProjectiveLine,
    Subspace,
    dist_D,
    dist_d,
    dist_delta,
    dist_projective,
    dist_vec,
    graph_subspace,
    intersect,
    intersection_distance_bound,
    lambda_angle,
    orthonormalize,
    project,
    projection_lipschitz_bound,
    vertical_separation_bound,
    vertical_subspace,
)
from stratkit.fixtures import (
    random_nested,
    random_orthogonal,
    random_subspace,
    random_transverse,
)


def line(*coords) -> Subspace:
    return orthonormalize([list(coords)])


# --- dist_vec ------------------------------------------------------------------


def test_dist_vec_trivial_cases():
    assert dist_vec([0.0, 1.0], line(1, 0)) == 1.0
    W = orthonormalize([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    assert dist_vec([1.0, 0.0, 0.0], W) == 0.0
    assert dist_vec([1.0, 0.0], Subspace.zero(2)) == 1.0


def test_dist_vec_three_four_five():
    # oracle: minimize sin(angle(v, w)) over a circle grid in W
    v = np.array([0.6, 0.8])
    W = line(1, 0)
    ths = np.linspace(0, 2 * np.pi, 400001, endpoint=False)
    ws = np.column_stack([np.cos(ths), np.sin(ths)])
    ws = (ws @ W.basis) @ W.basis.T
    ws = ws[np.linalg.norm(ws, axis=1) > 0.5]
    ws /= np.linalg.norm(ws, axis=1)[:, None]
    sines = np.sqrt(np.clip(1.0 - (ws @ v) ** 2, 0, None))
    assert abs(dist_vec(v, W) - 0.8) < 1e-12
    assert abs(sines.min() - 0.8) < 1e-4


def test_dist_vec_rejects_non_unit():
    with pytest.raises(ValueError, match="unit"):
        dist_vec([1.0, 1.0], line(1, 0))


def test_dist_vec_equivalent_expressions():
    # all the textbook expressions for the same quantity agree to 1e-12
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        Q = random_subspace(n, int(rng.integers(1, n)), rng)
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        pv = project(v, Q)
        if np.linalg.norm(pv) < 1e-6:
            continue  # the normalized-projection forms need v not orthogonal to Q
        d = dist_vec(v, Q)
        assert abs(d - np.linalg.norm(v - pv)) < 1e-12
        # euclidean distance to the subspace
        coeffs = Q.basis.T @ v
        assert abs(d - np.linalg.norm(v - Q.basis @ coeffs)) < 1e-12
        # norm of the projection onto the orthogonal complement
        full = np.eye(n) - Q.basis @ Q.basis.T
        assert abs(d - np.linalg.norm(full @ v)) < 1e-12
        # sine of the angle against the normalized projection
        phat = pv / np.linalg.norm(pv)
        sin_v = math.sqrt(max(0.0, 1.0 - float(np.dot(v, phat)) ** 2))
        assert abs(d - sin_v) < 1e-12
        # line-to-line deviation against the projection line
        assert abs(d - dist_d(orthonormalize([v]), orthonormalize([phat]))) < 1e-12


# --- dist_d / dist_D ------------------------------------------------------------


def test_dist_d_containment_is_zero():
    P, Q = random_nested(6, 2, 4, 11)
    assert dist_d(P, Q) <= 1e-12


def test_dist_d_orthogonal_lines():
    assert dist_d(line(1, 0), line(0, 1)) == 1.0


def test_dist_d_rotated_line():
    th = 0.3
    L = line(math.cos(th), math.sin(th))
    assert abs(dist_d(L, line(1, 0)) - math.sin(th)) < 1e-12
    # brute-force sphere grids on both sides
    from stratkit.fixtures import oracle_distance_extrema
    lo, hi, bound = oracle_distance_extrema(L, line(1, 0), mesh=1e-4)
    assert abs(hi - math.sin(th)) <= bound + 1e-12


def test_dist_d_zero_dim_convention():
    Q = random_subspace(4, 2, 3)
    assert dist_d(Subspace.zero(4), Q) == 0.0
    assert dist_d(Q, Subspace.zero(4)) == 1.0


def test_dist_D_examples():
    P = random_subspace(5, 3, 17)
    assert dist_D(P, P) <= 1e-12
    L, plane = line(1, 0), Subspace.full(2)
    assert abs(dist_D(L, plane) - 1.0) < 1e-12  # the larger side sticks out
    Q = random_subspace(5, 3, 19)
    assert dist_D(P, Q) == dist_D(Q, P)


def test_dist_d_max_is_one_iff_meets_orthocomplement():
    rng = np.random.default_rng(23)
    for _ in range(50):
        n = int(rng.integers(3, 7))
        l = int(rng.integers(1, n - 1))
        Q = random_subspace(n, l, rng)
        # build P containing a direction of the orthogonal complement
        w = rng.standard_normal(n)
        w -= project(w, Q)
        w /= np.linalg.norm(w)
        P = orthonormalize(np.vstack([w, rng.standard_normal(n)]))
        assert dist_d(P, Q) >= 1.0 - 1e-9
        # generic small subspace misses the complement: deviation < 1
        P2 = random_subspace(n, 1, rng)
        assert dist_d(P2, Q) < 1.0 - 1e-9


# --- dist_delta ------------------------------------------------------------------


def test_dist_delta_examples():
    assert dist_delta(line(1, 0), line(0, 1)) == 1.0
    L = line(1, 0)
    assert dist_delta(L, L) <= 1e-12
    V = line(1, 1, 0)
    W = line(1, 0, 0)
    assert abs(dist_delta(V, W) - 1 / math.sqrt(2)) < 1e-12
    # grid minimization over the unit circle of V
    ths = np.linspace(0, 2 * np.pi, 200001, endpoint=False)
    us = np.cos(ths)[:, None] * V.basis[:, 0]
    us = us / np.linalg.norm(us, axis=1)[:, None]
    resid = np.linalg.norm(us - (us @ W.basis) @ W.basis.T, axis=1)
    assert abs(resid.min() - 1 / math.sqrt(2)) < 1e-3


def test_dist_delta_zero_dim_convention():
    W = random_subspace(3, 2, 5)
    assert dist_delta(Subspace.zero(3), W) == 1.0


def test_dist_delta_zero_iff_nontrivial_intersection():
    S, K = random_transverse(5, 2, 2, 31, shared_dim=1)
    assert dist_delta(S, K) <= 1e-6
    S2, K2 = random_transverse(5, 2, 2, 33, shared_dim=0)
    assert dist_delta(S2, K2) > 1e-6
    assert intersect(S2, K2).dim == 0


def test_delta_le_d_le_D():
    rng = np.random.default_rng(37)
    for _ in range(200):
        n = int(rng.integers(2, 8))
        V = random_subspace(n, int(rng.integers(1, n + 1)), rng)
        W = random_subspace(n, int(rng.integers(1, n + 1)), rng)
        dl = dist_delta(V, W)
        dd = dist_d(V, W)
        assert dl <= dd + 1e-9
        assert dd <= dist_D(V, W) + 1e-9


def test_delta_one_iff_orthogonal():
    V, W = random_orthogonal(6, 2, 3, 41)
    assert dist_delta(V, W) >= 1.0 - 1e-12


# --- projective lines -------------------------------------------------------------


def test_projective_sign_normalization():
    a = ProjectiveLine([-1.0, 0.0])
    b = ProjectiveLine([1.0, 0.0])
    assert np.allclose(a.direction, b.direction)
    assert dist_projective(a, b) == 0.0


def test_projective_examples():
    a = ProjectiveLine([1.0, 0.0])
    b = ProjectiveLine([0.0, 1.0])
    assert abs(dist_projective(a, b) - math.sqrt(2)) < 1e-12
    assert dist_projective(a, a) == 0.0


def test_projective_sandwich_random():
    rng = np.random.default_rng(43)
    for _ in range(500):
        n = int(rng.integers(2, 7))
        u = rng.standard_normal(n)
        w = rng.standard_normal(n)
        a, b = ProjectiveLine(u), ProjectiveLine(w)
        dt = dist_projective(a, b)
        d = dist_d(a.subspace(), b.subspace())
        assert dt / math.sqrt(2) <= d + 1e-12
        assert d <= dt + 1e-12


# --- intersect / lambda ------------------------------------------------------------


def test_intersect_self():
    S = random_subspace(5, 3, 51)
    J = intersect(S, S)
    assert J.dim == 3
    assert dist_D(J, S) < 1e-9


def test_intersect_transverse_planes_share_line():
    S = orthonormalize([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    K = orthonormalize([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    J = intersect(S, K)
    assert J.dim == 1
    # the result lies in both spans
    for T in (S, K):
        resid = J.basis - T.basis @ (T.basis.T @ J.basis)
        assert np.max(np.abs(resid)) < 1e-8


def test_intersect_disjoint_lines():
    assert intersect(line(1, 0), line(0, 1)).dim == 0


def test_lambda_containment_cases():
    P, Q = random_nested(5, 2, 3, 61)
    assert lambda_angle(P, Q) == 0.0
    assert lambda_angle(Q, P) == 0.0
    assert lambda_angle(Subspace.zero(5), Q) == 0.0


def test_lambda_lines_at_angle():
    th = 0.4
    a = line(1, 0)
    b = line(math.cos(th), math.sin(th))
    assert abs(lambda_angle(a, b) - math.sin(th)) < 1e-12
    # the only unit directions are +-a and +-b: the infimum is sin(th) itself
    sin_uv = math.sqrt(1 - float(np.dot(a.basis[:, 0], b.basis[:, 0])) ** 2)
    assert abs(lambda_angle(a, b) - sin_uv) < 1e-12


def test_lambda_perpendicular_planes_in_r3():
    from stratkit.fixtures import oracle_lambda_grid

    S = orthonormalize([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])  # xy-plane
    K = orthonormalize([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])  # xz-plane
    # dihedral angle pi/2 along the shared x-axis
    assert abs(lambda_angle(S, K) - 1.0) < 1e-12
    # constrained brute force over directions orthogonal to the shared axis
    axis = orthonormalize([[1.0, 0.0, 0.0]])
    val, bound = oracle_lambda_grid(S, K, mesh=1e-3, intersection=axis)
    assert abs(val - 1.0) <= bound + 1e-12


def test_lambda_continuity_under_small_perturbation():
    rng = np.random.default_rng(71)
    S, K = random_transverse(4, 2, 2, rng, shared_dim=1)
    lam = lambda_angle(S, K)
    for eps in (1e-6, 1e-5):
        Spert = orthonormalize((S.basis + eps * rng.standard_normal(S.basis.shape)).T)
        lam2 = lambda_angle(Spert, K)
        assert abs(lam2 - lam) < 100 * eps + 1e-8


# --- explicit constants -------------------------------------------------------------


def test_projection_lipschitz_bound_values():
    assert abs(projection_lipschitz_bound(1.0) - 2 * math.sqrt(2)) < 1e-15
    assert abs(projection_lipschitz_bound(0.5) - 8 * math.sqrt(2)) < 1e-14
    assert projection_lipschitz_bound(0.25) > projection_lipschitz_bound(0.5)
    with pytest.raises(ValueError):
        projection_lipschitz_bound(0.0)
    with pytest.raises(ValueError):
        projection_lipschitz_bound(1.5)


def test_projected_line_lipschitz_property():
    rng = np.random.default_rng(73)
    for _ in range(500):
        n = int(rng.integers(2, 7))
        kv = int(rng.integers(1, n))
        V = random_subspace(n, kv, rng)
        alpha = float(rng.uniform(0.2, 1.0))
        bound = projection_lipschitz_bound(alpha)

        def draw():
            vhat = V.basis @ rng.standard_normal(kv)
            vhat /= np.linalg.norm(vhat)
            w = rng.standard_normal(n)
            w -= project(w, V)
            nw = np.linalg.norm(w)
            c = rng.uniform(alpha, 1.0)
            if nw < 1e-12:
                return vhat
            return c * vhat + math.sqrt(1 - c * c) * (w / nw)

        u, w = draw(), draw()
        pu, pw = project(u, V), project(w, V)
        du = dist_d(orthonormalize([pu]), orthonormalize([pw]))
        dd = dist_d(orthonormalize([u]), orthonormalize([w]))
        assert du <= bound * dd + 1e-9


def test_intersection_distance_bound_member():
    S, K = random_transverse(4, 2, 2, 83, shared_dim=1)
    J = intersect(S, K)
    v = J.basis[:, 0]
    lhs, rhs = intersection_distance_bound(v, S, K)
    assert lhs < 1e-8
    assert rhs < 1e-6


def test_intersection_distance_bound_random_trials():
    rng = np.random.default_rng(89)
    used = 0
    while used < 2000:
        n = int(rng.integers(3, 7))
        k = int(rng.integers(1, n))
        l = int(rng.integers(1, n))
        S = random_subspace(n, k, rng)
        K = random_subspace(n, l, rng)
        if lambda_angle(S, K) <= 0.1:
            continue
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        lhs, rhs = intersection_distance_bound(v, S, K)
        assert lhs <= rhs + 1e-9
        used += 1


def test_intersection_distance_bound_rejects_flat_pairs():
    P, Q = random_nested(4, 1, 2, 97)
    with pytest.raises(NonTransverseError):
        intersection_distance_bound([1.0, 0, 0, 0], P, Q)


def test_vertical_separation_bound_values():
    assert vertical_separation_bound(0.0) == 1.0
    assert abs(vertical_separation_bound(1.0) - 1 / math.sqrt(2)) < 1e-15
    with pytest.raises(ValueError):
        vertical_separation_bound(-0.1)


def test_vertical_separation_on_random_linear_graphs():
    rng = np.random.default_rng(103)
    for _ in range(100):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(1, 4))
        A = rng.standard_normal((m, n))
        L = float(np.linalg.svd(A, compute_uv=False)[0])
        T = graph_subspace(A)
        delta = dist_delta(T, vertical_subspace(n, m))
        assert delta >= vertical_separation_bound(L) - 1e-9


# --- metric properties ----------------------------------------------------------------


def test_triangle_symmetry_monotone_small_sweep():
    rng = np.random.default_rng(107)
    for _ in range(300):
        n = int(rng.integers(2, 8))
        P = random_subspace(n, int(rng.integers(1, n)), rng)
        Q = random_subspace(n, int(rng.integers(1, n)), rng)
        R = random_subspace(n, int(rng.integers(1, n)), rng)
        assert dist_d(P, R) <= dist_d(P, Q) + dist_d(Q, R) + 1e-9
        if P.dim == Q.dim:
            assert abs(dist_d(P, Q) - dist_d(Q, P)) <= 1e-9
        bigger = orthonormalize(np.vstack([P.basis.T, rng.standard_normal(n)]))
        assert dist_d(P, Q) <= dist_d(bigger, Q) + 1e-9
        if Q.dim > 1:
            smaller = Subspace(Q.basis[:, :-1])
            assert dist_d(P, Q) <= dist_d(P, smaller) + 1e-9


def test_continuity_bound_small_sweep():
    rng = np.random.default_rng(109)
    for _ in range(300):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, n))
        l = int(rng.integers(1, n))
        P1, P2 = random_subspace(n, k, rng), random_subspace(n, k, rng)
        Q1, Q2 = random_subspace(n, l, rng), random_subspace(n, l, rng)
        lhs = abs(dist_d(P1, Q1) - dist_d(P2, Q2))
        assert lhs <= dist_D(P1, P2) + dist_D(Q1, Q2) + 1e-9
