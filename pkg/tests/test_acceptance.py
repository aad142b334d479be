"""Acceptance suite: every shipped guarantee, at its stated tolerance.

Each test prints one `[acceptance NN] label: PASS/FAIL` line (visible with
``pytest -s``) and asserts the criterion.  Seeds are pinned; thresholds are
the published defaults.
"""

import json
import math
import time

import numpy as np

from stratkit import (
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
    secant_vertical_identity,
    theorem_suite_projection,
    theorem_suite_transversal,
    vertical_separation_bound,
    vertical_subspace,
    ProjectiveLine,
)
from stratkit import cli
from stratkit.exprlang import eval_dual, parse
from stratkit.fixtures import (
    get_fixture,
    lifting_suite_inputs,
    oracle_distance_extrema,
    oracle_lambda_grid,
    random_subspace,
)
from stratkit.scenario import run_scenario


def _criterion(cid, label, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[acceptance {cid:02d}] {label}: {status}{suffix}")
    assert ok, f"criterion {cid} ({label}){suffix}"


def test_01_metric_axiom_suite():
    rng = np.random.default_rng(20240811)
    t0 = time.perf_counter()
    trials = 10_000
    tol = 1e-9
    ok = True
    for i in range(trials):
        n = int(rng.integers(3, 9))
        k1, k2, k3 = (int(x) for x in rng.integers(1, n, size=3))
        P = random_subspace(n, k1, rng)
        Q = random_subspace(n, k2, rng)
        R = random_subspace(n, k3, rng)
        dPQ, dQR, dPR = dist_d(P, Q), dist_d(Q, R), dist_d(P, R)
        # range and triangle
        ok &= 0.0 <= min(dPQ, dQR, dPR) and max(dPQ, dQR, dPR) <= 1.0
        ok &= dPR <= dPQ + dQR + tol
        # identity and symmetry on equal dimensions
        ok &= dist_d(P, P) <= tol
        if k1 == k2:
            ok &= abs(dPQ - dist_d(Q, P)) <= tol
        # monotonicity in both arguments
        bigger = orthonormalize(np.vstack([P.basis.T, rng.standard_normal(n)]))
        ok &= dPQ <= dist_d(bigger, Q) + tol
        if k2 > 1:
            ok &= dPQ <= dist_d(P, Subspace(Q.basis[:, :-1])) + tol
        # containment characterizations
        inside = orthonormalize((Q.basis @ rng.standard_normal((k2, 1))).T)
        ok &= dist_d(inside, Q) <= tol
        w = rng.standard_normal(n)
        w -= project(w, Q)
        nw = np.linalg.norm(w)
        if nw > 1e-8:
            meets = orthonormalize([w / nw])
            ok &= dist_d(meets, Q) >= 1.0 - tol
        if i % 10 == 0:
            # unit-vector expression chain and the projective sandwich
            v = rng.standard_normal(n)
            v /= np.linalg.norm(v)
            pv = project(v, Q)
            ok &= abs(dist_vec(v, Q) - np.linalg.norm(v - pv)) <= tol
            u2 = rng.standard_normal(n)
            a, b = ProjectiveLine(v), ProjectiveLine(u2)
            dt = dist_projective(a, b)
            dl = dist_d(a.subspace(), b.subspace())
            ok &= dt / math.sqrt(2) <= dl + tol and dl <= dt + tol
        if not ok:
            break
    elapsed = time.perf_counter() - t0
    _criterion(1, "metric axiom suite", ok and elapsed < 10.0,
               f"{trials} triples in {elapsed:.1f}s")


def _transverse_with_known_intersection(rng, n, k, l, p):
    """Draw (S, K, J) with S n K = J of dimension p, J built independently."""
    while True:
        J = random_subspace(n, p, rng) if p else Subspace.zero(n)
        S_rows = rng.standard_normal((k - p, n))
        K_rows = rng.standard_normal((l - p, n))
        S = orthonormalize(np.vstack([J.basis.T, S_rows]) if p else S_rows)
        K = orthonormalize(np.vstack([J.basis.T, K_rows]) if p else K_rows)
        if S.dim == k and K.dim == l and intersect(S, K).dim == p:
            return S, K, J


def test_02_oracle_equivalence():
    rng = np.random.default_rng(20240812)
    t0 = time.perf_counter()
    mesh_by_dim = {1: 1e-4, 2: 2e-3, 3: 2e-2, 4: 1.2e-1}
    configs = ([(2, 1, 1)]
               + [(3, k, l) for k in (1, 2) for l in (1, 2)]
               + [(4, k, l) for k in (1, 2, 3) for l in (1, 2, 3)]
               + [(4, 4, 2)])
    pairs_per_config = 100
    worst = 0.0
    ok = True
    for n, k, l in configs:
        p = max(0, k + l - n)
        for _ in range(pairs_per_config):
            S, K, J = _transverse_with_known_intersection(rng, n, k, l, p)
            lo, hi, bound = oracle_distance_extrema(S, K, mesh_by_dim[k])
            err_sup = abs(hi - dist_d(S, K))
            err_inf = abs(lo - dist_delta(S, K))
            ok &= err_sup <= bound + 1e-9 and err_inf <= bound + 1e-9
            worst = max(worst, err_sup - bound, err_inf - bound)
            if 0 < k - p <= 3 and 0 < l - p <= 3:
                lam_mesh = mesh_by_dim[max(min(k - p, 3), min(l - p, 3), 1)]
                got, lam_bound = oracle_lambda_grid(
                    S, K, lam_mesh, intersection=J if p else None)
                ok &= abs(got - lambda_angle(S, K)) <= lam_bound + 1e-9
        if not ok:
            break
    elapsed = time.perf_counter() - t0
    _criterion(2, "sphere-grid oracle equivalence", ok and elapsed < 60.0,
               f"{len(configs)} configs x {pairs_per_config} pairs in "
               f"{elapsed:.1f}s")


def test_03_projective_sandwich():
    rng = np.random.default_rng(20240813)
    ok = True
    for _ in range(10_000):
        n = int(rng.integers(2, 7))
        a = ProjectiveLine(rng.standard_normal(n))
        b = ProjectiveLine(rng.standard_normal(n))
        dt = dist_projective(a, b)
        d = dist_d(a.subspace(), b.subspace())
        ok &= dt / math.sqrt(2) <= d + 1e-9 and d <= dt + 1e-9
        if not ok:
            break
    _criterion(3, "projective chordal sandwich", ok, "10^4 line pairs")


def test_04_continuity_bound():
    rng = np.random.default_rng(20240814)
    ok = True
    for _ in range(10_000):
        n = int(rng.integers(2, 7))
        k = int(rng.integers(1, n))
        l = int(rng.integers(1, n))
        P1, P2 = random_subspace(n, k, rng), random_subspace(n, k, rng)
        Q1, Q2 = random_subspace(n, l, rng), random_subspace(n, l, rng)
        lhs = abs(dist_d(P1, Q1) - dist_d(P2, Q2))
        ok &= lhs <= dist_D(P1, P2) + dist_D(Q1, Q2) + 1e-9
        if not ok:
            break
    _criterion(4, "deviation continuity bound", ok, "10^4 quadruples")


def test_05_projectivized_projection_constant():
    rng = np.random.default_rng(20240815)
    ok = True
    for alpha in (0.25, 0.5, 1.0):
        bound = projection_lipschitz_bound(alpha)
        for _ in range(4_000):
            n = int(rng.integers(2, 7))
            kv = int(rng.integers(1, n))
            V = random_subspace(n, kv, rng)

            def constrained_unit():
                vhat = V.basis @ rng.standard_normal(kv)
                vhat /= np.linalg.norm(vhat)
                w = rng.standard_normal(n)
                w -= project(w, V)
                nw = np.linalg.norm(w)
                c = float(rng.uniform(alpha, 1.0))
                if nw < 1e-12 or c == 1.0:
                    return vhat
                return c * vhat + math.sqrt(1.0 - c * c) * (w / nw)

            u, w = constrained_unit(), constrained_unit()
            pu, pw = project(u, V), project(w, V)
            lhs = dist_d(orthonormalize([pu]), orthonormalize([pw]))
            rhs = dist_d(orthonormalize([u]), orthonormalize([w]))
            ok &= lhs <= bound * rhs + 1e-9
            if not ok:
                break
    _criterion(5, "projectivized projection Lipschitz constant", ok,
               "alpha in {0.25, 0.5, 1}")


def test_06_intersection_distance_inequality():
    rng = np.random.default_rng(20240816)
    used = 0
    ok = True
    while used < 10_000:
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
        ok &= lhs <= rhs + 1e-9
        used += 1
        if not ok:
            break
    _criterion(6, "transversal intersection distance bound", ok,
               "10^4 trials with angle > 0.1")


def test_07_graph_tangent_vertical_separation():
    rng = np.random.default_rng(20240817)
    ok = True
    for L in (0.5, 1.0, 2.0):
        floor = vertical_separation_bound(L)
        for _ in range(100):
            n = int(rng.integers(1, 5))
            m = int(rng.integers(1, 5))
            A = rng.standard_normal((m, n))
            A *= (L * float(rng.uniform(0.2, 1.0))) / np.linalg.svd(A, compute_uv=False)[0]
            T = graph_subspace(A)
            ok &= dist_delta(T, vertical_subspace(n, m)) >= floor - 1e-9
            if not ok:
                break
    _criterion(7, "graph tangents keep off the vertical space", ok,
               "norm caps 0.5, 1, 2")


def test_08_cusp_reproduction():
    t0 = time.perf_counter()
    fix = get_fixture("cusp_sqrt")
    scn = fix.build()
    results = run_scenario(scn)
    ok = True
    sup_cap = math.sqrt(2.0) + 0.05
    for check, verdict, err in results:
        ok &= err is None and verdict.verdict == "holds"
        for shell in verdict.shells:
            if shell.sup_value is not None:
                ok &= shell.sup_value <= sup_cap
    amb = fix.extras["ambient_map"]
    e = parse(amb["components"][1], amb["variables"])
    d = eval_dual(e, [0.5, 1e-6])
    ok &= abs(abs(d.partials[1]) - 500.0) <= 1e-9 * 500.0
    elapsed = time.perf_counter() - t0
    _criterion(8, "pinched-cusp reproduction", ok and elapsed < 5.0,
               f"sups <= sqrt(2)+0.05, derivative 500, {elapsed:.2f}s")


def test_09_flat_c1_reproduction():
    fix = get_fixture("flat_c1")
    scn = fix.build()
    (check, verdict, err), = run_scenario(scn)
    ok = err is None and verdict.verdict == "holds"
    ok &= abs(verdict.fitted_trend - 3.0) <= 0.3
    amb = fix.extras["ambient_map"]
    e = parse(amb["components"][0], amb["variables"])
    c = 8.0 / (3.0 * math.sqrt(3.0))
    for y in (0.04, 0.01):
        x = y**4.5 / math.sqrt(3.0)
        d = eval_dual(e, [x, y])
        want = c / math.sqrt(y)
        ok &= abs(abs(d.partials[0]) - want) <= 1e-6 * want
    _criterion(9, "thin-support C1 reproduction", ok,
               f"slope {verdict.fitted_trend:.2f} in 3+-0.3")


def test_10_secant_vertical_identity_sweep():
    rng = np.random.default_rng(20240820)
    worst = 0.0
    for _ in range(100_000):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(1, 4))
        x = rng.standard_normal(n + m)
        y = rng.standard_normal(n + m)
        _, _, resid = secant_vertical_identity(x, y, n)
        worst = max(worst, resid)
    _criterion(10, "secant-vertical identity", worst <= 1e-12,
               f"max residual {worst:.2e} over 10^5 pairs")


def test_11_counterexample_discrimination():
    ok = True
    detail = []
    for name, label, want in (
            ("verdier_fail", "verdier:axis->surface", "fails"),
            ("verdier_linear", "verdier:axis->surface", "holds"),
            ("half_plane", "whitney_b:axis->halfplane", "holds")):
        results = run_scenario(get_fixture(name).build())
        got = {c.label: (v.verdict if v else e) for c, v, e in results}[label]
        ok &= got == want
        detail.append(f"{name}:{got}")
    _criterion(11, "counterexample discrimination", ok, ", ".join(detail))


def test_12_theorem_suites():
    from stratkit.strata import SampleSchedule

    scn = get_fixture("cusp_sqrt").build()
    proj_b = theorem_suite_projection(
        scn.maps["f"], "gamma2", "lam", [],
        SampleSchedule(base_point=(0.0, 0.0), r0=0.25, rho=0.5, shells=7,
                       samples=40, seed=9101),
        condition="whitney_b")
    ok = proj_b.implication_satisfied and proj_b.graph.verdict == "holds"

    lin = get_fixture("linear_map").build()
    proj_v = theorem_suite_projection(
        lin.maps["f"], "gamma", "lam", [0.0],
        SampleSchedule(base_point=(0.0, 0.0), r0=0.25, rho=0.5, shells=7,
                       samples=40, seed=9102),
        condition="verdier")
    ok &= proj_v.implication_satisfied and not proj_v.flagged

    inputs = lifting_suite_inputs()
    trans = theorem_suite_transversal(
        inputs["pair1"], inputs["pair2"], inputs["inter"],
        inputs["embeddings"], inputs["schedule"], condition="whitney_b")
    ok &= trans.bound_satisfied
    ok &= abs(trans.constant - 1.0 / trans.inf_lambda) <= 1e-12
    _criterion(12, "projection and transversal suites", ok,
               f"inf angle {trans.inf_lambda:.3f}, "
               f"slack {trans.min_slack:.2e}")


def test_13_report_determinism(tmp_path):
    path = tmp_path / "cusp_sqrt.yaml"
    assert cli.main(["emit-fixture", "cusp_sqrt", "--out", str(path)]) == 0
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert cli.main(["check", str(path), "--report", str(r1)]) == 0
    assert cli.main(["check", str(path), "--report", str(r2)]) == 0
    identical = r1.read_bytes() == r2.read_bytes()
    json.loads(r1.read_text())  # well-formed
    _criterion(13, "byte-identical reports", identical,
               f"{len(r1.read_bytes())} bytes")
