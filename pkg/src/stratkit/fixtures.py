"""Executable example scenarios, random generators and brute-force oracles.

The fixtures are complete scenario documents (the same format the CLI
ingests, so emitting and re-checking them exercises the ingestion path) plus
expected outcomes.  Every expected number carries a provenance tag:

* ``TRIVIAL`` -- asserted directly from the construction;
* ``DERIVED`` -- computed by an independent oracle (grid search, finite
  differences, an analytic derivation recorded in the fixture notes);
* ``PAPER``   -- a closed-form value quoted from the construction the
  fixture reproduces.

The oracles here are deliberately dumb: dense grids on unit spheres with an
explicit covering radius, so that a library value and an oracle value can
only disagree by a known resolution bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .scenario import Scenario, build_scenario
from .subspaces import Subspace, orthonormalize
from .grassmann import intersect

_MAX_ORACLE_DIM = 4


class DegenerateDrawError(RuntimeError):
    """A random construction failed repeatedly to achieve its advertised relation."""


# --- random subspace generators ----------------------------------------------


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_subspace(n: int, k: int, seed) -> Subspace:
    """Orthonormalized span of k seeded Gaussian vectors in R^n."""
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    rng = _rng(seed)
    if k == 0:
        return Subspace.zero(n)
    for _ in range(16):
        S = orthonormalize(rng.standard_normal((k, n)))
        if S.dim == k:
            return S
    raise DegenerateDrawError(f"could not draw a {k}-dimensional subspace of R^{n}")


def random_nested(n: int, k: int, l: int, seed) -> tuple[Subspace, Subspace]:
    """A pair P inside Q with dim P = k, dim Q = l (k <= l)."""
    if k > l:
        raise ValueError("nested pair needs k <= l")
    rng = _rng(seed)
    Q = random_subspace(n, l, rng)
    if k == 0:
        return Subspace.zero(n), Q
    for _ in range(16):
        P = orthonormalize((Q.basis @ rng.standard_normal((l, k))).T)
        if P.dim == k:
            return P, Q
    raise DegenerateDrawError("could not draw a nested pair")


def random_orthogonal(n: int, k: int, l: int, seed) -> tuple[Subspace, Subspace]:
    """A pair of mutually orthogonal subspaces (needs k + l <= n)."""
    if k + l > n:
        raise ValueError("orthogonal pair needs k + l <= n")
    F = random_subspace(n, k + l, seed)
    return (Subspace._wrap(F.basis[:, :k]), Subspace._wrap(F.basis[:, k:]))


def random_transverse(n: int, k: int, l: int, seed,
                      shared_dim: int = 0) -> tuple[Subspace, Subspace]:
    """A pair S, K whose intersection has exactly ``shared_dim`` dimensions.

    Built as spans of a common random subspace plus independent Gaussian
    complements; the advertised intersection dimension is verified through
    :func:`~stratkit.grassmann.intersect` and degenerate draws are retried.
    """
    if shared_dim > min(k, l):
        raise ValueError("shared_dim cannot exceed either dimension")
    if (k - shared_dim) + (l - shared_dim) > n - shared_dim:
        raise ValueError("generic intersection would exceed shared_dim; "
                         "shrink the dimensions")
    rng = _rng(seed)
    for _ in range(16):
        J = random_subspace(n, shared_dim, rng)
        S_extra = rng.standard_normal((k - shared_dim, n))
        K_extra = rng.standard_normal((l - shared_dim, n))
        S = orthonormalize(np.vstack([J.basis.T, S_extra]) if shared_dim else S_extra)
        K = orthonormalize(np.vstack([J.basis.T, K_extra]) if shared_dim else K_extra)
        if S.dim != k or K.dim != l:
            continue
        if intersect(S, K).dim == shared_dim:
            return S, K
    raise DegenerateDrawError("could not draw a transverse pair")


# --- sphere-grid oracles -------------------------------------------------------


def sphere_grid(k: int, mesh: float) -> tuple[np.ndarray, float]:
    """Deterministic grid on the unit sphere of R^k with covering radius <= mesh.

    Uses spherical-angle boxes; the angles-to-sphere map is 1-Lipschitz in
    each angle, so a per-axis half step of mesh/(k-1) gives the bound.
    Returns (points, covering_bound).
    """
    if k < 1:
        raise ValueError("sphere dimension must be >= 1")
    if k == 1:
        return np.array([[1.0], [-1.0]]), 0.0
    delta = 2.0 * mesh / (k - 1)
    axes = []
    for i in range(k - 1):
        span = math.pi if i < k - 2 else 2.0 * math.pi
        m = max(1, int(math.ceil(span / delta)))
        axes.append((np.arange(m) + 0.5) * (span / m))
    grids = np.meshgrid(*axes, indexing="ij")
    thetas = np.column_stack([g.ravel() for g in grids])
    pts = np.empty((thetas.shape[0], k))
    sin_running = np.ones(thetas.shape[0])
    for i in range(k - 1):
        pts[:, i] = sin_running * np.cos(thetas[:, i])
        sin_running = sin_running * np.sin(thetas[:, i])
    pts[:, k - 1] = sin_running
    cover = max((math.pi if i < k - 2 else 2.0 * math.pi) / len(ax) / 2.0
                for i, ax in enumerate(axes))
    return pts, cover * (k - 1)


def oracle_sphere_grid(P: Subspace, objective, mesh: float,
                       lipschitz: float = 1.0) -> tuple[float, float, float]:
    """Brute-force extrema of an objective over the unit sphere of P.

    ``objective`` receives an (m, n) block of ambient unit vectors of P and
    returns m values.  The true extrema lie within
    ``resolution = covering_radius * lipschitz`` of the returned grid
    extrema.  Guarded to dim P <= 4 (the grid blows up combinatorially).

    Returns (min, max, resolution_bound).
    """
    if P.dim == 0:
        raise ValueError("the zero subspace has no unit sphere")
    if P.dim > _MAX_ORACLE_DIM:
        raise ValueError(f"oracle limited to dim <= {_MAX_ORACLE_DIM}, got {P.dim}")
    coords, cover = sphere_grid(P.dim, mesh)
    lo, hi = math.inf, -math.inf
    for start in range(0, coords.shape[0], 100_000):
        block = coords[start:start + 100_000] @ P.basis.T
        vals = np.asarray(objective(block), dtype=float)
        lo = min(lo, float(vals.min()))
        hi = max(hi, float(vals.max()))
    return lo, hi, cover * lipschitz


def oracle_distance_extrema(P: Subspace, Q: Subspace,
                            mesh: float) -> tuple[float, float, float]:
    """Grid extrema of dist(u, Q) = |u - pi_Q(u)| for unit u in P.

    Independent of the principal-sine code path: the objective is evaluated
    directly from Q's basis matrix.  The objective is 1-Lipschitz, so the
    resolution bound equals the grid's covering radius.
    """
    B = Q.basis

    def objective(block: np.ndarray) -> np.ndarray:
        resid = block - (block @ B) @ B.T
        return np.linalg.norm(resid, axis=1)

    return oracle_sphere_grid(P, objective, mesh, lipschitz=1.0)


def oracle_lambda_grid(S: Subspace, K: Subspace, mesh: float,
                       intersection: Subspace | None = None) -> tuple[float, float]:
    """Constrained-grid value of the transversality angle.

    Minimizes sin(angle(u, w)) = sqrt(1 - (u.w)^2) over grid points u, w on
    the unit spheres of the complements of the (supplied or trivial)
    intersection inside S and K.  The complements are built with plain QR,
    independent of the library's principal-direction path.  Returns
    (min_value, resolution_bound) with the bound = sum of the two covering
    radii (the objective is 1-Lipschitz in each argument).
    """
    def complement(A: Subspace) -> np.ndarray:
        M = A.basis
        if intersection is not None and intersection.dim > 0:
            J = intersection.basis
            M = M - J @ (J.T @ M)
        U, s, _ = np.linalg.svd(M, full_matrices=False)
        return U[:, s > 1e-9]

    Sc = complement(S)
    Kc = complement(K)
    if Sc.shape[1] == 0 or Kc.shape[1] == 0:
        return 0.0, 0.0
    if Sc.shape[1] > _MAX_ORACLE_DIM or Kc.shape[1] > _MAX_ORACLE_DIM:
        raise ValueError(f"oracle limited to dim <= {_MAX_ORACLE_DIM}")
    gu, cover_u = sphere_grid(Sc.shape[1], mesh)
    gw, cover_w = sphere_grid(Kc.shape[1], mesh)
    # max |u.w| over the two grids, blockwise to bound memory
    M = Sc.T @ Kc
    best = 0.0
    for start in range(0, gu.shape[0], 20_000):
        dots = np.abs((gu[start:start + 20_000] @ M) @ gw.T)
        best = max(best, float(dots.max()))
    best = min(best, 1.0)
    return math.sqrt(max(0.0, 1.0 - best * best)), cover_u + cover_w


# --- fixtures -------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    """A named scenario document plus its expected outcomes.

    ``expected`` maps check labels to verdicts and numeric bounds; every
    entry carries its provenance tag.  ``notes`` records the analytic
    derivations behind DERIVED expectations.
    """

    name: str
    description: str
    scenario: dict
    expected: dict
    notes: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict)

    def build(self) -> Scenario:
        return build_scenario(self.scenario, name_hint=self.name)


def fixture_cusp_sqrt() -> Fixture:
    """Square-root map on a quadratically pinched cusp region.

    The region between the parabolas y = x^2/2 and y = x^2 (x in (0, 1)),
    its lower boundary parabola, and the origin; the map (x, y) ->
    (x, sqrt(y)).  The y-derivative 1/(2 sqrt(y)) blows up toward the
    origin, so the map is not Lipschitz there, yet every difference quotient
    against the origin is bounded by sqrt(2) because the region pinches
    quadratically: (x^2 + y)/(x^2 + y^2) <= 2 x^2 / x^2 = 2 for y <= x^2.
    """
    scenario = {
        "version": 1,
        "name": "cusp_sqrt",
        "description": "square-root map on a quadratically pinched cusp; "
                       "difference quotients stay below sqrt(2)",
        "ambient_dim": 2,
        "strata": [
            {"name": "lam", "variables": ["u", "t"],
             "domain": [[0.0, 1.0], [0.0, 1.0]],
             "chart": ["u", "u^2 * (1 + t) / 2"]},
            {"name": "gamma1", "variables": ["u"],
             "domain": [[0.0, 1.0]],
             "chart": ["u", "u^2 / 2"]},
            {"name": "gamma2", "variables": [], "domain": [],
             "chart": ["0", "0"]},
        ],
        "frontier": [["gamma1", "lam"], ["gamma2", "lam"], ["gamma2", "gamma1"]],
        "maps": [
            {"name": "f", "target_dim": 2,
             "components": {
                 "lam": ["u", "sqrt(u^2 * (1 + t) / 2)"],
                 "gamma1": ["u", "sqrt(u^2 / 2)"],
                 "gamma2": ["0", "0"],
             }},
        ],
        "checks": [
            {"condition": "wl", "map": "f", "gamma": "gamma2", "lam": "lam",
             "label": "wl:origin->region",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 8, "samples": 40, "seed": 7101}},
            {"condition": "wl", "map": "f", "gamma": "gamma2", "lam": "gamma1",
             "label": "wl:origin->parabola",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 8, "samples": 40, "seed": 7102}},
            {"condition": "wbl", "map": "f", "gamma": "gamma2", "lam": "lam",
             "label": "wbl:origin->region",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 8, "samples": 40, "seed": 7103}},
        ],
        "expected": {
            "wl:origin->region": {"verdict": "holds", "provenance": "PAPER"},
            "wl:origin->parabola": {"verdict": "holds", "provenance": "PAPER"},
            "wbl:origin->region": {"verdict": "holds", "provenance": "DERIVED"},
            "shell_sup_bound": {"value": math.sqrt(2.0), "provenance": "PAPER"},
        },
    }
    extras = {
        # ambient form of the map, for derivative checks
        "ambient_map": {"variables": ["x", "y"], "components": ["x", "sqrt(y)"]},
        # |d/dy sqrt(y)| at y = 1e-6 equals 500
        "derivative_checks": [
            {"component": 1, "wrt": "y", "point": [0.5, 1e-6],
             "value": 500.0, "rel_tol": 1e-9, "provenance": "PAPER"},
        ],
    }
    return Fixture(
        name="cusp_sqrt",
        description="square-root map on a pinched cusp: bounded quotients, "
                    "unbounded derivative",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("difference quotient against the origin is "
               "sqrt((x^2 + y)/(x^2 + y^2)) <= sqrt(2) on y <= x^2",),
        extras=extras)


def fixture_flat_c1() -> Fixture:
    """C^1 function supported on an ultra-thin region over the x-axis.

    f(x, y) = (x^2/y^7 - y^2)^2 where 0 < x^2 < y^9 and 0 elsewhere, on the
    half-plane y > 0 with the x-axis as frontier.  Difference quotients
    against the axis are bounded by y^4 / y = y^3, so the shell suprema fall
    off with log-log slope 3; still the x-derivative at x = y^(9/2)/sqrt(3)
    equals (8/(3 sqrt 3))/sqrt(y), so the map is not Lipschitz near the
    origin.  The chart x = s/(1-s^2) * t^(9/2) concentrates parameter mass
    on the support so the shells actually see the nonzero values.
    """
    w = "(s / (1 - s^2))"
    scenario = {
        "version": 1,
        "name": "flat_c1",
        "description": "flat C^1 bump over the x-axis: quotient bound y^3, "
                       "unbounded x-derivative",
        "ambient_dim": 2,
        "strata": [
            {"name": "lam", "variables": ["s", "t"],
             "domain": [[-1.0, 1.0], [0.0, 1.0]],
             "chart": [f"{w} * t^4 * sqrt(t)", "t"]},
            {"name": "gamma", "variables": ["v"],
             "domain": [[-1.0, 1.0]],
             "chart": ["v / (1 - v^2)", "0"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [
            {"name": "f", "target_dim": 1,
             "components": {
                 "lam": [f"if({w}^2 * t^9 < t^9, ({w}^2 * t^2 - t^2)^2, 0)"],
                 "gamma": ["0"],
             }},
        ],
        "checks": [
            {"condition": "wl", "map": "f", "gamma": "gamma", "lam": "lam",
             "label": "wl:axis->halfplane",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.2, "rho": 0.5,
                          "shells": 8, "samples": 60, "seed": 7201}},
        ],
        "expected": {
            "wl:axis->halfplane": {"verdict": "holds", "provenance": "PAPER"},
            "sup_slope": {"value": 3.0, "tol": 0.3, "provenance": "PAPER"},
        },
    }
    c = 8.0 / (3.0 * math.sqrt(3.0))
    extras = {
        "ambient_map": {"variables": ["x", "y"],
                        "components": ["if(x^2 < y^9, (x^2/y^7 - y^2)^2, 0)"]},
        "derivative_checks": [
            {"component": 0, "wrt": "x",
             "point": [0.04 ** 4.5 / math.sqrt(3.0), 0.04],
             "value": c / math.sqrt(0.04), "rel_tol": 1e-6,
             "provenance": "PAPER"},
            {"component": 0, "wrt": "x",
             "point": [0.01 ** 4.5 / math.sqrt(3.0), 0.01],
             "value": c / math.sqrt(0.01), "rel_tol": 1e-6,
             "provenance": "PAPER"},
        ],
    }
    return Fixture(
        name="flat_c1",
        description="thin-support C^1 bump: cubic quotient falloff, "
                    "non-Lipschitz derivative",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("quotient bound: value <= y^4 on the support, distance to the "
               "axis >= y, hence ratio <= y^3",),
        extras=extras)


def fixture_wl_fail() -> Fixture:
    """Quarter-power blowup: difference quotients diverge near the frontier.

    f = t^(1/4) on the strip t in (0, 1) against f = 0 on the axis.  Along
    pairs stacked vertically the quotient is t^(1/4)/t = t^(-3/4), so the
    shell suprema blow up with log-log slope about -3/4.
    """
    scenario = {
        "version": 1,
        "name": "wl_fail",
        "description": "quarter-power blowup: quotients diverge like r^(-3/4)",
        "ambient_dim": 2,
        "strata": [
            {"name": "lam", "variables": ["s", "t"],
             "domain": [[-1.0, 1.0], [0.0, 1.0]],
             "chart": ["s", "t"]},
            {"name": "gamma", "variables": ["v"], "domain": [[-1.0, 1.0]],
             "chart": ["v", "0"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [
            {"name": "f", "target_dim": 1,
             "components": {"lam": ["t^0.25"], "gamma": ["0"]}},
        ],
        "checks": [
            {"condition": "wl", "map": "f", "gamma": "gamma", "lam": "lam",
             "label": "wl:axis->strip",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 9, "samples": 48, "seed": 7301}},
        ],
        "expected": {
            "wl:axis->strip": {"verdict": "fails", "provenance": "DERIVED"},
        },
    }
    return Fixture(
        name="wl_fail",
        description="quarter-power blowup refutes bounded quotients",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("with x' = x the quotient is t^(1/4)/t = t^(-3/4) -> infinity",))


def fixture_collapse() -> Fixture:
    """Radial collapse: quotients bounded above but vanishing below.

    f(p) = |p| p is a diffeomorphism away from the origin that is
    bi-Lipschitz on each annulus rho*r < |p| <= r with constants between
    rho*r and 3r, so the shell quotients (sup and inf alike) scale exactly
    like the radius.  The inverse p -> p/sqrt(|p|) therefore has unbounded
    difference quotients at the origin: the map has no weakly Lipschitz
    inverse.
    """
    scenario = {
        "version": 1,
        "name": "collapse",
        "description": "radial collapse |p| p: inf quotients vanish like r",
        "ambient_dim": 2,
        "strata": [
            {"name": "lam", "variables": ["s", "t"],
             "domain": [[-1.0, 1.0], [0.0, 1.0]],
             "chart": ["s", "t"]},
            {"name": "gamma", "variables": ["v"], "domain": [[-1.0, 1.0]],
             "chart": ["v", "0"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [
            {"name": "f", "target_dim": 2,
             "components": {
                 "lam": ["sqrt(s^2 + t^2) * s", "sqrt(s^2 + t^2) * t"],
                 "gamma": ["abs(v) * v", "0"]}},
        ],
        "checks": [
            {"condition": "wl", "map": "f", "gamma": "gamma", "lam": "lam",
             "label": "wl:axis->strip",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 48, "seed": 7401}},
            {"condition": "wbl", "map": "f", "gamma": "gamma", "lam": "lam",
             "label": "wbl:axis->strip",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 48, "seed": 7402}},
        ],
        "expected": {
            "wl:axis->strip": {"verdict": "holds", "provenance": "TRIVIAL"},
            "wbl:axis->strip": {"verdict": "fails", "provenance": "DERIVED"},
        },
    }
    return Fixture(
        name="collapse",
        description="radial map whose inverse loses all resolution at the origin",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("for |p|, |q| in (a, b]: a |p-q| <= ||p|p - |q|q| <= 3b |p-q|, "
               "so every shell quotient lies in [rho r, 3r]",))


def fixture_half_plane() -> Fixture:
    """Open half plane over its boundary line: every condition holds.

    Tangents of the half plane fill the ambient plane, so secant defects and
    tangent deviations are identically zero.
    """
    scenario = {
        "version": 1,
        "name": "half_plane",
        "description": "half plane over its boundary: zero defects",
        "ambient_dim": 2,
        "strata": [
            {"name": "lam", "variables": ["s", "t"],
             "domain": [[-1.0, 1.0], [0.0, 1.0]],
             "chart": ["s", "t"]},
            {"name": "gamma", "variables": ["v"], "domain": [[-1.0, 1.0]],
             "chart": ["v", "0"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [],
        "checks": [
            {"condition": "whitney_b", "gamma": "gamma", "lam": "lam",
             "label": "whitney_b:axis->halfplane",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 40, "seed": 7501}},
            {"condition": "verdier", "gamma": "gamma", "lam": "lam",
             "label": "verdier:axis->halfplane",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 40, "seed": 7502}},
        ],
        "expected": {
            "whitney_b:axis->halfplane": {"verdict": "holds", "provenance": "TRIVIAL"},
            "verdier:axis->halfplane": {"verdict": "holds", "provenance": "TRIVIAL"},
        },
    }
    return Fixture(
        name="half_plane",
        description="boundary line of an open half plane",
        scenario=scenario,
        expected=scenario["expected"])


def fixture_verdier_fail() -> Fixture:
    """Square-root twist: tangent deviation outruns the point distance.

    The surface y = t*sqrt(x) over the (x, t) box accumulates on the t-axis.
    Near points with small x the surface tangent tilts like sqrt(x), while
    the distance to the axis shrinks like x, so the deviation/distance ratio
    grows like r^(-1/2) and the bounded-ratio condition fails at the origin.
    The linear perturbation y = t*x (see ``verdier_linear``) tilts only
    linearly and passes.
    """
    scenario = {
        "version": 1,
        "name": "verdier_fail",
        "description": "square-root twisted surface over its axis: "
                       "tangent gap ratio blows up",
        "ambient_dim": 3,
        "strata": [
            {"name": "lam", "variables": ["x", "t"],
             "domain": [[0.0, 1.0], [-1.0, 1.0]],
             "chart": ["x", "t", "t * sqrt(x)"]},
            {"name": "gamma", "variables": ["v"], "domain": [[-1.0, 1.0]],
             "chart": ["0", "v", "0"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [],
        "checks": [
            {"condition": "verdier", "gamma": "gamma", "lam": "lam",
             "label": "verdier:axis->surface",
             "schedule": {"base_point": [0.0, 0.0, 0.0], "r0": 0.2, "rho": 0.5,
                          "shells": 9, "samples": 48, "seed": 7601}},
            {"condition": "whitney_b", "gamma": "gamma", "lam": "lam",
             "label": "whitney_b:axis->surface",
             "schedule": {"base_point": [0.0, 0.0, 0.0], "r0": 0.2, "rho": 0.5,
                          "shells": 9, "samples": 48, "seed": 7602}},
        ],
        "expected": {
            "verdier:axis->surface": {"verdict": "fails", "provenance": "DERIVED"},
            "whitney_b:axis->surface": {"verdict": "inconclusive", "provenance": "DERIVED"},
        },
    }
    return Fixture(
        name="verdier_fail",
        description="square-root twisted surface: bounded-ratio condition fails",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("normal of the surface is (-t/(2 sqrt x), -sqrt x, 1); the "
               "axis-tangent deviation is sqrt(x)/|n| while |x - y| can be "
               "of order x, so the ratio grows like x^(-1/2) ~ r^(-1/2)",
               "the secant defect has a positive limit along t = sqrt(x) "
               "paired with axis points at the same t, but such witnesses "
               "need |x - y| ~ r^2, below shell-sampling resolution, so the "
               "sampled defect check stays inconclusive",))


def fixture_verdier_linear() -> Fixture:
    """Linear perturbation of the square-root twist: the ratio stays bounded."""
    scenario = {
        "version": 1,
        "name": "verdier_linear",
        "description": "linearly twisted surface over its axis: ratio bounded",
        "ambient_dim": 3,
        "strata": [
            {"name": "lam", "variables": ["x", "t"],
             "domain": [[0.0, 1.0], [-1.0, 1.0]],
             "chart": ["x", "t", "t * x"]},
            {"name": "gamma", "variables": ["v"], "domain": [[-1.0, 1.0]],
             "chart": ["0", "v", "0"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [],
        "checks": [
            {"condition": "verdier", "gamma": "gamma", "lam": "lam",
             "label": "verdier:axis->surface",
             "schedule": {"base_point": [0.0, 0.0, 0.0], "r0": 0.2, "rho": 0.5,
                          "shells": 9, "samples": 48, "seed": 7701}},
        ],
        "expected": {
            "verdier:axis->surface": {"verdict": "holds", "provenance": "TRIVIAL"},
        },
    }
    return Fixture(
        name="verdier_linear",
        description="linearly twisted surface: bounded-ratio condition holds",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("tangent planes converge linearly: deviation <= C |x - y|",))


def fixture_secant_twist() -> Fixture:
    """Curve with oscillating tangent: secant defects never die out.

    The curve y = x sin(3 log x) accumulates on the origin while its tangent
    direction keeps swinging away from the secant direction: the secant
    slope is sin(3 log x) but the tangent slope is sin(3 log x) +
    3 cos(3 log x).  Every shell spans a log-range of 3 ln 2 > 2, wide
    enough to contain slopes with |cos| bounded below, so the defect
    supremum stays above a fixed floor and the vanishing-defect condition
    fails at the origin.
    """
    scenario = {
        "version": 1,
        "name": "secant_twist",
        "description": "log-oscillating curve: secant defect bounded below",
        "ambient_dim": 2,
        "strata": [
            {"name": "lam", "variables": ["u"],
             "domain": [[0.0, 1.0]],
             "chart": ["u", "u * sin(3 * log(u))"]},
            {"name": "gamma", "variables": [], "domain": [],
             "chart": ["0", "0"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [],
        "checks": [
            {"condition": "whitney_b", "gamma": "gamma", "lam": "lam",
             "label": "whitney_b:origin->curve",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 40, "seed": 8001}},
            {"condition": "verdier", "gamma": "gamma", "lam": "lam",
             "label": "verdier:origin->curve",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 40, "seed": 8002}},
        ],
        "expected": {
            "whitney_b:origin->curve": {"verdict": "fails", "provenance": "DERIVED"},
            "verdier:origin->curve": {"verdict": "holds", "provenance": "TRIVIAL"},
        },
    }
    return Fixture(
        name="secant_twist",
        description="oscillating-tangent curve refutes the vanishing-defect "
                    "condition",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("secant slope sin(3 log x) vs tangent slope sin(3 log x) + "
               "3 cos(3 log x): the angle between them has a positive "
               "limsup, confirmed by a dense log-grid oracle",
               "the tangent-deviation check holds trivially: the frontier "
               "stratum is a point, whose zero tangent deviates from "
               "nothing; no contradiction with the defect failing, since "
               "the oscillating curve is not definable in any o-minimal "
               "structure",))


def fixture_linear_map() -> Fixture:
    """Linear map over a half plane and its boundary: everything holds exactly."""
    scenario = {
        "version": 1,
        "name": "linear_map",
        "description": "linear map on a half plane: all conditions hold",
        "ambient_dim": 2,
        "strata": [
            {"name": "lam", "variables": ["u", "v"],
             "domain": [[0.0, 1.0], [-1.0, 1.0]],
             "chart": ["u", "v"]},
            {"name": "gamma", "variables": ["v"], "domain": [[-1.0, 1.0]],
             "chart": ["0", "v"]},
        ],
        "frontier": [["gamma", "lam"]],
        "maps": [
            {"name": "f", "target_dim": 2,
             "components": {"lam": ["2*u + v", "u - v"],
                            "gamma": ["v", "0 - v"]}},
        ],
        "checks": [
            {"condition": "wl", "map": "f", "gamma": "gamma", "lam": "lam",
             "label": "wl:boundary->halfplane",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 40, "seed": 7901}},
            {"condition": "verdier", "gamma": "gamma", "lam": "lam",
             "label": "verdier:boundary->halfplane",
             "schedule": {"base_point": [0.0, 0.0], "r0": 0.25, "rho": 0.5,
                          "shells": 7, "samples": 40, "seed": 7902}},
        ],
        "expected": {
            "wl:boundary->halfplane": {"verdict": "holds", "provenance": "TRIVIAL"},
            "verdier:boundary->halfplane": {"verdict": "holds", "provenance": "TRIVIAL"},
        },
    }
    return Fixture(
        name="linear_map",
        description="linear map fixture for projection-property suites",
        scenario=scenario,
        expected=scenario["expected"])


def fixture_lifting() -> Fixture:
    """Cylinder-over-submanifold configuration for the transversal suite.

    Inside R^4 = (u, v, s, w): the graph of f(u, v, s) = u*v over the open
    half-space u > 0 and over its boundary u = 0, intersected with the
    cylinder M x R over the tilted half plane M = {(u, v, 0.4 u): u > 0}
    and its boundary line N.  The intersections (supplied as charts, with
    parameter embeddings into each parent stratum) are the graph of f
    restricted to M and to N.
    """
    scenario = {
        "version": 1,
        "name": "lifting",
        "description": "graph of u*v intersected with a cylinder over a "
                       "tilted half plane",
        "ambient_dim": 4,
        "strata": [
            {"name": "lam1", "variables": ["u", "v", "s"],
             "domain": [[0.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]],
             "chart": ["u", "v", "s", "u * v"]},
            {"name": "gam1", "variables": ["v", "s"],
             "domain": [[-1.0, 1.0], [-1.0, 1.0]],
             "chart": ["0", "v", "s", "0"]},
            {"name": "lam2", "variables": ["u", "v", "w"],
             "domain": [[0.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]],
             "chart": ["u", "v", "0.4 * u", "w"]},
            {"name": "gam2", "variables": ["v", "w"],
             "domain": [[-1.0, 1.0], [-1.0, 1.0]],
             "chart": ["0", "v", "0", "w"]},
            {"name": "lam12", "variables": ["u", "v"],
             "domain": [[0.0, 1.0], [-1.0, 1.0]],
             "chart": ["u", "v", "0.4 * u", "u * v"]},
            {"name": "gam12", "variables": ["v"],
             "domain": [[-1.0, 1.0]],
             "chart": ["0", "v", "0", "0"]},
        ],
        "frontier": [["gam1", "lam1"], ["gam2", "lam2"], ["gam12", "lam12"]],
        "maps": [],
        "checks": [
            {"condition": "whitney_b", "gamma": "gam12", "lam": "lam12",
             "label": "whitney_b:intersection",
             "schedule": {"base_point": [0.0, 0.0, 0.0, 0.0], "r0": 0.25,
                          "rho": 0.5, "shells": 6, "samples": 24,
                          "seed": 7801}},
        ],
        "expected": {
            "whitney_b:intersection": {"verdict": "holds", "provenance": "DERIVED"},
        },
    }
    extras = {
        "pairs": {"pair1": ["lam1", "gam1"], "pair2": ["lam2", "gam2"],
                  "inter": ["lam12", "gam12"]},
        "embeddings": {
            ("lam12", "lam1"): ["u", "v", "0.4 * u"],
            ("lam12", "lam2"): ["u", "v", "u * v"],
            ("gam12", "gam1"): ["v", "0"],
            ("gam12", "gam2"): ["v", "0"],
        },
    }
    return Fixture(
        name="lifting",
        description="transversal-intersection fixture with cylinder strata",
        scenario=scenario,
        expected=scenario["expected"],
        notes=("tangent intersections stay 2-dimensional along the samples; "
               "the vertical fiber keeps the transversality angle near 1",),
        extras=extras)


FIXTURES = {
    "cusp_sqrt": fixture_cusp_sqrt,
    "flat_c1": fixture_flat_c1,
    "wl_fail": fixture_wl_fail,
    "collapse": fixture_collapse,
    "half_plane": fixture_half_plane,
    "secant_twist": fixture_secant_twist,
    "verdier_fail": fixture_verdier_fail,
    "verdier_linear": fixture_verdier_linear,
    "linear_map": fixture_linear_map,
    "lifting": fixture_lifting,
}


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(
            f"unknown fixture {name!r}; available: {sorted(FIXTURES)}") from None


def lifting_suite_inputs(fix: Fixture | None = None):
    """Materialized strata, embeddings and schedule for the lifting fixture."""
    from . import exprlang

    fix = fix or fixture_lifting()
    scn = fix.build()
    strat = scn.stratification
    embeddings = {}
    for (child, parent), srcs in fix.extras["embeddings"].items():
        child_vars = strat[child].variables
        embeddings[(child, parent)] = tuple(
            exprlang.parse(src, child_vars) for src in srcs)
    pairs = fix.extras["pairs"]
    sched = scn.checks[0].schedule
    return {
        "pair1": (strat[pairs["pair1"][0]], strat[pairs["pair1"][1]]),
        "pair2": (strat[pairs["pair2"][0]], strat[pairs["pair2"][1]]),
        "inter": (strat[pairs["inter"][0]], strat[pairs["inter"][1]]),
        "embeddings": embeddings,
        "schedule": sched,
    }
