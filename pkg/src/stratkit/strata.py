"""Stratified sets given by closed-form charts.

A :class:`Stratum` is one connected submanifold presented as a chart: an
open parameter box mapped into R^n by expressions.  A
:class:`Stratification` is a finite set of strata together with declared
frontier relations (gamma, lam) meaning gamma lies in the closure of lam but
not in lam itself.  A :class:`StratifiedMap` attaches, to every stratum, the
target components of one continuous map written in that stratum's
parameters.

Strata are charts rather than point clouds because the regularity conditions
checked downstream involve exact tangent spaces; those come from dual-number
Jacobians of the chart expressions.  Connectedness and injectivity of charts
are user assertions; frontier relations are declared and then sample-checked
(:func:`frontier_check`), never inferred.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import exprlang
from .exprlang import Expr
from .subspaces import Subspace

#: Smallest singular value of a chart Jacobian before the chart is declared
#: rank-deficient at that parameter.
DEFAULT_RANK_TOL = 1e-8

#: Rejection-sampling attempt budget per requested sample.
DEFAULT_ATTEMPT_FACTOR = 10_000

_BATCH = 256  # candidate draws per rng call; fixed so sample sets nest across N


class RankDeficiencyError(ValueError):
    """A chart Jacobian dropped rank: the chart is not an immersion there."""


class UnreachableBasePointError(ValueError):
    """The base point is farther from the stratum than the outer shell radius."""


@dataclass(frozen=True)
class Stratum:
    """One chart: parameter box (open intervals) plus coordinate expressions."""

    name: str
    variables: tuple[str, ...]
    domain: tuple[tuple[float, float], ...]
    chart: tuple[Expr, ...]
    chart_src: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.domain) != len(self.variables):
            raise ValueError(
                f"stratum {self.name!r}: {len(self.variables)} variables but "
                f"{len(self.domain)} domain intervals")
        for lo, hi in self.domain:
            if not (lo < hi):
                raise ValueError(
                    f"stratum {self.name!r}: empty interval ({lo}, {hi})")
        if not self.chart:
            raise ValueError(f"stratum {self.name!r}: chart needs >= 1 component")

    @classmethod
    def from_sources(cls, name: str, variables: Sequence[str],
                     domain: Sequence[Sequence[float]],
                     chart_src: Sequence[str]) -> "Stratum":
        variables = tuple(variables)
        chart = tuple(exprlang.parse(src, variables) for src in chart_src)
        return cls(name=name, variables=variables,
                   domain=tuple((float(lo), float(hi)) for lo, hi in domain),
                   chart=chart, chart_src=tuple(chart_src))

    @property
    def param_dim(self) -> int:
        return len(self.variables)

    @property
    def ambient_dim(self) -> int:
        return len(self.chart)

    def contains_param(self, p: Sequence[float]) -> bool:
        return all(lo < x < hi for x, (lo, hi) in zip(p, self.domain))

    def chart_point(self, p: Sequence[float]) -> np.ndarray:
        """Ambient coordinates of the parameter point p."""
        return np.array([exprlang.eval_expr(c, p) for c in self.chart])

    def jacobian(self, p: Sequence[float]) -> np.ndarray:
        _, J, _ = exprlang.jacobian(self.chart, p)
        return J

    def param_grid(self, per_axis: int | None = None,
                   budget: int = 400) -> np.ndarray:
        """Deterministic grid of interior parameter points, shape (m, d)."""
        d = self.param_dim
        if d == 0:
            return np.zeros((1, 0))
        if per_axis is None:
            per_axis = max(3, int(round(budget ** (1.0 / d))))
        axes = [lo + (np.arange(per_axis) + 0.5) * (hi - lo) / per_axis
                for lo, hi in self.domain]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([m.ravel() for m in mesh])


def tangent_at(s: Stratum, p: Sequence[float],
               rank_tol: float = DEFAULT_RANK_TOL) -> Subspace:
    """Tangent space at chart(p): the column span of the chart Jacobian.

    Raises :class:`RankDeficiencyError` when the Jacobian's smallest
    singular value is <= ``rank_tol``, which signals a bad chart.
    """
    if s.param_dim == 0:
        return Subspace.zero(s.ambient_dim)
    J = s.jacobian(p)
    U, sig, _ = np.linalg.svd(J, full_matrices=False)
    if sig[-1] <= rank_tol:
        raise RankDeficiencyError(
            f"stratum {s.name!r}: chart Jacobian at {list(p)} has smallest "
            f"singular value {sig[-1]:.3g} <= {rank_tol:g}")
    return Subspace._wrap(U[:, :s.param_dim])


@dataclass(frozen=True)
class Stratification:
    """Finite family of disjoint strata with declared frontier pairs.

    A frontier pair (gamma, lam) declares gamma subset cl(lam) \\ lam and
    requires dim gamma < dim lam; that dimension drop also makes the
    declared relation automatically acyclic.
    """

    strata: tuple[Stratum, ...]
    frontier: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        names = [s.name for s in self.strata]
        if len(set(names)) != len(names):
            raise ValueError("stratum names must be unique")
        dims = {s.name: s.param_dim for s in self.strata}
        ambient = {s.ambient_dim for s in self.strata}
        if len(ambient) > 1:
            raise ValueError(f"strata live in different ambient spaces: {sorted(ambient)}")
        for gamma, lam in self.frontier:
            if gamma not in dims or lam not in dims:
                raise ValueError(f"frontier pair ({gamma!r}, {lam!r}) names unknown strata")
            if dims[gamma] >= dims[lam]:
                raise ValueError(
                    f"frontier pair ({gamma!r}, {lam!r}): dim {dims[gamma]} "
                    f">= dim {dims[lam]}, but the frontier stratum must have "
                    "strictly smaller dimension")

    @property
    def ambient_dim(self) -> int:
        return self.strata[0].ambient_dim

    def __getitem__(self, name: str) -> Stratum:
        for s in self.strata:
            if s.name == name:
                return s
        raise KeyError(f"no stratum named {name!r}")

    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.strata)


@dataclass(frozen=True)
class StratifiedMap:
    """A map A -> R^m written per stratum in that stratum's parameters."""

    base: Stratification
    target_dim: int
    components: Mapping[str, tuple[Expr, ...]]
    components_src: Mapping[str, tuple[str, ...]] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for s in self.base.strata:
            comp = self.components.get(s.name)
            if comp is None:
                raise ValueError(f"map is missing components for stratum {s.name!r}")
            if len(comp) != self.target_dim:
                raise ValueError(
                    f"stratum {s.name!r}: expected {self.target_dim} map "
                    f"components, got {len(comp)}")

    @classmethod
    def from_sources(cls, base: Stratification, target_dim: int,
                     components_src: Mapping[str, Sequence[str]]) -> "StratifiedMap":
        components = {}
        for s in base.strata:
            srcs = components_src.get(s.name)
            if srcs is None:
                raise ValueError(f"map is missing components for stratum {s.name!r}")
            components[s.name] = tuple(exprlang.parse(src, s.variables) for src in srcs)
        return cls(base=base, target_dim=target_dim, components=components,
                   components_src={k: tuple(v) for k, v in components_src.items()})

    def value(self, stratum_name: str, p: Sequence[float]) -> np.ndarray:
        comp = self.components[stratum_name]
        return np.array([exprlang.eval_expr(c, p) for c in comp])


@dataclass(frozen=True)
class SampleSchedule:
    """Geometric shells around a base point, standing in for convergent sequences.

    Shell k collects up to ``samples`` stratum points at ambient distance in
    (r0 * rho^(k+1), r0 * rho^k] from ``base_point``.  Sampling is rejection
    sampling over the parameter box, deterministic for a fixed seed, with
    per-shell derived seeds so shells can be drawn concurrently.
    """

    base_point: tuple[float, ...]
    r0: float = 0.25
    rho: float = 0.5
    shells: int = 7
    samples: int = 40
    seed: int = 20240101
    attempt_factor: int = DEFAULT_ATTEMPT_FACTOR

    def __post_init__(self):
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")
        if not (0.0 < self.rho < 1.0):
            raise ValueError("rho must lie in (0, 1)")
        if self.shells < 2:
            raise ValueError("need at least 2 shells")
        if self.samples < 1:
            raise ValueError("need at least 1 sample per shell")
        object.__setattr__(self, "base_point",
                           tuple(float(x) for x in self.base_point))

    def radii(self) -> np.ndarray:
        return self.r0 * self.rho ** np.arange(self.shells)

    def with_overrides(self, **kw) -> "SampleSchedule":
        data = {f: getattr(self, f) for f in
                ("base_point", "r0", "rho", "shells", "samples", "seed",
                 "attempt_factor")}
        data.update({k: v for k, v in kw.items() if v is not None})
        return SampleSchedule(**data)


@dataclass(frozen=True)
class ShellSamples:
    """Points of one stratum landing in one shell (possibly fewer than asked)."""

    radius: float
    params: np.ndarray  # (m, d)
    points: np.ndarray  # (m, n)
    attempts: int

    @property
    def count(self) -> int:
        return self.points.shape[0]


def _shell_rng(seed: int, stratum_name: str, shell: int) -> np.random.Generator:
    # seed derivation depends on the stratum identity, not argument order,
    # so checkers that swap their arguments see the same sample sets
    return np.random.default_rng([seed, zlib.crc32(stratum_name.encode()), shell])


def min_grid_distance(s: Stratum, a: np.ndarray, budget: int = 400) -> float:
    """Coarse lower estimate of dist(a, image of s) via a parameter grid."""
    pts = np.array([s.chart_point(p) for p in s.param_grid(budget=budget)])
    return float(np.min(np.linalg.norm(pts - a, axis=1)))


def _grid_in_box(lows: np.ndarray, highs: np.ndarray, per_axis: int) -> np.ndarray:
    axes = [lo + (np.arange(per_axis) + 0.5) * (hi - lo) / per_axis
            for lo, hi in zip(lows, highs)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([m.ravel() for m in mesh])


def _proposal_boxes(s: Stratum, sched: SampleSchedule,
                    a: np.ndarray) -> tuple[list[tuple[np.ndarray, np.ndarray]], float]:
    """Deterministic per-shell proposal boxes for the rejection sampler.

    Refines a parameter grid shell by shell: the box for shell k is the
    (one-cell-inflated) bounding box of the grid points whose images land
    within twice the shell radius, computed inside the previous shell's
    box.  Independent of the sample count and of the RNG, so sample sets
    for growing N stay nested.  Returns the boxes and the smallest image
    distance seen on the root grid (the reachability estimate).
    """
    d = s.param_dim
    per_axis = max(4, int(round(600 ** (1.0 / d))))
    dom_lo = np.array([lo for lo, _ in s.domain])
    dom_hi = np.array([hi for _, hi in s.domain])
    lo, hi = dom_lo.copy(), dom_hi.copy()
    boxes = []
    root_min = None
    for k in range(sched.shells):
        r_out = sched.r0 * sched.rho ** k
        params = _grid_in_box(lo, hi, per_axis)
        pts = np.array([s.chart_point(p) for p in params])
        dists = np.linalg.norm(pts - a, axis=1)
        dmin = float(dists.min())
        if root_min is None:
            root_min = dmin
        thresh = max(2.0 * r_out, 1.5 * dmin)
        sel = params[dists <= thresh]
        cell = (hi - lo) / per_axis
        new_lo = np.maximum(dom_lo, sel.min(axis=0) - cell)
        new_hi = np.minimum(dom_hi, sel.max(axis=0) + cell)
        if np.all(new_hi > new_lo):
            lo, hi = new_lo, new_hi
        boxes.append((lo.copy(), hi.copy()))
    return boxes, root_min


def _reject_into_shell(s: Stratum, rng: np.random.Generator,
                       lows: np.ndarray, highs: np.ndarray,
                       a: np.ndarray, r_in: float, r_out: float,
                       want: int, cap: int):
    accepted_p: list[np.ndarray] = []
    accepted_x: list[np.ndarray] = []
    attempts = 0
    while len(accepted_p) < want and attempts < cap:
        m = min(_BATCH, cap - attempts)
        cand = rng.uniform(lows, highs, size=(m, s.param_dim))
        attempts += m
        for p in cand:
            x = np.array([exprlang.eval_expr(c, p) for c in s.chart])
            if r_in < np.linalg.norm(x - a) <= r_out:
                accepted_p.append(p)
                accepted_x.append(x)
                if len(accepted_p) >= want:
                    break
    return accepted_p, accepted_x, attempts


def sample_near(s: Stratum, sched: SampleSchedule) -> list[ShellSamples]:
    """Per-shell rejection samples of a stratum around the schedule's base point.

    Candidates are drawn uniformly from a per-shell proposal box inside the
    parameter domain (a deterministic grid refinement zooms the box toward
    the base point's preimage, see :func:`_proposal_boxes`); acceptance is
    by the true ambient annulus condition.  A shell that stays empty under
    the zoomed proposal is retried over the full domain box before being
    reported empty; empty shells are honest results, not fabricated.

    Raises :class:`UnreachableBasePointError` when even the root grid over
    the parameter box stays farther than r0 from the base point.
    """
    a = np.asarray(sched.base_point, dtype=float)
    if a.shape[0] != s.ambient_dim:
        raise ValueError(
            f"base point lives in R^{a.shape[0]}, stratum {s.name!r} in "
            f"R^{s.ambient_dim}")
    radii = sched.radii()
    if s.param_dim == 0:
        out = []
        pt = s.chart_point(())
        dist = float(np.linalg.norm(pt - a))
        if dist > sched.r0:
            raise UnreachableBasePointError(
                f"stratum {s.name!r}: its point is {dist:g} from the base "
                f"point, beyond r0 = {sched.r0:g}")
        for k in range(sched.shells):
            r_out = radii[k]
            r_in = sched.r0 * sched.rho ** (k + 1)
            hit = r_in < dist <= r_out
            out.append(ShellSamples(
                radius=float(r_out),
                params=np.zeros((1 if hit else 0, 0)),
                points=pt.reshape(1, -1) if hit else np.zeros((0, s.ambient_dim)),
                attempts=1))
        return out

    boxes, root_min = _proposal_boxes(s, sched, a)
    if root_min > sched.r0:
        raise UnreachableBasePointError(
            f"stratum {s.name!r}: no grid point within r0 = {sched.r0:g} of "
            f"base point {a.tolist()} (closest {root_min:g})")
    dom_lo = np.array([lo for lo, _ in s.domain])
    dom_hi = np.array([hi for _, hi in s.domain])
    out = []
    for k in range(sched.shells):
        r_out = radii[k]
        r_in = sched.r0 * sched.rho ** (k + 1)
        rng = _shell_rng(sched.seed, s.name, k)
        cap = sched.attempt_factor * sched.samples
        lo, hi = boxes[k]
        accepted_p, accepted_x, attempts = _reject_into_shell(
            s, rng, lo, hi, a, r_in, r_out, sched.samples, cap)
        if not accepted_p and (np.any(lo > dom_lo) or np.any(hi < dom_hi)):
            # zoomed box may have missed a disconnected preimage piece
            accepted_p, accepted_x, extra = _reject_into_shell(
                s, rng, dom_lo, dom_hi, a, r_in, r_out, sched.samples, cap)
            attempts += extra
        out.append(ShellSamples(
            radius=float(r_out),
            params=np.array(accepted_p) if accepted_p else np.zeros((0, s.param_dim)),
            points=np.array(accepted_x) if accepted_x else np.zeros((0, s.ambient_dim)),
            attempts=attempts))
    return out


def graph_stratification(F: StratifiedMap) -> Stratification:
    """Stratification of the graph of F inside R^(n+m).

    Each base stratum's chart is extended by the map components; frontier
    pairs are inherited.  Stratum names gain a ``graph_`` prefix.
    """
    strata = []
    for s in F.base.strata:
        comp = F.components[s.name]
        comp_src = F.components_src.get(s.name, tuple(exprlang.format_expr(c) for c in comp))
        strata.append(Stratum(
            name=f"graph_{s.name}",
            variables=s.variables,
            domain=s.domain,
            chart=s.chart + tuple(comp),
            chart_src=s.chart_src + tuple(comp_src)))
    frontier = tuple((f"graph_{g}", f"graph_{l}") for g, l in F.base.frontier)
    return Stratification(strata=tuple(strata), frontier=frontier)


def image_stratification(F: StratifiedMap,
                         rank_tol: float = DEFAULT_RANK_TOL,
                         grid_budget: int = 64) -> Stratification:
    """Stratification of the image: each stratum's chart becomes its map.

    Assumes F is a stratified embedding; each composed chart is spot-checked
    for immersivity on a small parameter grid, and a rank drop raises
    :class:`RankDeficiencyError` (the embedding assertion is violated).
    Stratum names gain an ``image_`` prefix.
    """
    strata = []
    for s in F.base.strata:
        comp = tuple(F.components[s.name])
        comp_src = F.components_src.get(s.name, tuple(exprlang.format_expr(c) for c in comp))
        img = Stratum(name=f"image_{s.name}", variables=s.variables,
                      domain=s.domain, chart=comp, chart_src=tuple(comp_src))
        if img.param_dim > 0:
            for p in img.param_grid(budget=grid_budget):
                _, J, _ = exprlang.jacobian(comp, p)
                sig = np.linalg.svd(J, compute_uv=False)
                if sig[-1] <= rank_tol:
                    raise RankDeficiencyError(
                        f"map restricted to {s.name!r} is not an immersion at "
                        f"parameters {p.tolist()} (smallest singular value "
                        f"{sig[-1]:.3g})")
        strata.append(img)
    frontier = tuple((f"image_{g}", f"image_{l}") for g, l in F.base.frontier)
    return Stratification(strata=tuple(strata), frontier=frontier)


def compose_with_ambient_map(F: StratifiedMap, outer_src: Sequence[str],
                             outer_vars: Sequence[str]) -> StratifiedMap:
    """Composition g o F where g is given by ambient-coordinate expressions.

    ``outer_src`` are expressions of g in ``outer_vars`` (coordinates of
    F's target); they are substituted with each stratum's map components.
    """
    if len(outer_vars) != F.target_dim:
        raise ValueError(
            f"outer map must read {F.target_dim} coordinates, got {len(outer_vars)}")
    outer = [exprlang.parse(src, outer_vars) for src in outer_src]
    components = {}
    components_src = {}
    for s in F.base.strata:
        repl = {name: F.components[s.name][i] for i, name in enumerate(outer_vars)}
        composed = tuple(exprlang.substitute(g, repl) for g in outer)
        components[s.name] = composed
        components_src[s.name] = tuple(exprlang.format_expr(c) for c in composed)
    return StratifiedMap(base=F.base, target_dim=len(outer), components=components,
                         components_src=components_src)


def pair_maps(F: StratifiedMap, G: StratifiedMap) -> StratifiedMap:
    """The map x -> (F(x), G(x)) on a shared base stratification."""
    if F.base is not G.base and F.base != G.base:
        raise ValueError("paired maps must share their base stratification")
    components = {}
    components_src = {}
    for s in F.base.strata:
        components[s.name] = tuple(F.components[s.name]) + tuple(G.components[s.name])
        components_src[s.name] = (
            tuple(F.components_src.get(s.name, ())) or
            tuple(exprlang.format_expr(c) for c in F.components[s.name])
        ) + (
            tuple(G.components_src.get(s.name, ())) or
            tuple(exprlang.format_expr(c) for c in G.components[s.name])
        )
    return StratifiedMap(base=F.base, target_dim=F.target_dim + G.target_dim,
                         components=components, components_src=components_src)


@dataclass(frozen=True)
class FrontierPairReport:
    gamma: str
    lam: str
    dim_ok: bool
    max_gap: float      # worst distance from a gamma sample to the lam cloud
    cloud_mesh: float   # max nearest-neighbor spacing inside the lam cloud
    ok: bool


@dataclass(frozen=True)
class FrontierReport:
    pairs: tuple[FrontierPairReport, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def frontier_check(X: Stratification, budget: int = 400,
                   slack: float = 2.0) -> FrontierReport:
    """Sampled verification of the declared frontier relations.

    For each declared pair (gamma, lam), gamma's grid samples must be
    approximated by lam's sample cloud to within ``slack`` times the cloud's
    own mesh, and dim gamma < dim lam must hold.  This can refute a wrong
    declaration but cannot prove a right one; it is report-only.
    """
    reports = []
    violations = []
    for gamma_name, lam_name in X.frontier:
        gamma = X[gamma_name]
        lam = X[lam_name]
        dim_ok = gamma.param_dim < lam.param_dim
        g_pts = np.array([gamma.chart_point(p) for p in gamma.param_grid(budget=budget)])
        l_pts = np.array([lam.chart_point(p) for p in lam.param_grid(budget=budget)])
        diff = g_pts[:, None, :] - l_pts[None, :, :]
        gaps = np.min(np.linalg.norm(diff, axis=2), axis=1)
        max_gap = float(np.max(gaps))
        inner = np.linalg.norm(l_pts[:, None, :] - l_pts[None, :, :], axis=2)
        np.fill_diagonal(inner, np.inf)
        cloud_mesh = float(np.max(np.min(inner, axis=1))) if len(l_pts) > 1 else np.inf
        ok = dim_ok and max_gap <= slack * cloud_mesh
        if not dim_ok:
            violations.append(
                f"({gamma_name}, {lam_name}): dim {gamma.param_dim} >= dim "
                f"{lam.param_dim}")
        elif not ok:
            violations.append(
                f"({gamma_name}, {lam_name}): gamma samples stay {max_gap:.3g} "
                f"away from lam (cloud mesh {cloud_mesh:.3g})")
        reports.append(FrontierPairReport(
            gamma=gamma_name, lam=lam_name, dim_ok=dim_ok,
            max_gap=max_gap, cloud_mesh=cloud_mesh, ok=ok))
    return FrontierReport(pairs=tuple(reports), violations=tuple(violations))
