"""Sampled checkers for stratification regularity conditions.

Each checker replaces a limit over all sequences converging to a base point
by statistics over geometric shells (see :class:`~stratkit.strata.SampleSchedule`)
and returns a three-valued verdict:

* ``holds``        -- the shell statistics are consistent with the condition;
* ``fails``        -- the statistics refute it (with a witness pair);
* ``inconclusive`` -- not enough evidence either way.

A sampler can refute a condition or support it, never prove it, so the
published thresholds (growth allowances, log-log slope cutoffs) are part of
the contract and configurable through :class:`Thresholds`.

Conditions covered:

* ``WL``       -- difference quotients |f(x)-f(y)|/|x-y| between a frontier
  stratum and its attaching stratum stay bounded near the base point;
* ``WBL``      -- the same quotients stay bounded away from zero (the
  inverse-map half of weak bi-Lipschitzness);
* ``WhitneyB`` -- the defect dist(secant, tangent of the attaching stratum)
  vanishes in the limit;
* ``Verdier``  -- dist_d(tangent of frontier, tangent of attaching stratum)
  is O(|x - y|), tested through the ratio's shell suprema.

Pairs are always formed shell-by-shell (x and y from the same shell index),
which matches sequences converging at comparable rates and keeps
|x - y| <~ 2 r_k.  Degenerate pairs (|x - y| < 1e-14) are excluded and
counted; a high exclusion rate is flagged in the verdict notes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import exprlang
from .grassmann import (
    dist_D,
    dist_d,
    dist_vec,
    intersect,
    lambda_angle,
    vertical_subspace,
)
from .strata import (
    SampleSchedule,
    ShellSamples,
    StratifiedMap,
    Stratum,
    graph_stratification,
    sample_near,
    tangent_at,
)

_BASE_POINT_TOL = 1e-12


class IntersectionDimensionError(ValueError):
    """Sampled tangent intersections changed dimension along the way."""


@dataclass(frozen=True)
class Thresholds:
    """Published decision thresholds for the three-valued verdicts."""

    eps_growth: float = 0.25      # bounded-sup allowance: last-half vs first-half max
    slope_flat: float = 0.25      # |log-log slope| treated as flat / genuine shrinking
    slope_fail: float = 0.5       # slope magnitude that counts as blow-up / collapse
    growth_factor: float = 10.0   # final/initial ratio that corroborates a trend
    eps_b: float = 0.05           # Whitney B: final-shell defect small enough to hold
    eps_fail: float = 0.2         # Whitney B: defect floor that refutes the condition
    eps_floor: float = 0.01       # WBL: smallest admissible shell infimum
    degenerate_pair_tol: float = 1e-14
    zero_floor: float = 1e-13     # suprema below this are treated as exact zeros
    tangent_gap_floor: float = 1e-12  # tangent deviations below this are noise


@dataclass(frozen=True)
class ShellStat:
    """Extrema of one sampled quantity over the pairs of a single shell."""

    radius: float
    pair_count: int
    sup_value: float | None
    inf_value: float | None
    argmax: tuple[tuple[float, ...], tuple[float, ...]] | None
    skipped: int = 0

    @property
    def empty(self) -> bool:
        return self.pair_count == 0


@dataclass(frozen=True)
class RegularityVerdict:
    """Outcome of one sampled condition check at one base point."""

    condition: str                       # "WL" | "WBL" | "WhitneyB" | "Verdier"
    gamma: str                           # frontier stratum (x side)
    lam: str                             # attaching stratum (y side)
    base_point: tuple[float, ...]
    shells: tuple[ShellStat, ...]
    verdict: str                         # "holds" | "fails" | "inconclusive"
    fitted_trend: float | None           # log-log slope of the tracked statistic vs r
    witness: tuple[tuple[float, ...], tuple[float, ...]] | None = None
    notes: tuple[str, ...] = ()


# --- shared shell machinery --------------------------------------------------


def _x_side_shells(gam: Stratum, sched: SampleSchedule) -> list[ShellSamples]:
    """Shell samples for the frontier stratum.

    A zero-dimensional stratum sitting exactly at the base point realizes
    the constant sequence x_nu = a, so its single point is paired with every
    shell of the attaching stratum instead of being lost to the annulus
    bounds.
    """
    a = np.asarray(sched.base_point, dtype=float)
    if gam.param_dim == 0:
        pt = gam.chart_point(())
        if np.linalg.norm(pt - a) < _BASE_POINT_TOL:
            return [ShellSamples(radius=float(r), params=np.zeros((1, 0)),
                                 points=pt.reshape(1, -1), attempts=1)
                    for r in sched.radii()]
    return sample_near(gam, sched)


def _empty_stat(radius: float) -> ShellStat:
    return ShellStat(radius=radius, pair_count=0, sup_value=None,
                     inf_value=None, argmax=None, skipped=0)


def _pairwise_stat(radius: float, xs: ShellSamples, ys: ShellSamples,
                   values: np.ndarray, valid: np.ndarray) -> ShellStat:
    """Collapse a (mx, my) matrix of pair values into one ShellStat."""
    skipped = int(valid.size - valid.sum())
    if not valid.any():
        return ShellStat(radius=radius, pair_count=0, sup_value=None,
                         inf_value=None, argmax=None, skipped=skipped)
    vals = np.where(valid, values, -np.inf)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    sup = float(values[i, j])
    inf = float(np.min(np.where(valid, values, np.inf)))
    return ShellStat(
        radius=radius,
        pair_count=int(valid.sum()),
        sup_value=sup,
        inf_value=inf,
        argmax=(tuple(float(c) for c in xs.points[i]),
                tuple(float(c) for c in ys.points[j])),
        skipped=skipped)


def _fit_slope(stats: Sequence[ShellStat], use_inf: bool,
               zero_floor: float) -> float | None:
    """Log-log slope of the tracked statistic against the shell radius."""
    rs, vs = [], []
    for s in stats:
        v = s.inf_value if use_inf else s.sup_value
        if v is not None and v > zero_floor:
            rs.append(s.radius)
            vs.append(v)
    if len(rs) < 2:
        return None
    slope = np.polyfit(np.log(rs), np.log(vs), 1)[0]
    return float(slope)


def _shell_notes(stats: Sequence[ShellStat]) -> list[str]:
    notes = []
    empties = [i for i, s in enumerate(stats) if s.empty]
    if empties:
        notes.append(f"empty shells at indices {empties}")
    skipped = sum(s.skipped for s in stats)
    total = skipped + sum(s.pair_count for s in stats)
    if total and skipped > 0.1 * total:
        notes.append(
            f"high degenerate-pair exclusion rate: {skipped}/{total}")
    return notes


# --- weakly Lipschitz ---------------------------------------------------------


def wl_ratio_stats(F: StratifiedMap, gamma: str | Stratum, lam: str | Stratum,
                   sched: SampleSchedule,
                   thresholds: Thresholds = Thresholds()) -> list[ShellStat]:
    """Shell extrema of the difference quotient |f(x)-f(y)| / |x-y|.

    x runs over shell samples of the frontier stratum ``gamma``, y over the
    attaching stratum ``lam``.  The quotient is symmetric in (x, y), and the
    sampling draws per-stratum streams, so swapping the arguments yields the
    same pair set.
    """
    gam = F.base[gamma] if isinstance(gamma, str) else gamma
    lamS = F.base[lam] if isinstance(lam, str) else lam
    xs_shells = _x_side_shells(gam, sched)
    ys_shells = sample_near(lamS, sched)
    stats: list[ShellStat] = []
    for xs, ys in zip(xs_shells, ys_shells):
        if xs.count == 0 or ys.count == 0:
            stats.append(_empty_stat(xs.radius))
            continue
        fx = np.array([F.value(gam.name, p) for p in xs.params])
        fy = np.array([F.value(lamS.name, p) for p in ys.params])
        D = np.linalg.norm(xs.points[:, None, :] - ys.points[None, :, :], axis=2)
        DF = np.linalg.norm(fx[:, None, :] - fy[None, :, :], axis=2)
        valid = D >= thresholds.degenerate_pair_tol
        ratios = np.divide(DF, D, out=np.zeros_like(D), where=valid)
        stats.append(_pairwise_stat(xs.radius, xs, ys, ratios, valid))
    return stats


def _bounded_sup_split(sups: Sequence[float]) -> tuple[float, float]:
    m = len(sups)
    half = (m + 1) // 2
    return max(sups[:half]), max(sups[m // 2:])


def wl_verdict(stats: Sequence[ShellStat],
               thresholds: Thresholds = Thresholds(),
               gamma: str = "", lam: str = "",
               base_point: Sequence[float] = ()) -> RegularityVerdict:
    """Boundedness verdict for the difference-quotient shell suprema.

    holds: the suprema stay bounded (last-half max within (1 + eps_growth)
    of the first-half max) or the fitted slope shows no growth; fails: the
    suprema blow up (slope <= -slope_fail and final > growth_factor x
    initial); otherwise inconclusive.
    """
    return _sup_trend_verdict("WL", stats, thresholds, gamma, lam, base_point,
                              min_shells=2, allow_slope_hold=True)


def _sup_trend_verdict(condition: str, stats: Sequence[ShellStat],
                       thr: Thresholds, gamma: str, lam: str,
                       base_point: Sequence[float], min_shells: int,
                       allow_slope_hold: bool) -> RegularityVerdict:
    nonempty = [s for s in stats if not s.empty]
    notes = _shell_notes(stats)
    slope = _fit_slope(nonempty, use_inf=False, zero_floor=thr.zero_floor)
    common = dict(condition=condition, gamma=gamma, lam=lam,
                  base_point=tuple(float(x) for x in base_point),
                  shells=tuple(stats), fitted_trend=slope)
    if len(nonempty) < min_shells:
        notes.append(f"fewer than {min_shells} non-empty shells")
        return RegularityVerdict(verdict="inconclusive", notes=tuple(notes),
                                 witness=None, **common)
    sups = [s.sup_value for s in nonempty]
    if (slope is not None and slope <= -thr.slope_fail
            and sups[0] > 0 and sups[-1] > thr.growth_factor * sups[0]):
        return RegularityVerdict(verdict="fails", witness=nonempty[-1].argmax,
                                 notes=tuple(notes), **common)
    first_max, last_max = _bounded_sup_split(sups)
    if last_max <= (1.0 + thr.eps_growth) * first_max:
        return RegularityVerdict(verdict="holds", witness=None,
                                 notes=tuple(notes), **common)
    if allow_slope_hold and slope is not None and slope >= -thr.slope_flat:
        return RegularityVerdict(verdict="holds", witness=None,
                                 notes=tuple(notes), **common)
    return RegularityVerdict(verdict="inconclusive", witness=None,
                             notes=tuple(notes), **common)


def wbl_verdict(F: StratifiedMap, gamma: str | Stratum, lam: str | Stratum,
                sched: SampleSchedule,
                thresholds: Thresholds = Thresholds()) -> RegularityVerdict:
    """Positive-liminf verdict for the difference quotients.

    Runs the same ratio statistics as :func:`wl_ratio_stats` but judges the
    shell infima: holds when they stay above ``eps_floor`` with no collapse
    trend; fails when they shrink with slope >= slope_fail down to less than
    initial / growth_factor.  Together with a holding WL verdict on the
    forward map this realizes weak bi-Lipschitzness at sample scale.
    """
    gam = F.base[gamma] if isinstance(gamma, str) else gamma
    lamS = F.base[lam] if isinstance(lam, str) else lam
    stats = wl_ratio_stats(F, gam, lamS, sched, thresholds)
    nonempty = [s for s in stats if not s.empty]
    notes = _shell_notes(stats)
    slope = _fit_slope(nonempty, use_inf=True, zero_floor=thresholds.zero_floor)
    common = dict(condition="WBL", gamma=gam.name, lam=lamS.name,
                  base_point=tuple(float(x) for x in sched.base_point),
                  shells=tuple(stats), fitted_trend=slope)
    if len(nonempty) < 2:
        notes.append("fewer than 2 non-empty shells")
        return RegularityVerdict(verdict="inconclusive", notes=tuple(notes),
                                 witness=None, **common)
    infs = [s.inf_value for s in nonempty]
    collapsing = (slope is not None and slope >= thresholds.slope_fail
                  and infs[-1] <= infs[0] / thresholds.growth_factor)
    if collapsing:
        return RegularityVerdict(verdict="fails", witness=nonempty[-1].argmax,
                                 notes=tuple(notes), **common)
    if min(infs) >= thresholds.eps_floor and not (
            slope is not None and slope >= thresholds.slope_fail):
        return RegularityVerdict(verdict="holds", witness=None,
                                 notes=tuple(notes), **common)
    return RegularityVerdict(verdict="inconclusive", witness=None,
                             notes=tuple(notes), **common)


# --- secant / vertical identity ----------------------------------------------


def secant_vertical_identity(x, y, base_dim: int) -> tuple[float, float, float]:
    """Exact relation between a graph secant and the vertical space.

    For points x, y of R^(n+m) split after ``base_dim`` coordinates, returns
    (d_val, ratio, residual) where d_val is the sine-distance of the unit
    secant to {0} x R^m, ratio = |Delta f| / |Delta a|, and residual is
    |d_val - 1/sqrt(1 + ratio^2)|, which is zero up to roundoff.  A vertical
    secant (Delta a = 0) returns d_val = 0 with ratio = inf.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise ValueError("secant endpoints must share their ambient space")
    n = base_dim
    m = x.shape[0] - n
    if m < 1:
        raise ValueError("need at least one vertical coordinate")
    delta = x - y
    norm = np.linalg.norm(delta)
    if norm == 0.0:
        raise ValueError("secant endpoints coincide")
    da = np.linalg.norm(delta[:n])
    df = np.linalg.norm(delta[n:])
    if da == 0.0:
        return 0.0, math.inf, 0.0
    d_val = dist_vec(delta / norm, vertical_subspace(n, m))
    ratio = df / da
    predicted = 1.0 / math.sqrt(1.0 + ratio * ratio)
    return d_val, ratio, abs(d_val - predicted)


# --- Whitney (B) --------------------------------------------------------------


def whitney_b_stats(lam: Stratum, gam: Stratum, sched: SampleSchedule,
                    thresholds: Thresholds = Thresholds()) -> list[ShellStat]:
    """Shell extrema of the secant defect dist(unit secant, T_y lam).

    The condition under test says limits of secant lines between the two
    strata end up inside limits of tangent spaces of ``lam``; equivalently
    the defect's limsup is zero, which the shell suprema estimate directly.
    """
    xs_shells = _x_side_shells(gam, sched)
    ys_shells = sample_near(lam, sched)
    stats: list[ShellStat] = []
    for xs, ys in zip(xs_shells, ys_shells):
        if xs.count == 0 or ys.count == 0:
            stats.append(_empty_stat(xs.radius))
            continue
        defects = np.zeros((xs.count, ys.count))
        valid = np.zeros((xs.count, ys.count), dtype=bool)
        for j in range(ys.count):
            B = tangent_at(lam, ys.params[j]).basis
            diffs = xs.points - ys.points[j]
            norms = np.linalg.norm(diffs, axis=1)
            ok = norms >= thresholds.degenerate_pair_tol
            secants = diffs[ok] / norms[ok, None]
            resid = secants - (secants @ B) @ B.T
            defects[ok, j] = np.clip(np.linalg.norm(resid, axis=1), 0.0, 1.0)
            valid[ok, j] = True
        stats.append(_pairwise_stat(xs.radius, xs, ys, defects, valid))
    return stats


def whitney_b_verdict(stats: Sequence[ShellStat],
                      thresholds: Thresholds = Thresholds(),
                      gamma: str = "", lam: str = "",
                      base_point: Sequence[float] = ()) -> RegularityVerdict:
    """Vanishing-defect verdict.

    holds: the final-shell defect supremum is <= eps_b and the fitted slope
    shows the defect shrinking with the radius (identically-zero defects
    also hold); fails: the defect stays >= eps_fail across the last three
    shells; otherwise inconclusive.
    """
    thr = thresholds
    nonempty = [s for s in stats if not s.empty]
    notes = _shell_notes(stats)
    slope = _fit_slope(nonempty, use_inf=False, zero_floor=thr.zero_floor)
    common = dict(condition="WhitneyB", gamma=gamma, lam=lam,
                  base_point=tuple(float(x) for x in base_point),
                  shells=tuple(stats), fitted_trend=slope)
    if len(nonempty) < 3:
        notes.append("fewer than 3 non-empty shells")
        return RegularityVerdict(verdict="inconclusive", notes=tuple(notes),
                                 witness=None, **common)
    sups = [s.sup_value for s in nonempty]
    if min(sups[-3:]) >= thr.eps_fail:
        return RegularityVerdict(verdict="fails", witness=nonempty[-1].argmax,
                                 notes=tuple(notes), **common)
    shrinking = slope is None or slope >= thr.slope_flat
    if sups[-1] <= thr.eps_b and shrinking:
        return RegularityVerdict(verdict="holds", witness=None,
                                 notes=tuple(notes), **common)
    return RegularityVerdict(verdict="inconclusive", witness=None,
                             notes=tuple(notes), **common)


# --- Verdier ------------------------------------------------------------------


def verdier_stats(lam: Stratum, gam: Stratum, sched: SampleSchedule,
                  thresholds: Thresholds = Thresholds()) -> list[ShellStat]:
    """Shell extrema of dist_d(T_x gam, T_y lam) / |x - y|.

    The condition under test bounds the one-sided tangent deviation by a
    constant times the distance of the points, so it holds exactly when
    these ratios stay bounded as the shells shrink.  The deviation is taken
    one-sidedly with the frontier stratum first; no symmetrization.
    Deviations at or below ``tangent_gap_floor`` are numerical noise (the
    tangent bases themselves are only accurate to roundoff) and enter the
    ratio as exact zeros, so that noise divided by a shrinking |x - y|
    cannot masquerade as growth.
    """
    xs_shells = _x_side_shells(gam, sched)
    ys_shells = sample_near(lam, sched)
    stats: list[ShellStat] = []
    for xs, ys in zip(xs_shells, ys_shells):
        if xs.count == 0 or ys.count == 0:
            stats.append(_empty_stat(xs.radius))
            continue
        Tx = [tangent_at(gam, p) for p in xs.params]
        Ty = [tangent_at(lam, p) for p in ys.params]
        D = np.linalg.norm(xs.points[:, None, :] - ys.points[None, :, :], axis=2)
        valid = D >= thresholds.degenerate_pair_tol
        ratios = np.zeros_like(D)
        for i in range(xs.count):
            for j in range(ys.count):
                if valid[i, j]:
                    gap = dist_d(Tx[i], Ty[j])
                    if gap <= thresholds.tangent_gap_floor:
                        gap = 0.0
                    ratios[i, j] = gap / D[i, j]
        stats.append(_pairwise_stat(xs.radius, xs, ys, ratios, valid))
    return stats


def verdier_verdict(stats: Sequence[ShellStat],
                    thresholds: Thresholds = Thresholds(),
                    gamma: str = "", lam: str = "",
                    base_point: Sequence[float] = ()) -> RegularityVerdict:
    """Bounded tangent-gap-ratio verdict.

    holds: the shell suprema stay bounded (last-half max within
    (1 + eps_growth) of the first-half max); fails: they blow up with slope
    <= -slope_fail and final >= growth_factor x initial; otherwise
    inconclusive.
    """
    verdict = _sup_trend_verdict("Verdier", stats, thresholds, gamma, lam,
                                 base_point, min_shells=3,
                                 allow_slope_hold=False)
    return verdict


# --- theorem suites -----------------------------------------------------------


_CONDITION_CHECKERS = {"whitney_b": (whitney_b_stats, whitney_b_verdict),
                       "verdier": (verdier_stats, verdier_verdict)}


@dataclass(frozen=True)
class ProjectionSuiteReport:
    """Comparison of one condition on a graph pair versus its base pair.

    When the map is weakly Lipschitz, the condition holding on the graph
    pair forces it on the base pair; a counter-report (graph holds, base
    fails) is flagged as an implementation or sampling error.
    """

    condition: str
    gamma: str
    lam: str
    wl: RegularityVerdict
    base: RegularityVerdict
    graph: RegularityVerdict
    implication_satisfied: bool
    flagged: tuple[str, ...] = ()


def theorem_suite_projection(F: StratifiedMap, gamma: str, lam: str,
                             gamma_param: Sequence[float],
                             sched: SampleSchedule,
                             condition: str = "whitney_b",
                             thresholds: Thresholds = Thresholds()) -> ProjectionSuiteReport:
    """Run one regularity condition on a base pair and on its graph pair.

    ``gamma_param`` locates the base point in the frontier stratum's chart,
    which also fixes the graph base point (a, f(a)).  The weakly Lipschitz
    check on the pair is run alongside because the projection implication
    is only claimed for weakly Lipschitz maps.
    """
    if condition not in _CONDITION_CHECKERS:
        raise ValueError(f"condition must be one of {sorted(_CONDITION_CHECKERS)}")
    stats_fn, verdict_fn = _CONDITION_CHECKERS[condition]
    gam = F.base[gamma]
    lamS = F.base[lam]
    a = np.asarray(sched.base_point, dtype=float)
    chart_a = gam.chart_point(gamma_param)
    if np.linalg.norm(chart_a - a) > 1e-9:
        raise ValueError(
            f"gamma_param maps to {chart_a.tolist()}, not the base point "
            f"{a.tolist()}")
    f_a = F.value(gamma, gamma_param)
    graph_strat = graph_stratification(F)
    graph_sched = sched.with_overrides(
        base_point=tuple(a.tolist()) + tuple(f_a.tolist()))

    wl = wl_verdict(wl_ratio_stats(F, gamma, lam, sched, thresholds),
                    thresholds, gamma=gamma, lam=lam,
                    base_point=sched.base_point)
    base_stats = stats_fn(lamS, gam, sched, thresholds)
    base = verdict_fn(base_stats, thresholds, gamma=gamma, lam=lam,
                      base_point=sched.base_point)
    graph = verdict_fn(
        stats_fn(graph_strat[f"graph_{lam}"], graph_strat[f"graph_{gamma}"],
                 graph_sched, thresholds),
        thresholds, gamma=f"graph_{gamma}", lam=f"graph_{lam}",
        base_point=graph_sched.base_point)

    flagged = []
    if wl.verdict != "holds":
        flagged.append(f"weakly Lipschitz verdict on the pair is {wl.verdict!r}")
    if graph.verdict == "holds" and base.verdict == "fails":
        flagged.append(
            "graph pair holds but base pair fails: implementation or "
            "sampling error")
    implication = not (graph.verdict == "holds" and base.verdict == "fails")
    return ProjectionSuiteReport(
        condition=condition, gamma=gamma, lam=lam, wl=wl, base=base,
        graph=graph, implication_satisfied=implication, flagged=tuple(flagged))


@dataclass(frozen=True)
class TransversalSuiteReport:
    """Quantitative transversal-intersection bound at sample scale.

    For sampled pairs (x in the intersected frontier stratum, y in the
    intersected attaching stratum), checks

        quantity(intersection pair) <= C * (quantity(pair 1) + quantity(pair 2))

    with C = 1 / inf lambda(T_y lam1, T_y lam2) over the samples, where the
    quantity is the secant defect (whitney_b) or the tangent deviation
    (verdier).  ``min_slack`` is the worst value of rhs - lhs.
    """

    condition: str
    pair_count: int
    inf_lambda: float
    constant: float
    min_slack: float
    bound_satisfied: bool
    intersection_dim: int
    max_tangent_mismatch: float   # dist_D(intersect(T1,T2), T(lam12)) over samples
    notes: tuple[str, ...] = ()


def theorem_suite_transversal(pair1: tuple[Stratum, Stratum],
                              pair2: tuple[Stratum, Stratum],
                              inter: tuple[Stratum, Stratum],
                              embeddings: dict,
                              sched: SampleSchedule,
                              condition: str = "whitney_b",
                              thresholds: Thresholds = Thresholds(),
                              angle_tol: float = 1e-8,
                              slack_tol: float = 1e-9) -> TransversalSuiteReport:
    """Check the transversal-intersection inequality on sampled pairs.

    ``pair1`` and ``pair2`` are (lam_i, gam_i) strata; ``inter`` supplies
    the intersections (lam1 n lam2, gam1 n gam2) as charts.  ``embeddings``
    maps (intersection stratum name, parent stratum name) to a tuple of
    parameter-map expressions taking intersection parameters to parent
    parameters, so tangents of all strata can be evaluated at the same
    ambient point.  Raises :class:`IntersectionDimensionError` when the
    sampled tangent intersections do not keep the intersection stratum's
    dimension.
    """
    if condition not in _CONDITION_CHECKERS:
        raise ValueError(f"condition must be one of {sorted(_CONDITION_CHECKERS)}")
    lam1, gam1 = pair1
    lam2, gam2 = pair2
    lam12, gam12 = inter

    def embed(child: Stratum, parent: Stratum, p) -> np.ndarray:
        exprs = embeddings[(child.name, parent.name)]
        return np.array([exprlang.eval_expr(e, p) for e in exprs])

    xs_shells = _x_side_shells(gam12, sched)
    ys_shells = sample_near(lam12, sched)

    inf_lambda = math.inf
    max_mismatch = 0.0
    lhs_all: list[float] = []
    rhs_all: list[float] = []
    notes: list[str] = []

    for xs, ys in zip(xs_shells, ys_shells):
        if xs.count == 0 or ys.count == 0:
            continue
        x_data = []
        for p in xs.params:
            Tg12 = tangent_at(gam12, p)
            Tg1 = tangent_at(gam1, embed(gam12, gam1, p))
            Tg2 = tangent_at(gam2, embed(gam12, gam2, p))
            x_data.append((Tg12, Tg1, Tg2))
        for j, q in enumerate(ys.params):
            T1 = tangent_at(lam1, embed(lam12, lam1, q))
            T2 = tangent_at(lam2, embed(lam12, lam2, q))
            T12 = tangent_at(lam12, q)
            J = intersect(T1, T2, tol=angle_tol)
            if J.dim != lam12.param_dim:
                raise IntersectionDimensionError(
                    f"tangent intersection at {ys.points[j].tolist()} has "
                    f"dimension {J.dim}, expected {lam12.param_dim}")
            max_mismatch = max(max_mismatch, dist_D(J, T12))
            lam_y = lambda_angle(T1, T2, tol=angle_tol)
            inf_lambda = min(inf_lambda, lam_y)
            y_pt = ys.points[j]
            for i, x_pt in enumerate(xs.points):
                diff = x_pt - y_pt
                norm = np.linalg.norm(diff)
                if norm < thresholds.degenerate_pair_tol:
                    continue
                Tg12, Tg1, Tg2 = x_data[i]
                if condition == "whitney_b":
                    u = diff / norm
                    lhs = dist_vec(u, T12)
                    rhs_sum = dist_vec(u, T1) + dist_vec(u, T2)
                else:
                    lhs = dist_d(Tg12, T12)
                    rhs_sum = dist_d(Tg1, T1) + dist_d(Tg2, T2)
                lhs_all.append(lhs)
                rhs_all.append(rhs_sum)

    if not lhs_all:
        return TransversalSuiteReport(
            condition=condition, pair_count=0, inf_lambda=math.nan,
            constant=math.nan, min_slack=math.nan, bound_satisfied=False,
            intersection_dim=lam12.param_dim, max_tangent_mismatch=max_mismatch,
            notes=("no sample pairs: shells were empty",))
    constant = 1.0 / inf_lambda if inf_lambda > 0 else math.inf
    slack = float(np.min(constant * np.asarray(rhs_all) - np.asarray(lhs_all)))
    return TransversalSuiteReport(
        condition=condition, pair_count=len(lhs_all), inf_lambda=inf_lambda,
        constant=constant, min_slack=slack,
        bound_satisfied=bool(slack >= -slack_tol and inf_lambda > 0),
        intersection_dim=lam12.param_dim, max_tangent_mismatch=max_mismatch,
        notes=tuple(notes))
