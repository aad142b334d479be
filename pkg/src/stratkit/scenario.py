"""Scenario documents: ingestion, validation and check orchestration.

A scenario is one YAML document (human-writable, comment-friendly) declaring
variables, strata, frontier pairs, maps and the regularity checks to run::

    version: 1
    name: half_plane
    ambient_dim: 2
    strata:
      - name: lam
        variables: [s, t]
        domain: [[-1.0, 1.0], [0.0, 1.0]]   # open intervals
        chart: ["s", "t"]
      - name: gamma
        variables: [v]
        domain: [[-1.0, 1.0]]
        chart: ["v", "0"]
    frontier:
      - [gamma, lam]          # gamma lies in the closure of lam
    maps:
      - name: f
        target_dim: 1
        components:
          lam: ["t"]
          gamma: ["0"]
    checks:
      - condition: wl          # wl | wbl | whitney_b | verdier
        map: f                 # required for wl / wbl
        gamma: gamma
        lam: lam
        schedule: {base_point: [0.0, 0.0], r0: 0.25, rho: 0.5,
                   shells: 7, samples: 40, seed: 1234}
        thresholds: {}         # optional overrides of the published defaults
    expected: {}               # free-form fixture metadata; ignored here

Validation failures raise :class:`IngestError` carrying path-to-field
diagnostics; expression problems keep their byte offsets.  Reports are
deterministic: identical (scenario, seed, thresholds, tool version) produce
byte-identical report files.  Wall-clock timing is therefore never written
into the report; the CLI prints it to stderr instead.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass

import yaml

from . import __version__
from .exprlang import ExprSyntaxError
from .regularity import (
    RegularityVerdict,
    Thresholds,
    verdier_stats,
    verdier_verdict,
    wbl_verdict,
    whitney_b_stats,
    whitney_b_verdict,
    wl_ratio_stats,
    wl_verdict,
)
from .strata import SampleSchedule, Stratification, StratifiedMap, Stratum

CONDITIONS = ("wl", "wbl", "whitney_b", "verdier")
_MAP_CONDITIONS = ("wl", "wbl")

_SCHEDULE_KEYS = {"base_point", "r0", "rho", "shells", "samples", "seed",
                  "attempt_factor"}
_THRESHOLD_KEYS = {f.name for f in dataclasses.fields(Thresholds)}


class IngestError(ValueError):
    """Scenario rejected; ``problems`` lists path-to-field diagnostics."""

    def __init__(self, problems: list[str]):
        super().__init__("invalid scenario:\n" + "\n".join(f"  - {p}" for p in problems))
        self.problems = tuple(problems)


@dataclass(frozen=True)
class CheckSpec:
    label: str
    condition: str
    gamma: str
    lam: str
    map_name: str | None
    schedule: SampleSchedule
    thresholds: Thresholds


@dataclass(frozen=True)
class Scenario:
    name: str
    version: int
    stratification: Stratification
    maps: dict[str, StratifiedMap]
    checks: tuple[CheckSpec, ...]
    document: dict


class _Validator:
    def __init__(self):
        self.problems: list[str] = []

    def fail(self, path: str, message: str):
        self.problems.append(f"{path}: {message}")

    def require(self, cond: bool, path: str, message: str) -> bool:
        if not cond:
            self.fail(path, message)
        return cond

    def finish(self):
        if self.problems:
            raise IngestError(self.problems)


def _as_float_list(value, path: str, v: _Validator) -> tuple[float, ...] | None:
    if not isinstance(value, (list, tuple)):
        v.fail(path, f"expected a list of numbers, got {type(value).__name__}")
        return None
    try:
        return tuple(float(x) for x in value)
    except (TypeError, ValueError):
        v.fail(path, "entries must be numbers")
        return None


def build_scenario(doc: dict, name_hint: str = "scenario") -> Scenario:
    """Validate a parsed scenario document and materialize its objects."""
    v = _Validator()
    if not isinstance(doc, dict):
        v.fail("$", f"scenario must be a mapping, got {type(doc).__name__}")
        v.finish()
    version = doc.get("version")
    v.require(version == 1, "version", f"expected 1, got {version!r}")
    name = doc.get("name", name_hint)
    ambient = doc.get("ambient_dim")
    v.require(isinstance(ambient, int) and ambient >= 1,
              "ambient_dim", f"expected a positive integer, got {ambient!r}")

    strata: list[Stratum] = []
    entries = doc.get("strata")
    if not v.require(isinstance(entries, list) and entries,
                     "strata", "expected a non-empty list"):
        v.finish()
    for i, entry in enumerate(entries):
        path = f"strata[{i}]"
        if not isinstance(entry, dict):
            v.fail(path, "expected a mapping")
            continue
        sname = entry.get("name")
        if not v.require(isinstance(sname, str) and sname, f"{path}.name",
                         "expected a non-empty string"):
            continue
        variables = entry.get("variables", [])
        if not v.require(isinstance(variables, list) and
                         all(isinstance(x, str) for x in variables),
                         f"{path}.variables", "expected a list of names"):
            continue
        domain_raw = entry.get("domain", [])
        domain = []
        ok = True
        for j, iv in enumerate(domain_raw):
            pair = _as_float_list(iv, f"{path}.domain[{j}]", v)
            if pair is None or len(pair) != 2:
                v.fail(f"{path}.domain[{j}]", "expected [lo, hi]")
                ok = False
            else:
                domain.append(pair)
        chart_src = entry.get("chart")
        if not v.require(isinstance(chart_src, list) and chart_src and
                         all(isinstance(c, str) for c in chart_src),
                         f"{path}.chart", "expected a non-empty list of expressions"):
            continue
        if isinstance(ambient, int) and len(chart_src) != ambient:
            v.fail(f"{path}.chart",
                   f"{len(chart_src)} components, ambient_dim is {ambient}")
            continue
        if not ok:
            continue
        try:
            strata.append(Stratum.from_sources(sname, variables, domain, chart_src))
        except (ExprSyntaxError, ValueError) as exc:
            v.fail(path, str(exc))

    names = {s.name for s in strata}
    frontier = []
    for i, pair in enumerate(doc.get("frontier", []) or []):
        path = f"frontier[{i}]"
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)):
            v.fail(path, "expected [gamma_name, lam_name]")
            continue
        if pair[0] not in names or pair[1] not in names:
            v.fail(path, f"unknown stratum in pair {list(pair)!r}")
            continue
        frontier.append((pair[0], pair[1]))

    stratification = None
    if not v.problems:
        try:
            stratification = Stratification(strata=tuple(strata),
                                            frontier=tuple(frontier))
        except ValueError as exc:
            v.fail("strata", str(exc))
    if stratification is None:
        v.finish()

    maps: dict[str, StratifiedMap] = {}
    for i, entry in enumerate(doc.get("maps", []) or []):
        path = f"maps[{i}]"
        if not isinstance(entry, dict):
            v.fail(path, "expected a mapping")
            continue
        mname = entry.get("name")
        if not v.require(isinstance(mname, str) and mname, f"{path}.name",
                         "expected a non-empty string"):
            continue
        target = entry.get("target_dim")
        if not v.require(isinstance(target, int) and target >= 1,
                         f"{path}.target_dim", "expected a positive integer"):
            continue
        comps = entry.get("components")
        if not v.require(isinstance(comps, dict), f"{path}.components",
                         "expected a mapping stratum -> expression list"):
            continue
        bad = False
        for sname, srcs in comps.items():
            cpath = f"{path}.components.{sname}"
            if sname not in names:
                v.fail(cpath, "unknown stratum")
                bad = True
            elif (not isinstance(srcs, list)
                  or not all(isinstance(s, str) for s in srcs)):
                v.fail(cpath, "expected a list of expressions")
                bad = True
            elif len(srcs) != target:
                v.fail(cpath, f"{len(srcs)} components, target_dim is {target}")
                bad = True
        if bad:
            continue
        try:
            maps[mname] = StratifiedMap.from_sources(stratification, target, comps)
        except (ExprSyntaxError, ValueError) as exc:
            v.fail(path, str(exc))

    checks: list[CheckSpec] = []
    declared = set(stratification.frontier)
    for i, entry in enumerate(doc.get("checks", []) or []):
        path = f"checks[{i}]"
        if not isinstance(entry, dict):
            v.fail(path, "expected a mapping")
            continue
        cond = entry.get("condition")
        if not v.require(cond in CONDITIONS, f"{path}.condition",
                         f"expected one of {list(CONDITIONS)}, got {cond!r}"):
            continue
        gamma = entry.get("gamma")
        lam = entry.get("lam")
        if not v.require(gamma in names, f"{path}.gamma",
                         f"unknown stratum {gamma!r}"):
            continue
        if not v.require(lam in names, f"{path}.lam", f"unknown stratum {lam!r}"):
            continue
        if (gamma, lam) not in declared:
            v.fail(path, f"({gamma}, {lam}) is not a declared frontier pair")
            continue
        map_name = entry.get("map")
        if cond in _MAP_CONDITIONS:
            if not v.require(map_name in maps, f"{path}.map",
                             f"condition {cond!r} needs a declared map, got "
                             f"{map_name!r}"):
                continue
        sched_raw = entry.get("schedule")
        if not v.require(isinstance(sched_raw, dict), f"{path}.schedule",
                         "expected a mapping"):
            continue
        unknown = set(sched_raw) - _SCHEDULE_KEYS
        if unknown:
            v.fail(f"{path}.schedule", f"unknown keys {sorted(unknown)}")
            continue
        base = _as_float_list(sched_raw.get("base_point"),
                              f"{path}.schedule.base_point", v)
        if base is None:
            continue
        if len(base) != ambient:
            v.fail(f"{path}.schedule.base_point",
                   f"{len(base)} coordinates, ambient_dim is {ambient}")
            continue
        try:
            sched = SampleSchedule(base_point=base,
                                   **{k: sched_raw[k] for k in sched_raw
                                      if k != "base_point"})
        except (TypeError, ValueError) as exc:
            v.fail(f"{path}.schedule", str(exc))
            continue
        thr_raw = entry.get("thresholds", {}) or {}
        unknown = set(thr_raw) - _THRESHOLD_KEYS
        if unknown:
            v.fail(f"{path}.thresholds", f"unknown keys {sorted(unknown)}")
            continue
        try:
            thresholds = Thresholds(**thr_raw)
        except TypeError as exc:
            v.fail(f"{path}.thresholds", str(exc))
            continue
        label = entry.get("label") or f"{cond}:{gamma}->{lam}"
        checks.append(CheckSpec(label=label, condition=cond, gamma=gamma,
                                lam=lam, map_name=map_name if cond in
                                _MAP_CONDITIONS else None,
                                schedule=sched, thresholds=thresholds))

    v.finish()
    return Scenario(name=name, version=version, stratification=stratification,
                    maps=maps, checks=tuple(checks), document=doc)


def load_scenario(path: str) -> tuple[Scenario, bytes]:
    """Read, parse and validate a scenario file; returns (scenario, raw bytes)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        doc = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        raise IngestError([f"$: not valid YAML: {exc}"]) from None
    scn = build_scenario(doc, name_hint=str(path))
    return scn, raw


def apply_overrides(scn: Scenario, schedule_overrides: dict,
                    threshold_overrides: dict) -> Scenario:
    """Return a scenario with flag overrides folded into every check."""
    if not schedule_overrides and not threshold_overrides:
        return scn
    checks = []
    for c in scn.checks:
        sched = c.schedule.with_overrides(**schedule_overrides)
        thr = dataclasses.replace(c.thresholds, **threshold_overrides)
        checks.append(dataclasses.replace(c, schedule=sched, thresholds=thr))
    return dataclasses.replace(scn, checks=tuple(checks))


def run_check(scn: Scenario, check: CheckSpec) -> RegularityVerdict:
    """Run one declared check and return its verdict."""
    strat = scn.stratification
    gam = strat[check.gamma]
    lam = strat[check.lam]
    if check.condition == "wl":
        F = scn.maps[check.map_name]
        stats = wl_ratio_stats(F, check.gamma, check.lam, check.schedule,
                               check.thresholds)
        return wl_verdict(stats, check.thresholds, gamma=check.gamma,
                          lam=check.lam, base_point=check.schedule.base_point)
    if check.condition == "wbl":
        F = scn.maps[check.map_name]
        return wbl_verdict(F, check.gamma, check.lam, check.schedule,
                           check.thresholds)
    if check.condition == "whitney_b":
        stats = whitney_b_stats(lam, gam, check.schedule, check.thresholds)
        return whitney_b_verdict(stats, check.thresholds, gamma=check.gamma,
                                 lam=check.lam,
                                 base_point=check.schedule.base_point)
    stats = verdier_stats(lam, gam, check.schedule, check.thresholds)
    return verdier_verdict(stats, check.thresholds, gamma=check.gamma,
                           lam=check.lam, base_point=check.schedule.base_point)


def run_scenario(scn: Scenario) -> list[tuple[CheckSpec, RegularityVerdict | None, str | None]]:
    """Run all checks in declaration order.

    Returns (check, verdict, error) triples; a check that raised is reported
    with verdict None and the error message, never dropped.
    """
    results = []
    for check in scn.checks:
        try:
            results.append((check, run_check(scn, check), None))
        except Exception as exc:  # surfaced in the report, counts as failing
            results.append((check, None, f"{type(exc).__name__}: {exc}"))
    return results


def _shell_doc(stat) -> dict:
    return {
        "radius": stat.radius,
        "pair_count": stat.pair_count,
        "sup": stat.sup_value,
        "inf": stat.inf_value,
        "skipped": stat.skipped,
        "argmax": [list(stat.argmax[0]), list(stat.argmax[1])]
        if stat.argmax is not None else None,
    }


def report_document(scn: Scenario, raw: bytes, results,
                    seed_override: int | None = None) -> dict:
    """Assemble the machine-readable report for a scenario run."""
    checks = []
    for check, verdict, error in results:
        entry = {
            "label": check.label,
            "condition": check.condition,
            "gamma": check.gamma,
            "lam": check.lam,
            "map": check.map_name,
            "schedule": {
                "base_point": list(check.schedule.base_point),
                "r0": check.schedule.r0,
                "rho": check.schedule.rho,
                "shells": check.schedule.shells,
                "samples": check.schedule.samples,
                "seed": check.schedule.seed,
            },
            "thresholds": dataclasses.asdict(check.thresholds),
        }
        if error is not None:
            entry["verdict"] = "error"
            entry["error"] = error
        else:
            entry["verdict"] = verdict.verdict
            entry["fitted_trend"] = verdict.fitted_trend
            entry["notes"] = list(verdict.notes)
            entry["witness"] = ([list(verdict.witness[0]), list(verdict.witness[1])]
                                if verdict.witness is not None else None)
            entry["shells"] = [_shell_doc(s) for s in verdict.shells]
        checks.append(entry)
    return {
        "tool": "stratkit",
        "tool_version": __version__,
        "scenario_name": scn.name,
        "scenario_sha256": hashlib.sha256(raw).hexdigest(),
        "seed_override": seed_override,
        "checks": checks,
    }


def render_report(doc: dict) -> str:
    """Deterministic JSON rendering of a report document."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
