"""Bounded difference quotients on a pinched cusp: weak lipschitzianity.

The map (x, y) -> (x, sqrt(y)) on the region between y = x^2/2 and y = x^2
has an unbounded derivative at the origin, yet every difference quotient
|f(p) - f(q)| / |p - q| between the origin and the region stays below
sqrt(2), because the region pinches quadratically.  Shell statistics make
that visible: the per-shell suprema saturate just under sqrt(2) instead of
blowing up.
"""

import math

from stratkit.fixtures import fixture_cusp_sqrt, fixture_wl_fail
from stratkit.scenario import run_scenario

fix = fixture_cusp_sqrt()
print(fix.description)
print()
scn = fix.build()
for check, verdict, err in run_scenario(scn):
    print(f"check {check.label}: {verdict.verdict} "
          f"(fitted log-log trend {verdict.fitted_trend:+.3f})")
    print(f"  {'radius':>10} {'pairs':>6} {'sup ratio':>10} {'inf ratio':>10}")
    for s in verdict.shells:
        print(f"  {s.radius:>10.5f} {s.pair_count:>6} "
              f"{s.sup_value:>10.5f} {s.inf_value:>10.5f}")
print(f"sqrt(2) = {math.sqrt(2):.5f}: every supremum stays below it")

print()
print("contrast: a quarter-power blowup fails the same check")
scn = fixture_wl_fail().build()
for check, verdict, err in run_scenario(scn):
    sups = [f"{s.sup_value:.1f}" for s in verdict.shells if s.sup_value]
    print(f"check {check.label}: {verdict.verdict} "
          f"(trend {verdict.fitted_trend:+.2f}); sups {', '.join(sups)}")
    if verdict.witness:
        x, y = verdict.witness
        print(f"  witness pair: x = {[round(c, 6) for c in x]}, "
              f"y = {[round(c, 6) for c in y]}")
