"""Tangent-based regularity around a frontier stratum: two sampled checks.

* vanishing secant defect: limits of secants between the strata must land
  inside limits of tangent planes of the attaching stratum;
* bounded tangent-gap ratio: the one-sided tangent deviation must be
  O(|x - y|).

The square-root-twisted surface y = t sqrt(x) over its axis violates the
ratio bound (the deviation outruns the distance like r^(-1/2)); its linear
perturbation y = t x passes.  A curve whose tangent direction oscillates
with log x refutes the secant-defect condition outright.
"""

from stratkit.fixtures import (
    fixture_half_plane,
    fixture_secant_twist,
    fixture_verdier_fail,
    fixture_verdier_linear,
)
from stratkit.scenario import run_scenario


def show(fixture):
    print(f"-- {fixture.name}: {fixture.description}")
    for check, verdict, err in run_scenario(fixture.build()):
        trend = "" if verdict.fitted_trend is None else \
            f" (trend {verdict.fitted_trend:+.2f})"
        print(f"   {check.label}: {verdict.verdict}{trend}")
        sups = [s.sup_value for s in verdict.shells if s.sup_value is not None]
        print(f"   shell sups: {', '.join(f'{s:.3g}' for s in sups)}")
    for note in fixture.notes:
        print(f"   note: {note}")
    print()


show(fixture_half_plane())
show(fixture_verdier_fail())
show(fixture_verdier_linear())
show(fixture_secant_twist())
