"""Structure-preservation suites: projection to the base, transversal meets.

Two sampled consequences of regularity theory are checked end to end:

* projection: for a weakly Lipschitz map, a condition holding on the graph
  pair forces it on the base pair.  The suite runs one checker on both
  pairs and flags any counter-report.
* transversal intersection: the quantity of the intersected pair is bounded
  by C times the sum over the two input pairs, with C the reciprocal of the
  worst sampled transversality angle between the attaching tangents.
"""

from stratkit import SampleSchedule, theorem_suite_projection, theorem_suite_transversal
from stratkit.fixtures import fixture_cusp_sqrt, fixture_linear_map, lifting_suite_inputs

print("== projection suite: pinched cusp, secant-defect condition ==")
scn = fixture_cusp_sqrt().build()
report = theorem_suite_projection(
    scn.maps["f"], "gamma2", "lam", [],
    SampleSchedule(base_point=(0.0, 0.0), r0=0.25, rho=0.5, shells=7,
                   samples=40, seed=424242),
    condition="whitney_b")
print(f"weakly Lipschitz on the pair: {report.wl.verdict}")
print(f"graph pair:  {report.graph.verdict} (trend {report.graph.fitted_trend:+.2f})")
print(f"base pair:   {report.base.verdict}")
print(f"implication graph => base satisfied: {report.implication_satisfied}")

print()
print("== projection suite: linear map, tangent-gap condition ==")
scn = fixture_linear_map().build()
report = theorem_suite_projection(
    scn.maps["f"], "gamma", "lam", [0.0],
    SampleSchedule(base_point=(0.0, 0.0), r0=0.25, rho=0.5, shells=7,
                   samples=40, seed=515151),
    condition="verdier")
print(f"graph {report.graph.verdict}, base {report.base.verdict}, "
      f"implication satisfied: {report.implication_satisfied}")

print()
print("== transversal suite: graph of u*v meets a cylinder over a half plane ==")
inputs = lifting_suite_inputs()
for condition in ("whitney_b", "verdier"):
    rep = theorem_suite_transversal(
        inputs["pair1"], inputs["pair2"], inputs["inter"],
        inputs["embeddings"], inputs["schedule"], condition=condition)
    print(f"{condition:>10}: {rep.pair_count} sampled pairs, "
          f"inf angle {rep.inf_lambda:.4f}, constant {rep.constant:.4f}, "
          f"worst slack {rep.min_slack:.2e}, bound satisfied: {rep.bound_satisfied}")
print("(the constant is 1 / inf lambda; slack >= 0 means the bound held "
      "on every sampled pair)")
