"""
Transfer hypotheses on a dyadic grid
====================================

Each theorem needs an implication between two inequalities in t. The lab
evaluates it on {2^k : k = -6..6} per axis and keeps every counterexample.
"""

import fourpoint as fp
from fourpoint import theorem_lab as lab

# Power controls with alpha <= 1 keep 1 <= t1 + t2; larger exponents break it.
for alpha in (0.25, 0.5, 1.0, 1.5, 2.0):
    rep = lab.check_hyp_qm("u+v", f"t^{alpha}")
    print(f"qm alpha={alpha}: {rep.summary}")

rep = lab.check_hyp_qm("u+v", "t^2")
v = rep.violations[0]
print("first t^2 counterexample", v.t, "premise", v.premise, "conclusion", v.conclusion)

# The general multiplicative case with Ptolemy's functions.
print("qs_general, t^0.5:", lab.check_hyp_qs_general("u+v", "u*v", "t^0.5").summary)
print("qs_general, t^2:", lab.check_hyp_qs_general("u+v", "u*v", "t^2").summary)

# Additive metrics under identity control, then a square-root control whose
# outcome is only recorded.
print("qs_additive, t:", lab.check_hyp_qs_additive("max(u,v)", "t").summary)
print("qs_additive, t^0.5:", lab.check_hyp_qs_additive("max(u,v)", "t^0.5").summary)

# Subadditivity of t^alpha underlies the snowflake results.
for alpha in (0.5, 1.0):
    r = lab.verify_power_subadditivity(alpha)
    print(f"(u+v)^{alpha} <= u^{alpha}+v^{alpha}:", r.status("subadditivity"), "| equality:", r.status("equality"))

# The whole battery; a THEOREM VIOLATION would mean premise and hypothesis held but the conclusion did not.
out = lab.run_battery(lab.default_battery())
print("battery pass:", out["pass"], "violations:", out["theorem_violations"])
for e in out["experiments"]:
    print(f"  {e['name']:<28} {e['statuses']}")
