"""
Snowflakes keep planar spaces Ptolemaic
=======================================

Raising a Euclidean distance matrix to a power alpha in (0, 1] gives a
quasisymmetric map with control t^alpha, and the image is still Ptolemaic.
"""

import fourpoint as fp

src = fp.from_points_lp(fp.gen_random_points(8, 2, seed=3))
print("source Ptolemaic:", fp.check_ptolemaic(src).passed)

for alpha in (0.3, 0.5, 0.9):
    m = fp.make_transform_map(src, "snowflake", alpha)
    qs = fp.verify_quasisymmetric(m, f"t^{alpha}")
    qm = fp.verify_quasimobius(m, f"t^{alpha}")
    print(f"alpha={alpha}: QS {qs.passed} (defect {qs.defect:.1e}), QM {qm.passed} (defect {qm.defect:.1e}),",
          "image Ptolemaic", fp.check_ptolemaic(m.target).passed)

# With the identity as control the snowflake fails: ratios below 1 grow.
m = fp.make_transform_map(src, "snowflake", 0.5)
bad = fp.verify_quasisymmetric(m, "t")
print("eta=t on a 0.5-snowflake:", bad.passed, "worst triple", bad.witness_labels)

# The envelope lists every (t*, r) pair; any admissible eta lies above all of them.
env = fp.qs_envelope(m)
print("envelope size", len(env), "first points", [(round(p.t, 3), round(p.r, 3)) for p in env[:3]])

# Scale maps keep every cross-ratio, snowflakes do not.
print("scale is mobius:", fp.verify_mobius(fp.make_transform_map(src, "scale", 4.0)))
print("snowflake is mobius:", fp.verify_mobius(m))

# One preservation experiment: premise on the source, grid hypothesis, conclusion on the image.
rep = fp.run_preservation_experiment(src, ("snowflake", 0.5), "u+v", "u*v", "t^0.5")
print("experiment:", rep.status, "|", rep.hypothesis_check.summary)
