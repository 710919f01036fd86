"""
Four-point inequalities on small spaces
=======================================

Three toy spaces, each checked against the classical four-point conditions.
"""

import numpy as np

import fourpoint as fp

# The 4-cycle graph: neighbours at distance 1, opposite corners at 2.
c4 = fp.new_space("abcd", [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])

# Both diagonals give 2*2 = 4 on the left against 1*1 + 1*1 = 2 on the right.
rep = fp.check_ptolemaic(c4)
print("C4 Ptolemaic:", rep.passed, "defect", rep.defect, "witness", rep.witness_labels)

# The three pairing sums are 4, 2, 2, so the gap is 2 and delta* = 1.
print("C4 delta*:", fp.min_hyperbolicity_delta(c4))
for delta in (0.9, 1.0):
    print(f"  {delta}-hyperbolic:", fp.check_delta_hyperbolic(c4, delta).passed)

# A star with three unit leaves is a tree, hence additive and 0-hyperbolic.
star = fp.gen_tree_metric([("c", "a", 1.0), ("c", "b", 1.0), ("c", "d", 1.0)])
print("star additive:", fp.check_additive(star).passed, "delta*", fp.min_hyperbolicity_delta(star))

# Four concyclic points turn Ptolemy into an equality on the diagonals.
square = fp.from_points_lp([(1, 0), (0, 1), (-1, 0), (0, -1)])
rep = fp.check_ptolemaic(square, include_degenerate=False)
print("square Ptolemaic:", rep.passed, "tightest quadruple", rep.witness_labels, f"defect {rep.defect:.1e}")

# Roundness of three collinear points: the midpoint quadruple pins it at 2.
line = fp.from_points_lp([0.0, 0.5, 1.0], p=1)
print("roundness of {0, 1/2, 1}:", fp.roundness(line).value)

# The generic engine reproduces each classical check from a pair of functions.
for phi, psi in [("u+v", "u*v"), ("max(u,v)", "u+v"), ("2*1+max(u,v)", "u+v")]:
    r = fp.check_quadruple_pair(c4, phi, psi)
    print(f"  phi={phi:<14} psi={psi:<4} pass={r.passed!s:<5} defect={r.defect}")

# Full classification of a random shortest-path metric.
s = fp.gen_random_metric(7, seed=1)
print(fp.classify(s).to_dict())
print("diameter bound holds:", fp.min_hyperbolicity_delta(s) <= fp.diameter(s))
print(np.round(s.dist, 3))
