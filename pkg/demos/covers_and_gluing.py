"""
Counting covers and gluing them
===============================

Cover counts for a few small groups, and the two gluing laws checked by
hand on one example each.
"""
from fractions import Fraction

from coloperad.dw import dw_count, enumerate_covers
from coloperad.groups import make_group

G = make_group("S3")
print(G, G.labels)

# three markings on a sphere, two of them with monodromy (12)
print("S3 (0; (12),(12),e) =", dw_count(G, 0, ["(12)", "(12)", "e"]))

# each class is one tuple (h1, h2, h3) with h1 = e
for c in enumerate_covers(G, 0, ["(12)", "(12)", "e"])[:4]:
    print("  ", [G.labels[x] for x in c.representative])

# closed surfaces have no markings; the count is a groupoid cardinality
print("S3 (2; -) =", dw_count(G, 2, []))

# glue two spheres along a node: weight 1/|G| for forgetting the lifts
alpha, beta = ["(12)", "(13)"], ["(123)", "e"]
lhs = dw_count(G, 0, alpha + beta)
rhs = sum(dw_count(G, 0, alpha + [c]) * dw_count(G, 0, [G.inv[c]] + beta)
          for c in G.elements) * Fraction(1, G.order)
print("two-vertex gluing:", lhs, "=", rhs)

# glue two markings of one sphere to each other
lhs = dw_count(G, 1, ["(123)"])
rhs = sum(dw_count(G, 0, ["(123)", c, G.inv[c]]) for c in G.elements) * Fraction(1, G.order)
print("self-gluing:", lhs, "=", rhs)
