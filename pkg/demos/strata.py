"""
Boundary strata
===============

Stable graphs up to isomorphism, with and without colors from the loop
groupoid of Z/2.
"""
from fractions import Fraction

from coloperad.dw import boundary_strata
from coloperad.graphs import enumerate_stable_graphs

for g, n in [(0, 4), (1, 1), (0, 5), (1, 2), (2, 0)]:
    strata = enumerate_stable_graphs(g, n)
    mass = sum(Fraction(1, s.automorphisms) for s in strata)
    print(f"({g},{n}): {len(strata)} graphs, sum of 1/|Aut| = {mass}")

# with colors the self-loop splits by the color on the edge and its pairing
for leg in ["e", "a"]:
    strata = boundary_strata("Z2", 1, [leg])
    print(f"Z2, genus 1, leg {leg}:", [s.automorphisms for s in strata])
