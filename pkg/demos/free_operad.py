"""
Free modular operads over the loop groupoid
===========================================

Decorate trivalent vertices with a point and count classes of decorated
graphs, then check the unit and associativity laws of the monad.
"""
from coloperad.free import ConstantModule, check_monad_laws, free_modular, monad_mult, free_module
from coloperad.groupoids import loop_groupoid
from coloperad.groups import make_group

C, D = loop_groupoid(make_group("Z2"))
V = ConstantModule(C, D, [(0, 3), (1, 1)])

for colors in [(0, 0, 0, 0), (0, 0, 1, 1), (1, 1, 1, 1)]:
    P = free_modular(V, 0, colors)
    print("genus 0, legs", colors, "->", P.size, "classes")

# graphs of graphs flatten back to graphs
mu = monad_mult(V, 1, (0,))
print("M M V at (1,1):", free_modular(free_module(V), 1, (0,)).size, "classes, mu =", mu)

for g, colors in [(0, (0, 0, 1, 1)), (1, (1,)), (1, (0, 1))]:
    r = check_monad_laws(V, g, colors)
    print("monad laws at", g, colors, ":", r.ok, r.details)
