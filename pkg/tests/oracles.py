"""Independent brute-force oracles shared by several test modules."""

import itertools
from fractions import Fraction

from coloperad.graphs import CGraph, are_isomorphic


def raw_cgraph_classes(G, C, D, leg_colors, keep=None):
    """Isomorphism classes of C-graphs on the shape G, found by trying every
    flag color and every pairing and comparing pairwise."""
    reps = []
    for cols in itertools.product(C.objects, repeat=2 * len(G.edges)):
        colors = [None] * G.n_flags
        for x, c in zip(G.legs, leg_colors):
            colors[x] = c
        for (x, y), a, b in zip(G.edges, cols[::2], cols[1::2]):
            colors[x], colors[y] = a, b
        choices = [C.hom(colors[x], D.obj(colors[y])) for x, y in G.edges]
        for phis in itertools.product(*choices):
            cg = CGraph(G, C, D, tuple(colors), tuple(phis))
            if keep is not None and not keep(cg):
                continue
            if not any(are_isomorphic(cg, r) for r in reps):
                reps.append(cg)
    return reps


def _multiply_out(G, g, gammas, tup):
    """The literal word prod [a_i, b_i] * prod h_j c_j h_j^-1, evaluated by
    looking up products one letter at a time."""
    word = []
    for i in range(g):
        a, b = tup[2 * i], tup[2 * i + 1]
        word += [a, b, G.inv[a], G.inv[b]]
    for h, c in zip(tup[2 * g:], gammas):
        word += [h, c, G.inv[h]]
    acc = 0
    for x in word:
        acc = G.mul[acc][x]
    return acc


def brute_solutions(G, g, gammas):
    return [t for t in itertools.product(G.elements, repeat=2 * g + len(gammas))
            if _multiply_out(G, g, gammas, t) == 0]


def brute_dw(G, g, gammas):
    return Fraction(len(brute_solutions(G, g, gammas)), G.order)


def brute_cover_orbits(G, g, gammas):
    """Orbits of the solution set under k: a -> k a k^-1, h -> k h, by
    closing each solution under the action."""
    sols = set(brute_solutions(G, g, gammas))
    orbits = []
    while sols:
        t = min(sols)
        orb = set()
        for k in G.elements:
            head = [G.mul[G.mul[k][x]][G.inv[k]] for x in t[:2 * g]]
            orb.add(tuple(head + [G.mul[k][h] for h in t[2 * g:]]))
        sols -= orb
        orbits.append(orb)
    return orbits
