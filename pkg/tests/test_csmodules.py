import itertools
from math import comb

import pytest

from coloperad.csmodules import (
    ConstantBifunctor, ConstantCS, HomBifunctor, QuotientHomBifunctor, RepresentableCS,
    check_cs_module, check_plethysm_unit, check_twisted_arrow_coend, coend, cs_tensor,
    left_unit_maps, plethysm, random_bifunctor, right_unit_maps, unit_module,
)
from coloperad.groupoids import group_as_groupoid, loop_groupoid, trivial_groupoid
from coloperad.groups import make_group


def LG(name):
    return loop_groupoid(make_group(name))[0]


# --- oracles ----------------------------------------------------------------

def tensor_orbit_count(V, W, n):
    """Literal induction over trivial colors: triples (sigma in S_n, v, w)
    modulo S_k x S_l acting on sigma and on v, w."""
    total = 0
    for k in range(n + 1):
        l = n - k
        seen = set()
        for sigma in itertools.permutations(range(n)):
            for v in range(V.size(k, 0, (0,) * k)):
                for w in range(W.size(l, 0, (0,) * l)):
                    orbit = set()
                    for a in itertools.permutations(range(k)):
                        for b in itertools.permutations(range(l)):
                            s2 = tuple(sigma[i] for i in a) + tuple(sigma[k + j] for j in b)
                            orbit.add((s2, V.perm_act(k, 0, (0,) * k, a, v),
                                       W.perm_act(l, 0, (0,) * l, b, w)))
                    seen.add(min(orbit))
        total += len(seen)
    return total


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def species_plethysm_count(a, b, n):
    """Classical substitution of species with trivial actions and b[0] = 0."""
    total = 0
    for p in set_partitions(list(range(n))):
        term = a.get(len(p), 0)
        for block in p:
            term *= b.get(len(block), 0)
        total += term
    return total


def commuting_pair_orbits(G):
    """Orbits of commuting pairs (x, g) under simultaneous conjugation."""
    seen, count = set(), 0
    for x in G.elements:
        for g in G.elements:
            if G.mul[x][g] != G.mul[g][x] or (x, g) in seen:
                continue
            count += 1
            for h in G.elements:
                seen.add((G.conj(h, x), G.conj(h, g)))
    return count


# --- tensor -----------------------------------------------------------------

def test_tensor_of_arity_zero_units():
    C = trivial_groupoid()
    e0 = ConstantCS(C, {0: 1})
    T = cs_tensor(e0, e0)
    assert [T.size(n, 0, (0,) * n) for n in range(4)] == [1, 0, 0, 0]


@pytest.mark.parametrize("a,b", [({0: 1, 1: 2, 2: 1}, {1: 1, 2: 3}), ({2: 2}, {0: 1, 1: 1, 3: 2})])
def test_tensor_dimensions(a, b):
    C = trivial_groupoid()
    V, W = ConstantCS(C, a), ConstantCS(C, b)
    T = cs_tensor(V, W)
    for n in range(5):
        expected = sum(comb(n, k) * a.get(k, 0) * b.get(n - k, 0) for k in range(n + 1))
        assert T.size(n, 0, (0,) * n) == expected


def test_tensor_matches_literal_orbit_construction():
    C = trivial_groupoid()

    class Sign(ConstantCS):
        # two points swapped by odd permutations
        def perm_act(self, n, c, xs, sigma, v):
            odd = sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j]) % 2
            return v ^ odd

    V, W = Sign(C, {1: 2, 2: 2}), ConstantCS(C, {1: 1, 2: 1})
    T = cs_tensor(V, W)
    for n in range(5):
        assert T.size(n, 0, (0,) * n) == tensor_orbit_count(V, W, n)


def test_tensor_is_equivariant_over_loop_groupoid():
    C = LG("Z2")
    T = cs_tensor(RepresentableCS(C, [1]), RepresentableCS(C, [0, 2]))
    r = check_cs_module(T, 3)
    assert r.ok, r.violation


# --- plethysm -----------------------------------------------------------------

def test_unit_arity_one_is_group_ring():
    for name in ["Z3", "S3", "Q8"]:
        G = make_group(name)
        e = unit_module(group_as_groupoid(G))
        assert e.size(1, 0, (0,)) == G.order
        assert e.size(2, 0, (0, 0)) == 0


@pytest.mark.parametrize("a,b", [({1: 1, 2: 1, 3: 1}, {1: 1, 2: 1}), ({2: 2, 3: 1}, {1: 2, 2: 1, 3: 1})])
def test_plethysm_matches_species_substitution(a, b):
    C = trivial_groupoid()
    P = plethysm(ConstantCS(C, a), ConstantCS(C, b))
    for n in range(5):
        assert P.size(n, 0, (0,) * n) == species_plethysm_count(a, b, n)


@pytest.mark.parametrize("name", ["Z2", "S3"])
def test_plethysm_unit_isomorphisms(name):
    C = LG(name) if name == "Z2" else group_as_groupoid(make_group(name))
    for V in [RepresentableCS(C, [0, 1, 2]), ConstantCS(C, {1: 1, 2: 2})]:
        r = check_plethysm_unit(V, 3 if name == "Z2" else 2)
        assert r.ok, (r.violation, r.witness)


def test_unit_map_sizes_and_plethysm_functoriality():
    C = LG("Z2")
    V = RepresentableCS(C, [1, 2])
    E, phi, psi = left_unit_maps(V)
    P, _, _ = right_unit_maps(V)
    for n in range(3):
        for c in C.objects:
            for xs in itertools.product(C.objects, repeat=n):
                assert E.size(n, c, xs) == V.size(n, c, xs) == P.size(n, c, xs)
    assert check_cs_module(plethysm(V, RepresentableCS(C, [1])), 2).ok


def test_broken_unit_map_is_detected():
    C = LG("Z2")
    V = RepresentableCS(C, [1, 2])
    E, phi, psi = left_unit_maps(V)
    from coloperad.report import Report
    from coloperad.csmodules import _check_natural

    def bad(n, c, xs, e):
        v = phi(n, c, xs, e)
        return (v + 1) % V.size(n, c, xs) if n == 2 else v
    r = _check_natural(Report("x"), E, V, bad, 2)
    assert not r.ok


# --- twisted arrows -------------------------------------------------------------

@pytest.mark.parametrize("name", ["Z2", "S3", "Q8"])
def test_hom_functor_counts_commuting_pairs(name):
    G = make_group(name)
    C = loop_groupoid(G)[0]
    r = check_twisted_arrow_coend(HomBifunctor(C))
    assert r.ok
    assert r.details["coend"] == r.details["twisted"] == commuting_pair_orbits(G)


def test_constant_functor_counts_components():
    C = LG("S3")
    r = check_twisted_arrow_coend(ConstantBifunctor(C, 3))
    assert r.ok and r.details["coend"] == 3 * len(C.components)


@pytest.mark.parametrize("name", ["Z2", "S3"])
@pytest.mark.parametrize("seed", range(20))
def test_random_functors(name, seed):
    C = LG(name)
    F = random_bifunctor(C, seed)
    r = check_twisted_arrow_coend(F)
    assert r.ok, r.violation
    lin = check_twisted_arrow_coend(F, kind="vect")
    assert lin.ok and lin.details == r.details


def test_quotient_piece_is_a_bifunctor():
    C = LG("S3")
    F = QuotientHomBifunctor(C, [(1, 1, [(C.aut(1)[1], C.aut(1)[0])])])
    for a, b in itertools.product(C.objects, repeat=2):
        for z in range(F.size(a, b)):
            for u in C.morphisms:
                if C.tgt[u] != a:
                    continue
                for v in C.out_of(b):
                    for u2 in C.morphisms:
                        if C.tgt[u2] != C.src[u]:
                            continue
                        for v2 in C.out_of(C.tgt[v]):
                            once = F.act(a, b, C.compose(u, u2), C.compose(v2, v), z)
                            twice = F.act(C.src[u], C.tgt[v], u2, v2, F.act(a, b, u, v, z))
                            assert once == twice
