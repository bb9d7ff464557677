import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coloperad.dw import (
    CountError, all_tuples, boundary_strata, check_equivariance, check_gluing_suite,
    check_self_gluing, check_two_vertex_gluing, closed_cardinality, dw_count, enumerate_covers,
    gluing_instances, satisfies_relation, theory,
)
from coloperad.graphs import stable_graphs
from coloperad.groupoids import loop_groupoid
from coloperad.groups import make_group

from oracles import brute_cover_orbits, brute_dw, raw_cgraph_classes


def els(G, *tokens):
    return [G.element(t) for t in tokens]


# values found by brute_dw and frozen
FROZEN = [
    ("Z2", 0, ("e", "e", "e"), 4),
    ("Z2", 0, ("e", "e", "a"), 0),
    ("Z2", 1, ("e",), 4),
    ("Z2", 2, (), 8),
    ("S3", 0, ("(12)", "(12)", "e"), 12),
    ("S3", 0, ("e", "e", "e"), 36),
    ("S3", 0, ("(12)", "(13)", "(123)"), 12),
    ("S3", 0, ("(123)", "(123)", "(123)"), 9),
    ("S3", 1, ("e",), 18),
    ("S3", 1, ("(12)",), 0),
    ("S3", 1, ("(123)",), 9),
    ("S3", 2, (), 81),
    ("S3", 0, ("(12)",) * 4, 72),
    ("Q8", 0, ("i", "i", "-1"), 32),
    ("Q8", 0, ("i", "j", "k"), 32),
    ("Q8", 1, ("-1",), 24),
    ("Q8", 1, ("1",), 40),
    ("Z3", 2, (), 27),
    ("Z3", 1, ("a",), 0),
]


@pytest.mark.parametrize("name,g,tokens,expected", FROZEN)
def test_frozen_counts(name, g, tokens, expected):
    G = make_group(name)
    assert dw_count(G, g, tokens) == expected
    assert theory(G).raw_count(g, tokens) == expected


@pytest.mark.parametrize("name", ["trivial", "Z2", "Z3", "S3", "Q8"])
def test_counts_match_brute_force(name):
    G = make_group(name)
    types = [(0, 3), (1, 1), (2, 0)] if G.order > 6 else [(0, 3), (1, 1), (0, 4), (1, 2), (2, 0)]
    for g, n in types:
        if G.order ** (2 * g + n) > 5000:
            tuples = itertools.combinations_with_replacement(G.elements, n)
        else:
            tuples = itertools.product(G.elements, repeat=n)
        for col in tuples:
            assert dw_count(G, g, col) == brute_dw(G, g, col), (g, col)


def test_closed_counts_are_groupoid_cardinalities():
    # |Hom(pi_1, G)| / |G| = |G|^(2g-2) * sum over irreps of dim^(2-2g)
    assert dw_count("S3", 2, ()) == Fraction(36) * (1 + 1 + Fraction(1, 4))
    assert dw_count("Q8", 2, ()) == Fraction(64) * (4 + Fraction(1, 4))
    for name in ["Z2", "S3"]:
        G = make_group(name)
        assert closed_cardinality(G, 2, enumerate_covers(G, 2, ())) == dw_count(G, 2, ())


def test_integral_with_markings(group):
    for g, n in [(0, 3), (1, 1), (1, 2)]:
        for col in itertools.combinations_with_replacement(group.elements, n):
            c = dw_count(group, g, col)
            assert c >= 0 and c.denominator == 1


def test_unstable_rejected():
    for g, n in [(0, 0), (0, 1), (0, 2), (1, 0)]:
        with pytest.raises(CountError):
            dw_count("Z2", g, ("e",) * n)
    with pytest.raises(ValueError):
        dw_count("Z2", 0, ("e", "e", "zz"))


def test_abelian_three_point_support():
    for name in ["Z2", "Z3", "Z4", "trivial"]:
        G = make_group(name)
        for a, b, c in itertools.product(G.elements, repeat=3):
            v = dw_count(G, 0, (a, b, c))
            if G.m(a, b, c) == 0:
                assert v == G.order ** 2
            else:
                assert v == 0


def test_nonabelian_three_point_support():
    # nonzero exactly when some conjugates multiply to one
    for name in ["S3", "Q8"]:
        G = make_group(name)
        for a, b, c in itertools.product(G.elements, repeat=3):
            hit = any(G.m(G.conj(x, a), G.conj(y, b), c) == 0 for x in G.elements for y in G.elements)
            assert (dw_count(G, 0, (a, b, c)) > 0) == hit


@pytest.mark.parametrize("name", ["Z2", "Z3", "S3"])
def test_covers_count_matches(name):
    G = make_group(name)
    for col in itertools.product(G.elements, repeat=3):
        covers = enumerate_covers(G, 0, col)
        assert len(covers) == dw_count(G, 0, col)
        for c in covers:
            assert satisfies_relation(G, 0, col, c.representative)
            assert c.representative[0] == 0


@pytest.mark.parametrize("name,g,n", [("Z2", 1, 1), ("S3", 1, 1), ("Z3", 0, 4), ("Z2", 1, 2), ("Z2", 2, 0),
                                      ("S3", 2, 0)])
def test_covers_match_orbit_oracle(name, g, n):
    G = make_group(name)
    for col in itertools.combinations_with_replacement(G.elements, n):
        covers = enumerate_covers(G, g, col)
        orbits = brute_cover_orbits(G, g, col)
        assert len(covers) == len(orbits)
        hit = set()
        for c in covers:
            (i,) = [k for k, o in enumerate(orbits) if c.representative in o]
            hit.add(i)
        assert len(hit) == len(orbits)


def test_abelian_empty_covers():
    G = make_group("Z4")
    assert enumerate_covers(G, 0, els(G, "a", "a", "a")) == []
    assert len(enumerate_covers(make_group("Z2"), 0, ("e", "e", "e"))) == 4


def test_cover_scale_bound():
    with pytest.raises(CountError):
        enumerate_covers("S3", 3, ("e",) * 2, bound=10 ** 5)


def test_two_vertex_examples():
    r = check_two_vertex_gluing("Z2", 0, ("e", "e"), 0, ("e", "e"))
    assert r.ok and r.details == {"lhs": 8, "rhs": 8}
    r = check_two_vertex_gluing("Z3", 1, ("a",), 0, ("a^2", "e"))
    assert r.ok


def test_self_gluing_examples():
    r = check_self_gluing("Z2", 0, ("e",))
    assert r.ok and r.details["lhs"] == 4
    G = make_group("S3")
    for c in G.elements:
        assert check_self_gluing(G, 0, (c,)).ok
    assert check_self_gluing("Z2", 1, ()).details["lhs"] == 8


@pytest.mark.parametrize("name", ["Z2", "Z3"])
def test_gluing_over_all_ordered_tuples(name):
    r = check_gluing_suite(name, 6, all_tuples)
    assert r.ok, (r.violation, r.witness)
    assert r.checked > 1000


@pytest.mark.parametrize("name", ["Z4", "S3"])
def test_gluing_suite(name):
    r = check_gluing_suite(name)
    assert r.ok and r.checked > 5000


def test_gluing_instances_are_stable_splits():
    for inst in gluing_instances("Z2", 4):
        if inst[0] == "two":
            _, g1, a, g2, b = inst
            assert 2 * g1 - 1 + len(a) > 0 and 2 * g2 - 1 + len(b) > 0
        else:
            _, g, a = inst
            assert 2 * g + len(a) > 0


def test_wrong_weight_would_fail():
    # the gluing identity singles out 1/|G|: with weight 1 it breaks
    G = make_group("S3")
    alpha, beta = els(G, "(12)", "(12)"), els(G, "(123)", "e")
    lhs = dw_count(G, 0, alpha + beta)
    s = sum(dw_count(G, 0, alpha + [c]) * dw_count(G, 0, [G.inv[c]] + beta) for c in G.elements)
    assert s / G.order == lhs and s != lhs


def test_equivariance_examples():
    G = make_group("S3")
    r = check_equivariance(G, 0, els(G, "(12)", "(13)", "(132)"))
    assert r.ok and r.checked == 3 * 6 + 6
    for col in itertools.product(G.elements, repeat=3):
        assert check_equivariance(G, 0, col).ok


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S3", "Q8", "D4"]), st.integers(0, 1), st.data())
def test_equivariance_property(name, g, data):
    G = make_group(name)
    n = data.draw(st.integers(1 if g else 3, 3))
    col = data.draw(st.lists(st.integers(0, G.order - 1), min_size=n, max_size=n))
    assert check_equivariance(G, g, col).ok


def test_boundary_strata():
    assert len(boundary_strata("S3", 0, ("e", "e", "e"))) == 1
    C, D = loop_groupoid(make_group("Z2"))
    for a in (0, 1):
        strata = boundary_strata("Z2", 1, (a,))
        expected = 1 + len(raw_cgraph_classes(stable_graphs(1, 1)[1], C, D, (a,)))
        assert len(strata) == expected
    assert len(boundary_strata("trivial", 0, ("e",) * 4)) == 4
    with pytest.raises(CountError):
        boundary_strata("Z2", 0, ("e", "e"))
