import copy
import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coloperad.dw import boundary_strata, dw_count
from coloperad.frobenius import (
    GFrobeniusData, StateSumError, check_gfrobenius, drinfeld_module_check, dw_frobenius,
    four_point_factorization, from_dict, self_glued_trace, state_sum,
)
from coloperad.graphs import corolla, stable_graphs
from coloperad.groups import make_group
from coloperad.linalg import inverse


def failing(A):
    r = check_gfrobenius(A)
    return sorted(k for k, v in r.details.items() if not v["ok"])


@pytest.mark.parametrize("name", ["trivial", "Z2", "Z3", "Z4", "S3", "Q8", "D4"])
def test_dw_algebras_pass(name):
    A = dw_frobenius(name)
    r = check_gfrobenius(A)
    assert r.ok, (r.violation, r.witness)
    assert set(r.details) == {"grading", "action", "equivariance", "metric", "wdvv",
                              "product-correlator", "trace"}
    assert drinfeld_module_check(A).ok


def test_trivial_group_is_classical():
    A = dw_frobenius("trivial")
    assert A.dim == 1 and A.metric == [[1]] and A.product == {(0, 0): {0: 1}}
    assert A.correlators[(0, 3)] == {(0, 0, 0): 1} and A.correlators[(1, 1)] == {(0,): 1}


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z4"])
def test_abelian_product_from_correlators(name):
    A = dw_frobenius(name)
    G = A.group
    inv = inverse(A.metric)
    l03 = A.correlators[(0, 3)]
    for a, b in itertools.product(G.elements, repeat=2):
        assert A.mul({a: 1}, {b: 1}) == {G.mul[a][b]: G.order}
        contracted = {}
        for c, d in itertools.product(G.elements, repeat=2):
            x = l03.get((a, b, c), 0) * inv[c][d]
            if x:
                contracted[d] = contracted.get(d, 0) + x
        assert contracted == A.mul({a: 1}, {b: 1})
    unit = {0: Fraction(1, G.order)}
    for b in G.elements:
        assert A.mul(unit, {b: 1}) == {b: 1} == A.mul({b: 1}, unit)


def test_nonabelian_contraction_is_not_graded():
    # the plain contraction of Lambda spreads over conjugacy classes
    A = dw_frobenius("S3")
    inv = inverse(A.metric)
    a, b = 1, 2
    support = {d for c in A.group.elements for d in A.group.elements
               if A.correlators[(0, 3)].get((a, b, c), 0) * inv[c][d]}
    assert len(support) > 1 and A.group.mul[a][b] in support


def test_product_perturbation_breaks_wdvv():
    A = dw_frobenius("S3")
    G = A.group
    B = copy.deepcopy(A)
    B.product[(1, 2)] = {G.mul[1][2]: Fraction(G.order + 1)}
    r = check_gfrobenius(B)
    assert not r.ok and not r.details["wdvv"]["ok"]
    assert "witness" in r.details["wdvv"]
    assert r.details["grading"]["ok"]


def test_single_correlator_perturbation_fails():
    B = dw_frobenius("S3")
    B.correlators[(0, 3)][(1, 1, 0)] += 1
    assert "equivariance" in failing(B)


def test_orbit_consistent_perturbation_fails_wdvv():
    B = dw_frobenius("S3")
    G = B.group
    orbit = {tuple(G.conj(h, x) for h, x in zip(hs, s))
             for s in itertools.permutations((1, 1, 0)) for hs in itertools.product(G.elements, repeat=3)}
    for t in orbit:
        B.correlators[(0, 3)][t] += 1
    bad = failing(B)
    assert "wdvv" in bad and "equivariance" not in bad


def test_one_point_mismatch_fails_trace():
    B = dw_frobenius("Z3")
    B.correlators[(1, 1)][(0,)] += 1
    assert failing(B) == ["trace"]


def test_trace_defined_when_absent():
    A = dw_frobenius("S3")
    t = self_glued_trace(A)
    del A.correlators[(1, 1)]
    assert check_gfrobenius(A).ok
    G = A.group
    assert t == {(c,): dw_count(G, 1, (c,)) for c in G.elements if dw_count(G, 1, (c,))}


def test_degenerate_and_ungraded_metric():
    B = dw_frobenius("Z2")
    B.metric = [[Fraction(0)] * 2 for _ in range(2)]
    assert "metric" in failing(B)
    B = dw_frobenius("Z3")
    B.metric[1][1] = Fraction(1)
    r = check_gfrobenius(B)
    assert not r.details["metric"]["ok"] and "inverse" in r.details["metric"]["violation"]


def test_broken_action_detected():
    B = dw_frobenius("S3")
    n = B.dim
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    B.action = (B.action[0], M) + tuple(B.action[2:])
    assert "action" in failing(B)


def test_drinfeld_module_sizes():
    r = drinfeld_module_check(dw_frobenius("Z2"))
    assert r.ok and r.details == {"module_dim": 2, "algebra_dim": 4}
    assert drinfeld_module_check(dw_frobenius("S3")).details["algebra_dim"] == 36


def test_scrambled_grading_fails_module():
    B = dw_frobenius("S3")
    g = list(B.grading)
    g[1], g[3] = g[3], g[1]
    B.grading = tuple(g)
    r = drinfeld_module_check(B)
    assert not r.ok and r.witness is not None


def test_state_sum_single_vertex():
    A = dw_frobenius("S3")
    for col in itertools.product(A.group.elements, repeat=3):
        assert state_sum(A, corolla(0, 3), col) == (
            {col: A.correlators[(0, 3)][col]} if col in A.correlators[(0, 3)] else {})


@pytest.mark.parametrize("name", ["Z3", "S3"])
@pytest.mark.parametrize("gn", [(0, 4), (1, 1), (0, 5), (1, 2)])
def test_state_sum_decomposition_independence(name, gn):
    A = dw_frobenius(name)
    G = A.group
    trivalent = [H for H in stable_graphs(*gn)
                 if all((H.genus[v], H.valence(v)) == (0, 3) for v in range(H.n_vertices))]
    assert trivalent
    for col in itertools.combinations_with_replacement(G.elements, gn[1]):
        expected = dw_count(G, gn[0], col)
        for H in trivalent:
            assert state_sum(A, H, col) == ({col: expected} if expected else {})


def test_state_sum_full_form_over_q8():
    A = dw_frobenius("Q8")
    forms = [state_sum(A, H) for H in stable_graphs(0, 4)[1:]]
    assert forms[0] == forms[1] == forms[2]
    S = four_point_factorization(A)
    assert all(S(*t) == v for t, v in forms[0].items())


def test_state_sum_on_colored_strata():
    # every self-loop stratum reproduces the genus-one count
    A = dw_frobenius("Z2")
    loops = [s.graph for s in boundary_strata("Z2", 1, (0,)) if s.graph.graph.edges]
    assert len(loops) >= 2
    for cg in loops:
        assert state_sum(A, cg) == {(0,): 4}
    for cg in [s.graph for s in boundary_strata("Z2", 1, (1,)) if s.graph.graph.edges]:
        assert state_sum(A, cg) == {}


def test_state_sum_missing_correlator():
    A = dw_frobenius("Z2")
    with pytest.raises(StateSumError):
        state_sum(A, corolla(0, 4), (0, 0, 0, 0))
    A.correlators[(0, 4)] = {t: dw_count("Z2", 0, t) for t in itertools.product(range(2), repeat=4)}
    assert state_sum(A, corolla(0, 4), (0, 0, 0, 0)) == {(0, 0, 0, 0): 8}
    assert check_gfrobenius(A).ok


def test_json_round_trip():
    A = dw_frobenius("S3")
    d = json.loads(json.dumps(A.to_dict()))
    B = from_dict(d)
    assert B.grading == A.grading and B.product == A.product and B.metric == A.metric
    assert B.correlators == A.correlators and B.action == A.action
    assert check_gfrobenius(B).ok
    with pytest.raises(ValueError):
        from_dict({"group": "Z2"})
    d["metric"] = d["metric"][:3]
    with pytest.raises(ValueError):
        from_dict(d)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(-3, 3)), min_size=1, max_size=4),
       st.lists(st.tuples(st.integers(0, 5), st.integers(-3, 3)), min_size=1, max_size=4),
       st.lists(st.tuples(st.integers(0, 5), st.integers(-3, 3)), min_size=1, max_size=4))
def test_frobenius_identities_on_random_vectors(u, v, w):
    A = dw_frobenius("S3")

    def vec(pairs):
        out = {}
        for i, c in pairs:
            out[i] = out.get(i, 0) + Fraction(c)
        return {i: c for i, c in out.items() if c}
    x, y, z = vec(u), vec(v), vec(w)
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    assert A.pair(A.mul(x, y), z) == A.pair(x, A.mul(y, z))
    for g in A.group.elements:
        assert A.act(g, A.mul(x, y)) == A.mul(A.act(g, x), A.act(g, y))


def test_data_type_fields():
    A = dw_frobenius("Z4")
    assert isinstance(A, GFrobeniusData)
    assert A.dims() == {c: 1 for c in range(4)}
    assert A.basis_of(2) == [2]
