import itertools
from fractions import Fraction

import pytest

from coloperad.groups import centralizer, conjugacy_classes, make_group
from coloperad.groupoids import (DualityStructure, GroupAction, GroupoidError, Pairing,
                                 WeakSymmetricFunctor, check_duality, check_groupoid,
                                 check_symmetric_pairing, check_weak_symmetric_functor,
                                 disjoint_union_with_op, group_as_groupoid, groupoid_algebra,
                                 inverse_duality, loop_groupoid, make_pairing, semidirect_product,
                                 trivial_groupoid, wreath_duality, wreath_product)
from coloperad.linalg import identity, perm_matrix, to_fractions


def test_loop_groupoid_counts(group):
    C, D = loop_groupoid(group)
    assert C.n_objects == group.order
    assert C.n_morphisms == group.order ** 2
    assert check_groupoid(C).ok
    assert check_duality(C, D).ok


def test_loop_groupoid_homs(group):
    G = group
    C, _ = loop_groupoid(G)
    for c, d in itertools.product(G.elements, repeat=2):
        conj = any(G.conj(g, c) == d for g in G.elements)
        assert len(C.hom(c, d)) == (len(centralizer(G, c)) if conj else 0)
    for c in G.elements:
        assert sorted(C.morphism_labels[m][1] for m in C.aut(c)) == list(centralizer(G, c))


def test_loop_groupoid_examples():
    Z2 = make_group("Z2")
    C, _ = loop_groupoid(Z2)
    assert len(C.hom(1, 1)) == 2
    S3 = make_group("S3")
    C, _ = loop_groupoid(S3)
    assert len(C.hom(S3.element("(12)"), S3.element("(13)"))) == 2


def test_cardinality_and_components(group):
    C, _ = loop_groupoid(group)
    # action groupoid of G on a set of size |G|: cardinality |G|/|G|
    assert C.cardinality() == 1
    assert len(C.components) == len(conjugacy_classes(group))


def test_loop_duality_is_involution(group):
    C, D = loop_groupoid(group)
    assert all(D.obj(D.obj(x)) == x for x in C.objects)
    assert all(D.mor(D.mor(m)) == m for m in C.morphisms)


def test_inverse_duality_on_any_groupoid():
    for C in [group_as_groupoid("S3"), loop_groupoid("Q8")[0], trivial_groupoid()]:
        assert check_duality(C, inverse_duality(C)).ok


def test_non_contravariant_duality_fails():
    # isotropy group S3 of the identity object of L(S3), with g^v = g
    B = group_as_groupoid("S3")
    bad = DualityStructure((0,), tuple(B.morphisms), (0,))
    rep = check_duality(B, bad)
    assert not rep.ok and "contravariance" in rep.violation
    a, b = rep.witness
    assert B.comp[(a, b)] != B.comp[(b, a)]


def test_symmetric_pairings_exhaustive_s3():
    G = make_group("S3")
    C, D = loop_groupoid(G)
    seen = 0
    for c in G.elements:
        for m in C.hom(c, G.inv[c]):
            g = C.morphism_labels[m][1]
            expected = G.mul[g][g] == 0  # phi^v = (c, g^-1), eta = id
            assert check_symmetric_pairing(C, D, Pairing(c, c, m)) is expected
            seen += 1
    # self-pairings exist on every element (S3 elements are conjugate to their inverses)
    assert seen == sum(len(centralizer(G, c)) for c in G.elements)


def test_identity_pairing_on_involution():
    G = make_group("Z2")
    C, D = loop_groupoid(G)
    assert check_symmetric_pairing(C, D, Pairing(1, 1, C.ident[1]))


def test_missing_pairing_is_an_error():
    G = make_group("Z4")
    C, D = loop_groupoid(G)
    a = G.element("a")
    with pytest.raises(GroupoidError):
        make_pairing(C, D, a, a, C.ident[a])


def _swap_action_on_l_z2():
    # functor of L(Z2) exchanging the two objects: (c, g) -> (1 - c, g)
    C, _ = loop_groupoid("Z2")
    Z2 = make_group("Z2")
    obj = ((0, 1), (1, 0))
    mor = (tuple(range(4)), tuple(((1 - c) * 2 + g) for c in range(2) for g in range(2)))
    return C, GroupAction(Z2, obj, mor)


def test_semidirect_product_trivial_category():
    G = make_group("S3")
    one = trivial_groupoid()
    act = GroupAction(G, ((0,),) * 6, ((0,),) * 6)
    P = semidirect_product(one, act)
    assert P.n_objects == 1 and P.n_morphisms == 6
    for a, b in itertools.product(range(6), repeat=2):
        assert P.morphism_labels[P.comp[(a, b)]] == (0, G.mul[a][b])


def test_semidirect_product_associative():
    C, act = _swap_action_on_l_z2()
    P = semidirect_product(C, act)
    assert P.n_morphisms == C.n_morphisms * 2
    assert check_groupoid(P).ok


def test_semidirect_rejects_non_functor():
    C, act = _swap_action_on_l_z2()
    broken = GroupAction(act.group, act.obj, (act.mor[0], (0, 0, 0, 0)))
    with pytest.raises(GroupoidError):
        semidirect_product(C, broken)


def test_wreath_product_counts():
    C, _ = loop_groupoid("Z2")
    W1 = wreath_product(C, 1)
    assert (W1.n_objects, W1.n_morphisms) == (C.n_objects, C.n_morphisms)
    assert all(W1.morphism_labels[W1.comp[(a, b)]][0] == (C.comp[(a_, b_)],)
               for (a, b) in W1.comp for a_, b_ in [(W1.morphism_labels[a][0][0],
                                                     W1.morphism_labels[b][0][0])])
    W0 = wreath_product(C, 0)
    assert (W0.n_objects, W0.n_morphisms) == (1, 1)
    B = group_as_groupoid("Z3")
    for n, fact in [(2, 2), (3, 6)]:
        W = wreath_product(B, n)
        assert W.n_morphisms == 3 ** n * fact
        assert check_groupoid(W).ok


def test_wreath_duality_lifts():
    U, DU = disjoint_union_with_op(group_as_groupoid("Z2"))
    assert check_duality(U, DU).ok
    for n in (2, 3):
        W = wreath_product(U, n)
        assert check_duality(W, wreath_duality(U, DU, n, W)).ok
    C, D = loop_groupoid("Z2")
    W = wreath_product(C, 2)
    assert check_duality(W, wreath_duality(C, D, 2, W)).ok


def test_groupoid_algebra_l_z2():
    G = make_group("Z2")
    C, _ = loop_groupoid(G)
    A = groupoid_algebra(C)
    assert A.dim == 4 and A.is_commutative()
    assert A.check().ok


def test_drinfeld_double_product_abelian():
    for name in ("Z3", "Z4"):
        G = make_group(name)
        C, _ = loop_groupoid(G)
        A = groupoid_algebra(C)
        n = G.order
        for (c, g), (d, h) in itertools.product(itertools.product(G.elements, repeat=2), repeat=2):
            prod = A.mul(A.basis(c * n + g), A.basis(d * n + h))
            assert prod == ({c * n + G.mul[g][h]: 1} if c == d else {})


def test_groupoid_algebra_nonabelian():
    A = groupoid_algebra(loop_groupoid("S3")[0])
    assert A.check().ok and not A.is_commutative()


def test_one_object_groupoid_gives_group_ring():
    G = make_group("S3")
    A = groupoid_algebra(group_as_groupoid(G))
    assert A.unit() == {0: 1}
    for a, b in itertools.product(G.elements, repeat=2):
        assert A.mul(A.basis(a), A.basis(b)) == {G.mul[a][b]: 1}


def _trivial_functor(C, D):
    return WeakSymmetricFunctor(C, D, (1,) * C.n_objects,
                                tuple(to_fractions([[1]]) for _ in C.morphisms),
                                tuple(to_fractions([[1]]) for _ in C.objects))


def test_weak_symmetric_functor_trivial_cases():
    one = trivial_groupoid()
    assert check_weak_symmetric_functor(_trivial_functor(one, inverse_duality(one))).ok
    C, D = loop_groupoid("S3")
    assert check_weak_symmetric_functor(_trivial_functor(C, D)).ok


def test_weak_symmetric_functor_functoriality_failure():
    B = group_as_groupoid("Z2")
    F = _trivial_functor(B, inverse_duality(B))
    F.mor = (F.mor[0], to_fractions([[2]]))
    rep = check_weak_symmetric_functor(F)
    assert not rep.ok and "functoriality" in rep.violation


def test_unitary_means_orthogonal():
    G = make_group("S3")
    B = group_as_groupoid(G)
    one_line = list(itertools.permutations(range(3)))
    mats = tuple(perm_matrix(p) for p in one_line)
    F = WeakSymmetricFunctor(B, inverse_duality(B), (3,), mats, (identity(3),))
    assert check_weak_symmetric_functor(F).ok
    # the induced pairing of the identity pairing is the standard dot product
    assert F.induced_pairing(Pairing(0, 0, 0)) == identity(3)
    # an involution that is not orthogonal
    Z2 = group_as_groupoid("Z2")
    F2 = WeakSymmetricFunctor(Z2, inverse_duality(Z2), (2,),
                              (identity(2), to_fractions([[1, 1], [0, -1]])), (identity(2),))
    rep = check_weak_symmetric_functor(F2)
    assert not rep.ok and "natural" in rep.violation
