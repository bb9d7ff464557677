"""G-Frobenius algebras, their axioms, state sums and Drinfeld-double modules.

Vectors are sparse dicts over the basis.  ``action[g]`` is a square matrix
whose column j is g . e_j; ``product[(i, j)]`` is the sparse vector e_i * e_j;
correlators are keyed by (genus, arity) and map basis tuples to rationals
(missing entries are zero).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .dw import dw_count
from .graphs import CGraph, Graph, GraphError
from .groupoids import groupoid_algebra, loop_groupoid
from .groups import FiniteGroup, make_group, parse_element
from .linalg import axpy, inverse, rank
from .report import Report


class StateSumError(ValueError):
    pass


@dataclass
class GFrobeniusData:
    group: FiniteGroup
    grading: tuple
    action: tuple
    metric: list
    product: dict
    correlators: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.grading)

    def dims(self) -> dict:
        out = {c: 0 for c in self.group.elements}
        for c in self.grading:
            out[c] += 1
        return out

    def basis_of(self, color):
        return [i for i, c in enumerate(self.grading) if c == color]

    def act(self, g, v: dict) -> dict:
        M = self.action[g]
        out = {}
        for j, c in v.items():
            for i in range(self.dim):
                if M[i][j]:
                    out = axpy(out, c * M[i][j], {i: 1})
        return out

    def mul(self, u: dict, v: dict) -> dict:
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                out = axpy(out, a * b, self.product.get((i, j), {}))
        return out

    def pair(self, u: dict, v: dict):
        return sum((a * b * self.metric[i][j] for i, a in u.items() for j, b in v.items()), Fraction(0))

    def to_dict(self) -> dict:
        G = self.group
        lab = G.labels
        return {
            "group": {"name": G.name, "mul": [list(r) for r in G.mul], "labels": list(lab)},
            "grading": [lab[c] for c in self.grading],
            "action": {lab[g]: [[str(x) for x in row] for row in M] for g, M in enumerate(self.action)},
            "metric": [[str(x) for x in row] for row in self.metric],
            "product": [[i, j, k, str(c)] for (i, j), v in sorted(self.product.items())
                        for k, c in sorted(v.items())],
            "correlators": [{"genus": g, "arity": n,
                             "values": [[list(t), str(c)] for t, c in sorted(vals.items()) if c]}
                            for (g, n), vals in sorted(self.correlators.items())],
        }


def from_dict(d: dict) -> GFrobeniusData:
    try:
        G = make_group(d["group"])
        grading = tuple(parse_element(G, x) for x in d["grading"])
        dim = len(grading)
        action = [None] * G.order
        for tok, M in d["action"].items():
            action[parse_element(G, tok)] = [[Fraction(x) for x in row] for row in M]
        if any(M is None for M in action):
            raise ValueError("an action matrix is missing")
        metric = [[Fraction(x) for x in row] for row in d["metric"]]
        for M in action + [metric]:
            if len(M) != dim or any(len(row) != dim for row in M):
                raise ValueError("matrix size does not match the grading")
        product = {}
        for i, j, k, c in d.get("product", []):
            if not all(0 <= x < dim for x in (i, j, k)):
                raise ValueError(f"product index out of range: {(i, j, k)}")
            product[(i, j)] = axpy(product.get((i, j), {}), Fraction(c), {k: 1})
        correlators = {}
        for entry in d.get("correlators", []):
            vals = {tuple(t): Fraction(c) for t, c in entry["values"]}
            correlators[(entry["genus"], entry["arity"])] = vals
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed algebra data: {exc!r}") from None
    return GFrobeniusData(G, grading, tuple(action), metric, product, correlators)


def dw_frobenius(G) -> GFrobeniusData:
    """The algebra of the cover counts: one basis vector e_c per element c."""
    G = make_group(G)
    n = G.order
    one, zero = Fraction(1), Fraction(0)
    action = []
    for g in G.elements:
        M = [[zero] * n for _ in range(n)]
        for c in G.elements:
            M[G.conj(g, c)][c] = one
        action.append(M)
    metric = [[Fraction(n) if d == G.inv[c] else zero for d in G.elements] for c in G.elements]
    product = {(a, b): {G.mul[a][b]: Fraction(n)} for a in G.elements for b in G.elements}
    l03 = {}
    for t in itertools.product(G.elements, repeat=3):
        v = dw_count(G, 0, t)
        if v:
            l03[t] = v
    l11 = {(c,): dw_count(G, 1, (c,)) for c in G.elements if dw_count(G, 1, (c,))}
    return GFrobeniusData(G, tuple(G.elements), tuple(action), metric, product,
                          {(0, 3): l03, (1, 1): l11})


# --- the axioms ---------------------------------------------------------------

def _corr(A, key):
    return A.correlators.get(key, {})


def _metric_inverse(A):
    return inverse(A.metric)


def _contracted_pairs(A):
    """Nonzero entries (p, q, w) of the inverse metric."""
    inv = _metric_inverse(A)
    return [(p, q, inv[p][q]) for p in range(A.dim) for q in range(A.dim) if inv[p][q]]


def _pairs_meeting(G, a, b, c):
    """Do some conjugates of a and b multiply with c to one?"""
    return any(G.m(G.conj(x, a), G.conj(y, b), c) == 0 for x in G.elements for y in G.elements)


def check_grading(A: GFrobeniusData) -> Report:
    G = A.group
    rep = Report("grading")
    for (i, j), v in sorted(A.product.items()):
        for k in v:
            rep.checked += 1
            if A.grading[k] != G.mul[A.grading[i]][A.grading[j]]:
                return rep.fail("product leaves the graded piece", (i, j, k))
    for t in _corr(A, (0, 3)):
        rep.checked += 1
        if not _pairs_meeting(G, *(A.grading[i] for i in t)):
            return rep.fail("three-point correlator outside the allowed colors", t)
    commutators = {G.commutator(a, b) for a in G.elements for b in G.elements}
    for t in _corr(A, (1, 1)):
        rep.checked += 1
        if A.grading[t[0]] not in commutators:
            return rep.fail("one-point correlator on a non-commutator", t)
    return rep


def check_action(A: GFrobeniusData) -> Report:
    """Group law, color shift and self-invariance of the action matrices."""
    G = A.group
    rep = Report("action")
    n = A.dim
    if len(A.action) != G.order:
        return rep.fail("one matrix per group element required", len(A.action))
    for i in range(n):
        for j in range(n):
            if A.action[0][i][j] != int(i == j):
                return rep.fail("identity acts nontrivially", (i, j))
    cols = [[A.act(g, {j: 1}) for j in range(n)] for g in G.elements]
    for g in G.elements:
        for h in G.elements:
            gh = G.mul[g][h]
            for j in range(n):
                rep.checked += 1
                if A.act(g, cols[h][j]) != cols[gh][j]:
                    return rep.fail("group law", (g, h, j))
        for j in range(n):
            target = G.conj(g, A.grading[j])
            if any(A.grading[i] != target for i in cols[g][j]):
                return rep.fail("action does not shift colors by conjugation", (g, j))
    for j in range(n):
        c = A.grading[j]
        if cols[c][j] != {j: 1}:
            return rep.fail("a color does not fix its own piece", j)
    return rep


def check_equivariance(A: GFrobeniusData) -> Report:
    G = A.group
    rep = Report("equivariance")
    n = A.dim
    e = [{i: Fraction(1)} for i in range(n)]
    for g in G.elements:
        ge = [A.act(g, v) for v in e]
        for i in range(n):
            for j in range(n):
                rep.checked += 1
                if A.act(g, A.mul(e[i], e[j])) != A.mul(ge[i], ge[j]):
                    return rep.fail("product not equivariant", (g, i, j))
                if A.pair(ge[i], ge[j]) != A.metric[i][j]:
                    return rep.fail("metric not invariant", (g, i, j))
    for i in range(n):
        for j in range(n):
            rep.checked += 1
            if A.mul(e[i], e[j]) != A.mul(A.act(A.grading[i], e[j]), e[i]):
                return rep.fail("braided commutativity", (i, j))
    for key, vals in sorted(A.correlators.items()):
        r = _check_form_invariance(A, key[1], vals, f"correlator {key}")
        rep.merge(r)
        if not rep.ok:
            return rep
    return rep


def _check_form_invariance(A, arity, vals, name) -> Report:
    """Leg-wise action invariance and permutation symmetry of a form."""
    rep = Report(name)
    n = A.dim
    cols = [[A.act(g, {j: 1}) for j in range(n)] for g in A.group.elements]
    for t in itertools.product(range(n), repeat=arity):
        base = vals.get(t, 0)
        for leg in range(arity):
            for g in A.group.elements:
                rep.checked += 1
                moved = sum((c * vals.get(t[:leg] + (k,) + t[leg + 1:], 0)
                             for k, c in cols[g][t[leg]].items()), Fraction(0))
                if moved != base:
                    return rep.fail("not invariant under a leg-wise action", (t, leg, g))
        for sigma in itertools.permutations(range(arity)):
            if vals.get(tuple(t[s] for s in sigma), 0) != base:
                return rep.fail("not symmetric", (t, sigma))
    return rep


def check_metric(A: GFrobeniusData) -> Report:
    G = A.group
    rep = Report("metric")
    n = A.dim
    for i in range(n):
        for j in range(n):
            rep.checked += 1
            if A.metric[i][j] and A.grading[j] != G.inv[A.grading[i]]:
                return rep.fail("pairs colors that are not inverse", (i, j))
            if A.metric[i][j] != A.metric[j][i]:
                return rep.fail("not symmetric", (i, j))
    if rank(A.metric) != n:
        return rep.fail("degenerate", rank(A.metric))
    e = [{i: Fraction(1)} for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        rep.checked += 1
        if A.pair(A.mul(e[i], e[j]), e[k]) != A.pair(e[i], A.mul(e[j], e[k])):
            return rep.fail("not invariant under the product", (i, j, k))
    return rep


def four_point_factorization(A: GFrobeniusData):
    """S(a, b, c, d) = sum Lambda(a, b, p) eta^pq Lambda(q, c, d)."""
    n = A.dim
    l03 = _corr(A, (0, 3))
    pairs = _contracted_pairs(A)
    half = {}
    for a in range(n):
        for b in range(n):
            v = {}
            for p, q, w in pairs:
                x = l03.get((a, b, p), 0)
                if x:
                    v[q] = v.get(q, 0) + x * w
            half[(a, b)] = v

    def S(a, b, c, d):
        return sum((x * l03.get((q, c, d), 0) for q, x in half[(a, b)].items()), Fraction(0))
    return S


def check_wdvv(A: GFrobeniusData) -> Report:
    rep = Report("WDVV")
    n = A.dim
    e = [{i: Fraction(1)} for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        rep.checked += 1
        if A.mul(A.mul(e[i], e[j]), e[k]) != A.mul(e[i], A.mul(e[j], e[k])):
            return rep.fail("product not associative", (i, j, k))
    S = four_point_factorization(A)
    l04 = A.correlators.get((0, 4))
    for t in itertools.product(range(n), repeat=4):
        i, j, k, l = t
        rep.checked += 1
        x, y, z = S(i, j, k, l), S(i, k, j, l), S(i, l, j, k)
        if not x == y == z:
            return rep.fail("one-edge factorizations disagree", (t, x, y, z))
        if l04 is not None and l04.get(t, 0) != x:
            return rep.fail("supplied four-point correlator disagrees", (t, l04.get(t, 0), x))
    return rep


def check_product_correlator(A: GFrobeniusData) -> Report:
    """Lambda(x, y, z) = |G|^-3 sum over h in G^3 of eta(h1 x * h2 y, h3 z).

    For abelian G this says e_a * e_b is Lambda contracted with eta^-1."""
    G = A.group
    rep = Report("product-correlator")
    n = A.dim
    l03 = _corr(A, (0, 3))
    avg = []
    for i in range(n):
        v = {}
        for h in G.elements:
            v = axpy(v, 1, A.act(h, {i: 1}))
        avg.append(v)
    scale = Fraction(1, G.order ** 3)
    for t in itertools.product(range(n), repeat=3):
        rep.checked += 1
        i, j, k = t
        expected = A.pair(A.mul(avg[i], avg[j]), avg[k]) * scale
        if l03.get(t, 0) != expected:
            return rep.fail("three-point correlator does not match the product", (t, l03.get(t, 0), expected))
    return rep


def self_glued_trace(A: GFrobeniusData) -> dict:
    l03 = _corr(A, (0, 3))
    pairs = _contracted_pairs(A)
    out = {}
    for i in range(A.dim):
        v = sum((w * l03.get((i, p, q), 0) for p, q, w in pairs), Fraction(0))
        if v:
            out[(i,)] = v
    return out


def check_trace(A: GFrobeniusData) -> Report:
    rep = Report("trace")
    t = self_glued_trace(A)
    given = A.correlators.get((1, 1))
    if given is None:
        return rep.merge(_check_form_invariance(A, 1, t, "self-glued one-point form"))
    for i in range(A.dim):
        rep.checked += 1
        if given.get((i,), 0) != t.get((i,), 0):
            return rep.fail("one-point correlator is not the self-glued three-point one",
                            (i, given.get((i,), 0), t.get((i,), 0)))
    return rep


AXIOMS = [
    ("grading", check_grading),
    ("action", check_action),
    ("equivariance", check_equivariance),
    ("metric", check_metric),
    ("wdvv", check_wdvv),
    ("product-correlator", check_product_correlator),
    ("trace", check_trace),
]


def check_gfrobenius(A: GFrobeniusData) -> Report:
    """Every axiom is run; ``details`` has one entry per axiom."""
    rep = Report("G-Frobenius algebra")
    if (0, 3) not in A.correlators:
        return rep.fail("no three-point correlator supplied")
    for name, fn in AXIOMS:
        try:
            r = fn(A)
        except ZeroDivisionError:
            r = Report(name).fail("degenerate metric")
        rep.details[name] = r.to_dict()
        rep.merge(r)
    return rep


# --- state sums -----------------------------------------------------------------

def state_sum(A: GFrobeniusData, graph, leg_colors=None) -> dict:
    """Contract the vertex correlators of a stable graph along its edges.

    The sum runs over all basis vectors on the internal flags, each edge
    weighted by the inverse metric; for a CGraph the edge decorations only
    pick a representative and the legs take its leg colors.  Returns the
    form on the leg factors as {leg basis tuple: value}."""
    if isinstance(graph, CGraph):
        if leg_colors is None:
            leg_colors = graph.leg_colors
        graph = graph.graph
    if not isinstance(graph, Graph):
        raise TypeError("state_sum needs a Graph or CGraph")
    n_legs = len(graph.legs)
    if leg_colors is None:
        leg_choices = [range(A.dim)] * n_legs
    else:
        leg_colors = tuple(parse_element(A.group, c) for c in leg_colors)
        if len(leg_colors) != n_legs:
            raise GraphError("one color per leg required")
        leg_choices = [A.basis_of(c) for c in leg_colors]
    vertices = []
    for v in range(graph.n_vertices):
        key = (graph.genus[v], graph.valence(v))
        if key not in A.correlators:
            raise StateSumError(f"no correlator for a vertex of type {key}")
        vertices.append((graph.vertex_flags(v), A.correlators[key]))
    pairs = _contracted_pairs(A)
    edges = graph.edges
    out = {}
    for legs in itertools.product(*leg_choices):
        total = Fraction(0)
        for choice in itertools.product(pairs, repeat=len(edges)):
            basis = [None] * graph.n_flags
            for x, b in zip(graph.legs, legs):
                basis[x] = b
            w = Fraction(1)
            for (x, y), (p, q, c) in zip(edges, choice):
                basis[x], basis[y] = p, q
                w *= c
            for flags, vals in vertices:
                w *= vals.get(tuple(basis[f] for f in flags), 0)
                if not w:
                    break
            total += w
        if total:
            out[legs] = total
    return out


# --- the Drinfeld double ----------------------------------------------------------

def drinfeld_action(A: GFrobeniusData):
    """rho(g : c -> g c g^-1) = g . P_c as sparse columns {j: {i: value}}."""
    C, _ = loop_groupoid(A.group)
    n = A.group.order
    out = []
    for f in C.morphisms:
        c, g = divmod(f, n)
        cols = {j: A.act(g, {j: 1}) for j in range(A.dim) if A.grading[j] == c}
        out.append({j: v for j, v in cols.items() if v})
    return C, out


def _compose_sparse(a, b):
    """Columns of the matrix a . b."""
    out = {}
    for j, v in b.items():
        w = {}
        for k, x in v.items():
            w = axpy(w, x, a.get(k, {}))
        if w:
            out[j] = w
    return out


def drinfeld_module_check(A: GFrobeniusData) -> Report:
    C, rho = drinfeld_action(A)
    alg = groupoid_algebra(C)
    rep = Report("Drinfeld double module")
    for f in C.morphisms:
        for g in C.morphisms:
            rep.checked += 1
            h = alg.basis_product(f, g)
            expected = {} if h is None else rho[h]
            if _compose_sparse(rho[f], rho[g]) != expected:
                return rep.fail("module axiom", (f, g))
    total = {}
    for i in C.ident:
        for j, v in rho[i].items():
            total[j] = axpy(total.get(j, {}), 1, v)
    if total != {j: {j: 1} for j in range(A.dim)}:
        return rep.fail("the unit does not act as the identity")
    rep.details = {"module_dim": A.dim, "algebra_dim": alg.dim}
    return rep
