"""Counting admissible G-covers with lifted markings.

A cover of genus g with n lifted markings is presented by a tuple
(a1, b1, ..., ag, bg, h1, ..., hn) in G^(2g+n) with

    [a1, b1] ... [ag, bg] * h1 g1 h1^-1 ... hn gn hn^-1 = 1,

where [a, b] = a b a^-1 b^-1 and g1..gn are the leg monodromies.  The
count is the number of such tuples divided by |G|, the groupoid
cardinality of the quotient by simultaneous translation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graphs import enumerate_stable_graphs
from .groupoids import loop_groupoid
from .groups import FiniteGroup, make_group, parse_element
from .report import Report

SCALE_BOUND = 10 ** 7


class CountError(ValueError):
    pass


def _check_type(g, n):
    if g < 0 or n < 0:
        raise CountError(f"negative genus or arity: ({g}, {n})")
    if 2 * g - 2 + n <= 0 and not (n == 0 and g >= 2):
        raise CountError(f"unstable type ({g}, {n})")


def _elements(G, gammas):
    return tuple(parse_element(G, x) for x in gammas)


def _convolve(G, u, v):
    out = [0] * G.order
    mul = G.mul
    for x, p in enumerate(u):
        if p:
            row = mul[x]
            for y, q in enumerate(v):
                if q:
                    out[row[y]] += p * q
    return out


class DWTheory:
    """Counts for one group, memoized on (g, sorted class ids).

    The memo relies on invariance under leg-wise conjugation and leg
    permutations; ``raw_count`` bypasses it so those invariances can be
    tested independently.
    """

    def __init__(self, G: FiniteGroup):
        self.G = G
        n = G.order
        comm = [0] * n
        for a in G.elements:
            for b in G.elements:
                comm[G.commutator(a, b)] += 1
        self._comm = comm
        self._conj = []
        for c in G.elements:
            row = [0] * n
            for h in G.elements:
                row[G.conj(h, c)] += 1
            self._conj.append(row)
        self.memo = {}

    def distribution(self, g, gammas):
        """Number of tuples (a, b, h) with each possible product."""
        vec = [0] * self.G.order
        vec[0] = 1
        for _ in range(g):
            vec = _convolve(self.G, vec, self._comm)
        for c in gammas:
            vec = _convolve(self.G, vec, self._conj[c])
        return vec

    def raw_count(self, g, gammas) -> Fraction:
        gammas = _elements(self.G, gammas)
        _check_type(g, len(gammas))
        return Fraction(self.distribution(g, gammas)[0], self.G.order)

    def key(self, g, gammas):
        cls = self.G.class_of
        return g, tuple(sorted(cls[c] for c in gammas))

    def count(self, g, gammas) -> Fraction:
        gammas = _elements(self.G, gammas)
        _check_type(g, len(gammas))
        k = self.key(g, gammas)
        if k not in self.memo:
            self.memo[k] = Fraction(self.distribution(g, gammas)[0], self.G.order)
        return self.memo[k]


_THEORIES = {}


def theory(G) -> DWTheory:
    G = make_group(G)
    k = (G.name, G.mul)
    if k not in _THEORIES:
        _THEORIES[k] = DWTheory(G)
    return _THEORIES[k]


def dw_count(G, g: int, gammas) -> Fraction:
    return theory(G).count(g, gammas)


# --- explicit cover classes -------------------------------------------------

@dataclass(frozen=True)
class CoverClass:
    genus: int
    monodromy: tuple
    representative: tuple   # (a1, b1, ..., ag, bg, h1, ..., hn)
    orbit: int

    def to_dict(self, G=None):
        lab = (lambda x: G.labels[x]) if G is not None else (lambda x: x)
        return {"genus": self.genus, "monodromy": [lab(x) for x in self.monodromy],
                "representative": [lab(x) for x in self.representative], "orbit": self.orbit}


def satisfies_relation(G, g, gammas, tup) -> bool:
    acc = 0
    for i in range(g):
        acc = G.mul[acc][G.commutator(tup[2 * i], tup[2 * i + 1])]
    for j, c in enumerate(gammas):
        acc = G.mul[acc][G.conj(tup[2 * g + j], c)]
    return acc == 0


def act_on_cover(G, g, k, tup):
    """The translation action of k: a -> k a k^-1, h -> k h."""
    out = [G.conj(k, x) for x in tup[:2 * g]]
    out += [G.mul[k][h] for h in tup[2 * g:]]
    return tuple(out)


def enumerate_covers(G, g: int, gammas, bound=SCALE_BOUND) -> list[CoverClass]:
    """One representative per orbit, in sorted order.

    With n >= 1 the action is free and every orbit has exactly one member
    with h1 = e; that member is the representative, and the last h is solved
    for.  Closed covers (n = 0) use the least tuple of each orbit.
    """
    G = make_group(G)
    gammas = _elements(G, gammas)
    n = len(gammas)
    _check_type(g, n)
    if G.order ** (2 * g + n) > bound:
        raise CountError(f"|G|^(2g+n) = {G.order ** (2 * g + n)} exceeds the bound {bound}")
    found = set()
    if n == 0:
        for tup in itertools.product(G.elements, repeat=2 * g):
            if satisfies_relation(G, g, (), tup):
                found.add(min(act_on_cover(G, g, k, tup) for k in G.elements))
    else:
        # hn gn hn^-1 = t  has solutions hn listed by t
        solve = {}
        for h in G.elements:
            solve.setdefault(G.conj(h, gammas[-1]), []).append(h)
        for head in itertools.product(G.elements, repeat=2 * g):
            acc = 0
            for i in range(g):
                acc = G.mul[acc][G.commutator(head[2 * i], head[2 * i + 1])]
            mids = itertools.product(G.elements, repeat=n - 2) if n >= 2 else [()]
            for mid in mids:
                hs = (0,) + mid if n >= 2 else ()
                p = acc
                for h, c in zip(hs, gammas):
                    p = G.mul[p][G.conj(h, c)]
                for last in solve.get(G.inv[p], ()):
                    if n == 1 and last != 0:
                        # h1 is also the last coordinate
                        continue
                    found.add(head + hs + (last,))
    reps = sorted(found)
    return [CoverClass(g, gammas, r, i) for i, r in enumerate(reps)]


def closed_cardinality(G, g, covers) -> Fraction:
    """Sum of 1/|Stab| over the given n = 0 orbits."""
    total = Fraction(0)
    for c in covers:
        stab = sum(1 for k in G.elements if act_on_cover(G, g, k, c.representative) == c.representative)
        total += Fraction(1, stab)
    return total


# --- gluing laws --------------------------------------------------------------

def check_two_vertex_gluing(G, g1, alpha, g2, beta) -> Report:
    G = make_group(G)
    T = theory(G)
    alpha, beta = _elements(G, alpha), _elements(G, beta)
    rep = Report("two-vertex gluing")
    _check_type(g1, len(alpha) + 1)
    _check_type(g2, len(beta) + 1)
    lhs = T.count(g1 + g2, alpha + beta)
    rhs = sum((T.count(g1, alpha + (c,)) * T.count(g2, (G.inv[c],) + beta) for c in G.elements),
              Fraction(0)) / G.order
    rep.checked = 1
    rep.details = {"lhs": lhs, "rhs": rhs}
    if lhs != rhs:
        rep.fail("two-vertex gluing", (g1, alpha, g2, beta, lhs, rhs))
    return rep


def check_self_gluing(G, g, alpha) -> Report:
    G = make_group(G)
    T = theory(G)
    alpha = _elements(G, alpha)
    rep = Report("self-gluing")
    _check_type(g, len(alpha) + 2)
    lhs = T.count(g + 1, alpha)
    rhs = sum((T.count(g, alpha + (c, G.inv[c])) for c in G.elements), Fraction(0)) / G.order
    rep.checked = 1
    rep.details = {"lhs": lhs, "rhs": rhs}
    if lhs != rhs:
        rep.fail("self-gluing", (g, alpha, lhs, rhs))
    return rep


def check_equivariance(G, g, gammas) -> Report:
    """Leg-wise conjugation and permutation invariance, on uncached counts."""
    G = make_group(G)
    T = theory(G)
    gammas = _elements(G, gammas)
    rep = Report("equivariance")
    base = T.raw_count(g, gammas)
    for j in range(len(gammas)):
        for h in G.elements:
            moved = gammas[:j] + (G.conj(h, gammas[j]),) + gammas[j + 1:]
            rep.checked += 1
            if T.raw_count(g, moved) != base:
                return rep.fail("conjugation", (j, h, gammas))
    for sigma in itertools.permutations(range(len(gammas))):
        rep.checked += 1
        if T.raw_count(g, tuple(gammas[i] for i in sigma)) != base:
            return rep.fail("permutation", (sigma, gammas))
    return rep


def sorted_tuples(G, n):
    return itertools.combinations_with_replacement(G.elements, n)


def all_tuples(G, n):
    return itertools.product(G.elements, repeat=n)


def gluing_instances(G, max_weight=6, tuples=None):
    """Every stable two-vertex split and self-gluing with 2g+n <= max_weight.

    ``tuples(G, n)`` yields the color tuples to use in arity n; the default
    is every sorted tuple (leg order is covered by check_equivariance and
    every subset of legs is split off anyway).  Yields
    ("two", g1, alpha, g2, beta) or ("self", g, alpha).
    """
    G = make_group(G)
    if tuples is None:
        tuples = sorted_tuples
    for n in range(max_weight + 1):
        for g in range((max_weight - n) // 2 + 1):
            if 2 * g - 2 + n <= 0 and not (n == 0 and g >= 2):
                continue
            for col in tuples(G, n):
                col = tuple(col)
                for g1 in range(g + 1):
                    for mask in range(1 << n):
                        a = tuple(c for i, c in enumerate(col) if mask >> i & 1)
                        b = tuple(c for i, c in enumerate(col) if not mask >> i & 1)
                        if 2 * g1 - 1 + len(a) > 0 and 2 * (g - g1) - 1 + len(b) > 0:
                            yield ("two", g1, a, g - g1, b)
                if g >= 1:
                    yield ("self", g - 1, col)


def check_gluing_suite(G, max_weight=6, tuples=None) -> Report:
    G = make_group(G)
    rep = Report(f"gluing laws over {G.name}")
    for inst in gluing_instances(G, max_weight, tuples):
        if inst[0] == "two":
            r = check_two_vertex_gluing(G, *inst[1:])
        else:
            r = check_self_gluing(G, *inst[1:])
        rep.merge(r)
        if not rep.ok:
            break
    return rep


def boundary_strata(G, g, gammas):
    """Stable LG-graph classes of type (g, n) with the given leg colors."""
    G = make_group(G)
    gammas = _elements(G, gammas)
    if 2 * g - 2 + len(gammas) <= 0:
        raise CountError(f"unstable type ({g}, {len(gammas)})")
    C, D = loop_groupoid(G)
    return enumerate_stable_graphs(g, len(gammas), C, D, gammas)
