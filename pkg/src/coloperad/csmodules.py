"""Ordinary (non-modular) CS-modules, their tensor product and plethysm, the
plethysm unit, and the twisted-arrow description of coends.

A CS-module V gives finite sets V(n)(c; x_1..x_n), contravariant in the
output color c and covariant in the inputs, with the symmetric group
permuting inputs:

* ``out_act(n, c, xs, f, v)`` for f : c2 -> c lands in V(n)(c2; xs);
* ``in_act(n, c, xs, i, m, v)`` for m : x_i -> y;
* ``perm_act(n, c, xs, sigma, v)``: new input i is old input sigma[i].

Only finitely many arities are inhabited: ``max_arity`` bounds them.
"""

from __future__ import annotations

import itertools
import random

from .linalg import QuotientSpace
from .report import Report


class CSModule:
    max_arity = 0

    def __init__(self, C):
        self.C = C

    def size(self, n, c, xs) -> int:
        raise NotImplementedError

    def elements(self, n, c, xs):
        return range(self.size(n, c, xs))


def _into(C):
    out = [[] for _ in C.objects]
    for m in C.morphisms:
        out[C.tgt[m]].append(m)
    return out


class ConstantCS(CSModule):
    """sizes[n] points in arity n for every color tuple; trivial actions."""

    def __init__(self, C, sizes):
        super().__init__(C)
        self.sizes = dict(sizes)
        self.max_arity = max(self.sizes) if self.sizes else 0

    def size(self, n, c, xs):
        return self.sizes.get(n, 0)

    def out_act(self, n, c, xs, f, v):
        return v

    def in_act(self, n, c, xs, i, m, v):
        return v

    def perm_act(self, n, c, xs, sigma, v):
        return v


class RepresentableCS(CSModule):
    """V(n)(c; xs) = (morphisms out of c) x product of (morphisms into x_i)
    for n in ``arities``.  Every action is free."""

    def __init__(self, C, arities):
        super().__init__(C)
        self.arities = frozenset(arities)
        self.max_arity = max(self.arities)
        self.into = _into(C)
        self.out = [list(C.out_of(a)) for a in C.objects]

    def _parts(self, c, xs):
        return [self.out[c]] + [self.into[x] for x in xs]

    def size(self, n, c, xs):
        if n not in self.arities:
            return 0
        s = 1
        for p in self._parts(c, xs):
            s *= len(p)
        return s

    def decode(self, c, xs, v):
        parts = self._parts(c, xs)
        out = []
        for p in reversed(parts):
            v, r = divmod(v, len(p))
            out.append(p[r])
        return out[::-1]

    def encode(self, c, xs, ms):
        v = 0
        for p, m in zip(self._parts(c, xs), ms):
            v = v * len(p) + p.index(m)
        return v

    def out_act(self, n, c, xs, f, v):
        ms = self.decode(c, xs, v)
        ms[0] = self.C.compose(ms[0], f)
        return self.encode(self.C.src[f], xs, ms)

    def in_act(self, n, c, xs, i, m, v):
        ms = self.decode(c, xs, v)
        ms[i + 1] = self.C.compose(m, ms[i + 1])
        ys = list(xs)
        ys[i] = self.C.tgt[m]
        return self.encode(c, ys, ms)

    def perm_act(self, n, c, xs, sigma, v):
        ms = self.decode(c, xs, v)
        return self.encode(c, [xs[s] for s in sigma], [ms[0]] + [ms[s + 1] for s in sigma])


class UnitCS(CSModule):
    """The plethysm unit: e(1)(c; x) = Hom(c, x), empty in other arities."""
    max_arity = 1

    def __init__(self, C):
        super().__init__(C)

    def size(self, n, c, xs):
        return len(self.C.hom(c, xs[0])) if n == 1 else 0

    def out_act(self, n, c, xs, f, v):
        m = self.C.hom(c, xs[0])[v]
        return self.C.hom(self.C.src[f], xs[0]).index(self.C.compose(m, f))

    def in_act(self, n, c, xs, i, m, v):
        u = self.C.hom(c, xs[0])[v]
        return self.C.hom(c, self.C.tgt[m]).index(self.C.compose(m, u))

    def perm_act(self, n, c, xs, sigma, v):
        return v


def unit_module(C) -> UnitCS:
    return UnitCS(C)


def check_cs_module(V: CSModule, n_max: int) -> Report:
    """Exhaustive functoriality and compatibility of the three actions."""
    rep = Report("CS-module functoriality")
    C = V.C
    for n in range(n_max + 1):
        for c in C.objects:
            for xs in itertools.product(C.objects, repeat=n):
                xs = tuple(xs)
                for v in V.elements(n, c, xs):
                    for f1 in C.morphisms:
                        if C.tgt[f1] != c:
                            continue
                        c2 = C.src[f1]
                        w = V.out_act(n, c, xs, f1, v)
                        if C.is_identity(f1) and w != v:
                            return rep.fail("identity output morphism acts", (n, c, xs, v))
                        for f2 in C.morphisms:
                            if C.tgt[f2] == c2:
                                rep.checked += 1
                                if V.out_act(n, c2, xs, f2, w) != V.out_act(n, c, xs, C.compose(f1, f2), v):
                                    return rep.fail("output action not contravariant", (n, c, f1, f2, v))
                        for i in range(n):
                            for m in C.out_of(xs[i]):
                                ys = list(xs)
                                ys[i] = C.tgt[m]
                                a = V.in_act(n, c2, xs, i, m, w)
                                b = V.out_act(n, c, tuple(ys), f1, V.in_act(n, c, xs, i, m, v))
                                rep.checked += 1
                                if a != b:
                                    return rep.fail("input and output actions do not commute", (n, c, i, m, f1, v))
                    for i in range(n):
                        for m1 in C.out_of(xs[i]):
                            ys = list(xs)
                            ys[i] = C.tgt[m1]
                            w = V.in_act(n, c, xs, i, m1, v)
                            if C.is_identity(m1) and w != v:
                                return rep.fail("identity input morphism acts", (n, c, xs, i, v))
                            for m2 in C.out_of(ys[i]):
                                rep.checked += 1
                                if V.in_act(n, c, tuple(ys), i, m2, w) != V.in_act(n, c, xs, i, C.compose(m2, m1), v):
                                    return rep.fail("input action not functorial", (n, c, i, m1, m2, v))
                    for sigma in itertools.permutations(range(n)):
                        new = tuple(xs[s] for s in sigma)
                        w = V.perm_act(n, c, xs, sigma, v)
                        for tau in itertools.permutations(range(n)):
                            rep.checked += 1
                            if V.perm_act(n, c, new, tau, w) != V.perm_act(n, c, xs, tuple(sigma[t] for t in tau), v):
                                return rep.fail("permutations do not compose", (n, c, sigma, tau, v))
                        for i in range(n):
                            for m in C.out_of(new[i]):
                                ys = list(xs)
                                ys[sigma[i]] = C.tgt[m]
                                a = V.in_act(n, c, new, i, m, w)
                                b = V.perm_act(n, c, tuple(ys), sigma, V.in_act(n, c, xs, sigma[i], m, v))
                                rep.checked += 1
                                if a != b:
                                    return rep.fail("input action and permutations do not commute", (n, c, sigma, i, m, v))
                        for f in C.morphisms:
                            if C.tgt[f] == c:
                                a = V.out_act(n, c, new, f, w)
                                b = V.perm_act(n, C.src[f], xs, sigma, V.out_act(n, c, xs, f, v))
                                rep.checked += 1
                                if a != b:
                                    return rep.fail("output action and permutations do not commute", (n, c, sigma, f, v))
    return rep


# --- tensor product -------------------------------------------------------

class TensorCS(CSModule):
    """(V (x) W)(n): for each k-subset S of the inputs, V(k) on the inputs in
    S and W(n - k) on the rest, with the same output color.  The subset form
    is the shuffle normal form of the induced module."""

    def __init__(self, V, W):
        super().__init__(V.C)
        self.V, self.W = V, W
        self.max_arity = V.max_arity + W.max_arity
        self._cache = {}

    def _list(self, n, c, xs):
        key = (n, c, xs)
        if key not in self._cache:
            out = []
            for k in range(n + 1):
                for S in itertools.combinations(range(n), k):
                    T = tuple(i for i in range(n) if i not in S)
                    xv = tuple(xs[i] for i in S)
                    xw = tuple(xs[i] for i in T)
                    for v in self.V.elements(k, c, xv):
                        for w in self.W.elements(n - k, c, xw):
                            out.append((S, v, w))
            self._cache[key] = (out, {e: i for i, e in enumerate(out)})
        return self._cache[key]

    def size(self, n, c, xs):
        return len(self._list(n, c, tuple(xs))[0])

    def element(self, n, c, xs, e):
        return self._list(n, c, tuple(xs))[1][e]

    def out_act(self, n, c, xs, f, e):
        S, v, w = self._list(n, c, tuple(xs))[0][e]
        T = tuple(i for i in range(n) if i not in S)
        v2 = self.V.out_act(len(S), c, tuple(xs[i] for i in S), f, v)
        w2 = self.W.out_act(len(T), c, tuple(xs[i] for i in T), f, w)
        return self.element(n, self.C.src[f], xs, (S, v2, w2))

    def in_act(self, n, c, xs, i, m, e):
        S, v, w = self._list(n, c, tuple(xs))[0][e]
        T = tuple(j for j in range(n) if j not in S)
        ys = list(xs)
        ys[i] = self.C.tgt[m]
        if i in S:
            v = self.V.in_act(len(S), c, tuple(xs[j] for j in S), S.index(i), m, v)
        else:
            w = self.W.in_act(len(T), c, tuple(xs[j] for j in T), T.index(i), m, w)
        return self.element(n, c, tuple(ys), (S, v, w))

    def perm_act(self, n, c, xs, sigma, e):
        S, v, w = self._list(n, c, tuple(xs))[0][e]
        T = tuple(j for j in range(n) if j not in S)
        inv = [0] * n
        for a, b in enumerate(sigma):
            inv[b] = a
        S2 = tuple(sorted(inv[j] for j in S))
        T2 = tuple(sorted(inv[j] for j in T))
        rho_v = tuple(S.index(sigma[j]) for j in S2)
        rho_w = tuple(T.index(sigma[j]) for j in T2)
        v = self.V.perm_act(len(S), c, tuple(xs[j] for j in S), rho_v, v)
        w = self.W.perm_act(len(T), c, tuple(xs[j] for j in T), rho_w, w)
        return self.element(n, c, tuple(xs[s] for s in sigma), (S2, v, w))


def cs_tensor(V, W) -> TensorCS:
    return TensorCS(V, W)


# --- plethysm -------------------------------------------------------------

def _ordered_partitions(n, k):
    """Every assignment of inputs 0..n-1 to k labeled blocks."""
    for labels in itertools.product(range(k), repeat=n):
        yield tuple(tuple(i for i in range(n) if labels[i] == j) for j in range(k))


class PlethysmCS(CSModule):
    """(V o W)(n)(c; xs) = sum over k of the coend over C wr S_k of
    V(k)(c; ys) x W^k(ys; xs), computed as a coequalizer.

    A generator is ``(k, ys, v, blocks, ws)`` where ``blocks`` assigns the
    inputs to k labeled blocks and ``ws[j]`` lies in W(|block j|)(ys[j]; ...).
    """

    def __init__(self, V, W):
        super().__init__(V.C)
        self.V, self.W = V, W
        self.max_arity = V.max_arity * max(W.max_arity, 1)
        self._cache = {}

    def _generators(self, n, c, xs):
        C, V, W = self.C, self.V, self.W
        out = []
        for k in range(V.max_arity + 1):
            for ys in itertools.product(C.objects, repeat=k):
                vs = list(V.elements(k, c, ys))
                if not vs:
                    continue
                for blocks in _ordered_partitions(n, k):
                    wlists = [list(W.elements(len(B), ys[j], tuple(xs[i] for i in B)))
                              for j, B in enumerate(blocks)]
                    for v in vs:
                        for ws in itertools.product(*wlists):
                            out.append((k, ys, v, blocks, ws))
        return out

    def _relations(self, n, c, xs, gen):
        """Images (y', V(phi)v, W(phi^-1)w) for generating morphisms phi of
        the wreath groupoid out of ys."""
        C, V, W = self.C, self.V, self.W
        k, ys, v, blocks, ws = gen
        for i in range(k):
            xb = tuple(xs[j] for j in blocks[i])
            for m in C.out_of(ys[i]):
                if C.is_identity(m):
                    continue
                ys2 = ys[:i] + (C.tgt[m],) + ys[i + 1:]
                v2 = V.in_act(k, c, ys, i, m, v)
                w2 = W.out_act(len(blocks[i]), ys[i], xb, C.inverse[m], ws[i])
                yield (k, ys2, v2, blocks, ws[:i] + (w2,) + ws[i + 1:])
        for sigma in itertools.permutations(range(k)):
            if sigma == tuple(range(k)):
                continue
            yield (k, tuple(ys[s] for s in sigma), V.perm_act(k, c, ys, sigma, v),
                   tuple(blocks[s] for s in sigma), tuple(ws[s] for s in sigma))

    def presentation(self, n, c, xs):
        key = (n, c, tuple(xs))
        if key not in self._cache:
            gens = self._generators(n, c, tuple(xs))
            index = {g: i for i, g in enumerate(gens)}
            parent = list(range(len(gens)))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a
            for i, g in enumerate(gens):
                for h in self._relations(n, c, tuple(xs), g):
                    a, b = find(i), find(index[h])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
            roots = sorted({find(i) for i in range(len(gens))})
            cid = {r: j for j, r in enumerate(roots)}
            self._cache[key] = (gens, index, [gens[r] for r in roots],
                                [cid[find(i)] for i in range(len(gens))])
        return self._cache[key]

    def size(self, n, c, xs):
        return len(self.presentation(n, c, xs)[2])

    def representative(self, n, c, xs, e):
        return self.presentation(n, c, xs)[2][e]

    def class_of(self, n, c, xs, gen):
        gens, index, reps, cls = self.presentation(n, c, xs)
        return cls[index[gen]]

    def out_act(self, n, c, xs, f, e):
        k, ys, v, blocks, ws = self.representative(n, c, xs, e)
        v2 = self.V.out_act(k, c, ys, f, v)
        return self.class_of(n, self.C.src[f], xs, (k, ys, v2, blocks, ws))

    def in_act(self, n, c, xs, i, m, e):
        k, ys, v, blocks, ws = self.representative(n, c, xs, e)
        j = next(b for b, B in enumerate(blocks) if i in B)
        B = blocks[j]
        w2 = self.W.in_act(len(B), ys[j], tuple(xs[t] for t in B), B.index(i), m, ws[j])
        xs2 = list(xs)
        xs2[i] = self.C.tgt[m]
        return self.class_of(n, c, tuple(xs2), (k, ys, v, blocks, ws[:j] + (w2,) + ws[j + 1:]))

    def perm_act(self, n, c, xs, sigma, e):
        k, ys, v, blocks, ws = self.representative(n, c, xs, e)
        inv = [0] * n
        for a, b in enumerate(sigma):
            inv[b] = a
        blocks2, ws2 = [], []
        for j, B in enumerate(blocks):
            B2 = tuple(sorted(inv[t] for t in B))
            rho = tuple(B.index(sigma[t]) for t in B2)
            ws2.append(self.W.perm_act(len(B), ys[j], tuple(xs[t] for t in B), rho, ws[j]))
            blocks2.append(B2)
        return self.class_of(n, c, tuple(xs[s] for s in sigma), (k, ys, v, tuple(blocks2), tuple(ws2)))


def plethysm(V, W) -> PlethysmCS:
    if V.max_arity is None:
        raise ValueError("the outer module needs a bounded arity")
    return PlethysmCS(V, W)


def _each_carrier(C, n_max):
    for n in range(n_max + 1):
        for c in C.objects:
            for xs in itertools.product(C.objects, repeat=n):
                yield n, c, tuple(xs)


def _check_natural(rep, A, B, phi, n_max):
    """phi(n, c, xs, a) : A -> B must commute with all three actions."""
    C = A.C
    for n, c, xs in _each_carrier(C, n_max):
        for a in A.elements(n, c, xs):
            b = phi(n, c, xs, a)
            for f in C.morphisms:
                if C.tgt[f] == c:
                    rep.checked += 1
                    if phi(n, C.src[f], xs, A.out_act(n, c, xs, f, a)) != B.out_act(n, c, xs, f, b):
                        return rep.fail("not natural for output morphisms", (n, c, xs, f, a))
            for i in range(n):
                for m in C.out_of(xs[i]):
                    ys = list(xs)
                    ys[i] = C.tgt[m]
                    rep.checked += 1
                    if phi(n, c, tuple(ys), A.in_act(n, c, xs, i, m, a)) != B.in_act(n, c, xs, i, m, b):
                        return rep.fail("not natural for input morphisms", (n, c, xs, i, m, a))
            for sigma in itertools.permutations(range(n)):
                rep.checked += 1
                new = tuple(xs[s] for s in sigma)
                if phi(n, c, new, A.perm_act(n, c, xs, sigma, a)) != B.perm_act(n, c, xs, sigma, b):
                    return rep.fail("not natural for permutations", (n, c, xs, sigma, a))
    return rep


def _check_bijection(rep, A, B, phi, psi, n_max):
    for n, c, xs in _each_carrier(A.C, n_max):
        if A.size(n, c, xs) != B.size(n, c, xs):
            return rep.fail("sizes differ", (n, c, xs, A.size(n, c, xs), B.size(n, c, xs)))
        for a in A.elements(n, c, xs):
            rep.checked += 1
            if psi(n, c, xs, phi(n, c, xs, a)) != a:
                return rep.fail("maps are not mutually inverse", (n, c, xs, a))
    return rep


def left_unit_maps(V):
    """e o V -> V: [u : c -> y, v] |-> V(u)(v), and its inverse v |-> [id_c, v]."""
    C = V.C
    E = plethysm(unit_module(C), V)

    def phi(n, c, xs, e):
        k, ys, u, blocks, ws = E.representative(n, c, xs, e)
        f = C.hom(c, ys[0])[u]
        return V.out_act(n, ys[0], xs, f, ws[0])

    def psi(n, c, xs, v):
        u = C.hom(c, c).index(C.ident[c])
        return E.class_of(n, c, xs, (1, (c,), u, (tuple(range(n)),), (v,)))
    return E, phi, psi


def right_unit_maps(V):
    """V o e -> V: apply the unit morphisms at the inputs, then put the
    inputs back in order; the inverse uses identities and singleton blocks."""
    C = V.C
    e = unit_module(C)
    P = plethysm(V, e)

    def phi(n, c, xs, el):
        k, ys, v, blocks, ws = P.representative(n, c, xs, el)
        cur = list(ys)
        for j in range(k):
            (t,) = blocks[j]
            m = C.hom(ys[j], xs[t])[ws[j]]
            v = V.in_act(k, c, tuple(cur), j, m, v)
            cur[j] = xs[t]
        order = [blocks[j][0] for j in range(k)]
        sigma = tuple(order.index(t) for t in range(n))
        return V.perm_act(n, c, tuple(cur), sigma, v)

    def psi(n, c, xs, v):
        ws = tuple(C.hom(x, x).index(C.ident[x]) for x in xs)
        return P.class_of(n, c, xs, (n, xs, v, tuple((t,) for t in range(n)), ws))
    return P, phi, psi


def check_plethysm_unit(V: CSModule, n_max: int = 3) -> Report:
    """e o V = V = V o e through explicit natural bijections."""
    rep = Report("plethysm unit")
    for side, maps in (("left", left_unit_maps), ("right", right_unit_maps)):
        A, phi, psi = maps(V)
        sub = Report(f"{side} unit")
        _check_bijection(sub, A, V, phi, psi, n_max)
        if sub.ok:
            _check_natural(sub, A, V, phi, n_max)
        rep.merge(sub)
        if not rep.ok:
            return rep
    return rep


# --- twisted arrows and coends ----------------------------------------------

class Bifunctor:
    """F : C^op x C -> FinSet.  ``act(a, b, u, v, z)`` for u : a2 -> a and
    v : b -> b2 sends z in F(a, b) to F(a2, b2)."""

    def __init__(self, C):
        self.C = C

    def size(self, a, b) -> int:
        raise NotImplementedError

    def act(self, a, b, u, v, z):
        raise NotImplementedError


class HomBifunctor(Bifunctor):
    def size(self, a, b):
        return len(self.C.hom(a, b))

    def act(self, a, b, u, v, z):
        C = self.C
        p = C.compose(v, C.compose(C.hom(a, b)[z], u))
        return C.hom(C.src[u], C.tgt[v]).index(p)


class ConstantBifunctor(Bifunctor):
    def __init__(self, C, k):
        super().__init__(C)
        self.k = k

    def size(self, a, b):
        return self.k

    def act(self, a, b, u, v, z):
        return z


class QuotientHomBifunctor(Bifunctor):
    """A disjoint union of pieces Hom(-, b_i) x Hom(c_i, -) / K_i where K_i
    is a subgroup of Aut(b_i) x Aut(c_i) acting by (k1, k2).(p, q) =
    (k1 p, q k2^-1)."""

    def __init__(self, C, pieces):
        super().__init__(C)
        self.pieces = []
        for b, c, gens in pieces:
            self.pieces.append((b, c, self._closure(b, c, gens)))
        self._elems = {}

    def _closure(self, b, c, gens):
        C = self.C
        group = {(C.ident[b], C.ident[c])}
        frontier = list(group)
        while frontier:
            k1, k2 = frontier.pop()
            for g1, g2 in gens:
                h = (C.compose(g1, k1), C.compose(g2, k2))
                if h not in group:
                    group.add(h)
                    frontier.append(h)
        return sorted(group)

    def _canon(self, i, p, q):
        C = self.C
        b, c, K = self.pieces[i]
        return min((i, C.compose(k1, p), C.compose(q, C.inverse[k2])) for k1, k2 in K)

    def _list(self, a, bb):
        key = (a, bb)
        if key not in self._elems:
            C = self.C
            out = set()
            for i, (b, c, K) in enumerate(self.pieces):
                for p in C.hom(a, b):
                    for q in C.hom(c, bb):
                        out.add(self._canon(i, p, q))
            out = sorted(out)
            self._elems[key] = (out, {e: j for j, e in enumerate(out)})
        return self._elems[key]

    def size(self, a, b):
        return len(self._list(a, b)[0])

    def act(self, a, b, u, v, z):
        C = self.C
        i, p, q = self._list(a, b)[0][z]
        e = self._canon(i, C.compose(p, u), C.compose(v, q))
        return self._list(C.src[u], C.tgt[v])[1][e]


def random_bifunctor(C, seed) -> QuotientHomBifunctor:
    rng = random.Random(seed)
    pieces = []
    for _ in range(rng.randint(1, 3)):
        b = rng.choice(list(C.objects))
        c = C.tgt[rng.choice(C.out_of(b))]  # same component, else the piece is empty
        gens = []
        for _ in range(rng.randint(0, 2)):
            gens.append((rng.choice(C.aut(b)), rng.choice(C.aut(c))))
        pieces.append((b, c, gens))
    return QuotientHomBifunctor(C, pieces)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def coend(F: Bifunctor):
    """Classes of the disjoint union of F(x, x), with F(u, 1) z ~ F(1, u) z."""
    C = F.C
    elems = [(x, z) for x in C.objects for z in range(F.size(x, x))]
    index = {e: i for i, e in enumerate(elems)}
    uf = _UnionFind(len(elems))
    for u in C.morphisms:
        x, x2 = C.src[u], C.tgt[u]
        for z in range(F.size(x2, x)):
            left = F.act(x2, x, u, C.ident[x], z)       # in F(x, x)
            right = F.act(x2, x, C.ident[x2], u, z)     # in F(x2, x2)
            uf.union(index[(x, left)], index[(x2, right)])
    return elems, index, uf


def twisted_arrow_colimit(F: Bifunctor):
    """Classes of the disjoint union over arrows f : a -> b of F(a, b), with
    z ~ F(u, v) z for every morphism (u, v) : f -> v f u of the twisted arrow
    category."""
    C = F.C
    elems = [(f, z) for f in C.morphisms for z in range(F.size(C.src[f], C.tgt[f]))]
    index = {e: i for i, e in enumerate(elems)}
    uf = _UnionFind(len(elems))
    for f, z in elems:
        a, b = C.src[f], C.tgt[f]
        for u in C.morphisms:
            if C.tgt[u] != a:
                continue
            for v in C.out_of(b):
                f2 = C.compose(v, C.compose(f, u))
                uf.union(index[(f, z)], index[(f2, F.act(a, b, u, v, z))])
    return elems, index, uf


def _classes(elems, uf):
    return sorted({uf.find(i) for i in range(len(elems))})


def check_twisted_arrow_coend(F: Bifunctor, kind: str = "set") -> Report:
    """Compute the coend and the colimit over twisted arrows independently
    and check that [z in F(x, x)] |-> [z at id_x] is a bijection with inverse
    [w at f : a -> b] |-> [F(1, f^-1) w at id_a].

    With kind="vect" both sides are linearized and compared as quotient
    spaces, the map being checked to have full rank."""
    rep = Report("twisted arrow colimit = coend")
    C = F.C
    ce, cidx, cuf = coend(F)
    te, tidx, tuf = twisted_arrow_colimit(F)
    if kind == "vect":
        return _check_linear(rep, F, ce, cidx, te, tidx)
    ccls, tcls = _classes(ce, cuf), _classes(te, tuf)
    rep.details = {"coend": len(ccls), "twisted": len(tcls)}

    def forward(i):
        x, z = ce[i]
        return tuf.find(tidx[(C.ident[x], z)])

    def backward(j):
        f, w = te[j]
        a, b = C.src[f], C.tgt[f]
        return cuf.find(cidx[(a, F.act(a, b, C.ident[a], C.inverse[f], w))])
    for i in range(len(ce)):
        rep.checked += 1
        if forward(i) != forward(cuf.find(i)):
            return rep.fail("forward map not well defined", ce[i])
    for j in range(len(te)):
        rep.checked += 1
        if backward(j) != backward(tuf.find(j)):
            return rep.fail("backward map not well defined", te[j])
    for r in ccls:
        if backward(forward(r)) != r:
            return rep.fail("backward o forward != id", ce[r])
    for r in tcls:
        if forward(backward(r)) != r:
            return rep.fail("forward o backward != id", te[r])
    if len(ccls) != len(tcls):
        return rep.fail("cardinalities differ", (len(ccls), len(tcls)))
    return rep


def _check_linear(rep, F, ce, cidx, te, tidx):
    C = F.C
    Qc, Qt = QuotientSpace(len(ce)), QuotientSpace(len(te))
    for u in C.morphisms:
        x, x2 = C.src[u], C.tgt[u]
        for z in range(F.size(x2, x)):
            i = cidx[(x, F.act(x2, x, u, C.ident[x], z))]
            j = cidx[(x2, F.act(x2, x, C.ident[x2], u, z))]
            if i != j:
                Qc.add_relation({i: 1, j: -1})
    for f, z in te:
        a, b = C.src[f], C.tgt[f]
        for u in C.morphisms:
            if C.tgt[u] != a:
                continue
            for v in C.out_of(b):
                i = tidx[(f, z)]
                j = tidx[(C.compose(v, C.compose(f, u)), F.act(a, b, u, v, z))]
                if i != j:
                    Qt.add_relation({i: 1, j: -1})
    rep.details = {"coend": Qc.quotient_dim, "twisted": Qt.quotient_dim}
    if Qc.quotient_dim != Qt.quotient_dim:
        return rep.fail("dimensions differ", (Qc.quotient_dim, Qt.quotient_dim))
    images = QuotientSpace(Qt.quotient_dim)
    for b in Qc.basis:
        x, z = ce[b]
        col = Qt.project({tidx[(C.ident[x], z)]: 1})
        images.add_relation({k: c for k, c in enumerate(col) if c})
        rep.checked += 1
    if images.rank != Qt.quotient_dim:
        return rep.fail("induced linear map is not an isomorphism", images.rank)
    return rep
