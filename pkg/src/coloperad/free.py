"""Stable CS-modules and the free modular operad monad M.

A stable module V assigns to every decorated corolla (g; a_1..a_n) a finite
set (kind "set") or a finite-dimensional space (kind "vect"), together with
the action of the corolla groupoid, generated by

* ``leg(g, colors, i, m, x)``: a morphism m : a_i -> b applied at leg i;
* ``perm(g, colors, sigma, x)``: relabel legs so that new leg i is old leg
  sigma[i].

Set modules return an element index, vect modules a sparse column
``{index: coefficient}``.

MV(g; a) is the colimit over decorated stable graphs mapping to the corolla.
Every decorated graph is isomorphic to a gauge-fixed one: an edge (x, y) with
x < y is colored a at x and a^v at y with pairing eta_a.  The colimit is
computed over gauge-fixed objects modulo two kinds of generators:

* edge gauge: m : a -> b at x together with (m^-1)^v at y;
* shape automorphisms fixing the legs, followed by eta at the far flag of
  any edge whose orientation flips.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import Graph, GraphError, automorphisms, classify_graph, is_tree, stable_graphs
from .linalg import QuotientSpace, rank
from .report import Report


class IncompleteColimitError(RuntimeError):
    pass


# --- modules ----------------------------------------------------------------

def _digest(*parts) -> str:
    return hashlib.sha256(json.dumps(parts, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _groupoid_digest(C, D) -> str:
    return _digest(C.to_dict(), list(D.on_objects), list(D.on_morphisms), list(D.eta))


def perm_sign(sigma) -> int:
    s, seen = 1, set()
    for i in range(len(sigma)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = sigma[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


class StableModule:
    kind = "set"

    def __init__(self, C, D):
        self.C, self.D = C, D

    def size(self, g, colors) -> int:
        raise NotImplementedError

    def leg(self, g, colors, i, m, x):
        raise NotImplementedError

    def perm(self, g, colors, sigma, x):
        raise NotImplementedError

    def fingerprint(self) -> str:
        raise NotImplementedError

    def cached_fingerprint(self) -> str:
        fp = self.__dict__.get("_fingerprint")
        if fp is None:
            fp = self.__dict__["_fingerprint"] = self.fingerprint()
        return fp

    def column(self, result) -> dict:
        return {result: 1} if self.kind == "set" else result


class ConstantModule(StableModule):
    """``size`` points (or basis vectors) on every corolla whose (g, n) is in
    ``support``; morphisms act trivially, except that with ``twist="sign"``
    (vect kind only) a leg permutation acts by its sign."""

    def __init__(self, C, D, support, size=1, kind="set", twist=None):
        super().__init__(C, D)
        self.support = frozenset(tuple(s) for s in support)
        self.n = size
        self.kind = kind
        if twist not in (None, "sign"):
            raise ValueError(f"unknown twist {twist!r}")
        if twist and kind != "vect":
            raise ValueError("a sign twist needs kind='vect'")
        self.twist = twist

    def size(self, g, colors):
        return self.n if (g, len(colors)) in self.support else 0

    def leg(self, g, colors, i, m, x):
        return x if self.kind == "set" else {x: 1}

    def perm(self, g, colors, sigma, x):
        if self.kind == "set":
            return x
        return {x: perm_sign(sigma) if self.twist else 1}

    def fingerprint(self):
        return _digest("constant", sorted(self.support), self.n, self.kind, self.twist,
                       _groupoid_digest(self.C, self.D))


class RepresentableModule(StableModule):
    """V(g; a_1..a_n) = product over legs of the morphisms ending at a_i, on
    the supported (g, n); the corolla groupoid acts by postcomposition and by
    permuting factors.  Every stabilizer acts freely."""

    def __init__(self, C, D, support):
        super().__init__(C, D)
        self.support = frozenset(tuple(s) for s in support)
        into = [[] for _ in C.objects]
        for m in C.morphisms:
            into[C.tgt[m]].append(m)
        self.into = into
        self._pos = {m: into[C.tgt[m]].index(m) for m in C.morphisms}

    def size(self, g, colors):
        if (g, len(colors)) not in self.support:
            return 0
        out = 1
        for a in colors:
            out *= len(self.into[a])
        return out

    def _decode(self, colors, x):
        parts = []
        for a in reversed(colors):
            x, r = divmod(x, len(self.into[a]))
            parts.append(self.into[a][r])
        return parts[::-1]

    def _encode(self, colors, parts):
        x = 0
        for a, m in zip(colors, parts):
            x = x * len(self.into[a]) + self._pos[m]
        return x

    def leg(self, g, colors, i, m, x):
        parts = self._decode(colors, x)
        parts[i] = self.C.compose(m, parts[i])
        new = list(colors)
        new[i] = self.C.tgt[m]
        return self._encode(new, parts)

    def perm(self, g, colors, sigma, x):
        parts = self._decode(colors, x)
        return self._encode([colors[s] for s in sigma], [parts[s] for s in sigma])

    def fingerprint(self):
        return _digest("representable", sorted(self.support), _groupoid_digest(self.C, self.D))


class LinearizedModule(StableModule):
    """The free vector space on a set module, optionally twisted by the sign
    of leg permutations."""
    kind = "vect"

    def __init__(self, V, twist=None):
        super().__init__(V.C, V.D)
        if V.kind != "set":
            raise ValueError("only set modules can be linearized")
        self.base, self.twist = V, twist

    def size(self, g, colors):
        return self.base.size(g, colors)

    def leg(self, g, colors, i, m, x):
        return {self.base.leg(g, colors, i, m, x): 1}

    def perm(self, g, colors, sigma, x):
        return {self.base.perm(g, colors, sigma, x): perm_sign(sigma) if self.twist else 1}

    def fingerprint(self):
        return _digest("linear", self.base.cached_fingerprint(), self.twist)


def module_from_dict(C, D, d) -> StableModule:
    """JSON module description:
    {"type": "constant" | "representable", "kind": "set" | "vect",
     "support": [[g, n], ...], "size": k, "twist": null | "sign"}"""
    typ = d.get("type", "constant")
    support = d.get("support", [[0, 3]])
    if typ == "constant":
        return ConstantModule(C, D, support, d.get("size", 1), d.get("kind", "set"), d.get("twist"))
    if typ == "representable":
        V = RepresentableModule(C, D, support)
        return LinearizedModule(V) if d.get("kind") == "vect" else V
    raise ValueError(f"unknown module type {typ!r}")


def check_module(V: StableModule, types, max_elements=64) -> Report:
    """Functoriality of the corolla-groupoid action on every color tuple of
    the given (g, n) types."""
    rep = Report("module functoriality")
    C = V.C

    def col(x):
        return V.column(x)

    def apply(col_, fn):
        out = {}
        for k, c in col_.items():
            for k2, c2 in fn(k).items():
                out[k2] = out.get(k2, 0) + c * c2
        return {k: c for k, c in out.items() if c}

    for g, n in types:
        for colors in itertools.product(C.objects, repeat=n):
            size = V.size(g, colors)
            for x in range(min(size, max_elements)):
                for i in range(n):
                    a = colors[i]
                    if col(V.leg(g, colors, i, C.ident[a], x)) != {x: 1}:
                        return rep.fail("identity does not act trivially", (g, colors, i, x))
                    for m1 in C.out_of(a):
                        c1 = list(colors)
                        c1[i] = C.tgt[m1]
                        once = col(V.leg(g, colors, i, m1, x))
                        for m2 in C.out_of(C.tgt[m1]):
                            two = apply(once, lambda y: col(V.leg(g, tuple(c1), i, m2, y)))
                            rep.checked += 1
                            if two != col(V.leg(g, colors, i, C.compose(m2, m1), x)):
                                return rep.fail("leg actions do not compose", (g, colors, i, m1, m2, x))
                for sigma in itertools.permutations(range(n)):
                    new = tuple(colors[s] for s in sigma)
                    moved = col(V.perm(g, colors, sigma, x))
                    for i in range(n):
                        for m in C.out_of(new[i]):
                            lhs = apply(moved, lambda y: col(V.leg(g, new, i, m, y)))
                            c2 = list(colors)
                            c2[sigma[i]] = C.tgt[m]
                            rhs = apply(col(V.leg(g, colors, sigma[i], m, x)),
                                        lambda y: col(V.perm(g, tuple(c2), sigma, y)))
                            rep.checked += 1
                            if lhs != rhs:
                                return rep.fail("leg and permutation actions do not commute",
                                                (g, colors, sigma, i, m, x))
                    for tau in itertools.permutations(range(n)):
                        both = apply(moved, lambda y: col(V.perm(g, new, tau, y)))
                        comp = tuple(sigma[t] for t in tau)
                        if both != col(V.perm(g, colors, comp, x)):
                            return rep.fail("permutations do not compose", (g, colors, sigma, tau, x))
    return rep


# --- decorated graphs -------------------------------------------------------

def _local(G: Graph, colors, v):
    return tuple(colors[x] for x in G.vertex_flags(v))


def _apply_vertex(col, v, fn):
    """Apply a per-vertex linear map to a column of vertex-value tuples."""
    out = {}
    for vals, c in col.items():
        for y, c2 in fn(vals[v]).items():
            key = vals[:v] + (y,) + vals[v + 1:]
            out[key] = out.get(key, 0) + c * c2
    return {k: c for k, c in out.items() if c}


def act_at_flag(V, G, colors, col, x, m):
    """Apply the morphism m : colors[x] -> b at flag x.  Mutates ``colors``."""
    v = G.h[x]
    slot = G.vertex_flags(v).index(x)
    local = _local(G, colors, v)
    g = G.genus[v]
    col = _apply_vertex(col, v, lambda y: V.column(V.leg(g, local, slot, m, y)))
    colors[x] = V.C.tgt[m]
    return col


def transport(V, G, colors, col, fmap, H):
    """Push a gauge-fixed decorated graph on G along the flag isomorphism
    fmap : G -> H; the result is gauge-fixed on H."""
    finv = [0] * len(fmap)
    for x, y in enumerate(fmap):
        finv[y] = x
    new_colors = [None] * len(fmap)
    for x, y in enumerate(fmap):
        new_colors[y] = colors[x]
    vm = [None] * G.n_vertices
    for x, y in enumerate(fmap):
        vm[G.h[x]] = H.h[y]
    maps = []
    for v in range(G.n_vertices):
        w = vm[v]
        src = G.vertex_flags(v)
        sigma = tuple(src.index(finv[y]) for y in H.vertex_flags(w))
        maps.append((w, G.genus[v], _local(G, colors, v), sigma))
    out = {}
    for vals, c in col.items():
        acc = {tuple([None] * H.n_vertices): c}
        for v, (w, g, local, sigma) in enumerate(maps):
            nxt = {}
            for key, cc in acc.items():
                for y, c2 in V.column(V.perm(g, local, sigma, vals[v])).items():
                    k2 = key[:w] + (y,) + key[w + 1:]
                    nxt[k2] = nxt.get(k2, 0) + cc * c2
            acc = nxt
        for k, cc in acc.items():
            out[k] = out.get(k, 0) + cc
    col = {k: c for k, c in out.items() if c}
    for x, y in G.edges:
        if fmap[x] > fmap[y]:
            col = act_at_flag(V, H, new_colors, col, fmap[x], V.D.eta[colors[x]])
    return new_colors, col


def gauge_move(V, G, colors, col, e, m):
    """Change the color of edge e by m : a -> b (and (m^-1)^v on the far flag)."""
    C, D = V.C, V.D
    x, y = G.edges[e]
    colors = list(colors)
    col = act_at_flag(V, G, colors, col, x, m)
    col = act_at_flag(V, G, colors, col, y, D.mor(C.inverse[m]))
    return colors, col


def extend_to_graphs(V: StableModule, cg) -> "ExtendedCarrier":
    """V on a C-graph: the product (or tensor product) of the vertex values."""
    G = cg.graph
    if G.n_vertices == 0:
        raise GraphError("a graph needs at least one vertex")
    sizes = []
    for v in range(G.n_vertices):
        if G.euler(v) <= 0:
            raise GraphError(f"vertex {v} is unstable")
        sizes.append(V.size(G.genus[v], _local(G, cg.colors, v)))
    return ExtendedCarrier(V, cg, tuple(sizes))


@dataclass(frozen=True)
class ExtendedCarrier:
    module: StableModule
    cgraph: object
    factors: tuple

    @property
    def size(self) -> int:
        out = 1
        for s in self.factors:
            out *= s
        return out

    def elements(self):
        return itertools.product(*(range(s) for s in self.factors))

    def act(self, m, vals) -> dict:
        """Image of a vertex-value tuple under a C-graph isomorphism m out of
        this graph, as a column over the target's vertex-value tuples."""
        V = self.module
        S, T = m.source, m.target
        gs, gt = S.graph, T.graph
        fmap = [0] * gs.n_flags
        for y, x in enumerate(m.fpull):
            fmap[x] = y
        # first move values along the flag bijection with identity decorations
        acc = {tuple([None] * gt.n_vertices): 1}
        for v in range(gs.n_vertices):
            w = m.vmap[v]
            src = gs.vertex_flags(v)
            sigma = tuple(src.index(m.fpull[y]) for y in gt.vertex_flags(w))
            nxt = {}
            for key, c in acc.items():
                for y, c2 in V.column(V.perm(gs.genus[v], _local(gs, S.colors, v), sigma, vals[v])).items():
                    k2 = key[:w] + (y,) + key[w + 1:]
                    nxt[k2] = nxt.get(k2, 0) + c * c2
            acc = nxt
        colors = [S.colors[m.fpull[y]] for y in range(gt.n_flags)]
        for y in range(gt.n_flags):
            acc = act_at_flag(V, gt, colors, acc, y, m.q[y])
        return acc


# --- colimit presentations --------------------------------------------------

@dataclass
class ColimitPresentation:
    """MV at one decorated corolla.

    ``objects`` are gauge-fixed decorated graphs ``(shape, colors, vals)``
    where shape indexes ``stable_graphs(g, n)``.  For set modules,
    ``class_of`` maps each object to its class and ``representatives`` lists
    the least object of each class; classes are numbered in the order of
    their representatives.  For vect modules ``quotient`` holds the relation
    space and ``representatives`` its basis objects."""
    kind: str
    g: int
    colors: tuple
    objects: list
    index: dict
    representatives: list
    class_of: list = None
    quotient: QuotientSpace = None
    relations: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.representatives)

    @property
    def shapes(self):
        return stable_graphs(self.g, len(self.colors))

    def rep_key(self, c):
        return self.objects[self.representatives[c]]

    def class_of_key(self, key) -> int:
        return self.class_of[self.index[key]]

    def project(self, col) -> tuple:
        return self.quotient.project({self.index[k]: c for k, c in col.items()})

    def graphs_of_class(self, c):
        si, colors, vals = self.rep_key(c)
        return self.shapes[si], colors, vals

    def to_dict(self) -> dict:
        out = {"genus": self.g, "colors": list(self.colors), "kind": self.kind,
               "generators": len(self.objects), "size": self.size,
               "representatives": []}
        for r in self.representatives:
            si, colors, vals = self.objects[r]
            G = self.shapes[si]
            d = G.to_dict()
            d["colors"] = list(colors)
            d["values"] = list(vals)
            out["representatives"].append(d)
        if self.kind == "vect":
            out["rank"] = self.quotient.rank
        return out


_PRESENTATIONS = {}


def _enumerate_objects(V, g, colors, shape_filter, object_filter, bound):
    C, D = V.C, V.D
    out = []
    for si, G in enumerate(stable_graphs(g, len(colors))):
        if shape_filter and not shape_filter(G):
            continue
        for ec in itertools.product(C.objects, repeat=len(G.edges)):
            full = [None] * G.n_flags
            for x, c in zip(G.legs, colors):
                full[x] = c
            for (x, y), a in zip(G.edges, ec):
                full[x], full[y] = a, D.obj(a)
            full = tuple(full)
            if object_filter and not object_filter(G, full):
                continue
            sizes = [V.size(G.genus[v], _local(G, full, v)) for v in range(G.n_vertices)]
            for vals in itertools.product(*(range(s) for s in sizes)):
                out.append((si, full, vals))
                if len(out) > bound:
                    raise IncompleteColimitError(
                        f"more than {bound} decorated graphs at genus {g}, colors {colors}; "
                        "raise the bound")
    return out


def _generator_images(V, key, autos):
    """Columns (over keys) of every generator applied to a basis object."""
    si, colors, vals = key
    G = autos[si][0]
    C = V.C
    for e, (x, _) in enumerate(G.edges):
        for m in C.out_of(colors[x]):
            if m == C.ident[colors[x]]:
                continue
            nc, col = gauge_move(V, G, colors, {vals: 1}, e, m)
            yield {(si, tuple(nc), k): c for k, c in col.items()}
    for f in autos[si][1]:
        if f == tuple(range(G.n_flags)):
            continue
        nc, col = transport(V, G, colors, {vals: 1}, f, G)
        yield {(si, tuple(nc), k): c for k, c in col.items()}


def free_modular(V: StableModule, g: int, colors, bound: int = 10 ** 6,
                 shape_filter=None, object_filter=None, variant="modular") -> ColimitPresentation:
    """MV(g; colors) as an explicit colimit presentation (memoized)."""
    colors = tuple(colors)
    memo_key = (V.cached_fingerprint(), variant, g, colors)
    if memo_key in _PRESENTATIONS:
        P = _PRESENTATIONS[memo_key]
        # a memo hit must honour the caller's bound like a fresh enumeration
        if len(P.objects) > bound:
            raise IncompleteColimitError(
                f"more than {bound} decorated graphs at genus {g}, colors {colors}; raise the bound")
        return P
    objects = _enumerate_objects(V, g, colors, shape_filter, object_filter, bound)
    index = {k: i for i, k in enumerate(objects)}
    shapes = stable_graphs(g, len(colors))
    autos = {}
    for si in {k[0] for k in objects}:
        autos[si] = (shapes[si], automorphisms(shapes[si]))
    if V.kind == "set":
        parent = list(range(len(objects)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a
        for i, key in enumerate(objects):
            for col in _generator_images(V, key, autos):
                (k2, c), = col.items()
                j = index[k2]
                ra, rb = find(i), find(j)
                if ra != rb:
                    if objects[ra] < objects[rb]:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
        roots = sorted({find(i) for i in range(len(objects))}, key=lambda r: objects[r])
        cid = {r: c for c, r in enumerate(roots)}
        P = ColimitPresentation("set", g, colors, objects, index, roots,
                                class_of=[cid[find(i)] for i in range(len(objects))])
    else:
        Q = QuotientSpace(len(objects))
        rels = []
        for i, key in enumerate(objects):
            for col in _generator_images(V, key, autos):
                rel = {i: Fraction(1)}
                for k2, c in col.items():
                    j = index[k2]
                    rel[j] = rel.get(j, 0) - c
                rel = {k: c for k, c in rel.items() if c}
                if rel:
                    rels.append(rel)
                    Q.add_relation(rel)
        P = ColimitPresentation("vect", g, colors, objects, index, list(Q.basis),
                                quotient=Q, relations=rels)
    _PRESENTATIONS.setdefault(memo_key, P)
    return _PRESENTATIONS[memo_key]


def check_presentation(P: ColimitPresentation) -> Report:
    """Internal consistency: representatives are a section of the quotient,
    and for vect presentations dim = generators - rank of the relations."""
    rep = Report("colimit presentation")
    if P.kind == "set":
        for c, r in enumerate(P.representatives):
            rep.checked += 1
            if P.class_of[r] != c:
                return rep.fail("representative not in its class", c)
            if any(P.objects[i] < P.objects[r] for i in range(len(P.objects)) if P.class_of[i] == c):
                return rep.fail("representative is not the least object", c)
        return rep
    n = len(P.objects)
    rows = [[r.get(j, 0) for j in range(n)] for r in P.relations]
    rk = rank(rows) if rows else 0
    rep.checked += 1
    if P.size != n - rk:
        return rep.fail("dim != generators - rank", (P.size, n, rk))
    for c, r in enumerate(P.representatives):
        e = [0] * P.size
        e[c] = 1
        if P.quotient.project({r: 1}) != tuple(e):
            return rep.fail("representatives do not map to a basis", c)
    return rep


def canonical_class(V, P: ColimitPresentation, G: Graph, colors, vals) -> int:
    """Class in the set presentation P of a gauge-fixed decorated graph on an
    arbitrary graph G of the right type."""
    si, f = classify_graph(G)
    R = P.shapes[si]
    nc, col = transport(V, G, list(colors), {tuple(vals): 1}, f, R)
    (k, c), = col.items()
    return P.class_of_key((si, tuple(nc), k))


# --- the monad --------------------------------------------------------------

class FreeModularModule(StableModule):
    """MW as a set module, so that M can be iterated."""

    def __init__(self, W: StableModule, bound: int = 10 ** 6):
        if W.kind != "set":
            raise ValueError("iterating M is supported for set modules")
        super().__init__(W.C, W.D)
        self.W, self.bound = W, bound
        self._cache = {}

    def presentation(self, g, colors) -> ColimitPresentation:
        return free_modular(self.W, g, colors, self.bound)

    def size(self, g, colors):
        return self.presentation(g, tuple(colors)).size

    def leg(self, g, colors, i, m, x):
        key = ("leg", g, tuple(colors), i, m, x)
        if key not in self._cache:
            P = self.presentation(g, tuple(colors))
            si, full, vals = P.rep_key(x)
            G = P.shapes[si]
            full = list(full)
            col = act_at_flag(self.W, G, full, {vals: 1}, G.legs[i], m)
            (k, _), = col.items()
            new = list(colors)
            new[i] = self.C.tgt[m]
            self._cache[key] = self.presentation(g, tuple(new)).class_of_key((si, tuple(full), k))
        return self._cache[key]

    def perm(self, g, colors, sigma, x):
        key = ("perm", g, tuple(colors), tuple(sigma), x)
        if key not in self._cache:
            P = self.presentation(g, tuple(colors))
            si, full, vals = P.rep_key(x)
            G = P.shapes[si]
            H = Graph(G.h, G.tau, G.genus, tuple(G.legs[s] for s in sigma))
            new = tuple(colors[s] for s in sigma)
            self._cache[key] = canonical_class(self.W, self.presentation(g, new), H, full, vals)
        return self._cache[key]

    def fingerprint(self):
        return _digest("M", self.W.cached_fingerprint())


_FREE = {}


def free_module(W: StableModule) -> FreeModularModule:
    fp = W.cached_fingerprint()
    if fp not in _FREE:
        _FREE[fp] = FreeModularModule(W)
    return _FREE[fp]


def monad_unit(V: StableModule, g, colors) -> list[int]:
    """eta : V(g; colors) -> MV(g; colors) on elements (the corolla summand)."""
    P = free_modular(V, g, colors)
    colors = tuple(colors)
    return [P.class_of_key((0, colors, (x,))) for x in range(V.size(g, colors))]


def flatten(W: StableModule, G: Graph, colors, vals):
    """Erase the braces of an MMW-object given by a gauge-fixed decorated
    graph G whose vertex values are MW classes.  Returns the flattened
    (graph, colors, W-values)."""
    nf = G.n_flags
    h, tau, genus_, new_colors, new_vals = [None] * nf, list(G.tau), [], list(colors), []
    for v in range(G.n_vertices):
        local = _local(G, colors, v)
        P = free_modular(W, G.genus[v], local)
        sj, icolors, ivals = P.rep_key(vals[v])
        S = P.shapes[sj]
        off_v = len(genus_)
        fnew = {}
        for j, x in enumerate(G.vertex_flags(v)):
            fnew[S.legs[j]] = x
        for y in range(S.n_flags):
            if y not in fnew:
                fnew[y] = nf
                nf += 1
                tau.append(None)
                h.append(None)
                new_colors.append(icolors[y])
        for y in range(S.n_flags):
            h[fnew[y]] = off_v + S.h[y]
            if not S.is_leg(y):
                tau[fnew[y]] = fnew[S.tau[y]]
        genus_.extend(S.genus)
        new_vals.extend(ivals)
    H = Graph(tuple(h), tuple(tau), tuple(genus_), G.legs)
    return H, tuple(new_colors), tuple(new_vals)


def monad_mult(W: StableModule, g, colors, check=True):
    """mu : MMW(g; colors) -> MW(g; colors) as a list indexed by MMW classes.

    With ``check`` the map is evaluated on every generator object and must be
    constant on classes; a ValueError reports the witness otherwise."""
    colors = tuple(colors)
    MW = free_module(W)
    P2 = free_modular(MW, g, colors)
    P1 = free_modular(W, g, colors)
    keys = P2.objects if check else [P2.rep_key(c) for c in range(P2.size)]
    out = [None] * P2.size
    for key in keys:
        si, full, vals = key
        H, hc, hv = flatten(W, P2.shapes[si], full, vals)
        c = canonical_class(W, P1, H, hc, hv)
        k = P2.class_of_key(key)
        if out[k] is None:
            out[k] = c
        elif out[k] != c:
            raise ValueError(f"multiplication is not well defined on class {k}: {key}")
    return out


def check_monad_laws(W: StableModule, g, colors) -> Report:
    """Unit laws and associativity of M at one decorated corolla, exactly on
    every class."""
    rep = Report(f"monad laws at genus {g}, colors {tuple(colors)}")
    colors = tuple(colors)
    M = free_module(W)
    MM = free_module(M)
    P1 = free_modular(W, g, colors)
    P2 = free_modular(M, g, colors)
    P3 = free_modular(MM, g, colors)
    try:
        mu = monad_mult(W, g, colors)
        mu_M = monad_mult(M, g, colors)
    except ValueError as exc:
        return rep.fail("multiplication not well defined", str(exc))
    eta_M = monad_unit(M, g, colors)
    for c in range(P1.size):
        rep.checked += 1
        if mu[eta_M[c]] != c:
            return rep.fail("left unit mu o eta_M != id", c)
        si, full, vals = P1.rep_key(c)
        G = P1.shapes[si]
        lifted = tuple(monad_unit(W, G.genus[v], _local(G, full, v))[vals[v]]
                       for v in range(G.n_vertices))
        if mu[P2.class_of_key((si, full, lifted))] != c:
            return rep.fail("right unit mu o M(eta) != id", c)
    local_mu = {}
    for d in range(P3.size):
        si, full, vals = P3.rep_key(d)
        G = P3.shapes[si]
        inner = []
        for v in range(G.n_vertices):
            lk = (G.genus[v], _local(G, full, v))
            if lk not in local_mu:
                local_mu[lk] = monad_mult(W, *lk)
            inner.append(local_mu[lk][vals[v]])
        a = mu[P2.class_of_key((si, full, tuple(inner)))]
        b = mu[mu_M[d]]
        rep.checked += 1
        if a != b:
            return rep.fail("associativity mu o M(mu) != mu o mu_M", d)
    rep.details = {"MV": P1.size, "MMV": P2.size, "MMMV": P3.size}
    return rep


# --- restricted graph classes ---------------------------------------------

def tree_monad(V: StableModule, colors, bound: int = 10 ** 6) -> ColimitPresentation:
    """The colimit over genus-zero trees only (cyclic C-operads)."""
    def only_trees(G):
        if not is_tree(G):
            raise AssertionError("a non-tree appeared in genus 0")
        return True
    return free_modular(V, 0, colors, bound, shape_filter=only_trees, variant="tree")


def _rooted(half):
    def ok(G, colors):
        return all(sum(1 for x in G.vertex_flags(v) if colors[x] >= half) == 1
                   for v in range(G.n_vertices))
    return ok


def digraph_tree_monad(V: StableModule, colors, bound: int = 10 ** 6) -> ColimitPresentation:
    """Trees over C + C^op in which every vertex has exactly one outgoing flag.

    V must be defined over the colors produced by disjoint_union_with_op."""
    half = V.C.n_objects // 2
    return free_modular(V, 0, colors, bound, shape_filter=lambda G: is_tree(G),
                        object_filter=_rooted(half), variant="digraph-tree")
