"""Dual graphs, C-graphs, their morphisms, isomorphism search and enumeration.

A graph is a flag set with incidence ``h`` (flag -> vertex), an involution
``tau`` and a genus per vertex.  Legs (fixed points of tau) are labeled: the
tuple ``legs`` lists the leg flags in label order, and isomorphisms must
respect the labels.

C-graphs add a color (object of a groupoid with duality) per flag and a
pairing per edge.  An edge is stored once, keyed by its smaller flag x, as
a morphism A_x -> A_y^v.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .report import Report


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    h: tuple
    tau: tuple
    genus: tuple
    legs: tuple

    def __post_init__(self):
        nf, nv = len(self.h), len(self.genus)
        if len(self.tau) != nf:
            raise GraphError("tau must be defined on every flag")
        for x in range(nf):
            if not 0 <= self.h[x] < nv:
                raise GraphError(f"flag {x} attached to missing vertex {self.h[x]}")
            if not 0 <= self.tau[x] < nf or self.tau[self.tau[x]] != x:
                raise GraphError(f"tau is not an involution at flag {x}")
        if any(g < 0 for g in self.genus):
            raise GraphError("negative vertex genus")
        fixed = sorted(x for x in range(nf) if self.tau[x] == x)
        if sorted(self.legs) != fixed or len(set(self.legs)) != len(self.legs):
            raise GraphError("legs must list every fixed point of tau exactly once")
        twice = sum(2 * g - 2 + self.valence(v) for v, g in enumerate(self.genus)) + 2 - len(self.legs)
        if twice % 2 or twice < 0:
            raise GraphError(f"graph genus {twice / 2} is not a nonnegative integer")

    @property
    def n_flags(self) -> int:
        return len(self.h)

    @property
    def n_vertices(self) -> int:
        return len(self.genus)

    @property
    def n_legs(self) -> int:
        return len(self.legs)

    @cached_property
    def _vflags(self):
        out = [[] for _ in self.genus]
        for x, v in enumerate(self.h):
            out[v].append(x)
        return tuple(tuple(f) for f in out)

    def vertex_flags(self, v) -> tuple:
        """Flags at v in increasing order (the local slot order)."""
        return self._vflags[v]

    def valence(self, v) -> int:
        return len(self._vflags[v])

    def is_leg(self, x) -> bool:
        return self.tau[x] == x

    @cached_property
    def edges(self) -> tuple:
        return tuple((x, self.tau[x]) for x in range(self.n_flags) if x < self.tau[x])

    @cached_property
    def leg_label(self) -> dict:
        return {x: i for i, x in enumerate(self.legs)}

    @property
    def genus_total(self) -> int:
        return genus(self)

    def euler(self, v) -> int:
        return 2 * self.genus[v] - 2 + self.valence(v)

    def serialize(self) -> tuple:
        return (self.genus, self.h, self.tau, self.legs)

    def to_dict(self) -> dict:
        return {"flags": self.n_flags, "vertices": self.n_vertices, "h": list(self.h),
                "tau": list(self.tau), "genus": list(self.genus), "legs": list(self.legs)}


def genus(G: Graph) -> int:
    """The integer g with 2g - 2 + n = sum over vertices of (2g(v) - 2 + n(v))."""
    return (sum(G.euler(v) for v in range(G.n_vertices)) + 2 - G.n_legs) // 2


def is_stable(G: Graph) -> bool:
    return all(G.euler(v) > 0 for v in range(G.n_vertices))


def corolla(g: int, n: int) -> Graph:
    return Graph((0,) * n, tuple(range(n)), (g,), tuple(range(n)))


def graph_from_dict(d) -> Graph:
    legs = d.get("legs")
    if legs is None:
        legs = [x for x, t in enumerate(d["tau"]) if x == t]
    g = Graph(tuple(d["h"]), tuple(d["tau"]), tuple(d.get("genus", [0] * d["vertices"])),
              tuple(legs))
    if "flags" in d and d["flags"] != g.n_flags or "vertices" in d and d["vertices"] != g.n_vertices:
        raise GraphError("declared sizes do not match")
    return g


def relabel(G: Graph, flag_order, vertex_order) -> Graph:
    """The same graph with new flag i = old flag flag_order[i], likewise vertices."""
    fnew = {x: i for i, x in enumerate(flag_order)}
    vnew = {v: i for i, v in enumerate(vertex_order)}
    return Graph(tuple(vnew[G.h[x]] for x in flag_order), tuple(fnew[G.tau[x]] for x in flag_order),
                 tuple(G.genus[v] for v in vertex_order), tuple(fnew[x] for x in G.legs))


def standard_form(G: Graph) -> Graph:
    """Renumber so legs come first (in label order), then vertices by first
    appearance and the remaining flags grouped by vertex."""
    order_v = []
    for x in G.legs:
        if G.h[x] not in order_v:
            order_v.append(G.h[x])
    for v in range(G.n_vertices):
        if v not in order_v:
            order_v.append(v)
    flags = list(G.legs) + [x for v in order_v for x in G.vertex_flags(v) if not G.is_leg(x)]
    return relabel(G, flags, order_v)


# --- C-graphs ---------------------------------------------------------------

@dataclass(frozen=True)
class CGraph:
    graph: Graph
    C: object
    D: object
    colors: tuple
    pairings: tuple  # per edge (in graph.edges order), morphism A_x -> A_y^v

    def __post_init__(self):
        G, C, D = self.graph, self.C, self.D
        if len(self.colors) != G.n_flags:
            raise GraphError("one color per flag required")
        if len(self.pairings) != len(G.edges):
            raise GraphError("one pairing per edge required")
        for (x, y), phi in zip(G.edges, self.pairings):
            if C.src[phi] != self.colors[x] or C.tgt[phi] != D.obj(self.colors[y]):
                raise GraphError(f"edge ({x},{y}): morphism {phi} is not a pairing "
                                 f"{C.object_label(self.colors[x])} -> "
                                 f"{C.object_label(self.colors[y])}^v")

    def pairing(self, x, y):
        """The pairing of edge {x, y} read as a morphism A_x -> A_y^v."""
        if x < y:
            return self.pairings[self.graph.edges.index((x, y))]
        phi = self.pairings[self.graph.edges.index((y, x))]
        return self.C.compose(self.D.mor(phi), self.D.eta[self.colors[x]])

    @property
    def leg_colors(self):
        return tuple(self.colors[x] for x in self.graph.legs)

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d["colors"] = list(self.colors)
        d["pairings"] = list(self.pairings)
        return d


def trivially_colored(G: Graph, C, D) -> CGraph:
    """Every flag colored by object 0 of a one-object groupoid, pairings eta."""
    return CGraph(G, C, D, (0,) * G.n_flags, tuple(D.eta[0] for _ in G.edges))


def gauge_fixed(G: Graph, C, D, leg_colors, edge_colors) -> CGraph:
    """Edge (x, y), x < y, colored a at x and a^v at y with pairing eta_a."""
    colors = [None] * G.n_flags
    for x, c in zip(G.legs, leg_colors):
        colors[x] = c
    for (x, y), a in zip(G.edges, edge_colors):
        colors[x], colors[y] = a, D.obj(a)
    return CGraph(G, C, D, tuple(colors), tuple(D.eta[a] for a in edge_colors))


# --- morphisms --------------------------------------------------------------

@dataclass(frozen=True)
class GraphMorphism:
    source: Graph
    target: Graph
    vmap: tuple   # f_* : V -> V'
    fpull: tuple  # f^* : F' -> F


@dataclass(frozen=True)
class CGraphMorphism:
    source: CGraph
    target: CGraph
    vmap: tuple
    fpull: tuple
    q: tuple      # q_x : A_{f^*(x)} -> A_x for each flag x of the target

    @property
    def graph_morphism(self) -> GraphMorphism:
        return GraphMorphism(self.source.graph, self.target.graph, self.vmap, self.fpull)


def identity_morphism(G):
    if isinstance(G, CGraph):
        g = G.graph
        return CGraphMorphism(G, G, tuple(range(g.n_vertices)), tuple(range(g.n_flags)),
                              tuple(G.C.ident[c] for c in G.colors))
    return GraphMorphism(G, G, tuple(range(G.n_vertices)), tuple(range(G.n_flags)))


def validate_morphism(m, labeled=True) -> Report:
    """Check every axiom of a (C-)graph morphism; with ``labeled`` the leg
    labels must be preserved as well."""
    rep = Report("graph morphism")
    gm = m.graph_morphism if isinstance(m, CGraphMorphism) else m
    S, T, fv, fp = gm.source, gm.target, gm.vmap, gm.fpull
    if len(fv) != S.n_vertices or len(fp) != T.n_flags:
        return rep.fail("maps have wrong length")
    if any(not 0 <= v < T.n_vertices for v in fv) or any(not 0 <= x < S.n_flags for x in fp):
        return rep.fail("maps out of range")
    if len(set(fp)) != len(fp):
        return rep.fail("f^* is not injective", fp)
    # bijective on legs
    leg_images = [fp[x] for x in range(T.n_flags) if T.is_leg(x)]
    for x in range(T.n_flags):
        if T.is_leg(x) and not S.is_leg(fp[x]):
            return rep.fail("bijective on legs: a leg is sent to a non-leg", x)
    if sorted(leg_images) != sorted(x for x in range(S.n_flags) if S.is_leg(x)):
        return rep.fail("bijective on legs", leg_images)
    if labeled and any(fp[xt] != xs for xt, xs in zip(T.legs, S.legs)):
        return rep.fail("leg labels not preserved")
    for x in range(T.n_flags):
        if not T.is_leg(x) and S.tau[fp[x]] != fp[T.tau[x]]:
            return rep.fail("injective on edges: an edge is not sent to an edge", x)
        rep.checked += 1
        if fv[S.h[fp[x]]] != T.h[x]:
            return rep.fail("incidence not preserved", x)
    # coequalizer of h, h.tau on the contracted flags
    contracted = [x for x in range(S.n_flags) if x not in set(fp)]
    parent = list(range(S.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    for x in contracted:
        parent[find(S.h[x])] = find(S.h[S.tau[x]])
    if set(fv) != set(range(T.n_vertices)):
        return rep.fail("coequalizer: f_* is not surjective")
    for u, v in itertools.combinations(range(S.n_vertices), 2):
        if (fv[u] == fv[v]) != (find(u) == find(v)):
            return rep.fail("coequalizer: f_* identifies the wrong vertices", (u, v))
    for w in range(T.n_vertices):
        if T.euler(w) != sum(S.euler(v) for v in range(S.n_vertices) if fv[v] == w):
            return rep.fail("genus condition 2g-2+n not additive", w)
    if isinstance(m, CGraphMorphism):
        Sc, Tc = m.source, m.target
        C, D = Tc.C, Tc.D
        for x in range(T.n_flags):
            q = m.q[x]
            if C.src[q] != Sc.colors[fp[x]] or C.tgt[q] != Tc.colors[x]:
                return rep.fail("q_x has wrong endpoints", x)
        for x, y in T.edges:
            top = Sc.pairing(fp[x], fp[y])
            around = C.compose(D.mor(m.q[y]), C.compose(Tc.pairing(x, y), m.q[x]))
            rep.checked += 1
            if top != around:
                return rep.fail("edge square does not commute", (x, y))
    return rep


def contract_edge(G, e):
    """Contract the edge containing flag e.

    Returns (contracted graph, morphism), for plain graphs or C-graphs.
    """
    cg = G if isinstance(G, CGraph) else None
    g = cg.graph if cg else G
    if not 0 <= e < g.n_flags or g.is_leg(e):
        raise GraphError(f"flag {e} is not part of an edge")
    x, y = sorted((e, g.tau[e]))
    u, v = g.h[x], g.h[y]
    keep = [f for f in range(g.n_flags) if f not in (x, y)]
    fnew = {f: i for i, f in enumerate(keep)}
    genus_ = list(g.genus)
    if u == v:
        genus_[u] += 1
        vmap = list(range(g.n_vertices))
        vkeep = list(range(g.n_vertices))
    else:
        lo, hi = min(u, v), max(u, v)
        genus_[lo] += genus_[hi]
        vkeep = [w for w in range(g.n_vertices) if w != hi]
        vidx = {w: i for i, w in enumerate(vkeep)}
        vmap = [vidx[lo] if w == hi else vidx[w] for w in range(g.n_vertices)]
    new = Graph(tuple(vmap[g.h[f]] for f in keep), tuple(fnew[g.tau[f]] for f in keep),
                tuple(genus_[w] for w in vkeep), tuple(fnew[f] for f in g.legs))
    if cg is None:
        return new, GraphMorphism(g, new, tuple(vmap), tuple(keep))
    colors = tuple(cg.colors[f] for f in keep)
    pairings = tuple(cg.pairing(a, b) for a, b in g.edges if (a, b) != (x, y))
    nc = CGraph(new, cg.C, cg.D, colors, pairings)
    return nc, CGraphMorphism(cg, nc, tuple(vmap), tuple(keep),
                              tuple(cg.C.ident[c] for c in colors))


# --- isomorphisms -----------------------------------------------------------

def _vertex_invariant(G: Graph, v):
    fl = G.vertex_flags(v)
    legs = tuple(sorted(G.leg_label[x] for x in fl if G.is_leg(x)))
    loops = sum(1 for x in fl if not G.is_leg(x) and G.h[G.tau[x]] == v) // 2
    return (G.genus[v], len(fl), legs, loops)


def graph_invariant(G: Graph):
    vi = [_vertex_invariant(G, v) for v in range(G.n_vertices)]
    edges = sorted(tuple(sorted((vi[G.h[x]], vi[G.h[y]]))) for x, y in G.edges)
    return (tuple(sorted(vi)), tuple(edges))


def graph_isomorphisms(A: Graph, B: Graph):
    """Yield every leg-label-preserving isomorphism A -> B as a flag map
    (tuple, A-flag -> B-flag)."""
    if (A.n_flags, A.n_vertices, A.n_legs) != (B.n_flags, B.n_vertices, B.n_legs):
        return
    ia = [_vertex_invariant(A, v) for v in range(A.n_vertices)]
    ib = [_vertex_invariant(B, v) for v in range(B.n_vertices)]
    if sorted(ia) != sorted(ib):
        return
    fmap = [-1] * A.n_flags
    vmap = [-1] * A.n_vertices
    vused = [False] * B.n_vertices
    fused = [False] * B.n_flags

    def bind_vertex(a, b, undo):
        if vmap[a] == b:
            return True
        if vmap[a] != -1 or vused[b] or ia[a] != ib[b]:
            return False
        vmap[a] = b
        vused[b] = True
        undo.append(("v", a, b))
        return True

    def bind_flag(x, y, undo):
        if fmap[x] == y:
            return True
        if fmap[x] != -1 or fused[y]:
            return False
        if not bind_vertex(A.h[x], B.h[y], undo):
            return False
        fmap[x] = y
        fused[y] = True
        undo.append(("f", x, y))
        return True

    def rollback(undo):
        for kind, a, b in reversed(undo):
            if kind == "v":
                vmap[a] = -1
                vused[b] = False
            else:
                fmap[a] = -1
                fused[b] = False

    undo0 = []
    for xa, xb in zip(A.legs, B.legs):
        if not bind_flag(xa, xb, undo0):
            return

    def search():
        x = next((f for f in range(A.n_flags) if fmap[f] == -1 and vmap[A.h[f]] != -1), None)
        if x is None:
            v = next((w for w in range(A.n_vertices) if vmap[w] == -1), None)
            if v is None:
                yield tuple(fmap)
                return
            for w in range(B.n_vertices):
                undo = []
                if bind_vertex(v, w, undo):
                    yield from search()
                rollback(undo)
            return
        w = vmap[A.h[x]]
        for y in B.vertex_flags(w):
            if fused[y] or B.is_leg(y):
                continue
            undo = []
            if bind_flag(x, y, undo) and bind_flag(A.tau[x], B.tau[y], undo):
                yield from search()
            rollback(undo)

    yield from search()


def find_isomorphism(A: Graph, B: Graph):
    return next(graph_isomorphisms(A, B), None)


def automorphisms(G: Graph) -> list[tuple]:
    return list(graph_isomorphisms(G, G))


def vertex_map(A: Graph, B: Graph, fmap) -> tuple:
    vm = [None] * A.n_vertices
    for x, y in enumerate(fmap):
        vm[A.h[x]] = B.h[y]
    for v in range(A.n_vertices):
        if vm[v] is None:  # isolated vertex: only possible for the empty corolla
            vm[v] = v
    return tuple(vm)


def _undual(C, D, a, b, target):
    """The morphism m : a -> b with m^v == target."""
    for m in C.hom(a, b):
        if D.mor(m) == target:
            return m
    return None


def are_isomorphic(A: CGraph, B: CGraph):
    """A decoration-compatible isomorphism A -> B fixing leg labels and leg
    colors, as a CGraphMorphism, or None."""
    C, D = A.C, A.D
    if A.leg_colors != B.leg_colors:
        return None
    ga, gb = A.graph, B.graph
    for fmap in graph_isomorphisms(ga, gb):
        q = [None] * gb.n_flags
        for x in ga.legs:
            q[fmap[x]] = C.ident[A.colors[x]]
        ok = True
        for xa, ya in ga.edges:
            xb, yb = fmap[xa], fmap[ya]
            homs = C.hom(A.colors[xa], B.colors[xb])
            if not homs:
                ok = False
                break
            qx = homs[0]
            # A-pairing = q_y^v o B-pairing o q_x
            want = C.compose(A.pairing(xa, ya), C.compose(C.inverse[qx], C.inverse[B.pairing(xb, yb)]))
            qy = _undual(C, D, A.colors[ya], B.colors[yb], want)
            if qy is None:
                ok = False
                break
            q[xb], q[yb] = qx, qy
        if ok:
            fpull = [0] * gb.n_flags
            for x, y in enumerate(fmap):
                fpull[y] = x
            return CGraphMorphism(A, B, vertex_map(ga, gb, fmap), tuple(fpull), tuple(q))
    return None


def invert_cgraph_morphism(m: CGraphMorphism) -> CGraphMorphism:
    C = m.source.C
    n = len(m.fpull)
    fpull = [0] * n
    q = [0] * n
    for y, x in enumerate(m.fpull):
        fpull[x] = y
        q[x] = C.inverse[m.q[y]]
    vm = [0] * len(m.vmap)
    for a, b in enumerate(m.vmap):
        vm[b] = a
    return CGraphMorphism(m.target, m.source, tuple(vm), tuple(fpull), tuple(q))


def compose_cgraph_morphisms(m2: CGraphMorphism, m1: CGraphMorphism) -> CGraphMorphism:
    """m2 o m1 for isomorphisms (no contractions)."""
    C = m1.source.C
    fpull = tuple(m1.fpull[m2.fpull[x]] for x in range(len(m2.fpull)))
    q = tuple(C.compose(m2.q[x], m1.q[m2.fpull[x]]) for x in range(len(m2.fpull)))
    vm = tuple(m2.vmap[m1.vmap[v]] for v in range(len(m1.vmap)))
    return CGraphMorphism(m1.source, m2.target, vm, fpull, q)


# --- enumeration ------------------------------------------------------------

def _check_stable_type(g, n):
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise GraphError(f"(g, n) = ({g}, {n}) is not stable: need 2g - 2 + n > 0")


def _splittings(G: Graph):
    """Every graph with one more edge that contracts onto G."""
    nf = G.n_flags
    for v in range(G.n_vertices):
        gv = G.genus[v]
        flags = G.vertex_flags(v)
        if gv >= 1:
            h = G.h + (v, v)
            tau = G.tau + (nf + 1, nf)
            genus_ = G.genus[:v] + (gv - 1,) + G.genus[v + 1:]
            yield Graph(h, tau, genus_, G.legs)
        w = G.n_vertices
        for r in range(len(flags) + 1):
            for part in itertools.combinations(flags, r):
                rest = [x for x in flags if x not in part]
                for g1 in range(gv + 1):
                    g2 = gv - g1
                    if 2 * g1 - 2 + len(rest) + 1 <= 0 or 2 * g2 - 2 + len(part) + 1 <= 0:
                        continue
                    h = list(G.h) + [v, w]
                    for x in part:
                        h[x] = w
                    tau = G.tau + (nf + 1, nf)
                    genus_ = G.genus[:v] + (g1,) + G.genus[v + 1:] + (g2,)
                    yield Graph(tuple(h), tau, genus_, G.legs)


@lru_cache(maxsize=None)
def stable_graphs(g: int, n: int) -> tuple[Graph, ...]:
    """Isomorphism-class representatives of stable graphs of type (g, n) with
    labeled legs, ordered by edge count then serialization."""
    _check_stable_type(g, n)
    level = [standard_form(corolla(g, n))]
    out = list(level)
    while level:
        buckets = {}
        for G in level:
            for H in _splittings(G):
                H = standard_form(H)
                bucket = buckets.setdefault(graph_invariant(H), [])
                for i, K in enumerate(bucket):
                    if find_isomorphism(H, K) is not None:
                        if H.serialize() < K.serialize():
                            bucket[i] = H
                        break
                else:
                    bucket.append(H)
        level = sorted((K for b in buckets.values() for K in b), key=Graph.serialize)
        out.extend(level)
    return tuple(out)


@lru_cache(maxsize=None)
def classify_graph(G: Graph):
    """(index into stable_graphs(g, n), isomorphism G -> representative)."""
    reps = stable_graphs(genus(G), G.n_legs)
    for i, R in enumerate(reps):
        if len(R.edges) != len(G.edges):
            continue
        f = find_isomorphism(G, R)
        if f is not None:
            return i, f
    raise GraphError("graph is not stable")


@dataclass(frozen=True)
class Stratum:
    graph: object          # Graph or CGraph
    automorphisms: int

    def to_dict(self):
        return {"graph": self.graph.to_dict(), "automorphisms": self.automorphisms}


def transport_edge_colors(G: Graph, fmap, edge_colors, D, H: Graph = None):
    """Edge colors of the image of a gauge-fixed coloring under a flag
    isomorphism G -> H; an edge whose orientation flips gets color a^v.

    Returns (new edge colors in H.edges order, per-edge flip flags)."""
    H = H or G
    idx = {e: i for i, e in enumerate(H.edges)}
    out = [None] * len(H.edges)
    flips = [False] * len(H.edges)
    for (x, y), a in zip(G.edges, edge_colors):
        fx, fy = fmap[x], fmap[y]
        if fx < fy:
            out[idx[(fx, fy)]] = a
        else:
            out[idx[(fy, fx)]] = D.obj(a)
            flips[idx[(fy, fx)]] = True
    return tuple(out), tuple(flips)


def _colored_classes(G: Graph, C, D):
    """Orbits of gauge-fixed edge colorings of G under gauge and automorphisms.

    Returns a list of (representative coloring, orbit size)."""
    E = len(G.edges)
    colorings = list(itertools.product(C.objects, repeat=E))
    index = {c: i for i, c in enumerate(colorings)}
    parent = list(range(len(colorings)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    autos = automorphisms(G)
    for col in colorings:
        i = index[col]
        for e in range(E):
            for m in C.out_of(col[e]):
                union(i, index[col[:e] + (C.tgt[m],) + col[e + 1:]])
        for f in autos:
            union(i, index[transport_edge_colors(G, f, col, D)[0]])
    sizes = {}
    for i in range(len(colorings)):
        r = find(i)
        sizes[r] = sizes.get(r, 0) + 1
    return [(colorings[r], s) for r, s in sorted(sizes.items())]


def enumerate_stable_graphs(g: int, n: int, C=None, D=None, leg_colors=None) -> list[Stratum]:
    """Isomorphism classes of stable (C-)graphs of type (g, n) with legs
    pinned, each with the order of its automorphism group."""
    shapes = stable_graphs(g, n)
    if C is None:
        return [Stratum(G, len(automorphisms(G))) for G in shapes]
    if leg_colors is None:
        raise GraphError("leg_colors are required with a color category")
    leg_colors = tuple(leg_colors)
    if len(leg_colors) != n:
        raise GraphError("one leg color per leg required")
    out = []
    for G in shapes:
        n_aut = len(automorphisms(G))
        for col, orbit in _colored_classes(G, C, D):
            total = n_aut
            for a in col:
                total *= len(C.out_of(a))
            out.append(Stratum(gauge_fixed(G, C, D, leg_colors, col), total // orbit))
    return out


# --- digraphs ---------------------------------------------------------------

def make_digraph(G: Graph, C, D, colors, pairings=None) -> CGraph:
    """A C-digraph: a (C + C^op)-graph as built by disjoint_union_with_op.

    Objects below |ob C|/2 are incoming, the rest outgoing.  Without explicit
    pairings every edge gets the identity pairing, which exists exactly when
    the edge joins an incoming and an outgoing flag."""
    half = C.n_objects // 2
    if pairings is None:
        pairings = []
        for x, y in G.edges:
            if (colors[x] < half) == (colors[y] < half):
                kind = "incoming" if colors[x] < half else "outgoing"
                raise GraphError(f"edge ({x},{y}) has two {kind} flags; "
                                 "an edge needs one incoming and one outgoing flag")
            homs = C.hom(colors[x], D.obj(colors[y]))
            if not homs:
                raise GraphError(f"no pairing on edge ({x},{y})")
            pairings.append(homs[0])
    return CGraph(G, C, D, tuple(colors), tuple(pairings))


def is_tree(G: Graph) -> bool:
    if len(G.edges) != G.n_vertices - 1 or any(G.genus):
        return False
    parent = list(range(G.n_vertices))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a
    for x, y in G.edges:
        a, b = find(G.h[x]), find(G.h[y])
        if a == b:
            return False
        parent[a] = b
    return True


def is_rooted_tree(cg: CGraph) -> bool:
    """A tree in which each vertex is adjacent to exactly one outgoing flag."""
    G = cg.graph
    half = cg.C.n_objects // 2
    if not is_tree(G):
        return False
    return all(sum(1 for x in G.vertex_flags(v) if cg.colors[x] >= half) == 1
               for v in range(G.n_vertices))


def graphs_to_json(strata) -> str:
    return json.dumps([s.to_dict() for s in strata], sort_keys=True)
