"""Finite groupoids, dualities, the loop groupoid and groupoid algebras.

Morphisms are integer indices; ``comp[(m2, m1)]`` is m2 o m1, defined when
``tgt[m1] == src[m2]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .groups import FiniteGroup, make_group, symmetric
from .linalg import matmul, perm_matrix, transpose, identity as id_matrix
from .report import Report


class GroupoidError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    n_objects: int
    src: tuple
    tgt: tuple
    ident: tuple
    comp: dict
    inverse: tuple
    object_labels: tuple = ()
    morphism_labels: tuple = ()
    name: str = "C"

    def __repr__(self):
        return f"FiniteGroupoid({self.name}, objects={self.n_objects}, morphisms={self.n_morphisms})"

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    @property
    def morphisms(self) -> range:
        return range(len(self.src))

    def compose(self, m2: int, m1: int) -> int:
        try:
            return self.comp[(m2, m1)]
        except KeyError:
            raise GroupoidError(f"morphisms {m2} o {m1} are not composable") from None

    @cached_property
    def _homs(self):
        out = {}
        for m in self.morphisms:
            out.setdefault((self.src[m], self.tgt[m]), []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _out(self):
        out = [[] for _ in self.objects]
        for m in self.morphisms:
            out[self.src[m]].append(m)
        return tuple(tuple(v) for v in out)

    def hom(self, x: int, y: int) -> tuple:
        return self._homs.get((x, y), ())

    def out_of(self, x: int) -> tuple:
        return self._out[x]

    def aut(self, x: int) -> tuple:
        return self.hom(x, x)

    def is_identity(self, m: int) -> bool:
        return self.ident[self.src[m]] == m

    def object_label(self, x):
        return self.object_labels[x] if self.object_labels else str(x)

    def morphism_index(self, label) -> int:
        return self._morphism_index[label]

    @cached_property
    def _morphism_index(self):
        return {lab: i for i, lab in enumerate(self.morphism_labels)}

    @cached_property
    def components(self) -> tuple:
        """Isomorphism classes of objects, each sorted, ordered by least member."""
        seen, out = set(), []
        for x in self.objects:
            if x in seen:
                continue
            cls = sorted({self.tgt[m] for m in self.out_of(x)})
            seen.update(cls)
            out.append(tuple(cls))
        return tuple(out)

    def cardinality(self) -> Fraction:
        """Groupoid cardinality: sum over iso classes of 1/|Aut|."""
        return sum((Fraction(1, len(self.aut(c[0]))) for c in self.components), Fraction(0))

    def to_dict(self) -> dict:
        return {
            "objects": self.n_objects,
            "morphisms": [[self.src[m], self.tgt[m]] for m in self.morphisms],
            "identity": list(self.ident),
            "compose": sorted([a, b, c] for (a, b), c in self.comp.items()),
            "invert": list(self.inverse),
        }


def make_groupoid(n_objects, src, tgt, ident, comp, inverse=None, *, object_labels=(),
                  morphism_labels=(), name="C", validate=True) -> FiniteGroupoid:
    src, tgt, ident = tuple(src), tuple(tgt), tuple(ident)
    comp = dict(comp)
    if inverse is None:
        inv = []
        for m in range(len(src)):
            cands = [k for k in range(len(src)) if comp.get((k, m)) == ident[src[m]]]
            if not cands:
                raise GroupoidError(f"morphism {m} has no inverse")
            inv.append(cands[0])
        inverse = inv
    C = FiniteGroupoid(n_objects, src, tgt, ident, comp, tuple(inverse),
                       tuple(object_labels), tuple(morphism_labels), name)
    if validate:
        rep = check_groupoid(C)
        if not rep.ok:
            raise GroupoidError(f"{rep.violation}: {rep.witness}")
    return C


def groupoid_from_dict(d) -> FiniteGroupoid:
    comp = {(a, b): c for a, b, c in d["compose"]}
    src = [m[0] for m in d["morphisms"]]
    tgt = [m[1] for m in d["morphisms"]]
    return make_groupoid(d["objects"], src, tgt, d["identity"], comp, d.get("invert"))


def check_groupoid(C: FiniteGroupoid) -> Report:
    rep = Report("groupoid axioms")
    for x in C.objects:
        i = C.ident[x]
        if C.src[i] != x or C.tgt[i] != x:
            return rep.fail("identity has wrong endpoints", x)
    for m in C.morphisms:
        for m2 in C.out_of(C.tgt[m]):
            c = C.comp.get((m2, m))
            if c is None or C.src[c] != C.src[m] or C.tgt[c] != C.tgt[m2]:
                return rep.fail("composite missing or has wrong endpoints", (m2, m))
        if C.comp.get((C.ident[C.tgt[m]], m)) != m or C.comp.get((m, C.ident[C.src[m]])) != m:
            return rep.fail("identity law", m)
        k = C.inverse[m]
        if C.comp.get((k, m)) != C.ident[C.src[m]] or C.comp.get((m, k)) != C.ident[C.tgt[m]]:
            return rep.fail("inverse", m)
    for a in C.morphisms:
        for b in C.out_of(C.tgt[a]):
            ba = C.comp[(b, a)]
            for c in C.out_of(C.tgt[b]):
                rep.checked += 1
                if C.comp[(c, ba)] != C.comp[(C.comp[(c, b)], a)]:
                    return rep.fail("associativity", (c, b, a))
    return rep


@dataclass(frozen=True)
class DualityStructure:
    on_objects: tuple
    on_morphisms: tuple
    eta: tuple

    def obj(self, x):
        return self.on_objects[x]

    def mor(self, m):
        return self.on_morphisms[m]


def check_duality(C: FiniteGroupoid, D: DualityStructure) -> Report:
    rep = Report("duality")
    if len(D.on_objects) != C.n_objects or len(D.on_morphisms) != C.n_morphisms \
            or len(D.eta) != C.n_objects:
        return rep.fail("duality maps are not total")
    dv, dm = D.on_objects, D.on_morphisms
    for x in C.objects:
        if dm[C.ident[x]] != C.ident[dv[x]]:
            return rep.fail("identities not preserved", x)
    for a in C.morphisms:
        for b in C.out_of(C.tgt[a]):
            rep.checked += 1
            lhs = dm[C.comp[(b, a)]]
            rhs = C.comp.get((dm[a], dm[b]))
            if lhs != rhs:
                return rep.fail("contravariance (f o g)^v != g^v o f^v", (b, a))
    for m in C.morphisms:
        if C.src[dm[m]] != dv[C.tgt[m]] or C.tgt[dm[m]] != dv[C.src[m]]:
            return rep.fail("dual morphism has wrong endpoints", m)
    for x in C.objects:
        e = D.eta[x]
        if C.src[e] != x or C.tgt[e] != dv[dv[x]]:
            return rep.fail("eta has wrong endpoints", x)
    for m in C.morphisms:
        x, y = C.src[m], C.tgt[m]
        if C.comp[(D.eta[y], m)] != C.comp[(dm[dm[m]], D.eta[x])]:
            return rep.fail("eta is not natural", m)
    for x in C.objects:
        xv = dv[x]
        if C.comp.get((dm[D.eta[x]], D.eta[xv])) != C.ident[xv]:
            return rep.fail("triangle identity", x)
    return rep


def inverse_duality(C: FiniteGroupoid) -> DualityStructure:
    """Identity on objects, m^v = m^-1, eta = id."""
    return DualityStructure(tuple(C.objects), C.inverse, C.ident)


# --- pairings ---------------------------------------------------------------

@dataclass(frozen=True)
class Pairing:
    x: int
    y: int
    phi: int


def make_pairing(C, D, x, y, phi) -> Pairing:
    if C.src[phi] != x or C.tgt[phi] != D.obj(y):
        raise GroupoidError(f"morphism {phi} is not a morphism {x} -> {y}^v")
    return Pairing(x, y, phi)


def flip_pairing(C, D, p: Pairing) -> Pairing:
    """The same pairing read as a morphism y -> x^v, namely phi^v o eta_y."""
    return Pairing(p.y, p.x, C.compose(D.mor(p.phi), D.eta[p.y]))


def check_symmetric_pairing(C, D, p: Pairing) -> bool:
    if p.x != p.y:
        raise GroupoidError("a symmetric pairing pairs an object with itself")
    make_pairing(C, D, p.x, p.y, p.phi)
    return C.compose(D.mor(p.phi), D.eta[p.x]) == p.phi


# --- constructions ----------------------------------------------------------

def loop_groupoid(G) -> tuple[FiniteGroupoid, DualityStructure]:
    """Action groupoid of G acting on itself by conjugation.

    Morphism ``gamma*|G| + g`` is g : gamma -> g gamma g^-1.  The duality is
    gamma^v = gamma^-1, g^v = g^-1, eta = id.
    """
    G = make_group(G)
    n = G.order
    src, tgt, labels, comp, inv = [], [], [], {}, []
    for c in G.elements:
        for g in G.elements:
            src.append(c)
            tgt.append(G.conj(g, c))
            labels.append((c, g))
    for c in G.elements:
        for g in G.elements:
            d = G.conj(g, c)
            inv.append(d * n + G.inv[g])
            for h in G.elements:
                comp[(d * n + h, c * n + g)] = c * n + G.mul[h][g]
    C = FiniteGroupoid(n, tuple(src), tuple(tgt), tuple(c * n for c in G.elements), comp,
                       tuple(inv), G.labels, tuple(labels), f"L({G.name})")
    dual_m = []
    for c in G.elements:
        for g in G.elements:
            d = G.conj(g, c)
            dual_m.append(G.inv[d] * n + G.inv[g])
    D = DualityStructure(tuple(G.inv), tuple(dual_m), C.ident)
    return C, D


def group_as_groupoid(G) -> FiniteGroupoid:
    """One object whose automorphism group is G; morphism g has index g."""
    G = make_group(G)
    comp = {(a, b): G.mul[a][b] for a in G.elements for b in G.elements}
    return FiniteGroupoid(1, (0,) * G.order, (0,) * G.order, (0,), comp, G.inv,
                          ("*",), G.labels, f"B({G.name})")


def trivial_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(1, (0,), (0,), (0,), {(0, 0): 0}, (0,), ("*",), ("id",), "1")


def full_subgroupoid(C: FiniteGroupoid, objs) -> FiniteGroupoid:
    objs = list(objs)
    onew = {x: i for i, x in enumerate(objs)}
    mors = [m for m in C.morphisms if C.src[m] in onew and C.tgt[m] in onew]
    mnew = {m: i for i, m in enumerate(mors)}
    comp = {(mnew[a], mnew[b]): mnew[c] for (a, b), c in C.comp.items() if a in mnew and b in mnew}
    return FiniteGroupoid(len(objs), tuple(onew[C.src[m]] for m in mors),
                          tuple(onew[C.tgt[m]] for m in mors), tuple(mnew[C.ident[x]] for x in objs),
                          comp, tuple(mnew[C.inverse[m]] for m in mors),
                          tuple(C.object_label(x) for x in objs),
                          tuple(C.morphism_labels[m] for m in mors) if C.morphism_labels else (),
                          f"{C.name}|sub")


@dataclass(frozen=True)
class GroupAction:
    """A right action of G on C by functors: ``obj[g][x]`` is x.g, ``mor[g][m]`` is m.g."""
    group: FiniteGroup
    obj: tuple
    mor: tuple


def check_action(C: FiniteGroupoid, act: GroupAction) -> Report:
    rep = Report("group action")
    G = act.group
    if tuple(act.obj[0]) != tuple(C.objects) or tuple(act.mor[0]) != tuple(C.morphisms):
        return rep.fail("identity element does not act trivially")
    for g in G.elements:
        og, mg = act.obj[g], act.mor[g]
        for m in C.morphisms:
            if C.src[mg[m]] != og[C.src[m]] or C.tgt[mg[m]] != og[C.tgt[m]]:
                return rep.fail("not a functor: endpoints", (g, m))
        for x in C.objects:
            if mg[C.ident[x]] != C.ident[og[x]]:
                return rep.fail("not a functor: identities", (g, x))
        for (a, b), c in C.comp.items():
            rep.checked += 1
            if C.comp[(mg[a], mg[b])] != mg[c]:
                return rep.fail("not a functor: composition", (g, a, b))
        for h in G.elements:
            gh = G.mul[g][h]
            for x in C.objects:
                if act.obj[h][og[x]] != act.obj[gh][x]:
                    return rep.fail("not a right action on objects", (g, h, x))
            for m in C.morphisms:
                if act.mor[h][mg[m]] != act.mor[gh][m]:
                    return rep.fail("not a right action on morphisms", (g, h, m))
    return rep


def semidirect_product(C: FiniteGroupoid, act: GroupAction, *, name=None) -> FiniteGroupoid:
    """C x| G: morphisms x -> y are pairs (phi, g) with phi : x -> y.g.

    (phi, g) o (psi, h) = ((phi.h) o psi, g h).
    """
    rep = check_action(C, act)
    if not rep.ok:
        raise GroupoidError(f"invalid action: {rep.violation} at {rep.witness}")
    G = act.group
    n = G.order
    src, tgt, labels = [], [], []
    for phi in C.morphisms:
        for g in G.elements:
            src.append(C.src[phi])
            tgt.append(act.obj[G.inv[g]][C.tgt[phi]])
            labels.append((phi, g))
    comp = {}
    by_src = [[] for _ in C.objects]
    for i, s in enumerate(src):
        by_src[s].append(i)
    for i1 in range(len(src)):
        psi, h = labels[i1]
        for i2 in by_src[tgt[i1]]:
            phi, g = labels[i2]
            comp[(i2, i1)] = C.comp[(act.mor[h][phi], psi)] * n + G.mul[g][h]
    inv = []
    for phi, g in labels:
        gi = G.inv[g]
        inv.append(act.mor[gi][C.inverse[phi]] * n + gi)
    return FiniteGroupoid(C.n_objects, tuple(src), tuple(tgt),
                          tuple(C.ident[x] * n for x in C.objects), comp, tuple(inv),
                          C.object_labels, tuple(labels), name or f"{C.name} x| {G.name}")


def power_groupoid(C: FiniteGroupoid, n: int) -> FiniteGroupoid:
    objs = list(itertools.product(C.objects, repeat=n))
    oidx = {o: i for i, o in enumerate(objs)}
    mors = list(itertools.product(C.morphisms, repeat=n))
    midx = {m: i for i, m in enumerate(mors)}
    src = tuple(oidx[tuple(C.src[f] for f in m)] for m in mors)
    tgt = tuple(oidx[tuple(C.tgt[f] for f in m)] for m in mors)
    comp = {}
    for m1 in mors:
        t = tuple(C.tgt[f] for f in m1)
        for m2 in itertools.product(*[C.out_of(x) for x in t]):
            comp[(midx[m2], midx[m1])] = midx[tuple(C.comp[(a, b)] for a, b in zip(m2, m1))]
    return FiniteGroupoid(len(objs), src, tgt,
                          tuple(midx[tuple(C.ident[x] for x in o)] for o in objs), comp,
                          tuple(midx[tuple(C.inverse[f] for f in m)] for m in mors),
                          tuple(objs), tuple(mors), f"{C.name}^{n}")


def wreath_product(C: FiniteGroupoid, n: int) -> FiniteGroupoid:
    """C^n x| S_n with (x.sigma)_i = x_{sigma(i)}.

    Object labels are color tuples; morphism labels are ``(phis, sigma)``
    with sigma a one-line permutation and phi_i : x_i -> y_{sigma(i)}.
    """
    if n < 0:
        raise GroupoidError("arity must be >= 0")
    if n == 0:
        return FiniteGroupoid(1, (0,), (0,), (0,), {(0, 0): 0}, (0,), ((),), (((), ()),),
                              f"{C.name} wr S0")
    P = power_groupoid(C, n)
    S = symmetric(n)
    perms = list(itertools.permutations(range(n)))
    oidx = {o: i for i, o in enumerate(P.object_labels)}
    midx = {m: i for i, m in enumerate(P.morphism_labels)}
    obj = tuple(tuple(oidx[tuple(o[s[i]] for i in range(n))] for o in P.object_labels)
                for s in perms)
    mor = tuple(tuple(midx[tuple(m[s[i]] for i in range(n))] for m in P.morphism_labels)
                for s in perms)
    W = semidirect_product(P, GroupAction(S, obj, mor), name=f"{C.name} wr S{n}")
    labels = tuple((P.morphism_labels[phi], perms[g]) for phi, g in W.morphism_labels)
    return FiniteGroupoid(W.n_objects, W.src, W.tgt, W.ident, W.comp, W.inverse,
                          P.object_labels, labels, W.name)


def wreath_duality(C, D: DualityStructure, n: int, W: FiniteGroupoid) -> DualityStructure:
    """Slotwise duality on C wr S_n: (phis, sigma)^v = ((phi_{sigma^-1(j)}^v)_j, sigma^-1)."""
    oidx = {o: i for i, o in enumerate(W.object_labels)}
    on_obj = tuple(oidx[tuple(D.obj(x) for x in o)] for o in W.object_labels)
    on_mor = []
    for phis, s in W.morphism_labels:
        sinv = [0] * n
        for i, j in enumerate(s):
            sinv[j] = i
        psi = tuple(D.mor(phis[sinv[j]]) for j in range(n))
        on_mor.append(W.morphism_index((psi, tuple(sinv))))
    eta = tuple(W.morphism_index((tuple(D.eta[x] for x in o), tuple(range(n))))
                for o in W.object_labels)
    return DualityStructure(on_obj, tuple(on_mor), eta)


def disjoint_union_with_op(C: FiniteGroupoid) -> tuple[FiniteGroupoid, DualityStructure]:
    """C + C^op with the duality swapping the two halves.

    Object ``x`` is x in C ("incoming"), object ``x + |ob C|`` is x in C^op
    ("outgoing").  Morphism ``f`` is f in C, ``f + |mor C|`` is f^op.
    """
    no, nm = C.n_objects, C.n_morphisms
    src = C.src + tuple(C.tgt[f] + no for f in C.morphisms)
    tgt = C.tgt + tuple(C.src[f] + no for f in C.morphisms)
    comp = dict(C.comp)
    for (a, b), c in C.comp.items():
        comp[(b + nm, a + nm)] = c + nm
    U = FiniteGroupoid(2 * no, src, tgt, C.ident + tuple(i + nm for i in C.ident), comp,
                       C.inverse + tuple(i + nm for i in C.inverse),
                       tuple(f"{C.object_label(x)}:in" for x in C.objects)
                       + tuple(f"{C.object_label(x)}:out" for x in C.objects),
                       (), f"{C.name}+{C.name}^op")
    D = DualityStructure(tuple(x + no for x in C.objects) + tuple(C.objects),
                         tuple(f + nm for f in C.morphisms) + tuple(C.morphisms), U.ident)
    return U, D


# --- groupoid algebra ---------------------------------------------------------

class GroupoidAlgebra:
    """k[C] over the rationals: basis = morphisms, f*g = f o g or 0."""

    def __init__(self, C: FiniteGroupoid):
        self.C = C

    @property
    def dim(self):
        return self.C.n_morphisms

    def basis_product(self, f, g):
        """Index of f o g, or None for the zero product."""
        return self.C.comp.get((f, g))

    def mul(self, a: dict, b: dict) -> dict:
        out = {}
        for f, x in a.items():
            for g, y in b.items():
                h = self.C.comp.get((f, g))
                if h is not None:
                    out[h] = out.get(h, 0) + Fraction(x) * y
        return {k: v for k, v in out.items() if v}

    def unit(self) -> dict:
        return {i: Fraction(1) for i in self.C.ident}

    def basis(self, f) -> dict:
        return {f: Fraction(1)}

    def product_table(self):
        return [[self.basis_product(f, g) for g in self.C.morphisms] for f in self.C.morphisms]

    def check(self) -> Report:
        rep = Report("groupoid algebra")
        C = self.C
        M = C.morphisms
        for f in M:
            for g in M:
                fg = C.comp.get((f, g))
                for h in M:
                    rep.checked += 1
                    left = None if fg is None else C.comp.get((fg, h))
                    gh = C.comp.get((g, h))
                    right = None if gh is None else C.comp.get((f, gh))
                    if left != right:
                        return rep.fail("associativity", (f, g, h))
        u = self.unit()
        for f in M:
            b = self.basis(f)
            if self.mul(u, b) != b or self.mul(b, u) != b:
                return rep.fail("unit", f)
        return rep

    def is_commutative(self) -> bool:
        C = self.C
        return all(C.comp.get((f, g)) == C.comp.get((g, f)) for f in C.morphisms for g in C.morphisms)


def groupoid_algebra(C: FiniteGroupoid) -> GroupoidAlgebra:
    return GroupoidAlgebra(C)


# --- weak symmetric functors --------------------------------------------------

@dataclass
class WeakSymmetricFunctor:
    """A functor C -> FinVect with rho_nat[x] : rho(x^v) -> rho(x)^v.

    FinVect carries the duality V^v = V, T^v = T^t, eta = id; matrices act
    on column vectors, so ``mor[f]`` has shape dim(tgt f) x dim(src f) and
    ``rho_nat[x]`` has shape dim(x) x dim(x^v).
    """
    C: FiniteGroupoid
    D: DualityStructure
    dims: tuple
    mor: tuple
    rho_nat: tuple

    @classmethod
    def from_sets(cls, C, D, sizes, maps, rho_nat_maps):
        """Linearize a set-valued functor; maps are image tuples."""
        mor = tuple(perm_matrix(maps[f], sizes[C.tgt[f]]) for f in C.morphisms)
        nat = tuple(perm_matrix(rho_nat_maps[x], sizes[x]) for x in C.objects)
        return cls(C, D, tuple(sizes), mor, nat)

    def induced_pairing(self, p: Pairing):
        """Bilinear form B on rho(x) x rho(y), as the matrix of rho(x) -> rho(y)^v."""
        return matmul(self.rho_nat[p.y], self.mor[p.phi])


def check_weak_symmetric_functor(F: WeakSymmetricFunctor) -> Report:
    rep = Report("weak symmetric functor")
    C, D = F.C, F.D

    def shape_ok(M, rows, cols):
        return len(M) == rows and all(len(r) == cols for r in M)
    for f in C.morphisms:
        if not shape_ok(F.mor[f], F.dims[C.tgt[f]], F.dims[C.src[f]]):
            return rep.fail("matrix shape", f)
    for x in C.objects:
        if F.mor[C.ident[x]] != id_matrix(F.dims[x]):
            return rep.fail("identity not preserved", x)
        if not shape_ok(F.rho_nat[x], F.dims[x], F.dims[D.obj(x)]):
            return rep.fail("rho_nat shape", x)
    for (a, b), c in C.comp.items():
        rep.checked += 1
        if matmul(F.mor[a], F.mor[b]) != F.mor[c]:
            return rep.fail("functoriality rho(f o g) != rho(f) rho(g)", (a, b))
    for f in C.morphisms:
        x, y = C.src[f], C.tgt[f]
        lhs = matmul(F.rho_nat[x], F.mor[D.mor(f)])
        rhs = matmul(transpose(F.mor[f], F.dims[y]), F.rho_nat[y])
        if lhs != rhs:
            return rep.fail("rho is not natural", f)
    for x in C.objects:
        xv = D.obj(x)
        rhs = matmul(transpose(F.mor[D.eta[x]], F.dims[x]),
                     transpose(F.rho_nat[xv], F.dims[D.obj(xv)]))
        if F.rho_nat[x] != rhs:
            return rep.fail("coherence square", x)
    return rep
