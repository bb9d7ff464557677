"""Finite groups given by full multiplication tables.

Element 0 is always the identity.  Named constructors:

* ``Z(n)``  cyclic group, element k is a^k.
* ``S(n)``  symmetric group (n <= 5), permutations of {0..n-1} in
  lexicographic one-line order; ``mul(a, b)`` is the composite a o b
  (apply b first).
* ``D(n)``  dihedral group of order 2n, element ``j*n + k`` is r^k s^j.
* ``Q8``    quaternion group, elements 1, -1, i, -i, j, -j, k, -k.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property


class GroupValidationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: tuple
    inv: tuple
    labels: tuple
    name: str = "G"

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    def __len__(self):
        return len(self.mul)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def m(self, *xs: int) -> int:
        """Product of any number of elements, left to right."""
        acc = 0
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        return self.m(a, b, self.inv[a], self.inv[b])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        acc = 0
        for _ in range(k):
            acc = self.mul[acc][x]
        return acc

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a]
                   for a in self.elements for b in self.elements)

    @cached_property
    def class_of(self) -> tuple:
        """Index of the conjugacy class of each element."""
        out = [-1] * self.order
        for cid, cls in enumerate(conjugacy_classes(self)):
            for x in cls:
                out[x] = cid
        return tuple(out)

    def label(self, x: int) -> str:
        return self.labels[x]

    def element(self, token) -> int:
        return parse_element(self, token)

    def to_dict(self) -> dict:
        return {"order": self.order, "mul": [list(r) for r in self.mul],
                "labels": list(self.labels)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes, ordered by least element; identity class first."""
    seen = set()
    classes = []
    for x in G.elements:
        if x in seen:
            continue
        cls = sorted({G.conj(g, x) for g in G.elements})
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


def centralizer(G: FiniteGroup, x: int) -> tuple[int, ...]:
    return tuple(g for g in G.elements if G.mul[g][x] == G.mul[x][g])


def group_from_table(mul, labels=None, name="G") -> FiniteGroup:
    """Validate a multiplication table and build the group.

    The identity must sit at index 0.
    """
    n = len(mul)
    if n == 0:
        raise GroupValidationError("empty table")
    rows = []
    for i, row in enumerate(mul):
        if len(row) != n:
            raise GroupValidationError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not (isinstance(v, int) and 0 <= v < n):
                raise GroupValidationError(f"entry mul({i},{j})={v!r} out of range")
        rows.append(tuple(row))
    for x in range(n):
        if rows[0][x] != x or rows[x][0] != x:
            raise GroupValidationError(
                f"element 0 is not an identity: mul(0,{x})={rows[0][x]}, mul({x},0)={rows[x][0]}")
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise GroupValidationError(f"not associative at triple ({a},{b},{c})")
    inv = []
    for x in range(n):
        cands = [y for y in range(n) if rows[x][y] == 0 and rows[y][x] == 0]
        if not cands:
            raise GroupValidationError(f"element {x} has no inverse")
        inv.append(cands[0])
    if labels is None:
        labels = ["e"] + [str(i) for i in range(1, n)]
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise GroupValidationError("labels length does not match order")
    if len(set(labels)) != n:
        raise GroupValidationError("duplicate labels")
    return FiniteGroup(tuple(rows), tuple(inv), labels, name)


def _from_mulfn(elements, mulfn, labels, name):
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mulfn(a, b)] for b in elements] for a in elements]
    return group_from_table(table, labels, name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupValidationError("Z(n) needs n >= 1")
    labels = ["e", "a"] + [f"a^{k}" for k in range(2, n)]
    return _from_mulfn(list(range(n)), lambda a, b: (a + b) % n, labels[:n], f"Z{n}")


def _cycle_label(p) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        parts.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(parts) or "e"


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise GroupValidationError("S(n) is supported for 1 <= n <= 5")
    perms = list(itertools.permutations(range(n)))
    compose = lambda a, b: tuple(a[b[i]] for i in range(n))
    return _from_mulfn(perms, compose, [_cycle_label(p) for p in perms], f"S{n}")


def dihedral(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupValidationError("D(n) needs n >= 1")
    elems = [(k, j) for j in range(2) for k in range(n)]

    def mulfn(x, y):
        (k, j), (l, m) = x, y
        return ((k + (l if j == 0 else -l)) % n, (j + m) % 2)

    def lab(x):
        k, j = x
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        s = "s" if j else ""
        return (r + s) or "e"
    return _from_mulfn(elems, mulfn, [lab(x) for x in elems], f"D{n}")


def quaternion() -> FiniteGroup:
    # (sign, unit) with unit in 1, i, j, k
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]

    def mulfn(x, y):
        s, u = units[(x[1], y[1])]
        return (x[0] * y[0] * s, u)
    labels = [("" if s == 1 else "-") + u for s, u in elems]
    return _from_mulfn(elems, mulfn, labels, "Q8")


_NAMED = re.compile(r"^\s*([A-Za-z]+)\s*\(?\s*(\d*)\s*\)?\s*$")


def make_group(spec) -> FiniteGroup:
    """Build a group from a name ("Z4", "S(3)", "D4", "Q8", "trivial"),
    a multiplication table, or a JSON-style dict with "mul"/"labels"."""
    if isinstance(spec, FiniteGroup):
        return spec
    if isinstance(spec, dict):
        g = group_from_table(spec["mul"], spec.get("labels"), spec.get("name", "G"))
        if "order" in spec and spec["order"] != g.order:
            raise GroupValidationError("declared order does not match table")
        return g
    if isinstance(spec, (list, tuple)):
        return group_from_table(spec)
    if not isinstance(spec, str):
        raise TypeError(f"cannot build a group from {spec!r}")
    if spec.strip().lower() in ("trivial", "1", "e"):
        g = cyclic(1)
        return FiniteGroup(g.mul, g.inv, g.labels, "trivial")
    mt = _NAMED.match(spec)
    if not mt:
        raise GroupValidationError(f"unknown group name {spec!r}")
    kind, num = mt.group(1).upper(), mt.group(2)
    if kind == "Q" and num == "8":
        return quaternion()
    if not num:
        raise GroupValidationError(f"unknown group name {spec!r}")
    n = int(num)
    if kind == "Z" or kind == "C":
        return cyclic(n)
    if kind == "S":
        return symmetric(n)
    if kind == "D":
        return dihedral(n)
    raise GroupValidationError(f"unknown group name {spec!r}")


def group_from_json(text: str) -> FiniteGroup:
    return make_group(json.loads(text))


_POWER = re.compile(r"^(.+?)\^(-?\d+)$")


def parse_element(G: FiniteGroup, token) -> int:
    """Resolve a label, an index, or ``label^k`` to an element index."""
    if isinstance(token, int):
        if not 0 <= token < G.order:
            raise ValueError(f"element index {token} out of range for {G.name}")
        return token
    tok = str(token).strip()
    if tok in G.labels:
        return G.labels.index(tok)
    if tok in ("e", "1", "id"):
        return 0
    mt = _POWER.match(tok)
    if mt:
        return G.power(parse_element(G, mt.group(1)), int(mt.group(2)))
    if tok.isdigit() and int(tok) < G.order:
        return int(tok)
    raise ValueError(f"unknown element {tok!r} of {G.name}")
