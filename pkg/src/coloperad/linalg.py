"""Exact rational linear algebra on sparse vectors.

Vectors are dicts ``{index: Fraction}`` with no zero entries; matrices are
lists of rows (lists of Fractions).
"""

from __future__ import annotations

from fractions import Fraction


def _clean(v):
    return {k: c for k, c in v.items() if c != 0}


def axpy(y: dict, a, x: dict) -> dict:
    """y + a*x, as a new sparse vector."""
    out = dict(y)
    for k, c in x.items():
        s = out.get(k, 0) + a * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class QuotientSpace:
    """The quotient of Q^dim by the span of relation vectors.

    Relations are kept in reduced row echelon form, so ``project`` returns
    canonical coordinates on the non-pivot basis vectors.
    """

    def __init__(self, dim: int, relations=()):
        self.dim = dim
        self._rows = {}  # pivot column -> row with a 1 at the pivot
        for r in relations:
            self.add_relation(r)

    def add_relation(self, v: dict) -> bool:
        v = self._reduce(_clean({k: Fraction(c) for k, c in v.items()}))
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for q, row in self._rows.items():
            if p in row:
                self._rows[q] = axpy(row, -row[p], v)
        self._rows[p] = v
        self._basis = None
        return True

    def _reduce(self, v: dict) -> dict:
        for p in [k for k in sorted(v) if k in self._rows]:
            if p in v:
                v = axpy(v, -v[p], self._rows[p])
        return v

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def quotient_dim(self) -> int:
        return self.dim - len(self._rows)

    @property
    def basis(self) -> list[int]:
        """Ambient indices whose images form a basis of the quotient."""
        if getattr(self, "_basis", None) is None:
            self._basis = [i for i in range(self.dim) if i not in self._rows]
        return self._basis

    def project(self, v: dict) -> tuple:
        """Coordinates of the class of v in the quotient basis."""
        r = self._reduce(_clean(dict(v)))
        pos = {b: i for i, b in enumerate(self.basis)}
        out = [Fraction(0)] * len(pos)
        for k, c in r.items():
            out[pos[k]] = Fraction(c)
        return tuple(out)


def rank(rows) -> int:
    q = QuotientSpace(len(rows[0]) if rows else 0)
    for r in rows:
        q.add_relation({i: c for i, c in enumerate(r) if c})
    return q.rank


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    m = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(m)]
            for i in range(len(a))]


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def to_fractions(m):
    return [[Fraction(x) for x in row] for row in m]


def perm_matrix(images, n=None):
    """Matrix sending basis vector i to basis vector images[i]."""
    n = len(images) if n is None else n
    out = [[Fraction(0)] * len(images) for _ in range(n)]
    for i, j in enumerate(images):
        out[j][i] = Fraction(1)
    return out


def inverse(m):
    """Inverse of a square rational matrix by Gauss-Jordan elimination.

    Raises ZeroDivisionError when the matrix is singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
