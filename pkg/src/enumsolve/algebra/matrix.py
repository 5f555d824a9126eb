"""Dense matrices over an exact field (or over polynomial entries)."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Sequence

from .fields import QQ, FieldDesc
from .unipoly import UniPoly

__all__ = ["Matrix", "det", "char_poly", "exterior_power", "det_cofactor"]


class Matrix:
    """Row-major dense matrix; entries are field scalars or ring elements."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, data: Sequence[Sequence], field: FieldDesc | None = QQ, coerce: bool = True):
        rows = [list(r) for r in data]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")
        if coerce and field is not None:
            rows = [[field(x) for x in r] for r in rows]
        self.data = rows
        self.field = field

    @classmethod
    def zeros(cls, r: int, c: int, field: FieldDesc = QQ) -> Matrix:
        return cls([[field.zero] * c for _ in range(r)], field, coerce=False)

    @classmethod
    def identity(cls, n: int, field: FieldDesc = QQ) -> Matrix:
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field, coerce=False)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def col(self, j: int) -> list:
        return [r[j] for r in self.data]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def transpose(self) -> Matrix:
        return Matrix([list(c) for c in zip(*self.data)] if self.data else [], self.field, coerce=False)

    T = property(transpose)

    def is_symmetric(self) -> bool:
        return self.is_square and all(self.data[i][j] == self.data[j][i] for i in range(self.rows) for j in range(i))

    def _norm(self, x):
        p = self.field.p if self.field is not None else None
        return x % p if p is not None else x

    def _new(self, data) -> Matrix:
        return Matrix(data, self.field, coerce=False)

    def __add__(self, other: Matrix) -> Matrix:
        return self._new([[self._norm(a + b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: Matrix) -> Matrix:
        return self._new([[self._norm(a - b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def scale(self, c) -> Matrix:
        return self._new([[self._norm(c * a) for a in r] for r in self.data])

    def _zero(self):
        return self.field.zero if self.field is not None else 0

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.data))
        zero = self._zero()
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = zero
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(self._norm(s))
            out.append(row)
        return self._new(out)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product."""
        out = []
        for r in self.data:
            s = self._zero()
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(self._norm(s))
        return out

    def rapply(self, v: Sequence) -> list:
        """Row-vector product ``v @ self``."""
        out = [self._zero()] * self.cols
        for a, r in zip(v, self.data):
            if a:
                for j, b in enumerate(r):
                    if b:
                        out[j] = out[j] + a * b
        return [self._norm(x) for x in out]

    def trace(self):
        s = self.field.zero if self.field is not None else 0
        for i in range(min(self.rows, self.cols)):
            s = s + self.data[i][i]
        return self._norm(s)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return self._new([[self.data[i][j] for j in cols] for i in rows])

    def map(self, fn: Callable) -> Matrix:
        return Matrix([[fn(x) for x in r] for r in self.data], None, coerce=False)

    def rank(self) -> int:
        return _row_echelon(self)[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __repr__(self) -> str:
        return "Matrix(" + repr([[str(x) for x in r] for r in self.data]) + ")"


def _row_echelon(m: Matrix) -> tuple[list[list], int]:
    f = m.field
    a = [list(r) for r in m.data]
    rank = 0
    for c in range(m.cols):
        piv = next((i for i in range(rank, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = f.inv(a[rank][c])
        a[rank] = [f.normalize(x * inv) for x in a[rank]]
        for i in range(m.rows):
            if i != rank and a[i][c]:
                k = a[i][c]
                a[i] = [f.normalize(x - k * y) for x, y in zip(a[i], a[rank])]
        rank += 1
    return a, rank


def det(m: Matrix):
    """Exact determinant: Bareiss over a field, cofactor expansion for polynomial entries."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    if m.field is None:
        return det_cofactor(m)
    f = m.field
    n = m.rows
    if n == 0:
        return f.one
    a = [list(r) for r in m.data]
    sign = 1
    prev = f.one
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return f.zero
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = f.div(f.normalize(a[i][j] * a[k][k] - a[i][k] * a[k][j]), prev)
        prev = a[k][k]
    return f.normalize(sign * a[n - 1][n - 1])


def det_cofactor(m: Matrix):
    """Laplace expansion along the first row (any commutative entries)."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return m.field.one if m.field is not None else 1
    if n == 1:
        return m.data[0][0]
    if n == 2:
        (a, b), (c, d) = m.data
        return a * d - b * c
    total = None
    for j in range(n):
        x = m.data[0][j]
        if (m.field is not None and not x) or (m.field is None and hasattr(x, "is_zero") and x.is_zero()):
            continue
        minor = Matrix([[r[k] for k in range(n) if k != j] for r in m.data[1:]], m.field, coerce=False)
        t = x * det_cofactor(minor)
        if j % 2:
            t = -t
        total = t if total is None else total + t
    if total is None:
        return m.field.zero if m.field is not None else 0
    return m.field.normalize(total) if m.field is not None else total


def char_poly(m: Matrix) -> UniPoly:
    """Monic characteristic polynomial det(Z*I - M) via Hessenberg reduction."""
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    f = m.field
    n = m.rows
    h = [list(r) for r in m.data]
    nm = f.normalize
    # similarity reduction to upper Hessenberg form
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = f.inv(h[j + 1][j])
        for i in range(j + 2, n):
            if not h[i][j]:
                continue
            u = nm(h[i][j] * inv)
            # row_i -= u * row_{j+1}
            ri, rp = h[i], h[j + 1]
            for k in range(n):
                if rp[k]:
                    ri[k] = nm(ri[k] - u * rp[k])
            # col_{j+1} += u * col_i
            for r in h:
                if r[i]:
                    r[j + 1] = nm(r[j + 1] + u * r[i])
    # p_k(Z) = (Z - h_kk) p_{k-1} - sum_{i<k} h_ik * (prod_{l=i+1}^{k} h_{l,l-1}) p_{i-1}
    Z = UniPoly([0, 1], f)
    polys = [UniPoly([1], f)]
    for k in range(n):
        pk = (Z - h[k][k]) * polys[k]
        prod = f.one
        for i in range(k - 1, -1, -1):
            prod = nm(prod * h[i + 1][i])
            if not prod:
                break
            c = nm(prod * h[i][k])
            if c:
                pk = pk - polys[i] * c
        polys.append(pk)
    return polys[n]


def exterior_power(r: int, m: Matrix) -> Matrix:
    """Matrix of r x r minors, rows/cols indexed by r-subsets in lexicographic order."""
    if r < 0 or r > min(m.rows, m.cols):
        raise ValueError(f"exterior power {r} out of range for a {m.rows}x{m.cols} matrix")
    rs = list(combinations(range(m.rows), r))
    cs = list(combinations(range(m.cols), r))
    out = [[det(m.submatrix(a, b)) for b in cs] for a in rs]
    return Matrix(out, m.field, coerce=False)
