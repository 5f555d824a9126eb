"""Dense univariate polynomials over an exact field."""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import QQ, FieldDesc, mpq
from .poly import NEG_INF

__all__ = ["UniPoly", "uni_gcd"]


class UniPoly:
    """Coefficients constant term first; trailing zeros are stripped."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable, field: FieldDesc = QQ):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.field = field

    @classmethod
    def from_roots(cls, roots: Sequence, field: FieldDesc = QQ) -> UniPoly:
        out = cls([1], field)
        for r in roots:
            out = out * cls([field.neg(field(r)), 1], field)
        return out

    @classmethod
    def x(cls, field: FieldDesc = QQ) -> UniPoly:
        return cls([0, 1], field)

    # -- basics --------------------------------------------------------------

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    # -- arithmetic ------------------------------------------------------------

    def _wrap(self, cs) -> UniPoly:
        return UniPoly(cs, self.field)

    def _lift(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other
        return UniPoly([other], self.field)

    def __add__(self, other) -> UniPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other) -> UniPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> UniPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> UniPoly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._wrap([])
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        out = self._wrap([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        inv = f.inv(other.lc)
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(r) - 1 < db:
            return self._wrap([]), self
        q = [f.zero] * (len(r) - db)
        b = other.coeffs
        p = f.p
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if p is not None:
                c %= p
            if not c:
                continue
            c = c * inv
            if p is not None:
                c %= p
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
        return self._wrap(q), self._wrap(r[:db])

    def __mod__(self, other) -> UniPoly:
        return self.divmod(other)[1]

    def __floordiv__(self, other) -> UniPoly:
        return self.divmod(other)[0]

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lc)
        return self._wrap([c * inv for c in self.coeffs])

    def derivative(self) -> UniPoly:
        return self._wrap([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return self.field.normalize(acc)

    def compose_matrix(self, m):
        """Evaluate at a square matrix (Horner)."""
        from .matrix import Matrix

        n = m.rows
        acc = Matrix.zeros(n, n, m.field)
        ident = Matrix.identity(n, m.field)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident.scale(c)
        return acc

    def primitive_integer(self) -> tuple[list[int], object]:
        """Over QQ: (primitive integer coefficients, positive scale) with self == scale * prim."""
        if self.field.p is not None:
            raise ValueError("only defined over QQ")
        if not self.coeffs:
            return [], mpq(1)
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, int(c.denominator))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        return ints, mpq(g, den)

    # -- text -----------------------------------------------------------------

    def render(self, var: str = "Z") -> str:
        from .poly import RingContext

        ring = RingContext((var,), self.field)
        return ring.from_dict({(i,): c for i, c in enumerate(self.coeffs) if c}).render()

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"UniPoly({self.render()!r}, {self.field})"


def uni_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    if not f and not g:
        raise ValueError("gcd of two zero polynomials")
    a, b = f, g
    while b:
        a, b = b, a % b
    return a.monic()
