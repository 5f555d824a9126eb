"""Polynomial rings and sparse multivariate polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .fields import QQ, FieldDesc, mpq
from .orders import MonomialOrder

__all__ = ["RingContext", "MultiPoly", "RingMismatch", "NEG_INF"]

NEG_INF = -math.inf


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RingContext:
    """Variables, coefficient field and monomial order of a polynomial ring."""

    vars: tuple[str, ...]
    field: FieldDesc = QQ
    order: MonomialOrder | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        if self.order is None:
            object.__setattr__(self, "order", MonomialOrder.grevlex(len(self.vars)))
        elif self.order.nvars != len(self.vars):
            raise ValueError("order does not match the number of variables")

    @classmethod
    def make(cls, vars: Iterable[str] | str, field: FieldDesc = QQ, order: str | MonomialOrder = "grevlex") -> RingContext:
        names = tuple(vars.split()) if isinstance(vars, str) else tuple(vars)
        if isinstance(order, str):
            order = MonomialOrder.from_name(order, len(names))
        return cls(names, field, order)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vars)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __str__(self) -> str:
        return f"{self.field}[{', '.join(self.vars)}; {self.order}]"

    # -- element constructors ----------------------------------------------

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return self.const(1)

    def const(self, c) -> MultiPoly:
        c = self.field(c)
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str | int) -> MultiPoly:
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.field.one})

    def gens(self) -> list[MultiPoly]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], c=1) -> MultiPoly:
        c = self.field(c)
        return MultiPoly(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Mapping[tuple[int, ...], object]) -> MultiPoly:
        f = self.field
        out = {}
        for e, c in terms.items():
            c = f(c)
            if c:
                out[tuple(e)] = c
        return MultiPoly(self, out)

    def parse(self, text: str) -> MultiPoly:
        from .parsing import parse_poly

        return parse_poly(text, self)

    # -- derived rings -----------------------------------------------------

    def with_order(self, order: MonomialOrder | str) -> RingContext:
        if isinstance(order, str):
            order = MonomialOrder.from_name(order, self.nvars)
        return RingContext(self.vars, self.field, order)

    def with_field(self, field: FieldDesc) -> RingContext:
        return RingContext(self.vars, field, self.order)

    def extended(self, new_vars: Sequence[str], eliminate_first: bool = True) -> RingContext:
        """Prepend ``new_vars``; with ``eliminate_first`` they form a dominating grevlex block."""
        names = tuple(new_vars) + self.vars
        k = len(new_vars)
        mapping = [i + k for i in range(self.nvars)]
        if eliminate_first:
            order = self.order.reindexed(mapping, len(names), extra_front=range(k))
        else:
            order = MonomialOrder.grevlex(len(names))
        return RingContext(names, self.field, order)


class MultiPoly:
    """Sparse polynomial: exponent tuple -> nonzero field scalar.

    Values are immutable.  ``terms`` gives the term list sorted strictly
    descending in the ring's monomial order.
    """

    __slots__ = ("ring", "_d", "__dict__")

    def __init__(self, ring: RingContext, terms: dict[tuple[int, ...], object]):
        self.ring = ring
        self._d = terms

    # -- basic data ----------------------------------------------------------

    @property
    def coeffs(self) -> dict[tuple[int, ...], object]:
        """The exponent -> coefficient mapping (do not mutate)."""
        return self._d

    @cached_property
    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        key = self.ring.order.key
        return sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self) -> bool:
        return bool(self._d)

    def __len__(self) -> int:
        return len(self._d)

    @property
    def lm(self) -> tuple[int, ...]:
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lc(self):
        if not self._d:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def total_degree(self) -> float:
        if not self._d:
            return NEG_INF
        return max(sum(e) for e in self._d)

    def degree_in(self, var: str | int) -> float:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self._d:
            return NEG_INF
        return max(e[i] for e in self._d)

    def support(self) -> set[int]:
        """Indices of variables that occur."""
        out: set[int] = set()
        for e in self._d:
            out.update(i for i, k in enumerate(e) if k)
        return out

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._d}) <= 1

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def constant_term(self):
        return self._d.get((0,) * self.ring.nvars, self.ring.field.zero)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        p = self.ring.field.p
        out = dict(self._d)
        for e, c in other._d.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if p is not None:
                    v %= p
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        f = self.ring.field
        return MultiPoly(self.ring, {e: f.neg(c) for e, c in self._d.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def scale(self, c) -> MultiPoly:
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        p = f.p
        if p is None:
            return MultiPoly(self.ring, {e: v * c for e, v in self._d.items()})
        return MultiPoly(self.ring, {e: v * c % p for e, v in self._d.items()})

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._coerce(other)
        p = self.ring.field.p
        out: dict = {}
        get = out.get
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        if p is not None:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return MultiPoly(self.ring, out)

    def __rmul__(self, other) -> MultiPoly:
        return self.scale(other)

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exps: Sequence[int], c) -> MultiPoly:
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        p = f.p
        out = {}
        for e, v in self._d.items():
            v = v * c
            out[tuple([a + b for a, b in zip(e, exps)])] = v % p if p is not None else v
        return MultiPoly(self.ring, out)

    def monic(self) -> MultiPoly:
        if not self._d:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def exact_div(self, other: MultiPoly) -> MultiPoly:
        """Quotient of an exact division (multivariate long division in the ring order)."""
        q, r = self.divmod(other)
        if r:
            raise ValueError("division is not exact")
        return q

    def divmod(self, other: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        f = self.ring.field
        glm, glc = other.lm, other.lc
        inv = f.inv(glc)
        rem = self
        quot = self.ring.zero()
        out_r = {}
        while rem:
            m, c = rem.terms[0]
            if all(a >= b for a, b in zip(m, glm)):
                qe = tuple(a - b for a, b in zip(m, glm))
                qc = f.normalize(c * inv)
                t = self.ring.monomial(qe, qc)
                quot = quot + t
                rem = rem - other.mul_term(qe, qc)
            else:
                out_r[m] = c
                rem = MultiPoly(self.ring, {e: v for e, v in rem._d.items() if e != m})
        return quot, MultiPoly(self.ring, out_r)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, type(mpq(0)))):
            try:
                return self._d == self.ring.const(other)._d
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.vars, frozenset(self._d.items())))

    # -- evaluation and ring changes --------------------------------------

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at a point given as one field value per variable."""
        f = self.ring.field
        pt = [f(x) for x in point]
        total = f.zero
        for e, c in self._d.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    t = t * x**k
            total = total + t
        return f.normalize(total)

    def substitute(self, images: Mapping[int | str, MultiPoly], target: RingContext | None = None) -> MultiPoly:
        """Ring map sending variable ``i`` to ``images[i]`` (others must map by name into target)."""
        target = target or self.ring
        imgs: list[MultiPoly] = []
        norm = {}
        for k, v in images.items():
            norm[k if isinstance(k, int) else self.ring.index(k)] = v
        for i, name in enumerate(self.ring.vars):
            if i in norm:
                img = norm[i]
                if not isinstance(img, MultiPoly):
                    img = target.const(img)
                imgs.append(img)
            else:
                imgs.append(target.var(name))
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            key = (i, k)
            if key not in powers:
                powers[key] = imgs[i] if k == 1 else power(i, k - 1) * imgs[i]
            return powers[key]

        out = target.zero()
        for e, c in self._d.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def to_ring(self, ring: RingContext) -> MultiPoly:
        """Move into a ring sharing the field whose variables include ours (by name)."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise RingMismatch("field mismatch")
        pos = [ring.index(v) for v in self.ring.vars]
        n = ring.nvars
        out = {}
        for e, c in self._d.items():
            ne = [0] * n
            for i, k in zip(pos, e):
                ne[i] = k
            out[tuple(ne)] = c
        return MultiPoly(ring, out)

    def restrict_to(self, ring: RingContext) -> MultiPoly:
        """Inverse of :meth:`to_ring` for polynomials not using dropped variables."""
        src = self.ring
        keep = [src.index(v) for v in ring.vars]
        dropped = set(range(src.nvars)) - set(keep)
        out = {}
        for e, c in self._d.items():
            if any(e[i] for i in dropped):
                raise ValueError("polynomial involves dropped variables")
            out[tuple(e[i] for i in keep)] = c
        return MultiPoly(ring, out)

    def diff(self, var: str | int) -> MultiPoly:
        i = var if isinstance(var, int) else self.ring.index(var)
        f = self.ring.field
        out = {}
        for e, c in self._d.items():
            if e[i]:
                v = f.normalize(c * e[i])
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = v
        return MultiPoly(self.ring, out)

    # -- text ------------------------------------------------------------------

    def render(self) -> str:
        from .parsing import render_poly

        return render_poly(self)

    __str__ = render

    def __repr__(self) -> str:
        return f"MultiPoly({self.render()!r})"
