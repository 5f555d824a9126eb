"""Sturm sequences and real-root counting for univariate polynomials over QQ.

Counts refer to distinct roots; they are taken on the chain of the
squarefree part, which stays valid when an endpoint is a multiple root.  Interval counts use half-open intervals
``(a, b]``; the positive and negative half-lines exclude zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .algebra.fields import QQ, mpq
from .algebra.unipoly import UniPoly, uni_gcd

__all__ = [
    "SturmChain",
    "sturm_chain",
    "variations",
    "count_real_roots",
    "num_real_sturm",
    "num_pos_roots",
    "num_neg_roots",
    "is_squarefree",
    "squarefree_part",
    "cauchy_bound",
    "isolate_intervals",
]

Range = Union[str, tuple]


def _primitive(f: UniPoly) -> UniPoly:
    ints, _ = f.primitive_integer()
    return UniPoly(ints, QQ)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SturmChain:
    polys: tuple[UniPoly, ...]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def signs_at(self, x) -> list[int]:
        return [_sign(f(x)) for f in self.polys]

    def signs_at_pos_inf(self) -> list[int]:
        return [_sign(f.lc) for f in self.polys]

    def signs_at_neg_inf(self) -> list[int]:
        return [_sign(f.lc) * (-1 if f.degree % 2 else 1) for f in self.polys]

    def signs_right_of_zero(self) -> list[int]:
        return [_sign(_lowest(f)[1]) for f in self.polys]

    def signs_left_of_zero(self) -> list[int]:
        out = []
        for f in self.polys:
            k, c = _lowest(f)
            out.append(_sign(c) * (-1 if k % 2 else 1))
        return out


def _lowest(f: UniPoly) -> tuple[int, object]:
    for k, c in enumerate(f.coeffs):
        if c:
            return k, c
    raise ValueError("zero polynomial")


def sturm_chain(f: UniPoly) -> SturmChain:
    """f, f', then negated remainders; each element rescaled to a primitive integer polynomial by a positive factor."""
    if f.field.p is not None:
        raise ValueError("Sturm chains need characteristic zero")
    if not f:
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [_primitive(f)]
    d = f.derivative()
    if d:
        chain.append(_primitive(d))
        while True:
            r = -(chain[-2] % chain[-1])
            if not r:
                break
            chain.append(_primitive(r))
    return SturmChain(tuple(chain))


def variations(signs: Sequence[int]) -> int:
    """Number of strict sign changes, zeros skipped."""
    count = 0
    prev = 0
    for s in signs:
        if s:
            if prev and s != prev:
                count += 1
            prev = s
    return count


def squarefree_part(f: UniPoly) -> UniPoly:
    if not f:
        raise ValueError("zero polynomial")
    if f.degree < 1:
        return f
    return f // uni_gcd(f, f.derivative())


def is_squarefree(f: UniPoly) -> bool:
    if not f:
        raise ValueError("zero polynomial")
    if f.degree < 1:
        return True
    return uni_gcd(f, f.derivative()).degree == 0


def count_real_roots(f: UniPoly, range: Range = "all", chain: SturmChain | None = None) -> int:
    """Distinct real roots of f in ``"all"``, ``"positive"``, ``"negative"`` or ``(a, b)`` meaning (a, b]."""
    if not f:
        raise ValueError("root count of the zero polynomial")
    if f.degree < 1:
        return 0
    if chain is None:
        chain = sturm_chain(squarefree_part(f))
    if range == "all":
        return variations(chain.signs_at_neg_inf()) - variations(chain.signs_at_pos_inf())
    if range == "positive":
        return variations(chain.signs_right_of_zero()) - variations(chain.signs_at_pos_inf())
    if range == "negative":
        return variations(chain.signs_at_neg_inf()) - variations(chain.signs_left_of_zero())
    a, b = (mpq(v) for v in range)
    if a >= b:
        return 0
    return variations(chain.signs_at(a)) - variations(chain.signs_at(b))


def num_real_sturm(f: UniPoly) -> int:
    return count_real_roots(f, "all")


def num_pos_roots(f: UniPoly) -> int:
    return count_real_roots(f, "positive")


def num_neg_roots(f: UniPoly) -> int:
    return count_real_roots(f, "negative")


def cauchy_bound(f: UniPoly) -> mpq:
    """A power of two strictly exceeding every root's absolute value."""
    lc = abs(f.lc)
    m = max((abs(c) / lc for c in f.coeffs[:-1]), default=mpq(0))
    bound = 1 + m
    p = mpq(1)
    while p <= bound:
        p *= 2
    return p


def isolate_intervals(f: UniPoly, width=mpq(1, 2**10)) -> list[tuple[mpq, mpq]]:
    """Disjoint dyadic intervals (a, b], one per distinct real root, each of width at most ``width``."""
    if not f:
        raise ValueError("zero polynomial")
    width = mpq(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if f.degree < 1:
        return []
    chain = sturm_chain(squarefree_part(f))
    B = cauchy_bound(f)
    out: list[tuple[mpq, mpq]] = []

    def var_at(x) -> int:
        return variations(chain.signs_at(x))

    stack = [(-B, B, var_at(-B), var_at(B))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            out.append((a, b))
            continue
        m = (a + b) / 2
        vm = var_at(m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    out.sort()
    return out
