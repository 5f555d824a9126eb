"""Monomial orders.

An order is a sequence of blocks, each block being ``lex`` or ``grevlex`` on
a list of variable indices given in precedence order (first = largest).
Blocks compare lexicographically: the first block dominates.  Plain lex and
grevlex are single-block orders.

Every order here is a matrix order, so :meth:`MonomialOrder.key` is linear
in the exponent vector and ``key(a*b) == key(a) + key(b)`` componentwise.
The Groebner engine relies on that: it stores monomials as negated keys
(``encode``), multiplies by tuple addition and finds leading terms with a
min-heap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

__all__ = ["MonomialOrder", "lex", "grevlex"]

_KINDS = ("lex", "grevlex")


@dataclass(frozen=True)
class MonomialOrder:
    blocks: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        seen: list[int] = []
        for kind, idx in self.blocks:
            if kind not in _KINDS:
                raise ValueError(f"unknown order kind {kind!r}")
            seen.extend(idx)
        if sorted(seen) != list(range(len(seen))):
            raise ValueError("order blocks must partition the variable indices")

    # -- constructors -------------------------------------------------------

    @classmethod
    def lex(cls, n: int, precedence: Sequence[int] | None = None) -> MonomialOrder:
        return cls((("lex", tuple(range(n)) if precedence is None else tuple(precedence)),))

    @classmethod
    def grevlex(cls, n: int, precedence: Sequence[int] | None = None) -> MonomialOrder:
        return cls((("grevlex", tuple(range(n)) if precedence is None else tuple(precedence)),))

    @classmethod
    def from_name(cls, name: str, n: int) -> MonomialOrder:
        name = name.lower()
        if name == "lex":
            return cls.lex(n)
        if name == "grevlex":
            return cls.grevlex(n)
        raise ValueError(f"unknown monomial order {name!r}")

    # -- descriptors --------------------------------------------------------

    @property
    def nvars(self) -> int:
        return sum(len(idx) for _, idx in self.blocks)

    @property
    def kind(self) -> str:
        if len(self.blocks) == 1:
            return self.blocks[0][0]
        return "block"

    @property
    def precedence(self) -> tuple[int, ...]:
        return tuple(i for _, idx in self.blocks for i in idx)

    @property
    def name(self) -> str:
        return self.kind

    def __str__(self) -> str:
        if len(self.blocks) == 1:
            return self.blocks[0][0]
        return "block(" + "; ".join(f"{k} {list(idx)}" for k, idx in self.blocks) + ")"

    def is_degree_compatible(self) -> bool:
        return self.kind == "grevlex"

    # -- compiled key / encode / decode ------------------------------------

    def _slots(self) -> list[tuple[str, object]]:
        # ("sum", indices) or ("var", index, sign) in key orientation
        slots: list[tuple] = []
        for kind, idx in self.blocks:
            if kind == "lex":
                slots.extend(("var", i, 1) for i in idx)
            else:
                slots.append(("sum", idx))
                slots.extend(("var", i, -1) for i in reversed(idx))
        return slots

    def _compile(self, negate: bool) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
        parts = []
        for slot in self._slots():
            if slot[0] == "sum":
                expr = "+".join(f"e[{i}]" for i in slot[1]) or "0"
                parts.append(f"-({expr})" if negate else f"({expr})")
            else:
                _, i, sign = slot
                s = -sign if negate else sign
                parts.append(f"e[{i}]" if s > 0 else f"-e[{i}]")
        src = "lambda e: (" + ", ".join(parts) + ("," if len(parts) == 1 else "") + ")"
        if not parts:
            src = "lambda e: ()"
        return eval(src)  # generated from integer indices only

    @cached_property
    def key(self) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
        """Sort key: ``key(a) > key(b)`` iff monomial ``a`` is larger."""
        return self._compile(negate=False)

    @cached_property
    def encode(self) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
        """Negated key; smaller encodings are larger monomials."""
        return self._compile(negate=True)

    @cached_property
    def decode(self) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
        """Inverse of :attr:`encode`."""
        where: dict[int, str] = {}
        for pos, slot in enumerate(self._slots()):
            if slot[0] == "var":
                _, i, sign = slot
                # encode stores -sign * e[i]
                where[i] = f"c[{pos}]" if sign < 0 else f"-c[{pos}]"
        n = self.nvars
        if n == 0:
            return lambda c: ()
        src = "lambda c: (" + ", ".join(where[i] for i in range(n)) + ("," if n == 1 else "") + ")"
        return eval(src)

    def compare(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    # -- derived orders -----------------------------------------------------

    def elimination(self, drop: Sequence[int]) -> MonomialOrder:
        """Two-block order: grevlex on ``drop`` first, then this order on the rest."""
        drop_set = set(drop)
        first = tuple(i for i in self.precedence if i in drop_set)
        rest_blocks = []
        for kind, idx in self.blocks:
            keep = tuple(i for i in idx if i not in drop_set)
            if keep:
                rest_blocks.append((kind, keep))
        blocks = ((("grevlex", first),) if first else ()) + tuple(rest_blocks)
        return MonomialOrder(blocks)

    def reindexed(self, mapping: Sequence[int], n: int, extra_front: Sequence[int] = ()) -> MonomialOrder:
        """Transport the order along ``old index -> mapping[old]`` into ``n`` variables.

        Variables not hit by ``mapping`` must be listed in ``extra_front``; they
        form a leading grevlex block.
        """
        blocks = tuple((k, tuple(mapping[i] for i in idx)) for k, idx in self.blocks)
        if extra_front:
            blocks = (("grevlex", tuple(extra_front)),) + blocks
        order = MonomialOrder(blocks)
        if order.nvars != n:
            raise ValueError("reindexed order does not cover the ring")
        return order


def lex(n: int, precedence: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder.lex(n, precedence)


def grevlex(n: int, precedence: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder.grevlex(n, precedence)
