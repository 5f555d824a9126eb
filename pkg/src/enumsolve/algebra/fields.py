"""Exact coefficient fields: the rationals and prime fields.

Rationals are carried as :class:`gmpy2.mpq` (always reduced, positive
denominator).  Prime-field elements are plain ``int`` values in ``[0, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

__all__ = ["FieldDesc", "QQ", "Fp", "Rat", "mpq"]

Rat = type(mpq(0))

_MAX_PRIME = 1 << 63


@dataclass(frozen=True)
class FieldDesc:
    """Descriptor of a coefficient field; ``p is None`` means the rationals."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if not isinstance(self.p, int) or self.p < 2 or self.p >= _MAX_PRIME:
                raise ValueError(f"prime modulus out of range: {self.p!r}")
            if not gmpy2.is_prime(self.p, 50):
                raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"Fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> FieldDesc:
        """Parse ``QQ`` / ``qq`` / ``Fp:<p>`` / ``fp:<p>``."""
        t = text.strip()
        if t.lower() == "qq":
            return QQ
        head, sep, tail = t.partition(":")
        if sep and head.lower() == "fp":
            try:
                return cls(int(tail))
            except ValueError as exc:
                raise ValueError(f"bad field descriptor {text!r}: {exc}") from None
        raise ValueError(f"bad field descriptor {text!r}")

    # -- element handling ---------------------------------------------------

    @property
    def zero(self):
        return 0 if self.p is not None else mpq(0)

    @property
    def one(self):
        return 1 if self.p is not None else mpq(1)

    def __call__(self, x):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        p = self.p
        if p is None:
            if isinstance(x, str):
                return mpq(x)
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = mpq(x)
        if isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        num, den = int(x.numerator), int(x.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
        return num * pow(den, -1, p) % p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / mpq(a)
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        if self.p is None:
            return mpq(a) / b
        return a * self.inv(b) % self.p

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def normalize(self, a):
        return a % self.p if self.p is not None else a

    def sign(self, a) -> int:
        if self.p is not None:
            raise ValueError("sign is undefined in a prime field")
        return (a > 0) - (a < 0)


QQ = FieldDesc(None)


def Fp(p: int) -> FieldDesc:
    return FieldDesc(p)
