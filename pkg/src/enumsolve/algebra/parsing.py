"""Text form of polynomials and ideal files.

Grammar (whitespace insignificant)::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | var | '(' expr ')'
    rational := int ('/' nat)?

Ideal files start with ``ring <QQ|Fp:p> vars v1 v2 ... order <lex|grevlex>``;
every further non-empty line not starting with ``#`` holds one polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .fields import FieldDesc
from .orders import MonomialOrder
from .poly import MultiPoly, RingContext

__all__ = ["ParseError", "parse_poly", "render_poly", "IdealFile", "parse_ideal_text", "read_ideal_file", "format_ideal_file"]


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokens(src: str, line: int) -> Iterator[tuple[str, str, int]]:
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            yield ("num", m.group(1), m.start(1) + 1)
        elif m.group(2) is not None:
            yield ("var", m.group(2), m.start(2) + 1)
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", line, m.start(3) + 1)
            yield ("op", ch, m.start(3) + 1)
        pos = m.end()
    yield ("end", "", n + 1)


class _Parser:
    def __init__(self, src: str, ring: RingContext, line: int):
        self.ring = ring
        self.line = line
        self.toks = list(_tokens(src, line))
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def expect_op(self, ch: str) -> None:
        t = self.take()
        if t[0] != "op" or t[1] != ch:
            self.fail(f"expected {ch!r}", t)

    def nat(self) -> int:
        t = self.take()
        if t[0] != "num":
            self.fail("expected a natural number", t)
        return int(t[1])

    def expr(self) -> MultiPoly:
        negate = False
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            negate = t[1] == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif t[0] in ("num", "var") or (t[0] == "op" and t[1] == "("):
                self.fail("juxtaposition is not allowed; use '*'")
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.base()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            base = base ** self.nat()
        return base

    def base(self) -> MultiPoly:
        t = self.take()
        if t[0] == "num":
            num = int(t[1])
            nt = self.peek()
            if nt[0] == "op" and nt[1] == "/":
                self.take()
                dt = self.peek()
                den = self.nat()
                if den == 0:
                    self.fail("zero denominator", dt)
                try:
                    value = self.ring.field(f"{num}/{den}")
                except ZeroDivisionError as exc:
                    raise ParseError(str(exc), self.line, nt[2]) from None
                return self.ring.const(value)
            return self.ring.const(num)
        if t[0] == "var":
            try:
                return self.ring.var(t[1])
            except KeyError:
                self.fail(f"unknown variable {t[1]!r}", t)
        if t[0] == "op" and t[1] == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.fail("expected a number, variable or '('", t)


def parse_poly(src: str, ring: RingContext, line: int = 1) -> MultiPoly:
    """Parse one polynomial; errors carry line/column."""
    p = _Parser(src, ring, line)
    if p.peek()[0] == "end":
        p.fail("empty expression")
    out = p.expr()
    if p.peek()[0] != "end":
        p.fail("unexpected trailing input")
    return out


def _fmt_coeff(c, field: FieldDesc) -> tuple[bool, str]:
    """(negative?, magnitude text)."""
    if field.p is not None:
        return False, str(int(c))
    neg = c < 0
    a = -c if neg else c
    if a.denominator == 1:
        return neg, str(a.numerator)
    return neg, f"{a.numerator}/{a.denominator}"


def render_poly(f: MultiPoly) -> str:
    """Render in the parse grammar, terms descending in the ring order."""
    if f.is_zero():
        return "0"
    names = f.ring.vars
    out: list[str] = []
    for k, (e, c) in enumerate(f.terms):
        neg, mag = _fmt_coeff(c, f.ring.field)
        mono = "*".join(names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


@dataclass
class IdealFile:
    ring: RingContext
    generators: list[MultiPoly]


_HEADER = re.compile(r"^\s*ring\s+(\S+)\s+vars\s+(.*?)\s+order\s+(\S+)\s*$")


def parse_ideal_text(text: str, field: FieldDesc | None = None, order: str | None = None) -> IdealFile:
    """Parse an ideal file; ``field``/``order`` override the header."""
    lines = text.splitlines()
    hdr_no = None
    for no, raw in enumerate(lines, 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            hdr_no = no
            break
    if hdr_no is None:
        raise ParseError("missing ring header", 1, 1)
    m = _HEADER.match(lines[hdr_no - 1])
    if m is None:
        raise ParseError("header must read: ring <field> vars <v1> ... order <lex|grevlex>", hdr_no, 1)
    try:
        fld = field or FieldDesc.parse(m.group(1))
    except ValueError as exc:
        raise ParseError(str(exc), hdr_no, m.start(1) + 1) from None
    names = m.group(2).split()
    if not names:
        raise ParseError("no variables declared", hdr_no, m.start(2) + 1)
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
            raise ParseError(f"bad variable name {v!r}", hdr_no, m.start(2) + 1)
    oname = order or m.group(3)
    try:
        ring = RingContext(tuple(names), fld, MonomialOrder.from_name(oname, len(names)))
    except ValueError as exc:
        raise ParseError(str(exc), hdr_no, m.start(3) + 1) from None
    gens = []
    for no in range(hdr_no + 1, len(lines) + 1):
        s = lines[no - 1]
        if not s.strip() or s.lstrip().startswith("#"):
            continue
        g = parse_poly(s, ring, line=no)
        if g:
            gens.append(g)
    return IdealFile(ring, gens)


def read_ideal_file(path: str | Path, field: FieldDesc | None = None, order: str | None = None) -> IdealFile:
    if str(path) == "-":
        import sys

        return parse_ideal_text(sys.stdin.read(), field, order)
    return parse_ideal_text(Path(path).read_text(encoding="utf-8"), field, order)


def format_ideal_file(ring: RingContext, gens: list[MultiPoly], comment: str | None = None) -> str:
    kind = ring.order.kind
    if kind not in ("lex", "grevlex"):
        kind = "grevlex"
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"ring {ring.field} vars {' '.join(ring.vars)} order {kind}")
    lines.extend(g.to_ring(ring).render() if g.ring != ring else g.render() for g in gens)
    return "\n".join(lines) + "\n"
