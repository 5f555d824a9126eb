"""Buchberger's algorithm and ideal-level operations.

The engine works on an encoded form of polynomials: a monomial is stored as
its negated order key (see :mod:`enumsolve.algebra.orders`), so the smallest
code is the largest monomial, monomial multiplication is tuple addition and
a heap of codes yields leading terms in order.  Reducers are kept monic;
prime-field coefficients are reduced lazily, when a term is popped.

Pair handling follows the Gebauer-Moeller installation of both Buchberger
criteria, with the normal selection strategy (least lcm degree first, ties by
the lcm's position in the term order, then by pair indices).
"""

from __future__ import annotations

from functools import lru_cache
from heapq import heapify, heappop, heappush
from operator import add, le, sub
from typing import Iterable, Sequence

from .algebra.orders import MonomialOrder
from .algebra.poly import MultiPoly, RingContext, RingMismatch
from .budget import NO_BUDGET, Budget

__all__ = [
    "Ideal",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "dim",
    "degree",
    "eliminate",
    "saturate",
    "quotient",
    "intersect",
    "radical_member",
    "hilbert_numerator",
    "s_polynomial",
    "NotZeroDimensional",
    "DegreeUndefined",
]


class NotZeroDimensional(ValueError):
    pass


class DegreeUndefined(ValueError):
    pass


# ---------------------------------------------------------------------------
# engine
# ---------------------------------------------------------------------------


class _Elt:
    __slots__ = ("lme", "lmenc", "tail")

    def __init__(self, lme, lmenc, tail):
        self.lme = lme
        self.lmenc = lmenc
        self.tail = tail


def _encode_poly(f: MultiPoly, encode) -> list:
    return sorted(((encode(e), c) for e, c in f.coeffs.items()))


def _reduce(acc: dict, heap: list, basis: Sequence[_Elt], p: int | None, decode) -> list:
    """Full reduction of the polynomial held in ``acc`` (keys == heap entries)."""
    rem = []
    append = rem.append
    while heap:
        m = heappop(heap)
        c = acc.pop(m)
        if p is not None:
            c %= p
        if not c:
            continue
        e = decode(m)
        for g in basis:
            if all(map(le, g.lme, e)):
                q = tuple(map(sub, m, g.lmenc))
                get = acc.get
                for te, tc in g.tail:
                    k = tuple(map(add, q, te))
                    v = get(k)
                    if v is None:
                        acc[k] = -c * tc
                        heappush(heap, k)
                    else:
                        acc[k] = v - c * tc
                break
        else:
            append((m, c))
    return rem


def _monic(terms: list, p: int | None) -> list:
    lc = terms[0][1]
    if p is None:
        if lc == 1:
            return terms
        inv = 1 / lc
        return [(m, c * inv) for m, c in terms]
    inv = pow(int(lc), -1, p)
    return [(m, c * inv % p) for m, c in terms]


def _make_elt(terms: list, decode) -> _Elt:
    m0 = terms[0][0]
    return _Elt(decode(m0), m0, terms[1:])


def _reduce_terms(terms: Iterable, basis: Sequence[_Elt], p, decode) -> list:
    acc = {}
    for m, c in terms:
        acc[m] = acc.get(m, 0) + c
    heap = list(acc)
    heapify(heap)
    return _reduce(acc, heap, basis, p, decode)


def _divides(a, b) -> bool:
    return all(map(le, a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    return not any(x and y for x, y in zip(a, b))


def _run_buchberger(inputs: list[list], order: MonomialOrder, p: int | None, one, budget: Budget, stats: dict | None = None) -> list[list]:
    encode, decode, key = order.encode, order.decode, order.key
    elts: list[_Elt] = []
    active: list[int] = []
    pairs: list[tuple] = []

    def active_basis() -> list[_Elt]:
        return [elts[i] for i in active]

    def update(h: int) -> None:
        nonlocal active, pairs
        hl = elts[h].lme
        cands = []
        for g in active:
            lcm = _lcm(hl, elts[g].lme)
            cands.append((g, lcm))
        kept = []
        for idx, (g, lcm) in enumerate(cands):
            if _coprime(hl, elts[g].lme):
                kept.append((g, lcm))
                continue
            redundant = False
            for g2, l2 in cands[idx + 1 :]:
                if _divides(l2, lcm):
                    redundant = True
                    break
            if not redundant:
                for g2, l2 in kept:
                    if _divides(l2, lcm):
                        redundant = True
                        break
            if not redundant:
                kept.append((g, lcm))
        new_pairs = [(sum(l), key(l), g, h, l) for g, l in kept if not _coprime(hl, elts[g].lme)]
        survivors = []
        for pr in pairs:
            l = pr[4]
            if _divides(hl, l):
                li = _lcm(elts[pr[2]].lme, hl)
                lj = _lcm(hl, elts[pr[3]].lme)
                if li != l and lj != l:
                    continue
            survivors.append(pr)
        pairs = survivors + new_pairs
        heapify(pairs)
        active = [g for g in active if not _divides(hl, elts[g].lme)] + [h]

    def insert(terms: list) -> bool:
        """Add a nonzero reduced polynomial; True if it is a unit."""
        terms = _monic(terms, p)
        elts.append(_make_elt(terms, decode))
        h = len(elts) - 1
        if not any(elts[h].lme):
            return True
        update(h)
        return False

    unit = [[(encode((0,) * order.nvars), one)]]
    for f in sorted(inputs, key=lambda t: t[0][0], reverse=True):
        r = _reduce_terms(f, active_basis(), p, decode)
        if r and insert(r):
            return unit
    n_reductions = 0
    while pairs:
        budget.check()
        _, _, i, j, l = heappop(pairs)
        gi, gj = elts[i], elts[j]
        le_ = encode(l)
        qi = tuple(map(sub, le_, gi.lmenc))
        qj = tuple(map(sub, le_, gj.lmenc))
        acc: dict = {}
        for te, tc in gi.tail:
            acc[tuple(map(add, qi, te))] = tc
        get = acc.get
        for te, tc in gj.tail:
            k = tuple(map(add, qj, te))
            v = get(k)
            acc[k] = -tc if v is None else v - tc
        heap = list(acc)
        heapify(heap)
        r = _reduce(acc, heap, active_basis(), p, decode)
        n_reductions += 1
        if r and insert(r):
            return unit
    if stats is not None:
        stats["pairs_reduced"] = n_reductions
        stats["elements_created"] = len(elts)
    # inter-reduce the minimal basis; every element is already monic
    basis = active_basis()
    out = []
    for g in basis:
        others = [b for b in basis if b is not g]
        out.append([(g.lmenc, one)] + _reduce_terms(g.tail, others, p, decode))
    out.sort(key=lambda t: t[0][0], reverse=True)
    return out


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------


class GroebnerBasis:
    """Reduced Groebner basis; elements sorted by leading monomial, ascending."""

    def __init__(self, ring: RingContext, elements: Sequence[MultiPoly], _records: list[_Elt] | None = None):
        self.ring = ring
        self.elements: tuple[MultiPoly, ...] = tuple(elements)
        self._records = _records

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def records(self) -> list[_Elt]:
        if self._records is None:
            enc = self.ring.order.encode
            dec = self.ring.order.decode
            self._records = [_make_elt(_encode_poly(g, enc), dec) for g in self.elements]
        return self._records

    @property
    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [r.lme for r in self.records]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> MultiPoly:
        return self.elements[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.elements == other.elements

    def __repr__(self) -> str:
        return f"GroebnerBasis([{', '.join(g.render() for g in self.elements)}])"

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, f: MultiPoly) -> MultiPoly:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        order = self.ring.order
        terms = ((order.encode(e), c) for e, c in f.coeffs.items())
        rem = _reduce_terms(terms, self.records, self.ring.field.p, order.decode)
        dec = order.decode
        return MultiPoly(self.ring, {dec(m): c for m, c in rem})

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()

    def is_standard(self, exps: Sequence[int]) -> bool:
        return not any(_divides(lm, exps) for lm in self.leading_monomials)

    def standard_monomials(self, limit: int = 10**6) -> list[tuple[int, ...]]:
        """Standard monomials, ascending in the order; requires a zero-dimensional ideal."""
        if self.is_unit():
            return []
        n = self.ring.nvars
        lms = self.leading_monomials
        for i in range(n):
            if not any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms):
                raise NotZeroDimensional("ideal is not zero-dimensional")
        seen = {(0,) * n}
        frontier = [(0,) * n]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(n):
                    e = list(m)
                    e[i] += 1
                    e = tuple(e)
                    if e not in seen and not any(_divides(lm, e) for lm in lms):
                        seen.add(e)
                        nxt.append(e)
            if len(seen) > limit:
                raise NotZeroDimensional("too many standard monomials")
            frontier = nxt
        return sorted(seen, key=self.ring.order.key)


class Ideal:
    """Ideal given by generators; Groebner bases are cached per order."""

    def __init__(self, ring: RingContext, generators: Iterable[MultiPoly] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, MultiPoly):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatch(f"generator in {g.ring}, ideal in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators: tuple[MultiPoly, ...] = tuple(gens)
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    @classmethod
    def parse(cls, ring: RingContext, polys: Iterable[str]) -> Ideal:
        return cls(ring, [ring.parse(s) for s in polys])

    def __repr__(self) -> str:
        return f"Ideal({[g.render() for g in self.generators]})"

    def __add__(self, other) -> Ideal:
        if isinstance(other, Ideal):
            other = other.generators
        elif isinstance(other, MultiPoly):
            other = (other,)
        return Ideal(self.ring, self.generators + tuple(other))

    def groebner(self, order: MonomialOrder | str | None = None, budget: Budget = NO_BUDGET) -> GroebnerBasis:
        if order is None:
            order = self.ring.order
        elif isinstance(order, str):
            order = MonomialOrder.from_name(order, self.ring.nvars)
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self, order, budget)
            self._gb[order] = gb
        return gb

    def _set_gb(self, gb: GroebnerBasis) -> None:
        self._gb[gb.order] = gb

    def contains(self, f: MultiPoly) -> bool:
        return self.groebner().contains(f)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def same_as(self, other: Ideal) -> bool:
        return self.groebner() == other.groebner()


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def buchberger(ideal: Ideal, order: MonomialOrder | None = None, budget: Budget = NO_BUDGET, stats: dict | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order`` (default: the ring's)."""
    ring = ideal.ring if order is None else ideal.ring.with_order(order)
    order = ring.order
    p = ring.field.p
    inputs = [_encode_poly(g, order.encode) for g in ideal.generators]
    if not inputs:
        return GroebnerBasis(ring, [], [])
    out = _run_buchberger(inputs, order, p, ring.field.one, budget, stats)
    dec = order.decode
    elements = [MultiPoly(ring, {dec(m): c for m, c in t}) for t in out]
    records = [_make_elt(t, dec) for t in out]
    return GroebnerBasis(ring, elements, records)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    l = _lcm(f.lm, g.lm)
    fl = tuple(a - b for a, b in zip(l, f.lm))
    gl = tuple(a - b for a, b in zip(l, g.lm))
    fld = f.ring.field
    return f.mul_term(fl, fld.inv(f.lc)) - g.mul_term(gl, fld.inv(g.lc))


def normal_form(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.reduce(f)


def _min_hitting_set(edges: list[int], nvars: int) -> int:
    """Size of a smallest variable set meeting every support mask."""
    best = [nvars]

    def rec(chosen: int, size: int, remaining: list[int]) -> None:
        if size >= best[0]:
            return
        open_edges = [e for e in remaining if not e & chosen]
        if not open_edges:
            best[0] = size
            return
        e = min(open_edges, key=lambda m: bin(m).count("1"))
        bit = 1
        while bit <= e:
            if e & bit:
                rec(chosen | bit, size + 1, open_edges)
            bit <<= 1

    rec(0, 0, edges)
    return best[0]


def _support_masks(lms: Iterable[tuple[int, ...]]) -> list[int]:
    masks = set()
    for lm in lms:
        m = 0
        for i, k in enumerate(lm):
            if k:
                m |= 1 << i
        masks.add(m)
    # keep inclusion-minimal supports
    ms = sorted(masks, key=lambda m: bin(m).count("1"))
    minimal: list[int] = []
    for m in ms:
        if not any(s & m == s for s in minimal):
            minimal.append(m)
    return minimal


def dim_from_leading(lms: Sequence[tuple[int, ...]], nvars: int) -> int:
    if any(not any(lm) for lm in lms):
        return -1
    masks = _support_masks(lms)
    return nvars - _min_hitting_set(masks, nvars)


def dim(ideal: Ideal, budget: Budget = NO_BUDGET) -> int:
    """Krull dimension of R/I (largest independent variable set mod the initial ideal)."""
    gb = ideal.groebner(MonomialOrder.grevlex(ideal.ring.nvars) if ideal.ring.order.kind != "grevlex" else None, budget)
    return dim_from_leading(gb.leading_monomials, ideal.ring.nvars)


# -- Hilbert series of monomial ideals ------------------------------------


def _upoly_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return out


def _upoly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a: list[int], k: int) -> list[int]:
    return [0] * k + list(a)


def _minimize(gens: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    gs = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gs:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=200_000)
def _hilbert_num(gens: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    # pairwise coprime generators: product formula
    used = [0] * len(gens[0])
    coprime = True
    for g in gens:
        for i, k in enumerate(g):
            if k:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _upoly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    # pivot on the most frequent variable: N(I) = N(I + (x)) + t * N(I : x)
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    x = max(range(n), key=lambda i: counts[i])
    unit = tuple(1 if i == x else 0 for i in range(n))
    with_x = _minimize([g for g in gens if not g[x]] + [unit])
    colon = _minimize([tuple(k - 1 if (i == x and k) else k for i, k in enumerate(g)) for g in gens])
    a = list(_hilbert_num(with_x))
    b = _shift(list(_hilbert_num(colon)), 1)
    out = _upoly_sub(a, [-c for c in b])
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def hilbert_numerator(lms: Sequence[tuple[int, ...]]) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of k[x]/(lms)."""
    return list(_hilbert_num(_minimize(lms)))


def _degree_from_numerator(num: list[int], nvars: int) -> tuple[int, int]:
    """(Krull dimension, degree) from a Hilbert numerator over (1-t)^nvars."""
    q = list(num)
    k = 0
    while q and sum(q) == 0:
        # synthetic division by (1 - t)
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        k += 1
    return nvars - k, sum(q)


def degree(ideal: Ideal, budget: Budget = NO_BUDGET) -> int:
    """Degree: standard-monomial count (dim 0) or top-dimensional degree (homogeneous)."""
    gb = ideal.groebner(MonomialOrder.grevlex(ideal.ring.nvars) if ideal.ring.order.kind != "grevlex" else None, budget)
    if gb.is_unit():
        return 0
    lms = gb.leading_monomials
    n = ideal.ring.nvars
    d = dim_from_leading(lms, n)
    if d != 0 and not all(g.is_homogeneous() for g in gb.elements):
        raise DegreeUndefined("degree of a positive-dimensional inhomogeneous ideal is not defined here")
    if d == 0:
        return len(gb.standard_monomials())
    return _degree_from_numerator(hilbert_numerator(lms), n)[1]


def dim_degree(ideal: Ideal, budget: Budget = NO_BUDGET) -> tuple[int, int]:
    return dim(ideal, budget), degree(ideal, budget)


# -- elimination-based ops --------------------------------------------------


def _fresh(ring: RingContext, base: str = "_t") -> str:
    name = base
    k = 0
    while name in ring.vars:
        k += 1
        name = f"{base}{k}"
    return name


def _eliminate_in(ring_big: RingContext, gens: list[MultiPoly], small: RingContext, budget: Budget) -> Ideal:
    """GB of gens in ring_big (elimination order); keep elements free of the extra variables."""
    big_ideal = Ideal(ring_big, gens)
    gb = big_ideal.groebner(budget=budget)
    keep = [g.restrict_to(small) for g in gb.elements if _only_small(g, ring_big, small)]
    out = Ideal(small, keep)
    # the extension puts its new variables in a leading block, so the kept
    # elements form a reduced basis for the ring's own order
    out._set_gb(GroebnerBasis(small, keep))
    return out


def _only_small(g: MultiPoly, big: RingContext, small: RingContext) -> bool:
    extra = [i for i, v in enumerate(big.vars) if v not in small._index]
    return not any(e[i] for e in g.coeffs for i in extra)


def eliminate(ideal: Ideal, drop: Iterable[str | int], budget: Budget = NO_BUDGET) -> Ideal:
    """Generators of I intersected with the subring on the kept variables (same ring)."""
    ring = ideal.ring
    drop_idx = sorted({d if isinstance(d, int) else ring.index(d) for d in drop})
    if not drop_idx:
        gb = ideal.groebner(budget=budget)
        out = Ideal(ring, gb.elements)
        out._set_gb(gb)
        return out
    order = ring.order.elimination(drop_idx)
    gb = ideal.groebner(order, budget)
    keep = [g for g in gb.elements if not any(e[i] for e in g.coeffs for i in drop_idx)]
    keep = [g.to_ring(ring) for g in keep]
    return Ideal(ring, keep)


def saturate(ideal: Ideal, f: MultiPoly, budget: Budget = NO_BUDGET) -> Ideal:
    """I : f^infinity = (I + (t*f - 1)) intersected with k[X]."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    ring = ideal.ring
    if f.is_constant():
        gb = ideal.groebner(budget=budget)
        out = Ideal(ring, gb.elements)
        out._set_gb(gb)
        return out
    t = _fresh(ring)
    big = ring.extended([t])
    gens = [g.to_ring(big) for g in ideal.generators]
    gens.append(big.var(t) * f.to_ring(big) - 1)
    return _eliminate_in(big, gens, ring, budget)


def intersect(a: Ideal, b: Ideal, budget: Budget = NO_BUDGET) -> Ideal:
    """I cap J = (t*I + (1-t)*J) intersected with k[X]."""
    if a.ring != b.ring:
        raise RingMismatch("ideals live in different rings")
    ring = a.ring
    if not a.generators or not b.generators:
        return Ideal(ring, [])
    t = _fresh(ring)
    big = ring.extended([t])
    tv = big.var(t)
    gens = [tv * g.to_ring(big) for g in a.generators]
    gens += [(1 - tv) * g.to_ring(big) for g in b.generators]
    return _eliminate_in(big, gens, ring, budget)


def quotient(a: Ideal, b: Ideal, budget: Budget = NO_BUDGET) -> Ideal:
    """I : J as the intersection of I : g over the generators g of J."""
    if a.ring != b.ring:
        raise RingMismatch("ideals live in different rings")
    if not b.generators:
        raise ValueError("quotient by the zero ideal")
    ring = a.ring
    result: Ideal | None = None
    for g in b.generators:
        if g.is_constant():
            part = Ideal(ring, a.groebner(budget=budget).elements)
        else:
            inter = intersect(a, Ideal(ring, [g]), budget)
            part = Ideal(ring, [h.exact_div(g) for h in inter.generators])
        result = part if result is None else intersect(result, part, budget)
        if result.is_unit():
            break
    gb = result.groebner(budget=budget)
    out = Ideal(ring, gb.elements)
    out._set_gb(gb)
    return out


def radical_member(f: MultiPoly, ideal: Ideal, budget: Budget = NO_BUDGET) -> bool:
    """f in sqrt(I), decided by 1 in I + (t*f - 1)."""
    ring = ideal.ring
    if f.is_zero():
        return True
    t = _fresh(ring)
    big = ring.extended([t])
    gens = [g.to_ring(big) for g in ideal.generators] + [big.var(t) * f.to_ring(big) - 1]
    return Ideal(big, gens).groebner(budget=budget).is_unit()
