"""Linear algebra in the quotient ring of a zero-dimensional ideal.

The quotient ``A = k[X]/I`` is represented by its standard monomials for a
grevlex basis.  Elements are coordinate vectors; multiplication by a
variable is a stored matrix, and multiplication by a general element is
assembled from those.  Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterable, Mapping, Sequence

from .algebra.fields import FieldDesc, mpq
from .algebra.matrix import Matrix, char_poly
from .algebra.orders import MonomialOrder
from .algebra.poly import MultiPoly, RingContext
from .algebra.unipoly import UniPoly
from .budget import NO_BUDGET, Budget
from .groebner import GroebnerBasis, Ideal, NotZeroDimensional, dim_from_leading
from .realroots import count_real_roots, isolate_intervals, squarefree_part

__all__ = [
    "QuotientAlgebra",
    "quotient_algebra",
    "regular_rep",
    "eliminant",
    "char_poly_elem",
    "TraceForm",
    "trace_form",
    "trace_form_signature",
    "congruence_signature",
    "sturm_signature",
    "num_real_trace",
    "num_real_sturm_algebra",
    "TriangularForm",
    "ShapeFailure",
    "triangular_form",
    "solve_mod_p",
    "stickelberger_check",
    "isolate_real_roots",
    "separating_form",
    "linear_form_sequence",
]


class QuotientAlgebra:
    """Standard-monomial model of k[X]/I for a zero-dimensional ideal I."""

    def __init__(self, ideal: Ideal, budget: Budget = NO_BUDGET):
        ring = ideal.ring
        n = ring.nvars
        order = ring.order if ring.order.kind == "grevlex" else MonomialOrder.grevlex(n)
        gb = ideal.groebner(order, budget)
        if gb.is_unit():
            raise NotZeroDimensional("the unit ideal has an empty quotient")
        if dim_from_leading(gb.leading_monomials, n) != 0:
            raise NotZeroDimensional("ideal is not zero-dimensional")
        self.ideal = ideal
        self.ring = ring
        self.field: FieldDesc = ring.field
        self.gb: GroebnerBasis = gb
        self.basis: tuple[tuple[int, ...], ...] = tuple(gb.standard_monomials())
        self.index: dict[tuple[int, ...], int] = {m: i for i, m in enumerate(self.basis)}
        self.d = len(self.basis)
        self._mult: dict[int, Matrix] = {}
        for v in range(n):
            budget.check()
            self._mult[v] = self._build_var_matrix(v)
        self._tau: list | None = None

    # -- coordinates ----------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self.d

    def coords(self, f: MultiPoly) -> list:
        """Coordinate vector of the normal form of f."""
        r = self.gb.reduce(f.to_ring(self.gb.ring) if f.ring != self.gb.ring else f)
        v = [self.field.zero] * self.d
        for e, c in r.coeffs.items():
            v[self.index[e]] = c
        return v

    def element(self, v: Sequence) -> MultiPoly:
        return MultiPoly(self.ring, {self.basis[i]: c for i, c in enumerate(v) if c})

    def _build_var_matrix(self, v: int) -> Matrix:
        F = self.field
        d = self.d
        cols = []
        for b in self.basis:
            e = list(b)
            e[v] += 1
            e = tuple(e)
            j = self.index.get(e)
            if j is not None:
                col = [F.zero] * d
                col[j] = F.one
            else:
                col = self.coords(self.gb.ring.monomial(e))
            cols.append(col)
        return Matrix([list(r) for r in zip(*cols)], F, coerce=False)

    def var_matrix(self, v: int | str) -> Matrix:
        if isinstance(v, str):
            v = self.ring.index(v)
        return self._mult[v]

    def matrix_of(self, h: MultiPoly) -> Matrix:
        """m_h assembled from the variable matrices."""
        F = self.field
        d = self.d
        total = Matrix.zeros(d, d, F)
        ident = Matrix.identity(d, F)
        cache: dict[tuple[int, ...], Matrix] = {(0,) * self.ring.nvars: ident}

        def mono(e: tuple[int, ...]) -> Matrix:
            m = cache.get(e)
            if m is None:
                v = next(i for i, k in enumerate(e) if k)
                prev = list(e)
                prev[v] -= 1
                m = self._mult[v] @ mono(tuple(prev))
                cache[e] = m
            return m

        for e, c in sorted(h.coeffs.items()):
            total = total + mono(e).scale(c)
        return total

    def multiply_vector(self, h: MultiPoly, v: Sequence) -> list:
        """Coordinates of h * element(v), via repeated variable multiplications."""
        F = self.field
        out = [F.zero] * self.d
        for e, c in h.coeffs.items():
            w = list(v)
            for i, k in enumerate(e):
                for _ in range(k):
                    w = self._mult[i].apply(w)
            out = [F.normalize(a + c * b) for a, b in zip(out, w)]
        return out

    # -- traces -----------------------------------------------------------------

    @property
    def trace_vector(self) -> list:
        """tau[k] = trace of multiplication by the k-th standard monomial."""
        if self._tau is None:
            cache: dict[int, Matrix] = {0: Matrix.identity(self.d, self.field)}
            tau = [self.field.zero] * self.d
            for k, b in enumerate(self.basis):
                if k:
                    v = next(i for i, e in enumerate(b) if e)
                    prev = list(b)
                    prev[v] -= 1
                    cache[k] = self._mult[v] @ cache[self.index[tuple(prev)]]
                tau[k] = cache[k].trace()
            self._tau = tau
        return self._tau

    def trace(self, v: Sequence):
        return self.field.normalize(sum((a * b for a, b in zip(self.trace_vector, v) if a and b), self.field.zero))


def quotient_algebra(ideal: Ideal, budget: Budget = NO_BUDGET) -> QuotientAlgebra:
    return QuotientAlgebra(ideal, budget)


def regular_rep(h: MultiPoly, A: QuotientAlgebra) -> Matrix:
    """Matrix of multiplication by h; column j = coordinates of h * b_j."""
    return A.matrix_of(h)


def char_poly_elem(h: MultiPoly, A: QuotientAlgebra) -> UniPoly:
    return char_poly(A.matrix_of(h))


def _power_relation(start: list, step, F: FieldDesc, dmax: int) -> UniPoly:
    """First linear dependency among start, step(start), step^2(start), ..."""
    rows: list[tuple[int, list, list]] = []
    v = start
    for k in range(dmax + 1):
        vec = list(v)
        combo = [F.zero] * k + [F.one]
        for piv, rv, rc in rows:
            c = vec[piv]
            if c:
                vec = [F.normalize(a - c * b) for a, b in zip(vec, rv)]
                for i, x in enumerate(rc):
                    if x:
                        combo[i] = F.normalize(combo[i] - c * x)
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return UniPoly(combo, F)
        inv = F.inv(vec[piv])
        rows.append((piv, [F.normalize(a * inv) for a in vec], [F.normalize(a * inv) for a in combo]))
        v = step(v)
    raise ArithmeticError("no relation found within the algebra dimension")


def eliminant(h: MultiPoly, A: QuotientAlgebra) -> UniPoly:
    """Monic minimal polynomial of h in A."""
    F = A.field
    one = A.coords(A.ring.one())
    m = A.matrix_of(h)
    return _power_relation(one, m.apply, F, A.d)


# -- trace forms ----------------------------------------------------------------


@dataclass(frozen=True)
class TraceForm:
    h: MultiPoly
    matrix: Matrix

    @property
    def size(self) -> int:
        return self.matrix.rows


def trace_form(h: MultiPoly, A: QuotientAlgebra) -> TraceForm:
    """Gram matrix S_h[i][j] = trace(m_{h b_i b_j}) in the standard basis."""
    F = A.field
    tau = A.trace_vector
    mh = A.matrix_of(h)
    w = mh.rapply(tau)  # w[k] = trace(m_{h b_k})
    rows: list[list | None] = [None] * A.d
    rows[0] = w
    for k, b in enumerate(A.basis):
        if k == 0:
            continue
        v = next(i for i, e in enumerate(b) if e)
        prev = list(b)
        prev[v] -= 1
        rows[k] = A._mult[v].rapply(rows[A.index[tuple(prev)]])
    return TraceForm(h, Matrix(rows, F, coerce=False))


def congruence_signature(S: Matrix) -> tuple[int, int]:
    """(rank, signature) of a rational symmetric matrix by symmetric elimination."""
    if not S.is_symmetric():
        raise ValueError("matrix is not symmetric")
    if S.field is None or S.field.p is not None:
        raise ValueError("signature needs rational entries")
    a = [list(r) for r in S.data]
    pos = neg = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # replace basis vector e_i by e_i + e_j: new diagonal entry 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rp = a[piv]
        rest = [k for k in range(n) if k != piv]
        a = [[a[r][c] - a[r][piv] * rp[c] / p for c in rest] for r in rest]
    return pos + neg, pos - neg


def sturm_signature(S: Matrix) -> tuple[int, int] | None:
    """(rank, signature) from root counts of the characteristic polynomial; None if it is not squarefree."""
    from .realroots import is_squarefree

    cp = char_poly(S)
    if not is_squarefree(cp):
        return None
    zero_root = 1 if not cp[0] else 0
    pos = count_real_roots(cp, "positive")
    neg = count_real_roots(cp, "negative")
    return S.rows - zero_root, pos - neg


def trace_form_signature(h: MultiPoly, A: QuotientAlgebra) -> tuple[int, int]:
    return congruence_signature(trace_form(h, A).matrix)


def num_real_trace(A: QuotientAlgebra) -> int:
    """Number of real points of V(I): signature of the trace form of 1."""
    return trace_form_signature(A.ring.one(), A)[1]


# -- separating forms -------------------------------------------------------------


def _small_ints() -> Iterable[int]:
    for k in count(1):
        yield k
        yield -k


def linear_form_sequence(ring: RingContext) -> Iterable[MultiPoly]:
    """Coordinates first, then sum_i t^i x_i for t = 1, -1, 2, -2, ..."""
    for v in ring.vars:
        yield ring.var(v)
    n = ring.nvars
    for t in _small_ints():
        yield ring.from_dict({tuple(1 if j == i else 0 for j in range(n)): t**i for i in range(n)})


def separating_form(A: QuotientAlgebra, tries: int = 50) -> tuple[MultiPoly, UniPoly]:
    """First linear form (from :func:`linear_form_sequence`) whose eliminant has degree d.

    If none is found within ``tries`` forms (non-radical ideals never have
    one), the form with the largest eliminant degree is returned.
    """
    best = None
    for k, form in enumerate(linear_form_sequence(A.ring)):
        if k >= tries:
            break
        g = eliminant(form, A)
        if g.degree == A.d:
            return form, g
        if best is None or g.degree > best[1].degree:
            best = (form, g)
    return best


def num_real_sturm_algebra(A: QuotientAlgebra) -> int:
    """Real points counted by Sturm on the eliminant of a separating linear form."""
    _, g = separating_form(A)
    return count_real_roots(g, "all")


def isolate_real_roots(A: QuotientAlgebra, h: MultiPoly, precision=mpq(1, 2**10)) -> list[tuple[mpq, mpq]]:
    """Isolating intervals (a, b] for the real roots of eliminant(h)."""
    return isolate_intervals(eliminant(h, A), precision)


# -- triangular (shape) form ---------------------------------------------------------


@dataclass(frozen=True)
class ShapeFailure:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class TriangularForm:
    """pivot-variable eliminant g and x_i = g_i(pivot) for the other variables."""

    ring: RingContext
    pivot: str
    g: UniPoly
    coords: Mapping[str, UniPoly] = field(default_factory=dict)

    def lex_basis(self) -> list[MultiPoly]:
        """The lex Groebner basis {g(pivot)} + {x_i - g_i(pivot)} in the ring."""
        ring = self.ring
        t = ring.index(self.pivot)
        n = ring.nvars

        def lift(u: UniPoly) -> MultiPoly:
            return ring.from_dict({tuple(k if j == t else 0 for j in range(n)): c for k, c in enumerate(u.coeffs) if c})

        out = [lift(self.g)]
        for v, u in self.coords.items():
            out.append(ring.var(v) - lift(u))
        return out

    def point_at(self, root) -> tuple:
        """Coordinates (in ring variable order) of the point over a pivot root."""
        F = self.ring.field
        vals = []
        for v in self.ring.vars:
            vals.append(F.normalize(root) if v == self.pivot else self.coords[v](root))
        return tuple(vals)


def triangular_form(A: QuotientAlgebra, pivot: str | int) -> TriangularForm | ShapeFailure:
    """Shape-lemma data with ``pivot`` as the last lex variable, or a failure value."""
    ring = A.ring
    if isinstance(pivot, int):
        pivot = ring.vars[pivot]
    F = A.field
    x = ring.var(pivot)
    g = eliminant(x, A)
    if g.degree != A.d:
        return ShapeFailure(f"eliminant of {pivot} has degree {g.degree} < {A.d}")
    # powers 1, x, ..., x^(d-1) form a basis; express every other variable in it
    d = A.d
    powers = [A.coords(ring.one())]
    mx = A.var_matrix(pivot)
    for _ in range(d - 1):
        powers.append(mx.apply(powers[-1]))
    P = Matrix([list(r) for r in zip(*powers)], F, coerce=False)
    coords = {}
    for v in ring.vars:
        if v == pivot:
            continue
        rhs = A.coords(ring.var(v))
        coords[v] = UniPoly(_solve(P, rhs, F), F)
    return TriangularForm(ring, pivot, g, coords)


def _solve(M: Matrix, b: Sequence, F: FieldDesc) -> list:
    """Solve the square nonsingular system M x = b."""
    n = M.rows
    a = [list(r) + [b[i]] for i, r in enumerate(M.data)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        inv = F.inv(a[c][c])
        a[c] = [F.normalize(x * inv) for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                k = a[i][c]
                a[i] = [F.normalize(x - k * y) for x, y in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


class ScanBudgetExceeded(RuntimeError):
    pass


def solve_mod_p(T: TriangularForm, p: int | None = None, max_evals: int = 10**6) -> list[tuple[int, ...]]:
    """All F_p-rational points of a triangular form, by scanning pivot values."""
    F = T.ring.field
    if F.p is None:
        raise ValueError("solve_mod_p needs a prime field")
    if p is not None and p != F.p:
        raise ValueError(f"triangular form is over F_{F.p}, not F_{p}")
    p = F.p
    if p > max_evals:
        raise ScanBudgetExceeded(f"scanning F_{p} exceeds {max_evals} evaluations")
    return [T.point_at(a) for a in range(p) if T.g(a) == 0]


def stickelberger_check(A: QuotientAlgebra, h: MultiPoly, roots: Sequence[Sequence]) -> bool:
    """char_poly(m_h) == prod (Z - h(xi)) over the listed roots (repeats give multiplicity)."""
    if len(roots) != A.d:
        return False
    F = A.field
    expected = UniPoly.from_roots([h.evaluate([F(c) for c in pt]) for pt in roots], F)
    return char_poly_elem(h, A) == expected
