"""Builders for the enumerative problems: tangency conditions, Grassmannians, Schubert conditions."""

from __future__ import annotations

from itertools import combinations
from math import factorial, prod
from typing import Sequence

from .algebra.fields import QQ, FieldDesc, mpq
from .algebra.matrix import Matrix, det, exterior_power
from .algebra.poly import MultiPoly, RingContext
from .groebner import Ideal

__all__ = [
    "plucker_name",
    "plucker_ring",
    "plucker_relations",
    "plucker_ideal",
    "schubert_condition",
    "osc_plane",
    "tangent_equation",
    "plucker_coordinates",
    "cylinder_ring",
    "cylinder_condition",
    "sphere_matrix",
    "hyperboloid_matrix",
    "local_line_ring",
    "tangent_to",
    "pn_sphere",
    "pn_ring",
    "pn_frame",
    "pn_tangency",
    "quadric_form",
    "bezout_number",
]


# ---------------------------------------------------------------------------
# quadratic forms with polynomial arguments
# ---------------------------------------------------------------------------


def quadric_form(u: Sequence, M: Matrix, v: Sequence, ring: RingContext) -> MultiPoly:
    """u M v^t for vectors whose entries are scalars or polynomials of ``ring``."""
    total = ring.zero()
    F = ring.field
    for i, ui in enumerate(u):
        if not _nonzero(ui):
            continue
        row = ring.zero()
        for j, vj in enumerate(v):
            m = M[i, j]
            if m and _nonzero(vj):
                row = row + _as_poly(vj, ring).scale(F(m))
        total = total + _as_poly(ui, ring) * row
    return total


def _nonzero(x) -> bool:
    return not x.is_zero() if isinstance(x, MultiPoly) else bool(x)


def _as_poly(x, ring: RingContext) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else ring.const(x)


def _symmetric(data, field: FieldDesc = QQ) -> Matrix:
    m = Matrix(data, field)
    if not m.is_symmetric():
        raise ValueError("quadric matrix must be symmetric")
    return m


# ---------------------------------------------------------------------------
# cylinders and spheres in affine 3-space
# ---------------------------------------------------------------------------


def cylinder_ring(field: FieldDesc = QQ) -> RingContext:
    return RingContext.make("r y11 y12 y21 y22", field)


def cylinder_condition(point: Sequence, ring: RingContext | None = None) -> MultiPoly:
    """Cylinder with axis P + tV, P = (0, y11, y12), V = (1, y21, y22), squared radius r, through ``point``.

    Returns r|V|^2 + (V.(X-P))^2 - |X-P|^2 |V|^2 with X = ``point``.
    """
    ring = ring or cylinder_ring()
    r, y11, y12, y21, y22 = (ring.var(v) for v in ("r", "y11", "y12", "y21", "y22"))
    F = ring.field
    X = [ring.const(F(c)) for c in point]
    P = [ring.zero(), y11, y12]
    V = [ring.one(), y21, y22]
    D = [x - p for x, p in zip(X, P)]
    vv = sum((a * a for a in V), ring.zero())
    vd = sum((a * b for a, b in zip(V, D)), ring.zero())
    dd = sum((a * a for a in D), ring.zero())
    return r * vv + vd * vd - dd * vv


def sphere_matrix(a, b, c, r) -> Matrix:
    """Quadric matrix of (x-a)^2 + (y-b)^2 + (z-c)^2 = r (r is the squared radius)."""
    a, b, c, r = (mpq(x) for x in (a, b, c, r))
    return _symmetric([
        [a * a + b * b + c * c - r, -a, -b, -c],
        [-a, 1, 0, 0],
        [-b, 0, 1, 0],
        [-c, 0, 0, 1],
    ])


def hyperboloid_matrix(kind: str, a, b, c, r) -> Matrix:
    """(x-a)^2 + (y-b)^2 - (z-c)^2 + r (``two_sheet``) or ... - r (``one_sheet``)."""
    a, b, c, r = (mpq(x) for x in (a, b, c, r))
    if kind in ("two_sheet", "two"):
        corner = a * a + b * b - c * c + r
    elif kind in ("one_sheet", "one"):
        corner = a * a + b * b - c * c - r
    else:
        raise ValueError(f"unknown hyperboloid kind {kind!r}")
    return _symmetric([
        [corner, -a, -b, c],
        [-a, 1, 0, 0],
        [-b, 0, 1, 0],
        [c, 0, 0, -1],
    ])


def local_line_ring(field: FieldDesc = QQ) -> RingContext:
    return RingContext.make("y11 y12 y21 y22", field)


def tangent_to(M: Matrix, ring: RingContext | None = None) -> MultiPoly:
    """Tangency of the line through (1,0,y11,y12) and (0,1,y21,y22) to the quadric u M u^t = 0."""
    ring = ring or local_line_ring()
    y11, y12, y21, y22 = (ring.var(v) for v in ("y11", "y12", "y21", "y22"))
    P = [1, 0, y11, y12]
    V = [0, 1, y21, y22]
    pv = quadric_form(P, M, V, ring)
    return pv * pv - quadric_form(P, M, P, ring) * quadric_form(V, M, V, ring)


# ---------------------------------------------------------------------------
# Grassmannians in Pluecker coordinates
# ---------------------------------------------------------------------------


def plucker_name(alpha: Sequence[int], prefix: str = "p") -> str:
    return prefix + "_" + "_".join(str(i) for i in alpha)


def plucker_ring(r: int, n: int, field: FieldDesc = QQ, prefix: str = "p") -> RingContext:
    """One variable per r-subset of {0..n-1}, lexicographic subsets, grevlex with the first variable largest."""
    if not 0 < r < n:
        raise ValueError("need 0 < r < n")
    names = [plucker_name(a, prefix) for a in combinations(range(n), r)]
    return RingContext.make(names, field, "grevlex")


def _subset_index(ring: RingContext, r: int) -> dict[tuple[int, ...], int]:
    out = {}
    for i, v in enumerate(ring.vars):
        parts = v.split("_")[1:]
        key = tuple(int(x) for x in parts)
        if len(key) != r:
            raise ValueError(f"variable {v} is not an {r}-subset coordinate")
        out[key] = i
    return out


def _infer_r(ring: RingContext) -> int:
    return len(ring.vars[0].split("_")) - 1


def _infer_n(ring: RingContext) -> int:
    return 1 + max(int(x) for v in ring.vars for x in v.split("_")[1:])


def _signed_coordinate(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """(sign, sorted subset) for the coordinate indexed by an ordered sequence; sign 0 on repeats."""
    if len(set(seq)) < len(seq):
        return 0, ()
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return sign, tuple(s)


def plucker_relations(r: int, n: int, ring: RingContext | None = None) -> list[MultiPoly]:
    """Quadratic Grassmann-Pluecker relations; zero and duplicate (up to sign) relations removed."""
    ring = ring or plucker_ring(r, n)
    idx = _subset_index(ring, r)
    out: list[MultiPoly] = []
    seen: set[MultiPoly] = set()
    for alpha in combinations(range(n), r - 1):
        for beta in combinations(range(n), r + 1):
            f = ring.zero()
            for j, bj in enumerate(beta):
                s1, a1 = _signed_coordinate(alpha + (bj,))
                if not s1:
                    continue
                rest = beta[:j] + beta[j + 1 :]
                sign = s1 * (-1 if j % 2 else 1)
                e = [0] * ring.nvars
                e[idx[a1]] += 1
                e[idx[rest]] += 1
                f = f + ring.monomial(e, sign)
            if f.is_zero():
                continue
            if f.lc < 0:
                f = -f
            if f not in seen:
                seen.add(f)
                out.append(f)
    return out


def plucker_ideal(r: int, n: int, ring: RingContext | None = None) -> Ideal:
    ring = ring or plucker_ring(r, n)
    return Ideal(ring, plucker_relations(r, n, ring))


def schubert_condition(r: int, L: Matrix | Sequence[Sequence], ring: RingContext) -> Ideal:
    """Linear conditions for an r-plane (in Pluecker coordinates) to meet the row space of L.

    For every column set S of size r + rows(L), the maximal minor of the
    stacked matrix on S is expanded along the r-plane rows:
    sum over r-subsets U of positions in S of (-1)^(sum U) p_{S_U} det L[:, S minus S_U].
    """
    F = ring.field
    if not isinstance(L, Matrix):
        L = Matrix(L, F)
    elif L.field != F:
        L = Matrix(L.data, F)
    k, n = L.rows, L.cols
    if L.rank() < k:
        raise ValueError("the flag matrix L is rank deficient")
    if r + k > n:
        raise ValueError("r + rows(L) exceeds n")
    idx = _subset_index(ring, r)
    gens = []
    for S in combinations(range(n), r + k):
        f = ring.zero()
        for U in combinations(range(len(S)), r):
            SU = tuple(S[u] for u in U)
            rest = [S[i] for i in range(len(S)) if i not in U]
            minor = det(L.submatrix(range(k), rest)) if k else F.one
            if not minor:
                continue
            sign = -1 if sum(U) % 2 else 1
            e = [0] * ring.nvars
            e[idx[SU]] = 1
            f = f + ring.monomial(e, F.normalize(sign * minor))
        if not f.is_zero():
            gens.append(f)
    return Ideal(ring, gens)


def osc_plane(i: int, n: int, s) -> Matrix:
    """Rows gamma(s), gamma'(s), ..., gamma^(i-1)(s) of the curve gamma(s) = (1, s, ..., s^(n-1)).

    ``s`` may be a rational number or a polynomial; in the latter case the
    matrix has polynomial entries.
    """
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    symbolic = isinstance(s, MultiPoly)
    rows = []
    for k in range(i):
        row = []
        for j in range(n):
            if j < k:
                row.append(s.ring.zero() if symbolic else mpq(0))
            else:
                c = factorial(j) // factorial(j - k)
                row.append((s ** (j - k)).scale(c) if symbolic else c * mpq(s) ** (j - k))
        rows.append(row)
    if symbolic:
        return Matrix(rows, None, coerce=False)
    return Matrix(rows, QQ)


def tangent_equation(r: int, ring: RingContext, M: Matrix) -> MultiPoly:
    """p (wedge^r M) p^t in Pluecker coordinates p of ``ring``."""
    n = M.rows
    idx = _subset_index(ring, r)
    subsets = list(combinations(range(n), r))
    if len(subsets) != ring.nvars or set(subsets) != set(idx):
        raise ValueError("quadric size does not match the Pluecker ring")
    W = exterior_power(r, M)
    F = ring.field
    terms: dict[tuple[int, ...], object] = {}
    for a, sa in enumerate(subsets):
        for b, sb in enumerate(subsets):
            w = W[a, b]
            if not w:
                continue
            e = [0] * ring.nvars
            e[idx[sa]] += 1
            e[idx[sb]] += 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + F(w)
    return ring.from_dict(terms)


def plucker_coordinates(rows: Sequence[Sequence], r: int | None = None) -> list:
    """Maximal minors of an r x n matrix (entries scalars or polynomials), lexicographic column sets."""
    r = len(rows) if r is None else r
    n = len(rows[0])
    poly = any(isinstance(x, MultiPoly) for row in rows for x in row)
    out = []
    for cols in combinations(range(n), r):
        sub = [[row[c] for c in cols] for row in rows]
        out.append(det(Matrix(sub, None, coerce=False)) if poly else det(Matrix(sub, QQ)))
    return out


# ---------------------------------------------------------------------------
# spheres in P^n
# ---------------------------------------------------------------------------


def pn_sphere(center: Sequence, r, field: FieldDesc = QQ) -> Matrix:
    """(n+1)x(n+1) matrix of |x - center|^2 = r: corner |c|^2 - r, border -c, identity block."""
    F = field
    c = [F(x) for x in center]
    n = len(c)
    corner = F.normalize(sum((x * x for x in c), F.zero) - F(r))
    rows = [[corner] + [F.neg(x) for x in c]]
    for i in range(n):
        rows.append([F.neg(c[i])] + [F.one if j == i else F.zero for j in range(n)])
    return Matrix(rows, F, coerce=False)


def pn_ring(n: int, field: FieldDesc = QQ) -> RingContext:
    """Ring of the 2(n-1) local coordinates z_i_j of lines in P^n."""
    names = [f"z_{i}_{j}" for i in range(2) for j in range(n - 1)]
    return RingContext.make(names, field)


def pn_frame(ring: RingContext) -> list[list]:
    """The 2 x (n+1) local frame [I_2 | z]."""
    m = ring.nvars // 2
    return [[1, 0] + [ring.var(f"z_0_{j}") for j in range(m)], [0, 1] + [ring.var(f"z_1_{j}") for j in range(m)]]


def pn_tangency(M: Matrix, ring: RingContext, frame: Sequence[Sequence] | None = None) -> MultiPoly:
    """(u M v^t)^2 - (u M u^t)(v M v^t) for the rows u, v of the frame."""
    u, v = frame or pn_frame(ring)
    uv = quadric_form(u, M, v, ring)
    return uv * uv - quadric_form(u, M, u, ring) * quadric_form(v, M, v, ring)


def bezout_number(degrees: Sequence[int]) -> int:
    return prod(degrees)
