"""Seeded, self-checking reproductions of the enumerative computations.

Every case builds its ideal, computes the reported invariants and compares
them with the expected (generic) values.  Random instances draw scalars from
a SplitMix64 stream; when an instance misses its generic value the runner
re-seeds with seed+1, at most five times, and records the retries.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .algebra.fields import QQ, FieldDesc, Fp, mpq
from .algebra.matrix import Matrix
from .algebra.poly import MultiPoly, RingContext
from .budget import NO_BUDGET, Budget
from .geometry import (
    cylinder_condition,
    cylinder_ring,
    hyperboloid_matrix,
    local_line_ring,
    osc_plane,
    plucker_relations,
    plucker_ring,
    pn_ring,
    pn_sphere,
    pn_tangency,
    schubert_condition,
    sphere_matrix,
    tangent_equation,
    tangent_to,
)
from .groebner import Ideal, degree, dim, quotient, radical_member, saturate
from .realroots import is_squarefree, num_pos_roots, num_real_sturm
from .zerodim import QuotientAlgebra, char_poly_elem, eliminant, num_real_trace

__all__ = [
    "Prng",
    "Check",
    "CaseReport",
    "UnknownCase",
    "CASES",
    "case_names",
    "run_case",
    "transversality_experiment",
    "expected_counts_table",
    "EXPECTED_TANGENT_LINES",
    "HYPERBOLOID_DATA",
]

MASK64 = (1 << 64) - 1
MAX_RETRIES = 5


class Prng:
    """SplitMix64 scalar stream."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        limit = ((1 << 64) // n) * n
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def scalar(self, F: FieldDesc):
        """Nonzero scalar: uniform on {1..p-1} over F_p, on {-9..9} minus 0 over QQ."""
        if F.p is None:
            v = self.below(18)
            return mpq(v - 9 if v < 9 else v - 8)
        return 1 + self.below(F.p - 1)

    def linear_form(self, ring: RingContext, constant: bool = False) -> MultiPoly:
        F = ring.field
        f = ring.zero()
        if constant:
            f = f + self.scalar(F)
        for v in ring.vars:
            f = f + ring.var(v).scale(self.scalar(F))
        return f

    def symmetric_matrix(self, n: int, F: FieldDesc) -> Matrix:
        M = [[F.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                M[i][j] = M[j][i] = self.scalar(F)
        return Matrix(M, F, coerce=False)


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "ok": self.ok}


@dataclass
class CaseReport:
    case: str
    seed: int
    field: str
    dim: int
    degree: int
    real: int | None = None
    extras: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    ms: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str, expected, actual) -> None:
        self.checks.append(Check(name, expected, actual))

    def to_json(self) -> dict:
        extras = dict(self.extras)
        extras["checks"] = [c.to_json() for c in self.checks]
        extras["ok"] = self.ok
        return {
            "case": self.case,
            "seed": self.seed,
            "field": self.field,
            "dim": self.dim,
            "degree": self.degree,
            "real": self.real,
            "extras": extras,
            "ms": self.ms,
        }


class UnknownCase(KeyError):
    pass


def _proj(ideal: Ideal, budget: Budget) -> tuple[int, int]:
    """(dimension of the projective variety, degree) of a homogeneous ideal."""
    return dim(ideal, budget) - 1, degree(ideal, budget)


def _retrying(seed: int, attempt: Callable[[int], tuple[bool, CaseReport]]) -> CaseReport:
    """Run ``attempt`` on seed, seed+1, ... until it reports genericity (at most MAX_RETRIES re-seeds)."""
    for k in range(MAX_RETRIES + 1):
        generic, rep = attempt((seed + k) & MASK64)
        if generic or k == MAX_RETRIES:
            rep.seed = seed
            rep.extras["retries"] = k
            rep.extras["seed_used"] = (seed + k) & MASK64
            return rep
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# individual cases
# ---------------------------------------------------------------------------


def case_random_quadrics(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or Fp(101)
    ring = RingContext.make("y11 y12 y21 y22", F)
    y = [ring.var(v) for v in ring.vars]
    quad = [y[i] * y[j] for i in range(4) for j in range(i, 4)]
    full_basis = [ring.one()] + y + quad
    sparse_basis = [ring.one()] + y + [y[0] * y[3], y[1] * y[2]]
    balanced_basis = [ring.one()] + y + [y[0] * y[3] - y[1] * y[2]]
    expected = {"full": 16, "restricted": 4, "balanced": 2}

    def attempt(s: int) -> tuple[bool, CaseReport]:
        g = Prng(s)
        degs = {}
        dims = {}
        for name, basis in (("full", full_basis), ("restricted", sparse_basis), ("balanced", balanced_basis)):
            gens = [sum((b.scale(g.scalar(F)) for b in basis), ring.zero()) for _ in range(4)]
            I = Ideal(ring, gens)
            dims[name] = dim(I, budget)
            degs[name] = degree(I, budget) if dims[name] == 0 else None
        rep = CaseReport("random-quadrics", s, str(F), dims["full"], degs["full"] or 0)
        rep.extras["degrees"] = degs
        rep.extras["dims"] = dims
        for name, d in expected.items():
            rep.check(f"dim {name}", 0, dims[name])
            rep.check(f"degree {name}", d, degs[name])
        return rep.ok, rep

    return _retrying(seed, attempt)


CYLINDER_POINTS = [(2, 2, 0), (1, -2, 0), (-3, 0, 0), (0, 0, mpq(5, 2)), (0, 0, -3)]


def case_cylinders(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or QQ
    ring = cylinder_ring(F)
    I = Ideal(ring, [cylinder_condition(p, ring) for p in CYLINDER_POINTS])
    d, deg = dim(I, budget), degree(I, budget)
    rep = CaseReport("cylinders", seed, str(F), d, deg)
    rep.check("dim", 0, d)
    rep.check("degree", 6, deg)
    if F.p is None and d == 0:
        A = QuotientAlgebra(I, budget)
        cp = char_poly_elem(ring.var("r"), A)
        rep.extras["char_poly_r"] = cp.render()
        pos = num_pos_roots(cp)
        rep.extras["num_pos_roots_r"] = pos
        rep.extras["num_real_sturm_r"] = num_real_sturm(cp)
        rep.real = num_real_trace(A)
        rep.check("real points (trace form)", 6, rep.real)
        rep.check("positive roots of charPoly(r), reference value", 3, pos)
    return rep


SPHERE_CENTERS = [(0, 0, 0), (4, 1, 1), (1, 4, 1), (1, 1, 4)]


def case_lines_spheres_local(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or QQ
    ring = local_line_ring(F)
    I = Ideal(ring, [tangent_to(sphere_matrix(*c, 5), ring) for c in SPHERE_CENTERS])
    d, deg = dim(I, budget), degree(I, budget)
    rep = CaseReport("lines-4-spheres-local", seed, str(F), d, deg)
    rep.check("dim", 0, d)
    rep.check("degree", 12, deg)
    if F.p is None and d == 0:
        A = QuotientAlgebra(I, budget)
        g = eliminant(ring.parse("y11 - y12 + y21 + y22"), A)
        rep.extras["eliminant_degree"] = int(g.degree)
        rep.real = num_real_sturm(g)
        rep.check("real roots of eliminant", 12, rep.real)
    return rep


def _theorem_shape(gb, r: int) -> bool:
    """Leading terms p_a p_b with a, b incomparable; every trailing term has comparable indices."""
    ring = gb.ring
    subsets = [tuple(int(x) for x in v.split("_")[1:]) for v in ring.vars]

    def pair(e):
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        return [subsets[i] for i in idx] if len(idx) == 2 else None

    def comparable(a, b) -> bool:
        return all(x <= y for x, y in zip(a, b)) or all(x >= y for x, y in zip(a, b))

    for g in gb.elements:
        lead = pair(g.lm)
        if lead is None or comparable(*lead):
            return False
        for e, _ in g.terms[1:]:
            t = pair(e)
            if t is None or not comparable(*t):
                return False
    return True


def _incomparable_pairs(r: int, n: int) -> int:
    from itertools import combinations

    subs = list(combinations(range(n), r))
    count = 0
    for i, a in enumerate(subs):
        for b in subs[i + 1 :]:
            if not (all(x <= y for x, y in zip(a, b)) or all(x >= y for x, y in zip(a, b))):
                count += 1
    return count


def case_grassmannian_25(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or QQ
    ring = plucker_ring(2, 5, F)
    I = Ideal(ring, plucker_relations(2, 5, ring))
    gb = I.groebner(budget=budget)
    d, deg = _proj(I, budget)
    rep = CaseReport("grassmannian-25", seed, str(F), d, deg)
    rep.extras["gb_size"] = len(gb)
    rep.extras["incomparable_pairs"] = _incomparable_pairs(2, 5)
    rep.extras["gb"] = [g.render() for g in gb]
    rep.check("proj dim", 6, d)
    rep.check("degree", 5, deg)
    rep.check("gb size", 5, len(gb))
    rep.check("straightening shape", True, _theorem_shape(gb, 2))
    return rep


def shapiro_ideal(F: FieldDesc = QQ) -> Ideal:
    ring = plucker_ring(3, 6, F)
    gens = list(plucker_relations(3, 6, ring))
    for i in range(3):
        gens += schubert_condition(3, osc_plane(3, 6, 1 + i), ring).generators
        gens += schubert_condition(3, osc_plane(2, 6, 4 + i), ring).generators
    gens.append(ring.var("p_0_1_5") - 1)
    return Ideal(ring, gens)


def case_shapiro_36(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or QQ
    I = shapiro_ideal(F)
    d, deg = dim(I, budget), degree(I, budget)
    rep = CaseReport("shapiro-36", seed, str(F), d, deg)
    rep.check("dim", 0, d)
    rep.check("degree", 6, deg)
    if F.p is None and d == 0:
        A = QuotientAlgebra(I, budget)
        g = eliminant(I.ring.var("p_2_3_4"), A)
        rep.extras["eliminant"] = g.render()
        rep.real = num_real_sturm(g)
        rep.check("real roots of eliminant", 6, rep.real)
    return rep


def case_quadrics_global(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or QQ

    def attempt(s: int) -> tuple[bool, CaseReport]:
        g = Prng(s)
        ring = plucker_ring(2, 4, F)
        gens = plucker_relations(2, 4, ring)
        gens += [tangent_equation(2, ring, g.symmetric_matrix(4, F)) for _ in range(4)]
        I = Ideal(ring, gens)
        d, deg = _proj(I, budget)
        rep = CaseReport("quadrics-global", s, str(F), d, deg)
        rep.check("proj dim", 0, d)
        rep.check("degree", 32, deg)
        return rep.ok, rep

    return _retrying(seed, attempt)


RADICAL_GENERATORS = ["p_0_3", "p_0_2", "p_0_1", "p_1_2^2 + p_1_3^2 + p_2_3^2"]


def case_spheres_global(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or QQ
    ring = plucker_ring(2, 4, F)
    gens = plucker_relations(2, 4, ring) + [tangent_equation(2, ring, sphere_matrix(*c, 5)) for c in SPHERE_CENTERS]
    I = Ideal(ring, gens)
    d, deg = _proj(I, budget)
    rep = CaseReport("spheres-global", seed, str(F), d, deg)
    rep.check("proj dim", 1, d)
    rep.check("degree", 4, deg)
    lines = saturate(I, ring.var("p_0_1"), budget)
    ld, ldeg = _proj(lines, budget)
    rep.extras["lines"] = {"dim": ld, "degree": ldeg}
    rep.check("saturated proj dim", 0, ld)
    rep.check("saturated degree", 12, ldeg)
    junk = quotient(I, lines, budget)
    jd, jdeg = _proj(junk, budget)
    rep.extras["junk"] = {"dim": jd, "degree": jdeg}
    rep.check("quotient proj dim", 1, jd)
    rep.check("quotient degree", 4, jdeg)
    members = {s: radical_member(ring.parse(s), junk, budget) for s in RADICAL_GENERATORS}
    rep.extras["radical_members"] = members
    for s, ok in members.items():
        rep.check(f"{s} in radical", True, ok)
    return rep


HYPERBOLOID_DATA: list[list[tuple[str, tuple[int, int, int, int]]]] = [
    [("one", (5, 3, 3, 16)), ("one", (5, -4, 2, 1)), ("one", (-3, -1, 1, 1)), ("one", (2, -7, 0, 1))],
    [("one", (3, -2, -3, 6)), ("one", (-3, -7, -6, 7)), ("one", (-6, 3, -5, 2)), ("two", (1, 6, -2, 5))],
    [("one", (6, 4, 6, 4)), ("one", (-1, 3, 3, 6)), ("two", (-7, -2, 3, 3)), ("two", (-6, 7, -2, 5))],
    [("one", (-1, -4, -1, 1)), ("two", (-3, 3, -1, 1)), ("two", (-7, 6, 2, 9)), ("two", (5, 6, -1, 12))],
    [("two", (5, 2, -1, 25)), ("two", (6, -6, 2, 25)), ("two", (-7, 1, 6, 1)), ("two", (3, 1, 0, 1))],
]


def case_hyperboloids(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    F = F or QQ
    k = 0 if dataset is None else dataset
    if not 0 <= k < len(HYPERBOLOID_DATA):
        raise ValueError(f"dataset must be in 0..{len(HYPERBOLOID_DATA) - 1}")
    ring = local_line_ring(F)
    I = Ideal(ring, [tangent_to(hyperboloid_matrix(kind, *abcr), ring) for kind, abcr in HYPERBOLOID_DATA[k]])
    d, deg = dim(I, budget), degree(I, budget)
    rep = CaseReport("hyperboloids", seed, str(F), d, deg)
    rep.extras["dataset"] = k
    rep.extras["two_sheet_count"] = sum(1 for kind, _ in HYPERBOLOID_DATA[k] if kind == "two")
    rep.check("dim", 0, d)
    rep.check("degree", 12, deg)
    if F.p is None and d == 0:
        A = QuotientAlgebra(I, budget)
        rep.real = num_real_sturm(char_poly_elem(ring.var("y22"), A))
        rep.check("real roots of charPoly(y22)", 12, rep.real)
    return rep


EXPECTED_TANGENT_LINES = {2: 4, 3: 12, 4: 24, 5: 48, 6: 96}


def _pn_spheres_ideal(n: int, F: FieldDesc, g: Prng) -> Ideal:
    ring = pn_ring(n, F)
    gens = []
    for _ in range(2 * n - 2):
        center = [g.scalar(F) for _ in range(n)]
        gens.append(pn_tangency(pn_sphere(center, g.scalar(F), F), ring))
    return Ideal(ring, gens)


def _pn_case(name: str, n: int, seed: int, F: FieldDesc, budget: Budget) -> CaseReport:
    def attempt(s: int) -> tuple[bool, CaseReport]:
        I = _pn_spheres_ideal(n, F, Prng(s))
        d = dim(I, budget)
        deg = degree(I, budget) if d == 0 else 0
        rep = CaseReport(name, s, str(F), d, deg)
        rep.extras["n"] = n
        rep.check("dim", 0, d)
        rep.check("degree", EXPECTED_TANGENT_LINES[n], deg)
        return rep.ok, rep

    return _retrying(seed, attempt)


def case_spheres_p4(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    return _pn_case("spheres-p4", 4, seed, F or Fp(1009), budget)


def case_expected_counts(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    """Tangent lines to 2n-2 spheres in P^n; ``dataset`` selects n (default 3)."""
    n = 3 if dataset is None else dataset
    if n not in EXPECTED_TANGENT_LINES:
        raise ValueError("n must be in 2..6")
    rep = _pn_case("expected-counts", n, seed, F or Fp(1009), budget)
    return rep


def transversality_experiment(p: int, iters: int = 5, seed: int = 0, budget: Budget = NO_BUDGET) -> dict:
    """Random Schubert problem (3,6; 1^3, 2^3) over F_p until the ideal is certified radical.

    An attempt succeeds when the ideal is zero-dimensional of degree 6 and the
    characteristic polynomial of a random linear form is squarefree.  Attempts
    whose random flag matrices are rank deficient count as failures.
    """
    F = Fp(p)
    g = Prng(seed)
    ring = plucker_ring(3, 6, F, prefix="q")
    log = []
    for j in range(1, iters + 1):
        budget.check()
        try:
            gens = list(plucker_relations(3, 6, ring))
            for _ in range(3):
                for l in (1, 2):
                    rows = 6 - 3 + 1 - l
                    L = Matrix([[g.scalar(F) for _ in range(6)] for _ in range(rows)], F, coerce=False)
                    gens += schubert_condition(3, L, ring).generators
            gens.append(g.linear_form(ring) + 1)
        except ValueError as exc:
            log.append({"iteration": j, "status": "degenerate", "reason": str(exc)})
            continue
        I = Ideal(ring, gens)
        d = dim(I, budget)
        deg = degree(I, budget) if d == 0 else None
        entry = {"iteration": j, "dim": d, "degree": deg}
        if d == 0 and deg == 6:
            A = QuotientAlgebra(I, budget)
            cp = char_poly_elem(g.linear_form(ring), A)
            entry["squarefree"] = is_squarefree(cp)
            log.append(entry)
            if entry["squarefree"]:
                return {"prime": p, "succeeded": True, "iterations_used": j, "log": log}
        else:
            log.append(entry)
    return {"prime": p, "succeeded": False, "iterations_used": iters, "log": log}


def case_transversality(seed: int, F: FieldDesc | None, dataset: int | None, budget: Budget) -> CaseReport:
    """Transversality sweep; a prime field override runs that prime alone."""
    primes = [F.p] if F is not None and F.p is not None else [2, 7, 11]
    results = {p: transversality_experiment(p, 5, seed, budget) for p in primes}
    rep = CaseReport("transversality", seed, ",".join(f"Fp:{p}" for p in primes), 0, 6)
    rep.extras["results"] = {str(p): {"succeeded": r["succeeded"], "iterations_used": r["iterations_used"]} for p, r in results.items()}
    for p in primes:
        if p in (7, 11):
            rep.check(f"succeeded for {p}", True, results[p]["succeeded"])
    return rep


def expected_counts_table(n: int, seed: int = 0, field: FieldDesc | None = None, budget: Budget = NO_BUDGET) -> int:
    """Degree of the ideal of lines in P^n tangent to 2n-2 seeded random spheres."""
    return case_expected_counts(seed, field, n, budget).degree


CaseFn = Callable[[int, "FieldDesc | None", "int | None", Budget], CaseReport]

CASES: dict[str, CaseFn] = {
    "random-quadrics": case_random_quadrics,
    "cylinders": case_cylinders,
    "lines-4-spheres-local": case_lines_spheres_local,
    "grassmannian-25": case_grassmannian_25,
    "shapiro-36": case_shapiro_36,
    "quadrics-global": case_quadrics_global,
    "spheres-global": case_spheres_global,
    "hyperboloids": case_hyperboloids,
    "spheres-p4": case_spheres_p4,
    "transversality": case_transversality,
    "expected-counts": case_expected_counts,
}


def case_names() -> list[str]:
    return list(CASES)


def run_case(name: str, seed: int = 0, field: FieldDesc | None = None, dataset: int | None = None, budget: Budget = NO_BUDGET) -> CaseReport:
    try:
        fn = CASES[name]
    except KeyError:
        raise UnknownCase(name) from None
    t0 = time.monotonic()
    rep = fn(seed & MASK64, field, dataset, budget)
    rep.seed = seed & MASK64
    rep.ms = int((time.monotonic() - t0) * 1000)
    return rep
