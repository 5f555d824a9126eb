from __future__ import annotations

import random

import pytest
import sympy

from enumsolve.algebra import UniPoly, mpq
from enumsolve.realroots import (
    cauchy_bound,
    count_real_roots,
    is_squarefree,
    isolate_intervals,
    num_neg_roots,
    num_pos_roots,
    num_real_sturm,
    squarefree_part,
    sturm_chain,
    variations,
)

QUINTIC = UniPoly([1, -2, 1, 6, -5, 1])  # Z^5 - 5Z^4 + 6Z^3 + Z^2 - 2Z + 1
Z = sympy.Symbol("Z")


def _to_sympy(f: UniPoly) -> sympy.Poly:
    return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(f.coeffs)], Z)


def _random_poly(rng: random.Random) -> UniPoly:
    deg = rng.randint(1, 8)
    if rng.random() < 0.3:
        # products of linear factors: many real roots, some repeated, some at 0
        roots = [rng.choice([-3, -1, 0, mpq(1, 2), 1, 2, 5]) for _ in range(rng.randint(1, 5))]
        f = UniPoly.from_roots(roots)
        return f * UniPoly([rng.randint(-4, 4) or 1, 0, 1]) if rng.random() < 0.5 else f
    cs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.choice([-3, -2, -1, 1, 2, 3])]
    return UniPoly(cs)


RANDOM_POLYS = [_random_poly(random.Random(1000 + k)) for k in range(100)]


def test_sturm_chain_of_quadratic():
    ch = sturm_chain(UniPoly([-1, 0, 1]))
    assert len(ch.polys) == 3
    assert ch.polys[0] == UniPoly([-1, 0, 1])
    assert ch.polys[1].degree == 1 and ch.polys[1][1] > 0 and ch.polys[1][0] == 0
    assert ch.polys[2].degree == 0 and ch.polys[2][0] > 0


def test_sturm_chain_ends_in_constant_for_squarefree():
    assert sturm_chain(QUINTIC).polys[-1].degree == 0
    assert is_squarefree(QUINTIC)


def test_sturm_chain_of_square_stops_at_the_gcd():
    f = UniPoly([1, -2, 1])
    assert sturm_chain(f).polys[-1].degree == 1


@pytest.mark.parametrize("signs, n", [((1, -1, 1), 2), ((1, 0, 1), 0), ((1, 0, -1, 0, 0, 1), 2), ((), 0), ((0, 0), 0)])
def test_variations(signs, n):
    assert variations(signs) == n


def test_counts_examples():
    assert count_real_roots(QUINTIC, "all") == 3
    assert num_real_sturm(QUINTIC) == 3
    assert count_real_roots(UniPoly([1, 0, 1])) == 0
    assert count_real_roots(UniPoly([1, -2, 1])) == 1
    assert num_pos_roots(QUINTIC) == 2
    assert num_neg_roots(QUINTIC) == 1


def test_interval_range_is_half_open():
    f = UniPoly.from_roots([0, 1, 2])
    assert count_real_roots(f, (0, 2)) == 2
    assert count_real_roots(f, (mpq(-1, 2), 0)) == 1
    assert count_real_roots(f, (2, 2)) == 0
    assert num_pos_roots(f) == 2 and num_neg_roots(f) == 0


def test_squarefree_examples():
    assert not is_squarefree(UniPoly([1, -2, 1]))
    assert is_squarefree(UniPoly([0, 1]))
    assert squarefree_part(UniPoly.from_roots([1, 1, 2, 2, 2])) == UniPoly.from_roots([1, 2])


def test_zero_polynomial_is_rejected():
    with pytest.raises(ValueError):
        count_real_roots(UniPoly([]))


@pytest.mark.parametrize("k", range(100))
def test_sturm_agrees_with_bisection_oracle(k):
    f = RANDOM_POLYS[k]
    P = _to_sympy(f)
    oracle = P.intervals()  # isolating intervals for distinct real roots
    assert count_real_roots(f) == len(oracle)
    roots = set(P.real_roots())
    pos = sum(1 for r in roots if r > 0)
    neg = sum(1 for r in roots if r < 0)
    assert num_pos_roots(f) == pos
    assert num_neg_roots(f) == neg
    at_zero = 1 if f(0) == 0 else 0
    assert count_real_roots(f) == num_pos_roots(f) + num_neg_roots(f) + at_zero


@pytest.mark.parametrize("k", range(0, 100, 5))
def test_isolating_intervals(k):
    f = RANDOM_POLYS[k]
    width = mpq(1, 64)
    ivs = isolate_intervals(f, width)
    assert len(ivs) == count_real_roots(f)
    g = squarefree_part(f)
    for a, b in ivs:
        assert b - a <= width
        assert a == b or count_real_roots(g, (a, b)) == 1
    for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
        assert b1 <= a2
    for root in _to_sympy(f).real_roots():
        assert any(sympy.Rational(int(a.numerator), int(a.denominator)) <= root <= sympy.Rational(int(b.numerator), int(b.denominator)) for a, b in ivs)


def test_intervals_around_sqrt2():
    ivs = isolate_intervals(UniPoly([-2, 0, 1]), mpq(1, 1000))
    assert len(ivs) == 2
    (a, b), (c, d) = ivs
    assert a < -1.4142 < b and c < 1.4142 < d
    assert isolate_intervals(UniPoly([1, 0, 1])) == []


def test_cauchy_bound_dominates_roots():
    for f in RANDOM_POLYS[:30]:
        B = cauchy_bound(f)
        for r in _to_sympy(f).real_roots():
            assert abs(r) < B
