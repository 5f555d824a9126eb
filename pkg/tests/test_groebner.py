from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from enumsolve.algebra import QQ, FieldDesc, RingContext, mpq
from enumsolve.budget import Budget, BudgetExceeded
from enumsolve.groebner import (
    DegreeUndefined,
    Ideal,
    NotZeroDimensional,
    buchberger,
    degree,
    dim,
    eliminate,
    intersect,
    normal_form,
    quotient,
    radical_member,
    s_polynomial,
    saturate,
)
from enumsolve.geometry import plucker_ideal, plucker_ring

F7 = FieldDesc(7)
F101 = FieldDesc(101)


def ideal(names: str, field=QQ, order="grevlex", *gens: str) -> Ideal:
    ring = RingContext.make(names, field, order)
    return Ideal(ring, [ring.parse(g) for g in gens])


def two_curves() -> Ideal:
    return ideal("y x", F7, "lex", "y^3*x^2 + 2*y^2*x + 3*x*y", "3*y^2 + x*y - 3*y")


# a few fixed ideals used by the property checks
FIXED = [
    ("x y z", QQ, ["x^2 + y*z - 2", "y^2 + x*z - 3", "x*y*z - 1"]),
    ("x y", QQ, ["1 - x^2*y + 2*x*y^2", "y - 2*x - x*y + x^2"]),
    ("a b c d", F101, ["a*b - c^2", "b*d - c + a", "a^2 + d^2 - 1"]),
    ("x y z", F7, ["x^3 - y*z", "y^2 - x*z + 1", "z^2 - x"]),
    ("u v w", QQ, ["u^2 - v", "u*v - w", "v^2 - u*w"]),
]


def fixed_ideal(k: int, order="grevlex") -> Ideal:
    names, F, gens = FIXED[k]
    return ideal(names, F, order, *gens)


# -- buchberger -------------------------------------------------------------


def test_already_groebner_after_interreduction():
    I = ideal("y x", QQ, "lex", "x^2 - 1", "y - x")
    gb = buchberger(I)
    R = I.ring
    assert set(gb.elements) == {R.parse("y - x"), R.parse("x^2 - 1")}


def test_unit_ideal():
    I = ideal("x y", QQ, "grevlex", "x*y - 1", "x", "y + 3")
    gb = buchberger(I)
    assert list(gb.elements) == [I.ring.one()]
    assert gb.is_unit()


def test_plucker_g25_has_five_quadrics():
    R = plucker_ring(2, 5, F101)
    gb = plucker_ideal(2, 5, R).groebner()
    assert len(gb) == 5
    assert all(g.total_degree() == 2 and g.is_homogeneous() for g in gb)


def _sympy_gb(I: Ideal, order: str):
    syms = sympy.symbols(I.ring.vars)
    loc = dict(zip(I.ring.vars, syms))
    exprs = [sympy.sympify(g.render().replace("^", "**"), locals=loc) for g in I.generators]
    kw = {"modulus": I.ring.field.p} if I.ring.field.p else {}
    G = sympy.groebner(exprs, *syms, order=order, **kw)
    return {sympy.Poly(g, *syms, **kw).monic() for g in G.exprs}


@pytest.mark.parametrize("k", range(len(FIXED)))
@pytest.mark.parametrize("order", ["lex", "grevlex"])
def test_reduced_basis_matches_sympy(k, order):
    I = fixed_ideal(k, order)
    ours = buchberger(I)
    syms = sympy.symbols(I.ring.vars)
    kw = {"modulus": I.ring.field.p} if I.ring.field.p else {}
    loc = dict(zip(I.ring.vars, syms))
    got = {sympy.Poly(sympy.sympify(g.render().replace("^", "**"), locals=loc), *syms, **kw).monic() for g in ours}
    assert got == _sympy_gb(I, order)


def _check_reduced(gb):
    lms = gb.leading_monomials
    for i, g in enumerate(gb):
        assert g.lc == g.ring.field.one
        for j, h in enumerate(gb):
            if i == j:
                continue
            for e, _ in h.terms:
                assert not all(a <= b for a, b in zip(lms[i], e)), "term divisible by another leading monomial"


@pytest.mark.parametrize("k", range(len(FIXED)))
def test_s_pairs_reduce_to_zero_and_basis_is_reduced(k):
    gb = buchberger(fixed_ideal(k))
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            assert normal_form(s_polynomial(gb[i], gb[j]), gb).is_zero()
    _check_reduced(gb)
    for f in fixed_ideal(k).generators:
        assert gb.contains(f)


@pytest.mark.parametrize("k", range(len(FIXED)))
def test_generator_permutation_determinism(k):
    I = fixed_ideal(k)
    base = buchberger(I).elements
    rng = random.Random(k)
    gens = list(I.generators)
    for _ in range(50):
        rng.shuffle(gens)
        # scaled and redundant copies do not change the reduced basis either
        extra = [gens[0] * gens[-1]] if rng.random() < 0.3 else []
        scaled = [g.scale(I.ring.field(rng.randint(1, 6))) for g in gens]
        assert buchberger(Ideal(I.ring, scaled + extra)).elements == base


def test_budget_is_enforced():
    I = fixed_ideal(0, "lex")
    b = Budget(0)
    with pytest.raises(BudgetExceeded):
        buchberger(I, budget=b)


# -- normal form ------------------------------------------------------------


def test_normal_form_examples():
    I = ideal("y x", QQ, "lex", "y - x", "x^2 - 1")
    gb = I.groebner()
    R = I.ring
    assert normal_form(R.parse("y^2"), gb) == R.one()
    assert normal_form(R.parse("(y - x)*(x^3 + y)"), gb).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)), max_size=5),
       st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)), max_size=5))
def test_normal_form_is_linear(a, b):
    gb = fixed_ideal(1).groebner()
    R = gb.ring
    f = sum((R.monomial((i, j), c) for i, j, c in a), R.zero())
    g = sum((R.monomial((i, j), c) for i, j, c in b), R.zero())
    assert normal_form(f + g, gb) == normal_form(f, gb) + normal_form(g, gb)
    assert normal_form(f.scale(mpq(3, 2)), gb) == normal_form(f, gb).scale(mpq(3, 2))


# -- dimension and degree ---------------------------------------------------


def test_dim_degree_monomial_ideal():
    I = ideal("x y", QQ, "grevlex", "x^2", "x*y", "y^2")
    assert dim(I) == 0
    assert degree(I) == 3
    assert I.groebner().standard_monomials() == sorted([(0, 0), (1, 0), (0, 1)], key=I.ring.order.key)


def test_dim_degree_plucker():
    I = plucker_ideal(2, 5, plucker_ring(2, 5, F101))
    assert dim(I) == 7
    assert degree(I) == 5


def test_dim_degree_curves():
    assert (dim(fixed_ideal(1)), degree(fixed_ideal(1))) == (0, 5)
    # twisted cubic: affine cone of dimension 2 and degree 3
    I = ideal("w x y z", QQ, "grevlex", "x^2 - w*y", "x*y - w*z", "y^2 - x*z")
    assert (dim(I), degree(I)) == (2, 3)


def test_zero_and_unit_ideal_dimension():
    R = RingContext.make("x y z", QQ)
    assert dim(Ideal(R, [])) == 3
    assert dim(Ideal(R, [R.one()])) == -1
    assert degree(Ideal(R, [R.one()])) == 0


def test_degree_of_inhomogeneous_positive_dimensional_is_rejected():
    I = ideal("x y", QQ, "grevlex", "x*y - 1")
    with pytest.raises(DegreeUndefined):
        degree(I)
    with pytest.raises(NotZeroDimensional):
        I.groebner().standard_monomials()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=5))
def test_degree_of_zero_dim_monomial_ideal_counts_staircase(gens):
    # add pure powers so the ideal is zero-dimensional
    R = RingContext.make("x y", QQ)
    polys = [R.monomial(e) for e in gens] + [R.monomial((5, 0)), R.monomial((0, 5))]
    I = Ideal(R, polys)
    count = sum(1 for a in range(5) for b in range(5) if not any(a >= i and b >= j for i, j in gens))
    assert degree(I) == count


# -- elimination and ideal operations --------------------------------------


def test_eliminate_examples():
    I = ideal("x y", QQ, "grevlex", "y - x^2", "x - 1")
    J = eliminate(I, ["x"])
    assert [g.render() for g in J.generators] == ["y - 1"]
    assert eliminate(I, []).same_as(I)


def test_two_curves_saturation_and_elimination():
    I = two_curves()
    J = saturate(I, I.ring.var("y"))
    R = I.ring
    assert set(J.groebner().elements) == {R.parse("x^4 + x^3 + 3*x^2 + 3*x"), R.parse("y - 2*x - 1")}
    K = eliminate(J, ["y"])
    assert [g.render() for g in K.generators] == ["x^4 + x^3 + 3*x^2 + 3*x"]


def test_saturate_examples():
    I = ideal("x y", QQ, "grevlex", "x*y", "y*(y - 1)")
    R = I.ring
    assert saturate(I, R.var("y")).same_as(Ideal(R, [R.var("x"), R.parse("y - 1")]))
    assert saturate(I, R.one()).same_as(I)


@pytest.mark.parametrize("k", [1, 3, 4])
def test_saturation_is_idempotent(k):
    I = fixed_ideal(k)
    f = I.ring.gens()[0]
    S = saturate(I, f)
    assert saturate(S, f).same_as(S)
    assert all(S.contains(g) for g in I.generators)


def test_quotient_examples():
    I = ideal("x y", QQ, "grevlex", "x*y", "y^2")
    R = I.ring
    assert quotient(I, Ideal(R, [R.var("y")])).same_as(Ideal(R, [R.var("x"), R.var("y")]))
    assert quotient(I, Ideal(R, [R.one()])).same_as(I)


@pytest.mark.parametrize(
    "gens, jgens",
    [
        (["x^2*y", "x*y^3", "z^2*x"], ["x*y", "z"]),
        (["x^3 - y*z", "y^2*z"], ["y", "x^2"]),
        (["x*y*z", "x^2 - y^2"], ["x + y", "z"]),
    ],
)
def test_product_with_quotient_lies_in_ideal(gens, jgens):
    R = RingContext.make("x y z", QQ)
    I = Ideal(R, [R.parse(g) for g in gens])
    J = Ideal(R, [R.parse(g) for g in jgens])
    Q = quotient(I, J)
    for a in J.generators:
        for b in Q.generators:
            assert I.contains(a * b)
    assert all(Q.contains(g) for g in I.generators)


def test_intersection_examples():
    R = RingContext.make("x y", QQ)
    x, y = R.gens()
    assert intersect(Ideal(R, [x]), Ideal(R, [y])).same_as(Ideal(R, [x * y]))
    I = fixed_ideal(1)
    assert intersect(I, I).same_as(I)
    assert intersect(Ideal(R, [x]), Ideal(R, [x + 1])).same_as(Ideal(R, [x * x + x]))


def test_radical_membership():
    R = RingContext.make("x", QQ)
    x = R.var("x")
    I = Ideal(R, [x * x])
    assert radical_member(x, I)
    assert not radical_member(x + 1, I)
    assert radical_member(R.zero(), I)
