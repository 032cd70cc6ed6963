from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matvar.polyring import GradedPolynomial, VariableMismatch, VariableSet, ring, series_quotient

from conftest import poly, to_sympy

VS = VariableSet(3, 3)


@st.composite
def polys(draw, vs=VS, max_terms=5, max_exp=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(len(vs)))
        c = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4))
        terms[e] = terms.get(e, 0) + c
    return GradedPolynomial(vs, terms)


def test_additive_inverse():
    vs, (c1, *_), _, _ = ring(2, 2)
    assert (c1 + (-c1)) == GradedPolynomial.zero(vs)
    assert not (c1 - c1)


def test_doubling():
    _, _, (d1, d2), _ = ring(2, 2)
    assert (d1 * d2 + d1 * d2) == 2 * d1 * d2


def test_product_matches_expansion():
    vs, (c1, c2, c3), d, _ = ring(3, 6)
    p = (c1 - d[3] - d[4]) * (d[5] ** 2 - c1 * d[5] + c2)
    assert p == poly("(c1-d4-d5)*(d6**2-c1*d6+c2)", 3, 6)
    assert p * GradedPolynomial.one(vs) == p


def test_grading():
    vs, (c1, c2), (d1,), _ = ring(2, 1)
    assert (c2 * d1).degree() == 3
    assert (c1 * c1 - c2).is_homogeneous(2)
    assert not (c1 + c2).is_homogeneous()
    assert (c1 * d1 + c2).homogeneous_part(2) == c1 * d1 + c2


def test_mismatched_rings_rejected():
    a = GradedPolynomial.var(VariableSet(2, 1), "c1")
    b = GradedPolynomial.var(VariableSet(3, 1), "c1")
    with pytest.raises(VariableMismatch):
        a + b


def test_series_geometric():
    vs, (c1,), _, _ = ring(1, 0)
    one = GradedPolynomial.one(vs)
    assert series_quotient([one], [one, c1], 2) == [one, -c1, c1 * c1]


def test_series_cancellation():
    vs, _, (d1,), _ = ring(1, 1)
    one = GradedPolynomial.one(vs)
    out = series_quotient([one, d1], [one, d1], 4)
    assert out[0] == one and all(not x for x in out[1:])


def test_series_rejects_bad_denominator():
    vs, (c1,), _, _ = ring(1, 0)
    with pytest.raises(ValueError):
        series_quotient([c1], [2 * GradedPolynomial.one(vs)], 2)


def test_series_against_sympy():
    # Taylor coefficient of prod(1+d_j t)/(1+c1 t+c2 t^2+c3 t^3) at t^4
    import sympy
    vs, c, d, _ = ring(3, 6)
    one = GradedPolynomial.one(vs)
    num = [one]
    for dj in d:
        num = [a + (dj * num[i - 1] if i else 0) for i, a in enumerate(num)] + [dj * num[-1]]
    got = series_quotient(num, [one] + c, 4)[4]
    t = sympy.Symbol("t")
    c1, c2, c3 = sympy.symbols("c1 c2 c3")
    ds = sympy.symbols("d1:7")
    f = sympy.prod([1 + x * t for x in ds]) / (1 + c1 * t + c2 * t ** 2 + c3 * t ** 3)
    want = sympy.series(f, t, 0, 5).removeO().coeff(t, 4)
    assert sympy.expand(to_sympy(got) - want) == 0


def test_substitute_degree_zero_assignment():
    vs, (c1, c2), (d1,), _ = ring(2, 1)
    p = c1 * c1 - c2 + c1 * d1
    assert p.substitute({"c1": 0, "c2": 0, "d1": 0}) == 0
    assert p.substitute({"c1": 2, "c2": 1, "d1": 3}) == 9


def test_coefficient_lookup():
    vs, (c1, c2), (d1, d2), _ = ring(2, 2)
    p = 3 * c1 * d1 - d2 * d2
    assert p.coefficient_of(vs.monomial(c1=1, d1=1)) == 3
    assert p.coefficient_of(vs.monomial(c2=1)) == 0


def test_divide_linear():
    vs = VariableSet(0, 0, ("g1", "g2"))
    g1, g2 = GradedPolynomial.var(vs, "g1"), GradedPolynomial.var(vs, "g2")
    q = g1 * g1 + g2
    assert ((g1 - g2) * q).divide_linear(0, 1) == q
    with pytest.raises(ArithmeticError):
        (g1 + g2).divide_linear(0, 1)


def test_json_roundtrip():
    p = poly("3/2*c1*d2 - c2 + 7", 2, 2)
    assert GradedPolynomial.from_json(p.to_json()) == p


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    zero, one = GradedPolynomial.zero(VS), GradedPolynomial.one(VS)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a - a == zero


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_product_matches_sympy(a, b):
    import sympy
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@settings(max_examples=40, deadline=None)
@given(polys(max_exp=1), st.integers(-3, 3), st.integers(-3, 3))
def test_substitution_is_homomorphism(a, x, y):
    assign = {"c1": x, "c2": y, "c3": Fraction(1, 2), "d1": 1, "d2": -1, "d3": 0}
    b = a * a + a
    assert b.substitute(assign) == a.substitute(assign) ** 2 + a.substitute(assign)
