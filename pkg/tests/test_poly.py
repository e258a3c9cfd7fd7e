"""Polynomial core: arithmetic, parsing, serialization, derivatives."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critvals.poly import (
    ParseError,
    Poly,
    PolyError,
    VarTable,
    parse_poly,
    serialize_poly,
)

XY = VarTable(("x", "y"))
X = VarTable(("x",))


def P(text, vars=XY):
    return parse_poly(text, vars)


class TestVarTable:
    def test_duplicate_names_rejected(self):
        with pytest.raises(PolyError):
            VarTable(("x", "x"))

    def test_index(self):
        assert XY.index("y") == 1
        with pytest.raises(PolyError):
            XY.index("z")


class TestParsing:
    def test_expand_product(self):
        # x*(x^2+1)^2 over [x, y] expands fully
        p = P("x*(x^2+1)^2")
        assert p == P("x^5 + 2*x^3 + x")
        assert p.total_degree() == 5

    def test_rational_literal(self):
        p = P("3/2*x + 1/3")
        assert p.coefficient((1, 0)) == Fraction(3, 2)
        assert p.coefficient((0, 0)) == Fraction(1, 3)

    def test_unary_minus(self):
        assert P("-x + y") == P("y - x")
        assert P("-(x - y)") == P("y - x")
        assert P("x^2 - -y") == P("x^2 + y")

    def test_no_implicit_multiplication(self):
        with pytest.raises(ParseError):
            P("2x")
        with pytest.raises(ParseError):
            P("x y")
        with pytest.raises(ParseError):
            P("2(x + 1)")

    def test_unknown_variable_position(self):
        with pytest.raises(ParseError) as err:
            P("x + z^2")
        assert err.value.position == 4

    def test_unbalanced_paren(self):
        with pytest.raises(ParseError):
            P("(x + 1")

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            P("1/0")

    def test_bad_exponent(self):
        with pytest.raises(ParseError):
            P("x^y")
        with pytest.raises(ParseError):
            P("x^(2)")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            P("")


class TestArithmetic:
    def test_square(self):
        assert P("(x + y)^2") == P("x^2 + 2*x*y + y^2")

    def test_mixed_table_rejected(self):
        with pytest.raises(PolyError):
            P("x") + parse_poly("x", X)

    def test_zero_degree_sentinel(self):
        assert Poly.zero(XY).total_degree() == -1
        assert Poly.const(XY, 5).total_degree() == 0

    def test_derivative(self):
        p = P("x^5 + 2*x^3 + x")
        assert p.partial_derivative(0) == P("5*x^4 + 6*x^2 + 1")
        assert p.partial_derivative(1).is_zero()

    def test_eval_exact(self):
        p = P("x + x^2*y")
        assert p.eval_exact((1, 2)) == 3
        assert p.eval_exact((Fraction(1, 2), Fraction(1, 3))) == Fraction(1, 2) + Fraction(1, 12)

    def test_substitute_values(self):
        p = P("x^2*y + y^2 + x")
        q = p.substitute_values({0: Fraction(2)})
        assert q == P("y^2 + 4*y + 2")

    def test_negative_power_rejected(self):
        with pytest.raises(PolyError):
            P("x") ** -1


class TestSerialization:
    def test_canonical_forms(self):
        assert serialize_poly(P("x*(x^2+1)^2")) == "x^5 + 2*x^3 + x"
        assert serialize_poly(Poly.zero(XY)) == "0"
        assert serialize_poly(P("-x + 1")) == "-x + 1"
        assert serialize_poly(P("256/3125*y")) == "256/3125*y"
        assert serialize_poly(P("y - x^2")) == "-x^2 + y"

    def test_grevlex_term_order(self):
        # same total degree: grevlex puts x^2 before x*y before y^2
        assert serialize_poly(P("y^2 + x^2 + x*y")) == "x^2 + x*y + y^2"


# ---- property tests ----

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=9),
)


@st.composite
def polys(draw, vars=XY, max_degree=4, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(min_value=0, max_value=max_terms))):
        mono = tuple(
            draw(st.integers(min_value=0, max_value=max_degree)) for _ in range(vars.arity)
        )
        terms[mono] = draw(small_fractions)
    return Poly(vars, terms)


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + Poly.zero(XY) == p
    assert p * Poly.const(XY, 1) == p
    assert (p - p).is_zero()


@settings(max_examples=60)
@given(polys(), polys(), st.integers(min_value=0, max_value=1))
def test_leibniz_rule(p, q, i):
    lhs = (p * q).partial_derivative(i)
    rhs = p.partial_derivative(i) * q + p * q.partial_derivative(i)
    assert lhs == rhs


@settings(max_examples=60)
@given(polys(), polys(), small_fractions, small_fractions)
def test_eval_is_ring_homomorphism(p, q, a, b):
    pt = (a, b)
    assert (p + q).eval_exact(pt) == p.eval_exact(pt) + q.eval_exact(pt)
    assert (p * q).eval_exact(pt) == p.eval_exact(pt) * q.eval_exact(pt)


@settings(max_examples=60)
@given(polys())
def test_serialize_round_trip(p):
    assert parse_poly(serialize_poly(p), XY) == p


@settings(max_examples=40)
@given(polys(), polys())
def test_degree_of_product(p, q):
    # over a domain: deg(pq) = deg p + deg q (with -1 convention for zero)
    if p.is_zero() or q.is_zero():
        assert (p * q).total_degree() == -1
    else:
        assert (p * q).total_degree() == p.total_degree() + q.total_degree()
