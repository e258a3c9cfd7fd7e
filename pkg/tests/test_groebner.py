"""Buchberger and elimination: pinned bases, determinism, membership."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critvals.groebner import (
    GroebnerError,
    Ideal,
    LimitExceeded,
    ResourceLimits,
    block_elim_order,
    buchberger,
    eliminate,
    grevlex_order,
    lex_order,
    normal_form,
)
from critvals.poly import Poly, VarTable, parse_poly, serialize_poly

XY = VarTable(("x", "y"))


def P(text, vars=XY):
    return parse_poly(text, vars)


def lex_ideal(*texts, vars=XY):
    return Ideal(tuple(P(t, vars) for t in texts), lex_order(vars.arity))


def grevlex_ideal(*texts, vars=XY):
    return Ideal(tuple(P(t, vars) for t in texts), grevlex_order(vars.arity))


class TestBuchbergerPinned:
    def test_circle_and_line_lex(self):
        gb = buchberger(lex_ideal("x - y", "x^2 + y^2 - 1"))
        assert [serialize_poly(g) for g in gb.basis] == ["x - y", "2*y^2 - 1"]

    def test_unit_ideal(self):
        gb = buchberger(lex_ideal("x^2", "x - 1"))
        assert [serialize_poly(g) for g in gb.basis] == ["1"]
        gb2 = buchberger(grevlex_ideal("3"))
        assert [serialize_poly(g) for g in gb2.basis] == ["1"]

    def test_already_a_basis_grevlex(self):
        gb = buchberger(grevlex_ideal("x^2", "x*y"))
        assert [serialize_poly(g) for g in gb.basis] == ["x^2", "x*y"]

    def test_determinism_across_runs(self):
        ideal = grevlex_ideal("x^2 + y^2 - 1", "x*y - 1/2", "x^3 - y")
        outputs = set()
        for _ in range(3):
            gb = buchberger(ideal)
            outputs.add("|".join(serialize_poly(g) for g in gb.basis))
        assert len(outputs) == 1


class TestBasisInvariants:
    def test_leading_monomials_minimal(self):
        gb = buchberger(grevlex_ideal("x^2 + y^2 - 1", "x*y - 1/2", "x^3 - y"))
        lms = [next(g.terms())[0] for g in gb.basis]
        for i, a in enumerate(lms):
            for j, b in enumerate(lms):
                if i != j:
                    assert not all(x <= y for x, y in zip(a, b))

    def test_generators_reduce_to_zero(self):
        ideal = grevlex_ideal("x^2 + y^2 - 1", "x*y - 1/2")
        gb = buchberger(ideal)
        for g in ideal.generators:
            assert normal_form(g, gb).is_zero()

    def test_content_free_positive_lead(self):
        gb = buchberger(lex_ideal("2*x - 2*y", "-3*y^2 + 3/2"))
        for g in gb.basis:
            coeffs = [c for _, c in g.terms()]
            assert all(c.denominator == 1 for c in coeffs)
            assert coeffs[0] > 0


class TestEliminate:
    def test_parabola_point(self):
        ideal = lex_ideal("y - x^2", "x - 2")
        out = eliminate(ideal, keep={1})
        assert [serialize_poly(g) for g in out.generators] == ["y - 4"]

    def test_unit_ideal_eliminates_to_unit(self):
        out = eliminate(lex_ideal("1"), keep={1})
        assert [serialize_poly(g) for g in out.generators] == ["1"]

    def test_projection_of_circle(self):
        # projecting the circle to the y-axis gives no constraint
        out = eliminate(grevlex_ideal("x^2 + y^2 - 1"), keep={1})
        assert out.generators == ()

    def test_invalid_keep(self):
        with pytest.raises(GroebnerError):
            eliminate(grevlex_ideal("x"), keep={5})


class TestLimits:
    def test_max_pairs_trips(self):
        xyz = VarTable(("x", "y", "z"))
        ideal = Ideal(
            (P("x^3 - 2*x*y", xyz), P("x^2*y - 2*y^2 + x", xyz), P("z^4 - x - y", xyz)),
            grevlex_order(3),
        )
        with pytest.raises(LimitExceeded) as err:
            buchberger(ideal, ResourceLimits(max_pairs=1))
        assert err.value.which == "max_pairs"

    def test_bad_limits_rejected(self):
        with pytest.raises(GroebnerError):
            ResourceLimits(max_pairs=0)

    def test_empty_ideal_rejected(self):
        with pytest.raises(GroebnerError):
            buchberger(Ideal((), grevlex_order(2)))

    def test_zero_generator_rejected(self):
        with pytest.raises(GroebnerError):
            Ideal((Poly.zero(XY),), grevlex_order(2))


class TestOrders:
    def test_block_order_is_elimination_order(self):
        # any monomial containing x compares above any pure-y monomial
        order = block_elim_order(2, eliminate=[0])
        assert order.key(order.permute((1, 0))) > order.key(order.permute((0, 5)))

    def test_bad_permutation(self):
        with pytest.raises(GroebnerError):
            from critvals.groebner import TermOrder

            TermOrder("lex", (0, 0))


# ---- property tests ----

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-5, max_value=5),
    st.integers(min_value=1, max_value=3),
)


@st.composite
def small_ideals(draw):
    terms_count = st.integers(min_value=1, max_value=3)
    polys = []
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        terms = {}
        for _ in range(draw(terms_count)):
            mono = (
                draw(st.integers(min_value=0, max_value=2)),
                draw(st.integers(min_value=0, max_value=2)),
            )
            terms[mono] = draw(small_fractions)
        p = Poly(XY, terms)
        if not p.is_zero():
            polys.append(p)
    if not polys:
        polys = [Poly.const(XY, 1)]
    return Ideal(tuple(polys), grevlex_order(2))


@settings(max_examples=25, deadline=None)
@given(small_ideals())
def test_membership_both_ways(ideal):
    gb = buchberger(ideal, ResourceLimits(max_pairs=20_000, wall_clock_budget=60))
    # every input generator is in the ideal generated by the basis
    for g in ideal.generators:
        assert normal_form(g, gb).is_zero()
    # every S-polynomial of basis pairs reduces to zero
    basis = gb.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            mi, ci = next(basis[i].terms())
            mj, cj = next(basis[j].terms())
            lcm = tuple(max(a, b) for a, b in zip(mi, mj))
            si = Poly(XY, {tuple(l - a for l, a in zip(lcm, mi)): Fraction(1) / ci})
            sj = Poly(XY, {tuple(l - b for l, b in zip(lcm, mj)): Fraction(1) / cj})
            spoly = si * basis[i] - sj * basis[j]
            assert normal_form(spoly, gb).is_zero()
