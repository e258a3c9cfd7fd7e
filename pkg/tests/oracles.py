"""Independent sympy-based oracles for cross-checking value sets.

These deliberately avoid the package's own Groebner engine: the univariate
critical-value oracle is a literal resultant Res_x(f', y - f), and the
bivariate one runs sympy's elimination.  Results are normalized coefficient
tuples of the squarefree eliminant (ascending, content-free integers,
positive leading coefficient) so comparisons against the package are exact.
"""

from fractions import Fraction

import sympy

from critvals.poly import Poly
from critvals.univariate import to_coefficients


def to_sympy(p: Poly, symbols):
    expr = sympy.Integer(0)
    for mono, coeff in p.terms():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(symbols, mono):
            if e:
                term *= s**e
        expr += term
    return sympy.expand(expr)


def normalized_coeffs(expr, var) -> tuple:
    """Ascending content-free integer coefficients of the squarefree part;
    () encodes 'no roots' (a nonzero constant)."""
    poly = sympy.Poly(expr, var)
    if poly.is_zero:
        raise ValueError("zero polynomial has no normalized form")
    if poly.degree() == 0:
        return ()
    sqf = sympy.Poly(sympy.sqf_part(poly.as_expr(), var), var)
    coeffs = [Fraction(sympy.Rational(c)) for c in reversed(sqf.all_coeffs())]
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // sympy.igcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    g = sympy.igcd(*ints)
    if ints[-1] < 0:
        g = -g
    return tuple(v // g for v in ints)


def package_coeffs(result) -> tuple:
    """The package's eliminant in the same normal form as the oracles."""
    if result.empty:
        return ()
    return tuple(int(c) for c in to_coefficients(result.eliminant))


def k0_univariate_oracle(f: Poly) -> tuple:
    """Squarefree root polynomial of {f(r) : f'(r) = 0} via the resultant
    Res_x(f'(x), y - f(x))."""
    x, y = sympy.symbols("x y")
    fe = to_sympy(f, [x])
    df = sympy.diff(fe, x)
    if sympy.Poly(df, x).degree() < 1:
        return ()  # constant nonzero derivative: no critical points
    res = sympy.resultant(df, y - fe, x)
    return normalized_coeffs(res, y)


def k0_bivariate_oracle(f: Poly) -> tuple:
    """Squarefree root polynomial of the critical values of a bivariate f,
    by sympy's own lex elimination of <grad f, y - f>."""
    x1, x2, y = sympy.symbols("x1 x2 y")
    fe = to_sympy(f, [x1, x2])
    gens = [g for g in (sympy.diff(fe, x1), sympy.diff(fe, x2)) if g != 0]
    basis = sympy.groebner(gens + [y - fe], x1, x2, y, order="lex")
    pure = [e for e in basis.exprs if not e.free_symbols - {y}]
    if not pure:
        raise ValueError("oracle: elimination ideal is zero (infinite K0?)")
    return normalized_coeffs(pure[0], y)
