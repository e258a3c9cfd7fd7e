"""Equation systems over arc coefficients.

For a polynomial f the map under test is Phi = (f, df/dx_1..df/dx_n,
h_11..h_nn) with h_ij = x_i * df/dx_j.  Substituting a symbolic arc into
Phi and demanding that every positive t-power of every component vanishes,
that every nonnegative t-power of the non-f components vanishes, and (in
normalized mode) that the arc actually escapes to infinity, cuts out the
arc variety whose c0-image is the asymptotic critical value set.  Dropping
the normalization instead yields the variety whose c0-image is the full
generalized critical value set.

Generator families, with s_g the substituted series of component g:
  c[k]      coefficient of t^k in s_f,            k = 1 .. deg(f)*D1
  d[i][k]   coefficient of t^k in s_{df/dx_i},    k = 0 .. (deg(f)-1)*D1
  e[i][j][k] coefficient of t^k in s_{h_ij},      k = 0 .. deg(f)*D1
  norm      sum over positive-index a-variables, minus 1 (complex: linear
            sum; real: sum of squares)
Identically zero coefficients are omitted.  c0 is the t^0 coefficient of
s_f; it is data, not a generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .arcs import ArcShape, substitute
from .poly import Poly, VarTable

Mode = Literal["BV", "GBV", "AVmap"]


class SystemError(Exception):
    """Constant input, arity mismatch, or mode misuse."""


@dataclass(frozen=True)
class PhiMap:
    """The 1 + n + n^2 components (f, gradient, h-grid)."""

    f: Poly
    grads: tuple[Poly, ...]
    hs: tuple[tuple[Poly, ...], ...]

    @property
    def n(self) -> int:
        return len(self.grads)


@dataclass(frozen=True)
class GeneratorTag:
    """Provenance of one generator: family 'c', 'd', 'e', or 'norm' plus
    the family indices (c: (k,); d: (i, k); e: (i, j, k); map systems use
    (component, k))."""

    family: str
    indices: tuple[int, ...]

    def label(self) -> str:
        return self.family + "".join(f"[{i}]" for i in self.indices)


@dataclass(frozen=True)
class EquationSystem:
    shape: ArcShape
    generators: tuple[Poly, ...]
    c0: tuple[Poly, ...]
    mode: Mode
    field: str
    provenance: tuple[GeneratorTag, ...]

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.provenance):
            raise SystemError("one provenance tag per generator required")
        table = self.shape.var_table()
        for g in self.generators + self.c0:
            if g.vars != table:
                raise SystemError("generator not over the shape's arc-variable table")


def build_phi(f: Poly) -> PhiMap:
    """Components (f, df/dx_1..df/dx_n, x_i * df/dx_j)."""
    if f.total_degree() <= 0:
        raise SystemError("constant polynomial has no critical-value structure")
    n = f.vars.arity
    grads = tuple(f.partial_derivative(j) for j in range(n))
    xs = [Poly.variable(f.vars, i) for i in range(n)]
    hs = tuple(tuple(xs[i] * grads[j] for j in range(n)) for i in range(n))
    return PhiMap(f, grads, hs)


def normalization_poly(shape: ArcShape) -> Poly:
    """(sum of positive-index a[i][j]) - 1, squared termwise for real arcs."""
    table = shape.var_table()
    acc = Poly.const(table, -1)
    for i in range(1, shape.D1 + 1):
        for j in range(1, shape.n + 1):
            v = Poly.variable(table, shape.var_index(i, j))
            acc = acc + (v * v if shape.field == "real" else v)
    return acc


def build_system(f: Poly, shape: ArcShape, mode: Mode) -> EquationSystem:
    """Arc-coefficient equations for the normalized (BV) or generalized
    (GBV) variety of f."""
    if mode not in ("BV", "GBV"):
        raise SystemError(f"mode must be BV or GBV, got {mode!r}")
    if f.vars.arity != shape.n:
        raise SystemError(f"arity {f.vars.arity} does not match shape n={shape.n}")
    if mode == "BV" and shape.D1 < 1:
        raise SystemError("normalized systems need D1 >= 1 (the arc must escape)")
    phi = build_phi(f)
    d = f.total_degree()
    gens: list[Poly] = []
    tags: list[GeneratorTag] = []

    s_f = substitute(f, shape)
    for k in range(1, d * shape.D1 + 1):
        c = s_f.coefficient_at(k)
        if not c.is_zero():
            gens.append(c)
            tags.append(GeneratorTag("c", (k,)))

    for i, grad in enumerate(phi.grads, start=1):
        s = substitute(grad, shape)
        for k in range(0, (d - 1) * shape.D1 + 1):
            c = s.coefficient_at(k)
            if not c.is_zero():
                gens.append(c)
                tags.append(GeneratorTag("d", (i, k)))

    for i in range(1, phi.n + 1):
        for j in range(1, phi.n + 1):
            s = substitute(phi.hs[i - 1][j - 1], shape)
            for k in range(0, d * shape.D1 + 1):
                c = s.coefficient_at(k)
                if not c.is_zero():
                    gens.append(c)
                    tags.append(GeneratorTag("e", (i, j, k)))

    if mode == "BV":
        gens.append(normalization_poly(shape))
        tags.append(GeneratorTag("norm", ()))

    return EquationSystem(
        shape=shape,
        generators=tuple(gens),
        c0=(s_f.coefficient_at(0),),
        mode=mode,
        field=shape.field,
        provenance=tuple(tags),
    )


def build_av_system(
    F: Sequence[Poly], shape: ArcShape, generalized: bool = False
) -> EquationSystem:
    """Arc-coefficient equations for the non-properness variety of the map
    F: positive t-powers of every component vanish, plus normalization
    unless generalized.  c0 carries one entry per component."""
    if not F:
        raise SystemError("empty map")
    for p in F:
        if p.vars.arity != shape.n:
            raise SystemError("map components must share the shape's arity")
    if not generalized and shape.D1 < 1:
        raise SystemError("normalized systems need D1 >= 1 (the arc must escape)")
    gens: list[Poly] = []
    tags: list[GeneratorTag] = []
    c0: list[Poly] = []
    for l, p in enumerate(F, start=1):
        s = substitute(p, shape)
        for k in range(1, max(p.total_degree(), 0) * shape.D1 + 1):
            c = s.coefficient_at(k)
            if not c.is_zero():
                gens.append(c)
                tags.append(GeneratorTag("c", (l, k)))
        c0.append(s.coefficient_at(0))
    if not generalized:
        gens.append(normalization_poly(shape))
        tags.append(GeneratorTag("norm", ()))
    return EquationSystem(
        shape=shape,
        generators=tuple(gens),
        c0=tuple(c0),
        mode="AVmap",
        field=shape.field,
        provenance=tuple(tags),
    )


def sum_of_squares(sys: EquationSystem) -> Poly:
    """G = sum of squared generators; real-field systems only."""
    if sys.field != "real":
        raise SystemError("sum of squares is the real pipeline's aggregate")
    table = sys.shape.var_table()
    acc = Poly.zero(table)
    for g in sys.generators:
        acc = acc + g * g
    return acc
