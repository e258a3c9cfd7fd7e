"""Symbolic rational arcs and exact Laurent substitution.

An arc assigns to each coordinate x_j a Laurent polynomial
x_j(t) = sum_{-D2 <= i <= D1} a[i][j] t^i with unknown rational coefficients
a[i][j].  Substituting the arc into a polynomial p(x_1..x_n) produces a
Laurent polynomial in t whose t^k coefficient is an exact polynomial in the
a-variables; those coefficients are the raw material for every equation
system downstream.

Indexing: series are stored by ascending t-exponent k; descending-power
expansions elsewhere put their i-th tail coefficient at k = -i, and the
constant coefficient c0 always sits at k = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal, Sequence

from .poly import Poly, Scalar, VarTable

Field = Literal["complex", "real"]
BoundSource = Literal["paper", "user"]

# Bounds past this are refused outright: no elimination at that size can
# finish, and silently accepting astronomic shapes only hides the mistake.
_BOUND_CEILING = 2**63 - 1


class ArcError(Exception):
    """Bad shape parameters, out-of-range indices, or bound overflow."""


@dataclass(frozen=True)
class ArcShape:
    """Template for arcs in n variables with t-support [-D2, D1].

    The induced arc-variable table has exactly n*(D1+D2+1) entries a[i][j],
    i in [-D2, D1] and j in [1, n], ordered by i descending then j ascending.
    """

    n: int
    D1: int
    D2: int
    field: Field = "complex"
    bound_source: BoundSource = "user"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ArcError(f"ambient dimension must be >= 1, got {self.n}")
        if self.D1 < 0 or self.D2 < 0:
            raise ArcError(f"bounds must be nonnegative, got ({self.D1}, {self.D2})")
        if self.field not in ("complex", "real"):
            raise ArcError(f"unknown field {self.field!r}")
        if self.bound_source not in ("paper", "user"):
            raise ArcError(f"unknown bound source {self.bound_source!r}")

    @property
    def num_vars(self) -> int:
        return self.n * (self.D1 + self.D2 + 1)

    def exponent_range(self) -> range:
        """t-exponents i carried by the arc, descending: D1, D1-1, ..., -D2."""
        return range(self.D1, -self.D2 - 1, -1)

    def var_name(self, i: int, j: int) -> str:
        return f"a[{i}][{j}]"

    def var_index(self, i: int, j: int) -> int:
        """Index of a[i][j] in var_table(); i in [-D2, D1], j in [1, n]."""
        if not -self.D2 <= i <= self.D1:
            raise ArcError(f"t-exponent {i} outside [{-self.D2}, {self.D1}]")
        if not 1 <= j <= self.n:
            raise ArcError(f"coordinate {j} outside [1, {self.n}]")
        return (self.D1 - i) * self.n + (j - 1)

    def var_table(self) -> VarTable:
        return _shape_table(self.n, self.D1, self.D2)


@lru_cache(maxsize=None)
def _shape_table(n: int, D1: int, D2: int) -> VarTable:
    names = tuple(
        f"a[{i}][{j}]" for i in range(D1, -D2 - 1, -1) for j in range(1, n + 1)
    )
    return VarTable(names)


def paper_bounds_complex(n: int, d: int) -> tuple[int, int]:
    """Complete arc bounds for the complex pipeline: (d^(n-1), d^n - d^(n-1) + 1)."""
    if n < 1 or d < 1:
        raise ArcError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    D1 = d ** (n - 1)
    D2 = d**n - D1 + 1
    if D2 > _BOUND_CEILING:
        raise ArcError(f"paper bounds overflow for n={n}, d={d}")
    return D1, D2


def paper_bounds_real(n: int, d: int) -> tuple[int, int]:
    """Complete arc bounds for the real pipeline: ((d+1)^n (d^n+2)^(n-1), (d-1)D1+1)."""
    if n < 1 or d < 1:
        raise ArcError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    D1 = (d + 1) ** n * (d**n + 2) ** (n - 1)
    D2 = (d - 1) * D1 + 1
    if max(D1, D2) > _BOUND_CEILING:
        raise ArcError(f"paper bounds overflow for n={n}, d={d}")
    return D1, D2


@dataclass(frozen=True)
class LaurentSeriesOverPoly:
    """Finite Laurent polynomial in t with Poly coefficients.

    coeffs maps t-exponent k to a nonzero Poly over `vars`; [lo, hi] is the
    declared support interval (actual support may be smaller after
    cancellation, never larger).
    """

    vars: VarTable
    coeffs: dict[int, Poly]
    lo: int
    hi: int

    def __post_init__(self) -> None:
        for k, p in self.coeffs.items():
            if p.is_zero():
                raise ArcError(f"zero coefficient stored at t^{k}")
            if not self.lo <= k <= self.hi:
                raise ArcError(f"exponent {k} outside declared support [{self.lo}, {self.hi}]")

    @classmethod
    def zero(cls, vars: VarTable) -> "LaurentSeriesOverPoly":
        return cls(vars, {}, 0, 0)

    @classmethod
    def constant(cls, vars: VarTable, p: Poly) -> "LaurentSeriesOverPoly":
        if p.is_zero():
            return cls.zero(vars)
        return cls(vars, {0: p}, 0, 0)

    def coefficient_at(self, k: int) -> Poly:
        return self.coeffs.get(k, Poly.zero(self.vars))

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def items(self) -> Iterator[tuple[int, Poly]]:
        return iter(sorted(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _require_same_table(self, other: "LaurentSeriesOverPoly") -> None:
        if self.vars != other.vars:
            raise ArcError("series over different arc-variable tables")

    def __add__(self, other: "LaurentSeriesOverPoly") -> "LaurentSeriesOverPoly":
        self._require_same_table(other)
        out = dict(self.coeffs)
        for k, p in other.coeffs.items():
            s = out.get(k)
            q = p if s is None else s + p
            if q.is_zero():
                out.pop(k, None)
            else:
                out[k] = q
        return LaurentSeriesOverPoly(
            self.vars, out, min(self.lo, other.lo), max(self.hi, other.hi)
        )

    def __mul__(self, other: "LaurentSeriesOverPoly") -> "LaurentSeriesOverPoly":
        self._require_same_table(other)
        if not self.coeffs or not other.coeffs:
            return LaurentSeriesOverPoly.zero(self.vars)
        out: dict[int, Poly] = {}
        for ka, pa in self.coeffs.items():
            for kb, pb in other.coeffs.items():
                k = ka + kb
                prod = pa * pb
                s = out.get(k)
                q = prod if s is None else s + prod
                if q.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = q
        return LaurentSeriesOverPoly(self.vars, out, self.lo + other.lo, self.hi + other.hi)

    def scale(self, value: Scalar) -> "LaurentSeriesOverPoly":
        c = Fraction(value)
        if c == 0:
            return LaurentSeriesOverPoly.zero(self.vars)
        return LaurentSeriesOverPoly(
            self.vars, {k: p.scale(c) for k, p in self.coeffs.items()}, self.lo, self.hi
        )

    def eval_exact(self, a_values: Sequence[Scalar], t: Scalar) -> Fraction:
        """Evaluate at exact a-values and a nonzero rational t."""
        tv = Fraction(t)
        if tv == 0:
            raise ArcError("t must be nonzero for Laurent evaluation")
        total = Fraction(0)
        for k, p in self.coeffs.items():
            total += p.eval_exact(a_values) * tv**k
        return total


def arc_coordinate(shape: ArcShape, j: int) -> LaurentSeriesOverPoly:
    """The series x_j(t) = sum_i a[i][j] t^i over the shape's variable table."""
    table = shape.var_table()
    coeffs = {
        i: Poly.variable(table, shape.var_index(i, j)) for i in shape.exponent_range()
    }
    return LaurentSeriesOverPoly(table, coeffs, -shape.D2, shape.D1)


def substitute(p: Poly, shape: ArcShape) -> LaurentSeriesOverPoly:
    """Exact composition p(x_1(t), ..., x_n(t)).

    Support is contained in [-deg(p)*D2, deg(p)*D1] and every t^k coefficient
    is a polynomial of total degree <= deg(p) in the a-variables.  Powers of
    each coordinate series are memoized, so each is computed once per call.
    """
    if p.vars.arity != shape.n:
        raise ArcError(f"polynomial arity {p.vars.arity} does not match shape n={shape.n}")
    table = shape.var_table()
    coords = [arc_coordinate(shape, j) for j in range(1, shape.n + 1)]
    one = LaurentSeriesOverPoly.constant(table, Poly.const(table, 1))
    powers: list[list[LaurentSeriesOverPoly]] = [[one] for _ in coords]

    def power(j: int, e: int) -> LaurentSeriesOverPoly:
        cache = powers[j]
        while len(cache) <= e:
            cache.append(cache[-1] * coords[j])
        return cache[e]

    result = LaurentSeriesOverPoly.zero(table)
    for mono, coeff in p.terms():
        term = one
        for j, e in enumerate(mono):
            if e:
                term = term * power(j, e)
        result = result + term.scale(coeff)
    return result
