"""Buchberger's algorithm and elimination ideals, exact over the rationals.

Internals work on integer-coefficient term dicts (denominators cleared,
content stripped after every reduction), with monomials permuted into the
comparison order once on entry.  Pair selection is the normal strategy
refined by sugar degree; the pair set is pruned with the Gebauer-Moeller
update, so both Buchberger criteria are applied.  Everything is
deterministic for fixed input: selection keys are total orders and every
set iteration that matters is sorted.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .poly import Poly, PolyError, VarTable

Mono = tuple[int, ...]
OrderKind = Literal["grevlex", "lex", "block"]


class GroebnerError(Exception):
    """Structural misuse: empty ideal, bad order, mixed tables."""


class LimitExceeded(Exception):
    """A resource limit tripped; recoverable and reportable."""

    def __init__(self, which: str, detail: str):
        super().__init__(f"{which}: {detail}")
        self.which = which
        self.detail = detail


@dataclass(frozen=True)
class ResourceLimits:
    """Caps on the Buchberger run; all positive."""

    max_pairs: int = 500_000
    max_basis_size: int = 10_000
    max_coefficient_bits: int = 1_000_000
    wall_clock_budget: float = 600.0

    def __post_init__(self) -> None:
        if min(self.max_pairs, self.max_basis_size, self.max_coefficient_bits) <= 0:
            raise GroebnerError("resource limits must be positive")
        if self.wall_clock_budget <= 0:
            raise GroebnerError("resource limits must be positive")


@dataclass(frozen=True)
class TermOrder:
    """Monomial order: variable permutation plus comparison kind.

    var_order[k] is the table index of the variable at comparison position
    k (position 0 is the most significant).  For kind "block", the first
    `split` positions form the eliminated block: monomials compare grevlex
    on that block first, then grevlex on the rest, so any Groebner basis
    intersected with the kept variables generates the elimination ideal.
    """

    kind: OrderKind
    var_order: tuple[int, ...]
    split: int = 0

    def __post_init__(self) -> None:
        if sorted(self.var_order) != list(range(len(self.var_order))):
            raise GroebnerError(f"variable order {self.var_order} is not a permutation")
        if self.kind == "block" and not 0 <= self.split <= len(self.var_order):
            raise GroebnerError(f"block split {self.split} out of range")

    def permute(self, mono: Mono) -> Mono:
        return tuple(mono[i] for i in self.var_order)

    def unpermute(self, mono: Mono) -> Mono:
        out = [0] * len(mono)
        for pos, i in enumerate(self.var_order):
            out[i] = mono[pos]
        return tuple(out)

    def key(self, permuted: Mono) -> tuple:
        """Sort key on permuted exponents: larger key = larger monomial."""
        if self.kind == "lex":
            return permuted
        if self.kind == "grevlex":
            return _grevlex_key(permuted)
        return _grevlex_key(permuted[: self.split]) + _grevlex_key(permuted[self.split :])


def _grevlex_key(mono: Mono) -> tuple:
    return (sum(mono), tuple(-e for e in reversed(mono)))


def grevlex_order(arity: int) -> TermOrder:
    return TermOrder("grevlex", tuple(range(arity)))


def lex_order(arity: int) -> TermOrder:
    return TermOrder("lex", tuple(range(arity)))


def block_elim_order(arity: int, eliminate: Sequence[int]) -> TermOrder:
    """Order eliminating the given table indices (they compare above the rest)."""
    elim = list(eliminate)
    keep = [i for i in range(arity) if i not in set(elim)]
    return TermOrder("block", tuple(elim + keep), split=len(elim))


@dataclass(frozen=True)
class Ideal:
    """Generator list with an explicit term order for basis computations."""

    generators: tuple[Poly, ...]
    order: TermOrder

    def __post_init__(self) -> None:
        tables = {g.vars for g in self.generators}
        if len(tables) > 1:
            raise GroebnerError("generators over mixed variable tables")
        for g in self.generators:
            if g.is_zero():
                raise GroebnerError("zero generator in ideal")
        if self.generators and len(self.order.var_order) != self.generators[0].vars.arity:
            raise GroebnerError("order arity does not match generator table")


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis: content-free integer coefficients, positive leading
    coefficient, no leading monomial divides another, sorted by descending
    leading monomial."""

    basis: tuple[Poly, ...]
    order: TermOrder


# ---- integer term-dict plumbing ----


def _clear_denominators(p: Poly, order: TermOrder) -> dict[Mono, int]:
    lcm = 1
    for _, c in p.terms():
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    out = {order.permute(m): int(c * lcm) for m, c in p.terms()}
    return _strip_content(out)


def _strip_content(f: dict[Mono, int]) -> dict[Mono, int]:
    if not f:
        return f
    g = math.gcd(*f.values())
    if g > 1:
        return {m: c // g for m, c in f.items()}
    return f


def _to_poly(f: dict[Mono, int], vars: VarTable, order: TermOrder) -> Poly:
    return Poly(vars, {order.unpermute(m): Fraction(c) for m, c in f.items()})


def _lead(f: dict[Mono, int], order: TermOrder) -> Mono:
    return max(f, key=order.key)


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def _mono_sub(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def _total_deg(f: dict[Mono, int]) -> int:
    return max(sum(m) for m in f)


def _add_scaled(f: dict[Mono, int], scale_f: int, g: dict[Mono, int], scale_g: int, shift: Mono) -> dict[Mono, int]:
    """scale_f * f + scale_g * x^shift * g, dropping zeros."""
    out: dict[Mono, int] = {m: scale_f * c for m, c in f.items()} if scale_f != 1 else dict(f)
    for m, c in g.items():
        key = _mono_mul(m, shift)
        v = out.get(key, 0) + scale_g * c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


@dataclass
class _Entry:
    poly: dict[Mono, int]
    lm: Mono
    lc: int
    sugar: int


class _Run:
    """One Buchberger computation with its limits and clock."""

    def __init__(self, order: TermOrder, limits: ResourceLimits):
        self.order = order
        self.limits = limits
        self.start = time.monotonic()
        self.pairs_done = 0

    def check_clock(self) -> None:
        if time.monotonic() - self.start > self.limits.wall_clock_budget:
            raise LimitExceeded(
                "wall_clock_budget", f"exceeded {self.limits.wall_clock_budget}s"
            )

    def top_reduce(self, f: dict[Mono, int], basis: list[_Entry]) -> dict[Mono, int]:
        """Reduce the leading term until it is irreducible; content-free result."""
        order = self.order
        steps = 0
        while f:
            lm = _lead(f, order)
            reducer = None
            for entry in basis:
                if _divides(entry.lm, lm):
                    reducer = entry
                    break
            if reducer is None:
                break
            lc = f[lm]
            g = math.gcd(lc, reducer.lc)
            f = _add_scaled(
                f, reducer.lc // g, reducer.poly, -(lc // g), _mono_sub(lm, reducer.lm)
            )
            steps += 1
            if steps % 32 == 0:
                f = _strip_content(f)
                self.check_clock()
        return _strip_content(f)

    def normal_form(self, f: dict[Mono, int], basis: list[_Entry]) -> dict[Mono, int]:
        """Fully reduce every term of f; content-free result."""
        order = self.order
        done: dict[Mono, int] = {}
        work = dict(f)
        steps = 0
        while work:
            lm = _lead(work, order)
            reducer = None
            for entry in basis:
                if _divides(entry.lm, lm):
                    reducer = entry
                    break
            if reducer is None:
                done[lm] = work.pop(lm)
                continue
            lc = work[lm]
            g = math.gcd(lc, reducer.lc)
            a, b = reducer.lc // g, lc // g
            work = _add_scaled(work, a, reducer.poly, -b, _mono_sub(lm, reducer.lm))
            if a != 1:
                done = {m: a * c for m, c in done.items()}
            steps += 1
            if steps % 32 == 0:
                joint = math.gcd(math.gcd(*done.values()) if done else 0,
                                 math.gcd(*work.values()) if work else 0)
                if joint > 1:
                    done = {m: c // joint for m, c in done.items()}
                    work = {m: c // joint for m, c in work.items()}
                self.check_clock()
        return _strip_content(done)


def _positive_lead(f: dict[Mono, int], order: TermOrder) -> dict[Mono, int]:
    if f and f[_lead(f, order)] < 0:
        return {m: -c for m, c in f.items()}
    return f


def _update(
    basis: list[_Entry],
    pairs: set[tuple[int, int]],
    entry: _Entry,
    order: TermOrder,
) -> None:
    """Gebauer-Moeller pair update: append entry, prune old pairs by the
    chain criterion, minimalize new lcms, drop coprime pairs."""
    t = len(basis)
    lmf = entry.lm

    stale = []
    for i, j in pairs:
        lij = _mono_lcm(basis[i].lm, basis[j].lm)
        if (
            _divides(lmf, lij)
            and lij != _mono_lcm(basis[i].lm, lmf)
            and lij != _mono_lcm(basis[j].lm, lmf)
        ):
            stale.append((i, j))
    for p in stale:
        pairs.discard(p)

    by_lcm: dict[Mono, list[int]] = {}
    for i in range(t):
        by_lcm.setdefault(_mono_lcm(basis[i].lm, lmf), []).append(i)
    kept: list[Mono] = []
    for lcm in sorted(by_lcm, key=order.key):
        if all(not _divides(other, lcm) for other in kept):
            kept.append(lcm)
    for lcm in kept:
        group = by_lcm[lcm]
        if any(_mono_lcm(basis[i].lm, lmf) == _mono_mul(basis[i].lm, lmf) for i in group):
            continue  # a coprime pair witnesses this lcm: S-poly reduces to zero
        pairs.add((min(group), t))

    basis.append(entry)


def buchberger(ideal: Ideal, limits: ResourceLimits | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal under its term order."""
    if not ideal.generators:
        raise GroebnerError("buchberger needs at least one generator")
    limits = limits or ResourceLimits()
    order = ideal.order
    vars = ideal.generators[0].vars
    run = _Run(order, limits)

    basis: list[_Entry] = []
    pairs: set[tuple[int, int]] = set()
    for g in ideal.generators:
        f = _clear_denominators(g, order)
        f = run.top_reduce(f, basis)
        if f:
            f = _positive_lead(f, order)
            lm = _lead(f, order)
            _update(basis, pairs, _Entry(f, lm, f[lm], _total_deg(f)), order)

    while pairs:
        run.pairs_done += 1
        if run.pairs_done > limits.max_pairs:
            raise LimitExceeded("max_pairs", f"processed more than {limits.max_pairs} pairs")
        run.check_clock()

        def pair_rank(p: tuple[int, int]) -> tuple:
            i, j = p
            lcm = _mono_lcm(basis[i].lm, basis[j].lm)
            sugar = max(
                basis[i].sugar + sum(_mono_sub(lcm, basis[i].lm)),
                basis[j].sugar + sum(_mono_sub(lcm, basis[j].lm)),
            )
            return (sugar, order.key(lcm), i, j)

        i, j = min(pairs, key=pair_rank)
        pairs.discard((i, j))
        gi, gj = basis[i], basis[j]
        lcm = _mono_lcm(gi.lm, gj.lm)
        c = math.gcd(gi.lc, gj.lc)
        s = _add_scaled(
            _add_scaled({}, 1, gi.poly, gj.lc // c, _mono_sub(lcm, gi.lm)),
            1,
            gj.poly,
            -(gi.lc // c),
            _mono_sub(lcm, gj.lm),
        )
        sugar = max(
            gi.sugar + sum(_mono_sub(lcm, gi.lm)),
            gj.sugar + sum(_mono_sub(lcm, gj.lm)),
        )
        h = run.top_reduce(s, basis)
        if not h:
            continue
        if len(basis) + 1 > limits.max_basis_size:
            raise LimitExceeded("max_basis_size", f"basis grew past {limits.max_basis_size}")
        bits = max(c.bit_length() for c in h.values())
        if bits > limits.max_coefficient_bits:
            raise LimitExceeded(
                "max_coefficient_bits", f"coefficient reached {bits} bits"
            )
        h = _positive_lead(h, order)
        lm = _lead(h, order)
        _update(basis, pairs, _Entry(h, lm, h[lm], max(sugar, _total_deg(h))), order)

    # minimalize: keep only entries whose lm no other kept lm divides
    minimal: list[_Entry] = []
    for entry in sorted(basis, key=lambda e: order.key(e.lm)):
        if all(not _divides(kept.lm, entry.lm) for kept in minimal):
            minimal.append(entry)

    # interreduce: full normal form of each against the others
    reduced: list[dict[Mono, int]] = []
    for k, entry in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        nf = run.normal_form(entry.poly, others)
        reduced.append(_positive_lead(nf, order))

    reduced.sort(key=lambda f: order.key(_lead(f, order)), reverse=True)
    return GroebnerBasis(tuple(_to_poly(f, vars, order) for f in reduced), order)


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    """Full normal form of p modulo the basis (zero iff p is in the ideal)."""
    if p.is_zero():
        return p
    order = gb.order
    run = _Run(order, ResourceLimits())
    entries = []
    for g in gb.basis:
        f = _clear_denominators(g, order)
        lm = _lead(f, order)
        entries.append(_Entry(f, lm, f[lm], sum(lm)))
    nf = run.normal_form(_clear_denominators(p, order), entries)
    return _to_poly(_positive_lead(nf, order), p.vars, order)


def eliminate(ideal: Ideal, keep: Iterable[int], limits: ResourceLimits | None = None) -> Ideal:
    """Generators of the elimination ideal in the kept table indices.

    Uses a block order placing every eliminated variable above every kept
    one; basis elements involving only kept variables generate the
    elimination ideal.  The unit ideal eliminates to the unit ideal.
    """
    if not ideal.generators:
        raise GroebnerError("eliminate needs at least one generator")
    arity = ideal.generators[0].vars.arity
    keep_set = set(keep)
    if not keep_set <= set(range(arity)):
        raise GroebnerError(f"keep set {sorted(keep_set)} outside table range")
    elim = [i for i in ideal.order.var_order if i not in keep_set]
    kept = [i for i in ideal.order.var_order if i in keep_set]
    order = TermOrder("block", tuple(elim + kept), split=len(elim))
    gb = buchberger(Ideal(ideal.generators, order), limits)
    selected = tuple(g for g in gb.basis if g.variables_used() <= keep_set)
    return Ideal(selected, grevlex_order(arity))
