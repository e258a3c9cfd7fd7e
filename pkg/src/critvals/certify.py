"""Numeric adjunct: real-candidate certification and the Malgrange probe.

All floating point in the package lives here.  Upstream everything is
exact; this module takes exact systems, compiles them to float evaluators,
and runs seeded multi-start local minimization:

  certify_real    minimizes sum of squared generators plus the pin
                  (c0(a) - y)^2 over the real arc coefficients; a final
                  residual below tolerance certifies that y is attained
                  by a real arc.  Failure to certify proves nothing.

  malgrange_probe minimizes the product norm(x) * norm(grad f(x)) on
                  spheres of growing radius, with the level condition
                  f(x) ~ y as a penalized residual.  The recorded value
                  is max(norm(x)*norm(grad f), |f - y|) at the best point
                  found, so a small value really does witness a near-level
                  point with small product; decaying values across radii
                  indicate y is an asymptotic critical value, flat values
                  bounded away from zero indicate it is not.

Minimization is Levenberg-Marquardt (damped Newton for least squares) on
an explicit residual vector with analytic Jacobians, preceded by nothing
fancier than the multi-start itself.  Fixed seeds make every outcome
reproducible; restarts are merged by best residual with ties broken by
restart index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .arcs import ArcShape
from .poly import Poly, Scalar
from .systems import build_system

Mode = Literal["BV", "GBV"]


class CertifyError(Exception):
    """Misuse: wrong field, arity mismatch, bad schedule."""


@dataclass(frozen=True)
class CertifyConfig:
    tolerance: float = 1e-9
    restarts: int = 32
    max_iters: int = 200
    seed: int = 0


@dataclass(frozen=True)
class ProbeConfig:
    samples_per_radius: int = 32
    level_tolerance: float | None = None  # default 1e-6 * (1 + |y|)
    max_iters: int = 200
    seed: int = 0
    # measurement resolution at radius r is floor_scale / max(1, r): the
    # search stops once the metric is below it and values under it are
    # reported at the floor.  Without the clamp a true minimum of exactly
    # zero would be reported as seed-dependent rounding noise, and
    # comparing such noise across radii is meaningless
    floor_scale: float = 1e-6


@dataclass(frozen=True)
class CertificationOutcome:
    status: Literal["CertifiedReal", "Uncertified"]
    witness: tuple[float, ...] | None
    residual: float

    @property
    def certified(self) -> bool:
        return self.status == "CertifiedReal"


@dataclass(frozen=True)
class ProbeRow:
    radius: float
    value: float
    level_within_delta: bool


@dataclass(frozen=True)
class ProbeTrace:
    rows: tuple[ProbeRow, ...]

    def __post_init__(self) -> None:
        radii = [r.radius for r in self.rows]
        if any(a >= b for a, b in zip(radii, radii[1:])):
            raise CertifyError("probe radii must be strictly increasing")

    def running_minima(self) -> list[float]:
        out, best = [], math.inf
        for row in self.rows:
            best = min(best, row.value)
            out.append(best)
        return out


# ---- float compilation of exact polynomials ----


class CompiledPoly:
    """Term-table evaluator for one Poly: works on real or complex vectors."""

    __slots__ = ("monos", "coeffs", "arity")

    def __init__(self, p: Poly):
        monos = []
        coeffs = []
        for mono, coeff in p.terms():
            monos.append(mono)
            coeffs.append(float(coeff))
        self.arity = p.vars.arity
        self.monos = np.array(monos, dtype=np.int64).reshape(len(monos), self.arity)
        self.coeffs = np.array(coeffs, dtype=np.float64)

    def __call__(self, x: np.ndarray):
        if not len(self.coeffs):
            return x.dtype.type(0) if np.iscomplexobj(x) else 0.0
        return np.prod(x[None, :] ** self.monos, axis=1) @ self.coeffs


def _compile_with_jacobian(polys: Sequence[Poly]) -> tuple[list[CompiledPoly], list[list[CompiledPoly]]]:
    vals = [CompiledPoly(p) for p in polys]
    jac = [
        [CompiledPoly(p.partial_derivative(j)) for j in range(p.vars.arity)]
        for p in polys
    ]
    return vals, jac


# ---- Levenberg-Marquardt core ----


def _levenberg_marquardt(
    residual_fn,
    jacobian_fn,
    x0: np.ndarray,
    max_iters: int,
    stop_norm: float = 0.0,
    project=None,
) -> np.ndarray:
    """Minimize ||residual(x)||^2; optional projection keeps x feasible.

    Deterministic damped Gauss-Newton: the damping parameter only ever
    changes by fixed factors, and all linear algebra is numpy's."""
    x = x0.copy() if project is None else project(x0.copy())
    r = residual_fn(x)
    cost = float(r @ r)
    lam = 1e-3
    for _ in range(max_iters):
        if math.sqrt(cost) <= stop_norm:
            break
        J = jacobian_fn(x)
        g = J.T @ r
        if np.linalg.norm(g) < 1e-16 * (1 + cost):
            break
        JtJ = J.T @ J
        improved = False
        for _ in range(25):
            try:
                step = np.linalg.solve(JtJ + lam * np.eye(len(x)), -g)
            except np.linalg.LinAlgError:
                lam *= 10
                continue
            cand = x + step
            if project is not None:
                cand = project(cand)
            rc = residual_fn(cand)
            cc = float(rc @ rc)
            if cc < cost:
                x, r, cost = cand, rc, cc
                lam = max(lam / 3, 1e-12)
                improved = True
                break
            lam *= 10
            if lam > 1e12:
                break
        if not improved:
            break
    return x


# ---- exact membership check ----


def verify_arc(f: Poly, shape: ArcShape, a: Sequence[Scalar], mode: Mode) -> bool:
    """Exact test: does the rational a-vector satisfy every generator of
    the shape's system for f?"""
    if len(a) != shape.num_vars:
        raise CertifyError(
            f"a-vector has {len(a)} entries, shape needs {shape.num_vars}"
        )
    point = [Fraction(v) for v in a]
    sys = build_system(f, shape, mode)
    return all(g.eval_exact(point) == 0 for g in sys.generators)


# ---- real certification ----


def certify_zero(
    generators: Sequence[Poly],
    pin: Poly,
    y: float,
    cfg: CertifyConfig,
) -> CertificationOutcome:
    """Search for a real common zero of the generators with pin = y.

    Multi-start Levenberg-Marquardt on the stacked residual vector
    (g_1..g_m, pin - y); the reported residual is max|g_alpha| + |pin - y|
    at the best point.  Confirms, never refutes."""
    nv = generators[0].vars.arity if generators else pin.vars.arity
    gen_vals, gen_jac = _compile_with_jacobian(list(generators) + [pin])
    pin_val = gen_vals[-1]

    def residual(x: np.ndarray) -> np.ndarray:
        out = np.empty(len(gen_vals))
        for i, g in enumerate(gen_vals):
            out[i] = g(x)
        out[-1] -= y
        return out

    def jacobian(x: np.ndarray) -> np.ndarray:
        J = np.empty((len(gen_vals), nv))
        for i, row in enumerate(gen_jac):
            for j, d in enumerate(row):
                J[i, j] = d(x)
        return J

    def metric(x: np.ndarray) -> float:
        gmax = max((abs(float(g(x))) for g in gen_vals[:-1]), default=0.0)
        return gmax + abs(float(pin_val(x)) - y)

    rng = np.random.default_rng(cfg.seed)
    best_x: np.ndarray | None = None
    best_res = math.inf
    scales = (0.5, 1.0, 2.0, 4.0)
    for restart in range(cfg.restarts):
        x0 = rng.normal(size=nv) * scales[restart % len(scales)]
        x = _levenberg_marquardt(residual, jacobian, x0, cfg.max_iters)
        res = metric(x)
        if res < best_res:
            best_res, best_x = res, x

    if best_x is not None and best_res < cfg.tolerance:
        # refinement check: one extra damped-Newton pass may not worsen it
        polished = _levenberg_marquardt(residual, jacobian, best_x, 1)
        if metric(polished) <= best_res:
            best_x, best_res = polished, metric(polished)
        return CertificationOutcome(
            "CertifiedReal", tuple(float(v) for v in best_x), best_res
        )
    witness = tuple(float(v) for v in best_x) if best_x is not None else None
    return CertificationOutcome("Uncertified", witness, best_res)


def certify_real(
    f: Poly,
    shape: ArcShape,
    y: float,
    cfg: CertifyConfig | None = None,
    mode: Mode = "BV",
) -> CertificationOutcome:
    """Is the real value y attained by a real arc of this shape?

    Minimizes G(a) + (c0(a) - y)^2 where G is the sum of squared system
    generators; CertifiedReal iff the final residual is below tolerance."""
    if shape.field != "real":
        raise CertifyError("certification runs on real-field shapes")
    cfg = cfg or CertifyConfig()
    sys = build_system(f, shape, mode)
    return certify_zero(sys.generators, sys.c0[0], y, cfg)


def certify_critical_point(
    f: Poly, y: float, cfg: CertifyConfig | None = None
) -> CertificationOutcome:
    """Is y attained at a real critical point?  Same search with the
    gradient components as generators and f itself as the pin."""
    cfg = cfg or CertifyConfig()
    grads = [
        f.partial_derivative(j)
        for j in range(f.vars.arity)
        if not f.partial_derivative(j).is_zero()
    ]
    return certify_zero(grads, f, y, cfg)


# ---- Malgrange probe ----


def _complex_view(u: np.ndarray, n: int) -> np.ndarray:
    return u[:n] + 1j * u[n:]


def malgrange_probe(
    f: Poly,
    y: complex,
    radii: Sequence[float],
    cfg: ProbeConfig | None = None,
    field: str = "complex",
) -> ProbeTrace:
    """Measure min of max(norm(x)*norm(grad f), |f - y|) on each sphere.

    Independent of the arc machinery: this looks directly for sequences
    witnessing the failure of the Malgrange condition at y.  Warm starts
    carry the best point of one radius to the next, so genuine asymptotic
    curves are tracked outward."""
    if any(a >= b for a, b in zip(radii, list(radii)[1:])) or not radii:
        raise CertifyError("radii must be a nonempty strictly increasing schedule")
    if field not in ("complex", "real"):
        raise CertifyError(f"unknown field {field!r}")
    cfg = cfg or ProbeConfig()
    delta = (
        cfg.level_tolerance
        if cfg.level_tolerance is not None
        else 1e-6 * (1 + abs(y))
    )
    n = f.vars.arity
    is_complex = field == "complex"
    k = 2 * n if is_complex else n  # real search dimension

    grads = [f.partial_derivative(j) for j in range(n)]
    c_f = CompiledPoly(f)
    c_grads = [CompiledPoly(g) for g in grads]
    c_hess = [[CompiledPoly(g.partial_derivative(j)) for j in range(n)] for g in grads]

    def point(u: np.ndarray) -> np.ndarray:
        return _complex_view(u, n) if is_complex else u

    def split(z) -> np.ndarray:
        arr = np.asarray(z)
        return np.concatenate([arr.real, arr.imag]) if is_complex else arr.real

    rows: list[ProbeRow] = []
    rng = np.random.default_rng(cfg.seed)
    carry: np.ndarray | None = None

    for radius in radii:
        floor = cfg.floor_scale / max(1.0, radius)

        def residual(u: np.ndarray) -> np.ndarray:
            x = point(u)
            parts = [radius * g(x) for g in c_grads] + [c_f(x) - y]
            return np.concatenate([split(np.array(parts))]) if is_complex else np.array(
                [float(p) for p in parts]
            )

        def jacobian(u: np.ndarray) -> np.ndarray:
            x = point(u)
            # complex rows: d(g_l)/du_j = g_l', d/dv_j = i*g_l' (holomorphy)
            rows_c = []
            for l in range(n):
                row = np.array([radius * c_hess[l][j](x) for j in range(n)])
                rows_c.append(row)
            rows_c.append(np.array([c_grads[j](x) for j in range(n)]))
            J_c = np.vstack(rows_c)
            if is_complex:
                top = np.hstack([J_c.real, -J_c.imag])
                bot = np.hstack([J_c.imag, J_c.real])
                return np.vstack([top, bot])
            return J_c.real

        def project(u: np.ndarray) -> np.ndarray:
            norm = np.linalg.norm(u)
            if norm == 0:
                u = np.ones(k)
                norm = np.linalg.norm(u)
            return u * (radius / norm)

        def tangent_jacobian(u: np.ndarray) -> np.ndarray:
            J = jacobian(u)
            uhat = u / np.linalg.norm(u)
            return J - np.outer(J @ uhat, uhat)

        def metric(u: np.ndarray) -> tuple[float, float]:
            x = point(u)
            gn = math.sqrt(sum(abs(g(x)) ** 2 for g in c_grads))
            miss = abs(c_f(x) - y)
            return max(radius * gn, miss), miss

        starts: list[np.ndarray] = []
        if carry is not None:
            starts.append(project(carry))
        while len(starts) < cfg.samples_per_radius:
            starts.append(project(rng.normal(size=k)))

        best_u: np.ndarray | None = None
        best_val = math.inf
        best_miss = math.inf
        for u0 in starts:
            u = _levenberg_marquardt(
                residual,
                tangent_jacobian,
                u0,
                cfg.max_iters,
                stop_norm=floor,
                project=project,
            )
            val, miss = metric(u)
            if val < best_val:
                best_u, best_val, best_miss = u, val, miss
            if best_val <= floor:
                break

        carry = best_u
        rows.append(
            ProbeRow(float(radius), float(max(best_val, floor)), bool(best_miss < delta))
        )

    return ProbeTrace(tuple(rows))
