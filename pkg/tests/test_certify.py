"""Certifier and Malgrange probe: witnesses, determinism, decay shapes."""

from fractions import Fraction

import pytest

from critvals.arcs import ArcShape
from critvals.certify import (
    CertifyConfig,
    CertifyError,
    ProbeConfig,
    ProbeTrace,
    ProbeRow,
    certify_critical_point,
    certify_real,
    malgrange_probe,
    verify_arc,
)
from critvals.poly import VarTable, parse_poly

XY = VarTable(("x", "y"))
X = VarTable(("x",))
BROUGHTON = parse_poly("x + x^2*y", XY)
QUINTIC = parse_poly("x*(x^2+1)^2", XY)


def witness(shape, assignments):
    a = [Fraction(0)] * shape.num_vars
    for (i, j), v in assignments.items():
        a[shape.var_index(i, j)] = Fraction(v)
    return a


class TestVerifyArc:
    def test_broughton_witness(self):
        shape = ArcShape(n=2, D1=1, D2=1)
        a = witness(shape, {(-1, 1): Fraction(-1, 2), (1, 2): 1})
        assert verify_arc(BROUGHTON, shape, a, "BV")

    def test_zero_vector_fails_normalization(self):
        shape = ArcShape(n=2, D1=1, D2=1)
        assert not verify_arc(BROUGHTON, shape, [0] * 6, "BV")

    def test_constant_arc_at_critical_point(self):
        # f = x^2: critical point 0; the all-zero arc satisfies GBV
        shape = ArcShape(n=1, D1=1, D2=1)
        assert verify_arc(parse_poly("x^2", X), shape, [0, 0, 0], "GBV")
        # ... but f = x + x^2 has gradient 1 at 0, so d[1][0] = 1 there
        assert not verify_arc(parse_poly("x + x^2", X), shape, [0, 0, 0], "GBV")

    def test_arity_mismatch(self):
        with pytest.raises(CertifyError):
            verify_arc(BROUGHTON, ArcShape(n=2, D1=1, D2=1), [0] * 5, "BV")


class TestCertifyReal:
    def test_broughton_zero_certified(self):
        shape = ArcShape(n=2, D1=1, D2=1, field="real")
        out = certify_real(BROUGHTON, shape, 0.0)
        assert out.certified
        assert out.residual < 1e-9
        assert out.witness is not None

    def test_quintic_zero_uncertified(self):
        # the d-generator (x^2+1)(5x^2+1) coefficient is >= 1 over the reals
        shape = ArcShape(n=2, D1=1, D2=0, field="real")
        out = certify_real(QUINTIC, shape, 0.0)
        assert not out.certified
        assert out.residual > 0.1

    def test_far_value_uncertified(self):
        shape = ArcShape(n=2, D1=1, D2=1, field="real")
        out = certify_real(BROUGHTON, shape, 1e6, CertifyConfig(restarts=8))
        assert not out.certified

    def test_complex_shape_rejected(self):
        with pytest.raises(CertifyError):
            certify_real(BROUGHTON, ArcShape(n=2, D1=1, D2=1), 0.0)

    def test_deterministic_for_fixed_seed(self):
        shape = ArcShape(n=2, D1=1, D2=1, field="real")
        a = certify_real(BROUGHTON, shape, 0.0, CertifyConfig(seed=3, restarts=8))
        b = certify_real(BROUGHTON, shape, 0.0, CertifyConfig(seed=3, restarts=8))
        assert a == b

    def test_certified_witness_nearly_solves_system(self):
        from critvals.systems import build_system

        shape = ArcShape(n=2, D1=1, D2=1, field="real")
        out = certify_real(BROUGHTON, shape, 0.0)
        sys = build_system(BROUGHTON, shape, "BV")
        point = [Fraction(v).limit_denominator(10**12) for v in out.witness]
        for g in sys.generators:
            assert abs(float(g.eval_exact(point))) < 1e-6


class TestCertifyCriticalPoint:
    def test_cubic_values(self):
        f = parse_poly("x^3 - 3*x", X)
        assert certify_critical_point(f, -2.0).certified
        assert certify_critical_point(f, 2.0).certified
        assert not certify_critical_point(f, 0.5).certified

    def test_no_critical_points(self):
        assert not certify_critical_point(BROUGHTON, 0.0, CertifyConfig(restarts=4)).certified


class TestMalgrangeProbe:
    RADII = (10.0, 100.0, 1000.0)

    def test_broughton_value_decays(self):
        trace = malgrange_probe(BROUGHTON, 0.0, self.RADII)
        rm = trace.running_minima()
        assert rm[-1] * 4 <= rm[0]
        # the known curve gives norm(x)*norm(grad f) ~ 1/(4r)
        assert trace.rows[0].value == pytest.approx(1 / 40, rel=0.2)

    def test_broughton_nonvalue_floors(self):
        trace = malgrange_probe(BROUGHTON, 1.0, self.RADII)
        assert min(r.value for r in trace.rows) > 0.1

    def test_quintic_real_complex_gap(self):
        real = malgrange_probe(QUINTIC, 0.0, self.RADII, field="real")
        assert min(r.value for r in real.rows) > 0.1
        cplx = malgrange_probe(QUINTIC, 0.0, self.RADII, field="complex")
        rm = cplx.running_minima()
        assert rm[-1] * 4 <= rm[0]

    def test_deterministic(self):
        a = malgrange_probe(BROUGHTON, 0.0, self.RADII, ProbeConfig(seed=11))
        b = malgrange_probe(BROUGHTON, 0.0, self.RADII, ProbeConfig(seed=11))
        assert a == b

    def test_bad_radii(self):
        with pytest.raises(CertifyError):
            malgrange_probe(BROUGHTON, 0.0, [10.0, 10.0])
        with pytest.raises(CertifyError):
            malgrange_probe(BROUGHTON, 0.0, [])

    def test_trace_rows_increasing_guard(self):
        with pytest.raises(CertifyError):
            ProbeTrace((ProbeRow(10.0, 1.0, False), ProbeRow(5.0, 1.0, False)))
