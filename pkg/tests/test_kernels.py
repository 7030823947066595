import numpy as np
import pytest

from fracorlicz import DivergenceError, KernelPair, YoungFunction


class TestEval:
    def test_fractional(self):
        k = KernelPair.fractional(0.5, 1)
        assert k.eval(1.0) == (1.0, 1.0)
        assert k.eval(4.0) == (2.0, 4.0)

    def test_slobodetskii(self):
        k = KernelPair.slobodetskii(2)
        M, N = k.eval(3.0)
        assert M == pytest.approx(3.0)
        assert N == pytest.approx(3.0)

    def test_nonpositive_r_rejected(self):
        k = KernelPair.fractional(0.5, 1)
        with pytest.raises(ValueError):
            k.eval(0.0)
        with pytest.raises(ValueError):
            k.eval(-1.0)

    def test_s_range_enforced(self):
        with pytest.raises(ValueError):
            KernelPair.fractional(1.5, 1)
        with pytest.raises(ValueError):
            KernelPair.besov_log(0.0, 1.0, 1)


class TestP3:
    def test_fractional_closed_form(self):
        k = KernelPair.fractional(0.5, 1)
        res = k.check_P3(2.0, 1e-4)
        assert res.inner == pytest.approx(1.0, abs=1e-4)
        assert res.outer == pytest.approx(1.0, abs=1e-4)

    def test_fractional_other_params(self):
        # closed forms 1/(p(1-s)) and 1/(s p)
        k = KernelPair.fractional(0.25, 2)
        res = k.check_P3(3.0, 1e-4)
        assert res.inner == pytest.approx(1.0 / (3.0 * 0.75), abs=1e-4)
        assert res.outer == pytest.approx(1.0 / (0.25 * 3.0), abs=1e-4)

    def test_slobodetskii_closed_form(self):
        for n in (1, 2):
            res = KernelPair.slobodetskii(n).check_P3(2.0, 1e-4)
            assert res.inner == pytest.approx(1.0, abs=1e-4)
            assert res.outer == pytest.approx(1.0, abs=1e-4)
        res = KernelPair.slobodetskii(1).check_P3(3.0, 1e-4)
        assert res.inner == pytest.approx(1.0, abs=1e-4)
        assert res.outer == pytest.approx(0.5, abs=1e-4)

    def test_divergence_detected(self):
        # with M = r^1/2, N = r^2, p- = 2 the inner integrand is exactly 1/r
        r = np.geomspace(1e-12, 1e12, 49)
        k = KernelPair.tabulated(r, r ** 0.5, r ** 2.0, n=1)
        with pytest.raises(DivergenceError):
            k.check_P3(2.0, 1e-4)


class TestP4:
    def test_fractional_rate(self):
        rep = KernelPair.fractional(0.5, 1).check_P4(2.0)
        # q(r) = 4 r at r = 2^-40
        assert rep.final == pytest.approx(4.0 * 2.0 ** -40, rel=1e-12)
        assert rep.final <= 1e-11
        assert rep.decays

    def test_all_admissible_families_decay(self):
        Gl = YoungFunction.power_log(2.0)
        fams = [KernelPair.fractional(0.5, 1), KernelPair.slobodetskii(1),
                KernelPair.besov_log(0.5, 1.0, 1),
                KernelPair.abs_family(0.75, 1, Gl)]
        for k in fams:
            rep = k.check_P4(2.0)
            assert rep.decays and rep.final <= 1e-8, (k.family, rep.final)

    def test_inadmissible_abs_flagged(self):
        # below the realized threshold n/s >= p- p+/(p+ - p-) the quotient
        # grows; the constructor must be bypassed to build it at all
        Gl = YoungFunction.power_log(2.0)
        k = KernelPair.abs_family(0.125, 1, Gl, allow_inadmissible=True)
        rep = k.check_P4(2.0)
        assert not rep.decays

    def test_abs_constructor_enforces_threshold(self):
        Gl = YoungFunction.power_log(2.0)
        with pytest.raises(ValueError, match="inadmissible"):
            KernelPair.abs_family(0.125, 1, Gl)
        k = KernelPair.abs_family(0.75, 1, Gl)
        assert k.p4_threshold == pytest.approx(2.0)
        assert k.p3_threshold == pytest.approx(4.0)


class TestP1P2:
    def test_fractional_passes(self):
        rep = KernelPair.fractional(0.3, 2).verify_P1_P2()
        assert rep.passed

    def test_besov_log_point_bound(self):
        # M(e^-1) = e^-1/2 * 2 >= e^-1
        k = KernelPair.besov_log(0.5, 1.0, 1)
        r = np.exp(-1.0)
        M, _ = k.eval(r)
        assert M == pytest.approx(2.0 * np.exp(-0.5))
        assert M >= min(1.0, r)

    def test_besov_log_monotonicity_gap(self):
        # for beta > s the log weight dips below r^s slope just left of 1
        rep = KernelPair.besov_log(0.5, 1.0, 1).verify_P1_P2()
        assert not np.all(rep.M_monotone_ok)
        assert np.all(rep.positive_ok)
        assert np.all(rep.M_lower_ok)

    def test_decreasing_M_flagged(self):
        r = np.geomspace(1e-3, 1e3, 31)
        M = 1.0 / (1.0 + r)          # decreasing on purpose
        N = np.ones_like(r)
        rep = KernelPair.tabulated(r, M, N, n=1).verify_P1_P2(
            np.geomspace(1e-3, 1e3, 61))
        assert not np.all(rep.M_monotone_ok)
        assert not rep.passed


class TestTabulated:
    def test_interpolates_and_extrapolates(self):
        r = np.geomspace(1e-3, 1e3, 25)
        k = KernelPair.tabulated(r, r ** 0.5, r ** 1.0, n=1)
        M, N = k.eval(2.0)
        assert M == pytest.approx(np.sqrt(2.0), rel=1e-6)
        assert N == pytest.approx(2.0, rel=1e-6)
        M, N = k.eval(1e6)   # power-law extension beyond the table
        assert M == pytest.approx(1e3, rel=1e-3)
