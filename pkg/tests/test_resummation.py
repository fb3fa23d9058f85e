import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import exp1

from ngas.model_core import DomainError, EstimationError, OscKind, OscillatorSpec
from ngas.recursion import EvenModel, PerturbationSeries, Scheme, mfpt_coefficients_even, mfpt_series
from ngas.resummation import (
    borel_coefficients,
    borel_sum,
    borel_sum_auto,
    conformal_map,
    estimate_singularity,
    inverse_map,
    optimal_truncation,
    reexpand_borel,
)

F = Fraction


def toy_series(coeffs):
    """Wrap plain numbers as a series object for the resummation API."""
    return PerturbationSeries(
        scheme=Scheme.MFPT, spec=None, omega=F(1), h0=F(0), sigma=F(0), K=2,
        coefficients=[mpmath.mpf(c) for c in coeffs], exact=False)


class TestOptimalTruncation:
    def test_qaho_benchmark(self):
        s = mfpt_coefficients_even(2, EvenModel.AHO, F(1), 0, 8)
        mot = optimal_truncation(s)
        assert mot.N0 == 3
        assert mot.E_mot == pytest.approx(0.8074, abs=1.01e-4)
        assert not mot.grew_immediately

    def test_growing_series_flagged(self):
        s = mfpt_coefficients_even(3, EvenModel.AHO, F(8, 15), 0, 6)
        mot = optimal_truncation(s, slack=0.0)
        assert mot.N0 == 2
        assert mot.grew_immediately

    def test_short_series_rejected(self):
        s = mfpt_coefficients_even(2, EvenModel.AHO, F(1), 0, 3)
        with pytest.raises(DomainError):
            optimal_truncation(s)


class TestSingularityEstimate:
    def test_geometric_series_exact(self):
        for r in (0.5, 3.0, 11.0):
            b = [(-1.0 / r) ** j for j in range(24)]
            est = estimate_singularity(b)
            assert est.r_c == pytest.approx(r, rel=1e-10)
            assert est.p_exp == pytest.approx(-1.0, abs=1e-10)

    def test_algebraic_branch_point_exact(self):
        # b_j from (1 + u/r)^p: binomial coefficients
        r, p = 2.5, -0.5
        b = [1.0]
        for j in range(1, 26):
            b.append(b[-1] * (p - j + 1) / j / r)
        est = estimate_singularity(b)
        assert est.r_c == pytest.approx(r, rel=1e-9)
        assert est.p_exp == pytest.approx(p, abs=1e-9)

    def test_qaho_benchmark_radius(self):
        s = mfpt_series(OscillatorSpec(OscKind.QAHO, 1.0), 46)
        est = estimate_singularity(borel_coefficients(s, 1.0))
        assert est.r_c == pytest.approx(2.667, abs=2e-3)
        assert est.p_exp == pytest.approx(-0.5, abs=0.05)

    def test_degenerate_denominators_fail(self):
        # b_j = 1/j! zeroes the ratio denominators identically
        b = [1.0 / math.factorial(j) for j in range(20)]
        with pytest.raises(EstimationError):
            estimate_singularity(b)

    def test_window_guard(self):
        with pytest.raises(DomainError):
            estimate_singularity([1.0] * 30, window=3)


class TestConformalMap:
    def test_origin_preserved(self):
        assert conformal_map(0.0, 1.0 / 2.5) == 0.0

    def test_known_point(self):
        r_c = 1.7
        assert conformal_map(3.0 * r_c, 1.0 / r_c) == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_infinity_limit(self):
        assert conformal_map(1e18, 0.5) == pytest.approx(1.0, abs=1e-8)

    def test_branch_cut_rejected(self):
        with pytest.raises(DomainError):
            conformal_map(-2.0, 1.0 / 2.0)
        with pytest.raises(DomainError):
            inverse_map(1.0, 0.5)

    @settings(max_examples=80, deadline=None)
    @given(st.floats(min_value=0.0, max_value=0.999), st.floats(min_value=0.05, max_value=20.0))
    def test_round_trip(self, z, r_c):
        s = 1.0 / r_c
        assert conformal_map(inverse_map(z, s), s) == pytest.approx(z, abs=1e-14)


class TestReexpansion:
    def test_single_term(self):
        B = reexpand_borel([0.0, 2.5], 1)
        assert B == [2.5]

    def test_first_slot_linear_growth(self):
        b1 = 0.7
        B = reexpand_borel([0.0, b1, 0.0, 0.0, 0.0, 0.0], 5)
        for k in range(1, 6):
            assert B[k - 1] == pytest.approx(b1 * k, rel=1e-13)

    def test_known_combinatorics(self):
        # n=2 contribution: z^2/(1-z)^4 = z^2 + 4 z^3 + ...
        B = reexpand_borel([0.0, 0.0, 1.0, 0.0], 3)
        assert B == [0.0, 1.0, 4.0]


class TestBorelSum:
    def test_geometric_closed_form(self):
        # E_j = c (-1/r)^j j! sums to -c(1 - r e^r E1(r)) under the integral;
        # exact-rational inputs keep the mapped-coefficient cancellations clean
        r, c = F(13, 10), F(4, 5)
        coeffs = [F(0)] + [c * (-1 / r) ** j * math.factorial(j) for j in range(1, 31)]
        series = PerturbationSeries(
            scheme=Scheme.MFPT, spec=None, omega=F(1), h0=F(0), sigma=F(0), K=2,
            coefficients=coeffs, exact=True)
        expect = -float(c) * (1.0 - float(r) * math.exp(r) * exp1(float(r)))
        out = borel_sum(series, alpha=1.0, r_c=float(r), N_c=28, epsilon=1e-6)
        assert out.delta_E == pytest.approx(expect, abs=1e-8)

    def test_qaho_benchmark_row(self):
        s = mfpt_series(OscillatorSpec(OscKind.QAHO, Fraction(1)), 9)
        out = borel_sum(s, alpha=1.0, r_c=2.667, N_c=7)
        assert out.delta_E == pytest.approx(-0.00869, abs=2e-5)
        assert out.E_tot == pytest.approx(0.80381, abs=1e-4)

    def test_nc_stability(self):
        s = mfpt_series(OscillatorSpec(OscKind.QAHO, Fraction(1)), 14)
        a = borel_sum(s, 1.0, 2.667, 7).E_tot
        b = borel_sum(s, 1.0, 2.667, 12).E_tot
        assert abs(a - b) < 1e-4

    def test_epsilon_robustness(self):
        s = mfpt_series(OscillatorSpec(OscKind.QAHO, Fraction(1)), 9)
        a = borel_sum(s, 1.0, 2.667, 7, epsilon=1e-3).E_tot
        b = borel_sum(s, 1.0, 2.667, 7, epsilon=5e-4).E_tot
        assert abs(a - b) < 1e-4

    def test_auto_radius(self):
        s = mfpt_series(OscillatorSpec(OscKind.QAHO, Fraction(1)), 46)
        out = borel_sum_auto(s, alpha=1.0, N_c=7)
        assert out.E_tot == pytest.approx(0.80381, abs=5e-4)
        assert out.p_exp == pytest.approx(-0.5, abs=0.05)

    def test_invalid_inputs(self):
        s = mfpt_series(OscillatorSpec(OscKind.QAHO, Fraction(1)), 8)
        with pytest.raises(DomainError):
            borel_sum(s, 1.0, -1.0, 6)
        with pytest.raises(DomainError):
            borel_sum(s, 1.0, 2.667, 6, epsilon=0.7)


def test_borel_coefficients_decay():
    s = mfpt_series(OscillatorSpec(OscKind.QAHO, Fraction(1)), 30)
    b = borel_coefficients(s, 1.0)
    assert abs(b[28]) < abs(b[10]) < abs(b[3])
    assert abs(b[28]) < 1e-10


def test_epsilon_robustness_all_benchmark_rows():
    """Halving the upper-limit cutoff moves every benchmark total by < 1e-4."""
    from ngas.model_core import OscillatorSpec
    from ngas.tables import BOREL_INPUTS

    for (kind, g), (alpha, r_c, n_c) in BOREL_INPUTS.items():
        series = mfpt_series(OscillatorSpec(kind, g), n_c + 2)
        a = borel_sum(series, alpha, r_c, n_c, epsilon=1e-3).E_tot
        b = borel_sum(series, alpha, r_c, n_c, epsilon=5e-4).E_tot
        assert abs(a - b) < 1e-4, (kind, g)
