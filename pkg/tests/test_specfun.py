import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khinsphere.errors import ConvergenceError, DivergenceError, DomainError, PoleError
from khinsphere.specfun import (
    BESSEL_CROSSOVER,
    SeriesConfig,
    digamma,
    gamma,
    hyp2f1,
    jj,
    jj1,
    jj1_prime,
    jnu_zeros,
    log_gamma,
    pochhammer,
    trigamma,
)

EULER_GAMMA = 0.5772156649015329

# minimum of Gamma on (0, inf), to 19 digits
GAMMA_MIN_X = 1.46163214496836226
GAMMA_MIN_VALUE = 0.885603194410888689


class TestGamma:
    def test_half_integer(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), abs=1e-14)

    def test_minimum(self):
        assert abs(gamma(GAMMA_MIN_X) - GAMMA_MIN_VALUE) < 1e-12

    def test_factorial(self):
        assert gamma(3.0) == pytest.approx(2.0, abs=1e-14)
        assert gamma(6.0) == pytest.approx(120.0, rel=1e-14)

    def test_pole(self):
        for x in (0.0, -1.0, -7.0):
            with pytest.raises(PoleError):
                gamma(x)

    def test_negative_argument(self):
        # Gamma(-0.5) = -2 sqrt(pi)
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)

    @given(st.floats(min_value=0.1, max_value=30.0))
    @settings(max_examples=60, deadline=None)
    def test_recurrence(self, x):
        assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)

    def test_vectorized(self):
        xs = np.array([0.5, 1.0, 3.0])
        np.testing.assert_allclose(gamma(xs), [math.sqrt(math.pi), 1.0, 2.0], rtol=1e-13)


class TestLogGamma:
    def test_values(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
        assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-14)
        assert log_gamma(0.5) == pytest.approx(0.5723649429247001, abs=1e-13)

    def test_matches_gamma(self):
        for x in np.geomspace(0.05, 100.0, 50):
            assert math.exp(log_gamma(x)) == pytest.approx(gamma(x), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            log_gamma(0.0)
        with pytest.raises(DomainError):
            log_gamma(-1.5)


class TestDigamma:
    def test_euler(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-12)
        assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, abs=1e-12)

    def test_at_10_series_oracle(self):
        # psi(10) = -gamma + sum_{k=1}^{9} 1/k, summed directly
        oracle = -EULER_GAMMA + sum(1.0 / k for k in range(1, 10))
        assert digamma(10.0) == pytest.approx(oracle, abs=1e-12)
        assert digamma(10.0) <= math.log(10.0) - 1.0 / 20.0

    def test_recurrence_grid(self):
        xs = np.geomspace(0.1, 100.0, 60)
        np.testing.assert_allclose(digamma(xs + 1.0) - digamma(xs), 1.0 / xs,
                                   rtol=0, atol=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            digamma(-0.3)


class TestTrigamma:
    def test_basel(self):
        assert trigamma(1.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-12)

    def test_recurrence(self):
        for x in (0.3, 1.7, 9.5):
            assert trigamma(x) - trigamma(x + 1.0) == pytest.approx(1.0 / x**2, rel=1e-10)


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(2.5, 0) == 1.0
        assert pochhammer(1.0, 5) == 120.0
        assert pochhammer(0.5, 2) == 0.75

    def test_negative_k(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, -1)

    @pytest.mark.parametrize("p", [0.3, 1.0, 2.7])
    def test_duplication(self, p):
        # (p/2)_{2k} 2^{-2k} = (p/4)_k ((p+2)/4)_k
        for k in range(21):
            lhs = pochhammer(p / 2.0, 2 * k) * 2.0 ** (-2 * k)
            rhs = pochhammer(p / 4.0, k) * pochhammer((p + 2.0) / 4.0, k)
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestJJ:
    def test_at_zero(self):
        assert jj(1.0, 0.0) == 1.0

    def test_half_integer_closed_form(self):
        # jj_{1/2}(t) = sin t / t
        assert abs(jj(0.5, math.pi)) < 1e-13
        for t in (0.3, 2.0, 7.7, 30.0):
            assert jj(0.5, t) == pytest.approx(math.sin(t) / t, abs=1e-13)

    def test_first_zero_of_j1(self):
        # locate the first zero by bisection of the series-evaluated jj_1
        a, b = 3.5, 4.0
        fa = jj(1.0, a)
        for _ in range(60):
            m = 0.5 * (a + b)
            if (jj(1.0, m) > 0) == (fa > 0):
                a = m
            else:
                b = m
        root = 0.5 * (a + b)
        assert abs(jj(1.0, 3.8317059702)) < 1e-9
        assert root == pytest.approx(3.8317059702075123, abs=1e-19 + 1e-12)

    def test_zeros_table(self):
        zs = jnu_zeros(1.0, 50.0)
        assert zs[0] == pytest.approx(3.8317059702075123, abs=1e-11)
        assert zs[1] == pytest.approx(7.015586669815619, abs=1e-10)
        # spacing approaches pi
        assert np.all(np.abs(np.diff(zs)[5:] - math.pi) < 0.05)

    def test_bounded_by_one(self):
        t = np.linspace(0.0, 100.0, 20001)
        assert np.max(np.abs(jj1(t))) <= 1.0 + 1e-15

    def test_envelope_exponential(self):
        # |jj_1(t)| <= exp(-t^2/8 - t^4/384) on [0, 4]
        t = np.linspace(0.0, 4.0, 10000)
        margin = np.exp(-t**2 / 8.0 - t**4 / 384.0) - np.abs(jj1(t))
        assert np.min(margin) >= 0.0

    def test_envelope_watson(self):
        # |jj_1(t)| <= sqrt(8/pi) t^-1 (t^2-1)^(-1/4) on t >= 1
        t = np.linspace(1.01, 100.0, 5000)
        bound = math.sqrt(8.0 / math.pi) / t * (t * t - 1.0) ** -0.25
        assert np.min(bound - np.abs(jj1(t))) >= 0.0

    def test_crossover_continuity(self):
        eps = 1e-9
        lo = jj1(BESSEL_CROSSOVER - eps)
        hi = jj1(BESSEL_CROSSOVER + eps)
        assert abs(lo - hi) < 1e-10

    def test_series_vs_large_branch(self):
        # the two evaluation routes agree where both are valid
        from khinsphere.specfun import _bessel_j1
        t = np.linspace(6.0, 11.9, 200)
        series = jj1(t)
        cephes = 2.0 * _bessel_j1(t) / t
        np.testing.assert_allclose(series, cephes, rtol=0, atol=5e-13)

    def test_integer_orders_recurrence_consistency(self):
        # 2nu/t jj-based recurrence: J_{nu+1} = 2nu/t J_nu - J_{nu-1},
        # rewritten for jj via jj_nu = 2^nu Gamma(nu+1) t^-nu J_nu
        t = 15.0
        for nu in (1.0, 2.0, 3.0):
            jnum1 = jj(nu - 1.0, t) / (2.0 ** (nu - 1) * gamma(nu) * t ** -(nu - 1))
            jnu = jj(nu, t) / (2.0**nu * gamma(nu + 1) * t**-nu)
            jnup1 = jj(nu + 1.0, t) / (2.0 ** (nu + 1) * gamma(nu + 2) * t ** -(nu + 1))
            assert jnup1 == pytest.approx(2.0 * nu / t * jnu - jnum1, abs=1e-13)

    def test_convergence_error(self):
        with pytest.raises(ConvergenceError):
            jj(1.0, 11.5, SeriesConfig(rel_tol=1e-14, max_terms=3))

    def test_domain(self):
        with pytest.raises(DomainError):
            jj(1.0, -1.0)
        with pytest.raises(DomainError):
            jj(-1.0, 1.0)

    def test_prime(self):
        # central difference cross-check of jj_1'
        for t in (0.5, 2.0, 8.0, 20.0):
            h = 1e-6
            fd = (jj1(t + h) - jj1(t - h)) / (2.0 * h)
            assert jj1_prime(t) == pytest.approx(fd, abs=5e-9)


class TestJJOrderZero:
    def test_matches_j0(self):
        # jj_0 = J0; first zero of J0
        assert abs(jj(0.0, 2.404825557695773)) < 1e-10
        assert jj(0.0, 0.0) == 1.0
        # large-argument branch spot value: J0(30) via the recurrence-free path
        assert jj(0.0, 30.0) == pytest.approx(-0.08636798358104556, abs=1e-12)


class TestPochhammerSplit:
    @given(st.floats(min_value=0.1, max_value=5.0), st.integers(min_value=0, max_value=8),
           st.integers(min_value=0, max_value=8))
    @settings(max_examples=40, deadline=None)
    def test_split_identity(self, x, k, m):
        # (x)_{k+m} = (x)_k (x+k)_m
        lhs = pochhammer(x, k + m)
        rhs = pochhammer(x, k) * pochhammer(x + k, m)
        assert lhs == pytest.approx(rhs, rel=1e-12)


class TestHyp2f1:
    def test_at_zero(self):
        assert hyp2f1(0.3, -0.7, 2.0, 0.0) == 1.0

    def test_log_closed_form(self):
        # 2F1(1,1;2;t) = -log(1-t)/t
        assert hyp2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(2.0 * math.log(2.0), abs=1e-10)

    def test_gauss_summation_d4_p1(self):
        # Gamma(2)Gamma(2)/(Gamma(1.5)Gamma(2.5)) = 8/(3 pi)
        val = hyp2f1(0.5, -0.5, 2.0, 1.0)
        expected = gamma(2.0) * gamma(2.0) / (gamma(1.5) * gamma(2.5))
        assert val == pytest.approx(expected, rel=1e-13)
        assert val == pytest.approx(8.0 / (3.0 * math.pi), rel=1e-13)

    def test_parameter_pole(self):
        with pytest.raises(PoleError):
            hyp2f1(0.5, 0.5, -1.0, 0.3)

    def test_divergence_at_one(self):
        with pytest.raises(DivergenceError):
            hyp2f1(1.5, 1.0, 2.0, 1.0)  # c - a - b = -0.5

    def test_domain(self):
        with pytest.raises(DomainError):
            hyp2f1(0.5, 0.5, 2.0, 1.5)

    @pytest.mark.parametrize("p,direction", [(0.5, -1), (1.5, -1), (2.3, 1), (2.8, 1)])
    def test_monotone_in_t(self, p, direction):
        # d=4 series coefficients share a sign: decreasing for p in (0,2),
        # increasing for p in (2,3)
        ts = np.linspace(0.01, 0.95, 40)
        vals = [hyp2f1(p / 2.0, (p - 2.0) / 2.0, 2.0, float(t)) for t in ts]
        diffs = np.diff(vals) * direction
        assert np.all(diffs > 0)

    @given(st.floats(min_value=0.1, max_value=2.9), st.floats(min_value=0.0, max_value=0.8))
    @settings(max_examples=40, deadline=None)
    def test_kummer_quadratic_transform(self, p, t):
        # (1+t)^(-p/2) 2F1(p/4,(p+2)/4; 2; 4t/(1+t)^2) = 2F1(p/2,(p-2)/2; 2; t)
        lhs = (1.0 + t) ** (-p / 2.0) * hyp2f1(p / 4.0, (p + 2.0) / 4.0, 2.0, 4.0 * t / (1.0 + t) ** 2)
        rhs = hyp2f1(p / 2.0, (p - 2.0) / 2.0, 2.0, t)
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


class TestSeriesConfig:
    def test_validation(self):
        with pytest.raises(DomainError):
            SeriesConfig(rel_tol=0.0)
        with pytest.raises(DomainError):
            SeriesConfig(max_terms=0)
