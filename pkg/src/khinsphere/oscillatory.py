"""Asymptotic tail integration for oscillatory Bessel-type integrands.

The integrals here all have the shape  int_T^inf  A(t) t^mu e^(i omega t) dt
with A a truncated power series in 1/t coming from the large-argument
(Hankel) expansion of J_nu.  Two consumers:

* ``tail_abs_pow``:  int_T^inf |jj_1(t)|^s t^(p-1) dt, via the Fourier
  expansion of |cos theta|^s (needed because truncating at any feasible T
  and bounding the remainder fails when p is close to 3s/2).
* ``tail_product``:  int_T^inf prod_k jj_nu(a_k t) t^(p-1) dt, via the
  sign-vector expansion of a product of cosines; resonant sign patterns
  (sum of +-a_k near zero) produce the slowly decaying non-oscillatory part.

Series are represented as 1-d float/complex arrays c with c[j] the
coefficient of t^(-j), truncated at ORDER.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .specfun import gamma, log_gamma

ORDER = 8  # highest power of 1/t kept in the asymptotic series

_IBP_MIN_PHASE = 40.0  # use integration by parts when |omega| T exceeds this


# ----------------------------------------------------------------------------
# truncated power-series helpers (index = power of 1/t)
# ----------------------------------------------------------------------------

def series_mul(a: np.ndarray, b: np.ndarray, order: int = ORDER) -> np.ndarray:
    out = np.zeros(order + 1, dtype=np.result_type(a, b))
    for i in range(min(len(a), order + 1)):
        if a[i] == 0:
            continue
        hi = min(len(b), order + 1 - i)
        out[i:i + hi] += a[i] * b[:hi]
    return out


def series_inv(a: np.ndarray, order: int = ORDER) -> np.ndarray:
    if a[0] == 0:
        raise DomainError("series_inv needs a nonzero constant term")
    out = np.zeros(order + 1, dtype=a.dtype)
    out[0] = 1.0 / a[0]
    for k in range(1, order + 1):
        acc = 0.0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += a[j] * out[k - j]
        out[k] = -acc / a[0]
    return out


def series_pow(a: np.ndarray, exponent: float, order: int = ORDER) -> np.ndarray:
    """(series with a[0] = 1) ** exponent."""
    out = np.zeros(order + 1, dtype=a.dtype)
    out[0] = 1.0
    for k in range(1, order + 1):
        acc = 0.0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += (exponent * j - (k - j)) * a[j] * out[k - j]
        out[k] = acc / k
    return out


def _series_map(fn_coeffs, eps: np.ndarray, order: int = ORDER) -> np.ndarray:
    """Compose sum_m fn_coeffs[m] * eps^m for a series eps with eps[0] = 0."""
    out = np.zeros(order + 1, dtype=eps.dtype)
    out[0] = fn_coeffs[0]
    power = np.zeros(order + 1, dtype=eps.dtype)
    power[0] = 1.0
    for m in range(1, len(fn_coeffs)):
        power = series_mul(power, eps, order)
        if not np.any(power):
            break
        out += fn_coeffs[m] * power
    return out


def series_cos(eps: np.ndarray, order: int = ORDER) -> np.ndarray:
    coeffs = [1.0, 0.0, -0.5, 0.0, 1.0 / 24, 0.0, -1.0 / 720, 0.0, 1.0 / 40320]
    return _series_map(coeffs, eps, order)


def series_sin(eps: np.ndarray, order: int = ORDER) -> np.ndarray:
    coeffs = [0.0, 1.0, 0.0, -1.0 / 6, 0.0, 1.0 / 120, 0.0, -1.0 / 5040, 0.0]
    return _series_map(coeffs, eps, order)


def series_atan(r: np.ndarray, order: int = ORDER) -> np.ndarray:
    coeffs = [0.0, 1.0, 0.0, -1.0 / 3, 0.0, 1.0 / 5, 0.0, -1.0 / 7, 0.0]
    return _series_map(coeffs, r, order)


# ----------------------------------------------------------------------------
# Hankel expansion of J_nu:
#   J_nu(t) ~ sqrt(2/(pi t)) [P(t) cos chi - Q(t) sin chi],
#   chi = t - nu pi/2 - pi/4,
#   P ~ sum (-1)^k a_{2k} t^(-2k),  Q ~ sum (-1)^k a_{2k+1} t^(-2k-1),
#   a_m(nu) = prod_{j=1..m} (4 nu^2 - (2j-1)^2) / (m! 8^m).
# ----------------------------------------------------------------------------

@lru_cache(maxsize=32)
def hankel_pq(nu: float, order: int = ORDER) -> tuple[np.ndarray, np.ndarray]:
    a = [1.0]
    for m in range(1, order + 1):
        a.append(a[-1] * (4.0 * nu * nu - (2 * m - 1) ** 2) / (8.0 * m))
    p = np.zeros(order + 1)
    q = np.zeros(order + 1)
    for m in range(order + 1):
        if m % 2 == 0:
            p[m] = (-1.0) ** (m // 2) * a[m]
        else:
            q[m] = (-1.0) ** ((m - 1) // 2) * a[m]
    return p, q


# ----------------------------------------------------------------------------
# E(mu, omega, T) = int_T^inf t^mu e^(i omega t) dt  (mu < -1 for omega = 0)
# ----------------------------------------------------------------------------

def power_tail(mu: float, T: float) -> float:
    if mu >= -1.0:
        raise DomainError(f"power tail diverges for mu={mu} >= -1")
    return -(T ** (mu + 1.0)) / (mu + 1.0)


def _exp_tail_ibp(mu: float, omega: float, T: float) -> complex:
    """IBP expansion, reliable when |omega| T is large."""
    phase = cmath.exp(1j * omega * T)
    coef = 1j * T**mu / omega
    total = 0j
    prev = math.inf
    for k in range(200):
        total += coef
        coef *= 1j * (mu - k) / omega / T
        mag = abs(coef)
        if mag < 1e-18 * max(1.0, abs(total)):
            break
        if mag > prev:  # asymptotic series turned; remainder ~ first omitted
            break
        prev = mag
    return phase * total


_GL_NODES: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _leggauss(n: int):
    if n not in _GL_NODES:
        _GL_NODES[n] = np.polynomial.legendre.leggauss(n)
    return _GL_NODES[n]


def _exp_tail_numeric(mu: float, omega: float, T: float) -> complex:
    """Quadrature on [T, L] with omega L ~ large, then IBP beyond L."""
    w = abs(omega)
    L = _IBP_MIN_PHASE / w
    edges = [T]
    t = T
    while t < L:
        t = min(t * 1.30, t + math.pi / (2.0 * w), L)
        edges.append(t)
    edges = np.asarray(edges)
    x, wts = _leggauss(24)
    a, b = edges[:-1], edges[1:]
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    nodes = mid + half * x[None, :]
    vals = nodes**mu * np.exp(1j * omega * nodes)
    main = np.sum((vals * wts[None, :]) * half)
    tail = _exp_tail_ibp(mu, omega, L)
    return complex(main + tail)


def exp_power_tail(mu: float, omega: float, T: float) -> complex:
    """int_T^inf t^mu e^(i omega t) dt; needs mu < -1 when omega ~ 0."""
    if abs(omega) < 1e-13:
        return complex(power_tail(mu, T))
    if omega < 0:
        return exp_power_tail(mu, -omega, T).conjugate()
    if omega * T >= _IBP_MIN_PHASE:
        return _exp_tail_ibp(mu, omega, T)
    return _exp_tail_numeric(mu, omega, T)


# ----------------------------------------------------------------------------
# Fourier coefficients of |cos(theta)|^s = sum_m c_m(s) cos(2 m theta)
# ----------------------------------------------------------------------------

def abs_cos_fourier(s: float, m: int) -> float:
    if m == 0:
        return float(gamma(s + 1.0) / (2.0**s * gamma(s / 2.0 + 1.0) ** 2))
    arg = 1.0 + s / 2.0 - m
    if arg <= 0 and abs(arg - round(arg)) < 1e-12:
        return 0.0  # Gamma pole in the denominator: coefficient vanishes
    if arg > 0:
        return float(gamma(s + 1.0)
                     / (2.0 ** (s - 1.0) * gamma(1.0 + s / 2.0 + m) * gamma(arg)))
    # arg < 0: reflect 1/Gamma(arg) = sin(pi arg) Gamma(1-arg) / pi and work in
    # logs so that large m does not overflow the intermediate Gammas
    ln = (log_gamma(s + 1.0) + log_gamma(1.0 - arg) - log_gamma(1.0 + s / 2.0 + m)
          - (s - 1.0) * math.log(2.0) - math.log(math.pi))
    return float(math.sin(math.pi * arg) * math.exp(ln))


# ----------------------------------------------------------------------------
# tails
# ----------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _abs_pow_setup(s: float) -> tuple:
    """The s-dependent (p-independent) pieces of the |jj_1|^s tail."""
    pser, qser = hankel_pq(1.0)
    m2 = series_mul(pser, pser) + series_mul(qser, qser)
    ms = series_pow(m2, s / 2.0)
    phi = series_atan(series_mul(qser, series_inv(pser)))
    terms = []
    for m in range(1, 81):
        cm = abs_cos_fourier(s, m)
        if cm == 0.0:
            if s / 2.0 == round(s / 2.0) and m > s / 2.0:
                break  # even s: the Fourier series is a finite sum
            continue
        eps = 2.0 * m * phi
        ca = series_mul(ms, series_cos(eps))
        cb = series_mul(ms, series_sin(eps))
        beta = cmath.exp(-1j * 1.5 * m * math.pi)
        terms.append((m, cm, (ca + 1j * cb) * beta))
    return ms, tuple(terms)


def tail_abs_pow(p: float, s: float, T: float, tol: float = 1e-12) -> float:
    """int_T^inf |jj_1(t)|^s t^(p-1) dt via the Watson expansion of J_1.

    Writes jj_1 = sqrt(8/pi) t^(-3/2) M(t) cos(chi + phi(t)) with M, phi
    given by the Hankel P/Q series, then integrates the Fourier series of
    |cos|^s term by term (the m=0 term is exactly the slow non-oscillatory
    part that makes naive truncation infeasible for p near 3s/2).
    """
    if p >= 1.5 * s:
        raise DomainError(f"tail diverges: p={p} >= 3s/2={1.5 * s}")
    mu = p - 1.0 - 1.5 * s
    pref = (8.0 / math.pi) ** (s / 2.0)
    ms, terms = _abs_pow_setup(s)
    total = pref * abs_cos_fourier(s, 0) * sum(
        ms[j] * power_tail(mu - j, T) for j in range(ORDER + 1) if ms[j] != 0.0
    )
    for m, cm, cab in terms:
        contrib = 0.0
        for j in range(ORDER + 1):
            if cab[j] == 0.0:
                continue
            contrib += (cab[j] * exp_power_tail(mu - j, 2.0 * m, T)).real
        total += pref * cm * contrib
        if pref * abs(cm) * T**mu / (2.0 * m) < 0.1 * tol and m >= 2:
            break
    return float(total)


def tail_product(amps, nu: float, p: float, T: float) -> float:
    """int_T^inf prod_k jj_nu(a_k t) t^(p-1) dt via sign-vector expansion.

    Each factor is Re[C_k W_k(t) t^(-nu-1/2) e^(i a_k t)]; the product over k
    expands into 2^(n-1) conjugate-paired terms with frequencies sum(+-a_k).
    """
    amps = [float(a) for a in amps]
    n = len(amps)
    mu0 = p - 1.0 - n * (nu + 0.5)
    if mu0 >= -1.0:
        raise DomainError("tail_product: integral not absolutely convergent")
    pser, qser = hankel_pq(nu)
    norm = 2.0**nu * float(gamma(nu + 1.0)) * math.sqrt(2.0 / math.pi)
    phase0 = cmath.exp(-1j * (nu * math.pi / 2.0 + math.pi / 4.0))

    consts = []
    wplus = []
    wminus = []
    for a in amps:
        consts.append(norm * a ** (-(nu + 0.5)) * phase0)
        scale = np.array([a ** (-j) for j in range(ORDER + 1)])
        w = (pser + 1j * qser) * scale
        wplus.append(w)
        wminus.append(np.conj(w))

    total = 0.0
    for bits in range(2 ** (n - 1)):
        sigma = [1] + [1 if (bits >> i) & 1 else -1 for i in range(n - 1)]
        amp = complex(1.0)
        ser = np.zeros(ORDER + 1, dtype=complex)
        ser[0] = 1.0
        omega = 0.0
        for k in range(n):
            if sigma[k] > 0:
                amp *= consts[k]
                ser = series_mul(ser, wplus[k])
            else:
                amp *= consts[k].conjugate()
                ser = series_mul(ser, wminus[k])
            omega += sigma[k] * amps[k]
        if abs(omega) < 1e-13 or abs(omega) * T >= _IBP_MIN_PHASE:
            contrib = sum(ser[j] * exp_power_tail(mu0 - j, omega, T)
                          for j in range(ORDER + 1))
        else:
            # one numeric evaluation at the top exponent, then the downward
            # recurrence E(mu-1) = (-T^mu e^(i omega T) - i omega E(mu)) / mu,
            # which is stable when |omega| < |mu|
            base = exp_power_tail(mu0, omega, T)
            contrib = ser[0] * base
            phase = cmath.exp(1j * omega * T)
            for j in range(1, ORDER + 1):
                mu_prev = mu0 - j + 1.0
                base = (-(T**mu_prev) * phase - 1j * omega * base) / mu_prev
                contrib += ser[j] * base
        total += (amp * contrib).real
    return float(total * 2.0 ** (1 - n))
