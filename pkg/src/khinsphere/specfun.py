"""Scalar special functions: gamma family, normalized Bessel functions, Gauss 2F1.

Everything here is pure and array-capable (numpy broadcasting); scalar inputs
give scalar outputs. The normalized Bessel function ``jj(nu, t)`` is
2^nu Gamma(nu+1) t^(-nu) J_nu(t), the characteristic function of a vector
uniform on the unit sphere S^(d-1) at radius t, with nu = d/2 - 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DivergenceError, DomainError, PoleError

__all__ = [
    "SeriesConfig",
    "gamma",
    "log_gamma",
    "digamma",
    "trigamma",
    "pochhammer",
    "jj",
    "jj1",
    "jj1_prime",
    "hyp2f1",
    "jnu_zeros",
    "BESSEL_CROSSOVER",
]

# Crossover between the power series (below) and the large-argument Bessel
# routine (above) for jj1; the series loses ~3 digits to cancellation here
# while the asymptotic branch is already at machine precision.
BESSEL_CROSSOVER = 12.0


@dataclass(frozen=True)
class SeriesConfig:
    """Termination policy for the power series evaluations."""

    rel_tol: float = 1e-14
    max_terms: int = 10_000

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


_DEFAULT_SERIES = SeriesConfig()

# Lanczos approximation, g = 7, 9 terms.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _maybe_scalar(arr, scalar):
    return float(arr) if scalar else arr


def _lanczos_gamma_pos(x):
    """Gamma on x >= 0.5 via Lanczos; vectorized."""
    z = x - 1.0
    acc = np.full_like(z, _LANCZOS[0])
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc = acc + c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * np.exp(-t) * acc


def gamma(x):
    """Gamma function on the real line (poles at nonpositive integers)."""
    arr, scalar = _as_array(x)
    if np.any((arr <= 0) & (arr == np.floor(arr))):
        raise PoleError(f"gamma pole at nonpositive integer in {x!r}")
    out = np.empty_like(arr)
    small = arr < 0.5
    if np.any(~small):
        out[~small] = _lanczos_gamma_pos(arr[~small])
    if np.any(small):
        xs = arr[small]
        # reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
        out[small] = math.pi / (np.sin(math.pi * xs) * _lanczos_gamma_pos(1.0 - xs))
    return _maybe_scalar(out, scalar)


def log_gamma(x):
    """log Gamma(x) for x > 0, stable for large x."""
    arr, scalar = _as_array(x)
    if np.any(arr <= 0):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    out = np.empty_like(arr)
    small = arr < 0.5
    if np.any(small):
        out[small] = np.log(_lanczos_gamma_pos(1.0 - arr[small]) * np.sin(math.pi * arr[small]) / math.pi) * -1.0
    big = ~small
    if np.any(big):
        z = arr[big] - 1.0
        acc = np.full_like(z, _LANCZOS[0])
        for i, c in enumerate(_LANCZOS[1:], start=1):
            acc = acc + c / (z + i)
        t = z + _LANCZOS_G + 0.5
        out[big] = 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * np.log(t) - t + np.log(acc)
    return _maybe_scalar(out, scalar)


# Bernoulli numbers B_2 .. B_14 for the psi asymptotic series.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


def digamma(x):
    """psi(x) = (log Gamma)'(x) for x > 0."""
    arr, scalar = _as_array(x)
    if np.any(arr <= 0):
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    arr = arr.copy()
    out = np.zeros_like(arr)
    # shift up to >= 8 where the asymptotic series has ~1e-16 error
    while True:
        small = arr < 8.0
        if not np.any(small):
            break
        out[small] -= 1.0 / arr[small]
        arr[small] += 1.0
    # sum B_{2n}/(2n x^{2n}) by Horner in 1/x^2
    inv2 = 1.0 / (arr * arr)
    acc = np.zeros_like(arr)
    for n in range(len(_BERNOULLI), 0, -1):
        acc = acc * inv2 + _BERNOULLI[n - 1] / (2.0 * n)
    acc *= inv2
    out += np.log(arr) - 0.5 / arr - acc
    return _maybe_scalar(out, scalar)


def trigamma(x):
    """psi'(x) for x > 0."""
    arr, scalar = _as_array(x)
    if np.any(arr <= 0):
        raise DomainError(f"trigamma requires x > 0, got {x!r}")
    arr = arr.copy()
    out = np.zeros_like(arr)
    while True:
        small = arr < 8.0
        if not np.any(small):
            break
        out[small] += 1.0 / (arr[small] * arr[small])
        arr[small] += 1.0
    inv2 = 1.0 / (arr * arr)
    acc = np.zeros_like(arr)
    for n in range(len(_BERNOULLI), 0, -1):
        acc = acc * inv2 + _BERNOULLI[n - 1]
    acc *= inv2 / arr
    out += 1.0 / arr + 0.5 * inv2 + acc
    return _maybe_scalar(out, scalar)


def pochhammer(x, k: int):
    """Rising factorial (x)_k = x (x+1) ... (x+k-1), with (x)_0 = 1."""
    if k < 0 or k != int(k):
        raise DomainError(f"pochhammer requires integer k >= 0, got {k!r}")
    arr, scalar = _as_array(x)
    out = np.ones_like(arr)
    for j in range(int(k)):
        out = out * (arr + j)
    return _maybe_scalar(out, scalar)


# ----------------------------------------------------------------------------
# Bessel J0 / J1: Cephes-style rational approximations (large-argument branch
# is the standard Hankel P/Q form with degree 6/6 and 7/7 rationals).
# ----------------------------------------------------------------------------

_SQ2OPI = 7.9788456080286535587989e-1
_PIO4 = 7.85398163397448309616e-1
_THPIO4 = 2.35619449019234492885

_PP0 = (7.96936729297347051624e-4, 8.28352392107440799803e-2, 1.23953371646414299388e0,
        5.44725003058768775090e0, 8.74716500199817011941e0, 5.30324038235394892183e0,
        9.99999999999999997821e-1)
_PQ0 = (9.24408810558863637013e-4, 8.56288474354474431428e-2, 1.25352743901058953537e0,
        5.47097740330417105182e0, 8.76190883237069594232e0, 5.30605288235394617618e0,
        1.00000000000000000218e0)
_QP0 = (-1.13663838898469149931e-2, -1.28252718670509318512e0, -1.95539544257735972385e1,
        -9.32060152123768231369e1, -1.77681167980488050595e2, -1.47077505154951170175e2,
        -5.14105326766599330220e1, -6.05014350600728481186e0)
_QQ0 = (6.43178256118178023184e1, 8.56430025976980587198e2, 3.88240183605401609683e3,
        7.24046774195652478189e3, 5.93072701187316984827e3, 2.06209331660327847417e3,
        2.42005740240291393179e2)
_RP0 = (-4.79443220978201773821e9, 1.95617491946556577543e12, -2.49248344360967716204e14,
        9.70862251047306323952e15)
_RQ0 = (4.99563147152651017219e2, 1.73785401676374683123e5, 4.84409658339962045305e7,
        1.11855537045356834862e10, 2.11277520115489217587e12, 3.10518229857422583814e14,
        3.18121955943204943306e16, 1.71086294081043136091e18)
_DR1 = 5.78318596294678452118e0
_DR2 = 3.04712623436620863991e1

_RP1 = (-8.99971225705559398224e8, 4.52228297998194034323e11, -7.27494245221818276015e13,
        3.68295732863852883286e15)
_RQ1 = (6.20836478118054335476e2, 2.56987256757748830383e5, 8.35146791431949253037e7,
        2.21511595479792499675e10, 4.74914122079991414898e12, 7.84369607876235854894e14,
        8.95222336184627338078e16, 5.32278620332680085395e18)
_PP1 = (7.62125616208173112003e-4, 7.31397056940917570436e-2, 1.12719608129684925192e0,
        5.11207951146807644818e0, 8.42404590141772420927e0, 5.21451598682361504063e0,
        1.00000000000000000254e0)
_PQ1 = (5.71323128072548699714e-4, 6.88455908754495404082e-2, 1.10514232634061696926e0,
        5.07386386128601488557e0, 8.39985554327604159757e0, 5.20982848682361821619e0,
        9.99999999999999997461e-1)
_QP1 = (5.10862594750176621635e-2, 4.98213872951233449420e0, 7.58238284132545283818e1,
        3.66779609360150777800e2, 7.10856304998926107277e2, 5.97489612400613639965e2,
        2.11688757100572135698e2, 2.52070205858023719784e1)
_QQ1 = (7.42373277035675149943e1, 1.05644886038262816351e3, 4.98641058337653607651e3,
        9.56231892404756170795e3, 7.99704160447350683650e3, 2.82619278517639096600e3,
        3.36093607810698293419e2)
_Z1 = 1.46819706421238932572e1
_Z2 = 4.92184563216946036703e1


def _polevl(x, coef):
    acc = np.full_like(x, coef[0])
    for c in coef[1:]:
        acc = acc * x + c
    return acc


def _p1evl(x, coef):
    acc = x + coef[0]
    for c in coef[1:]:
        acc = acc * x + c
    return acc


def _bessel_j0(t):
    """J0(t) for t >= 0, array input."""
    out = np.empty_like(t)
    lo = t <= 5.0
    if np.any(lo):
        z = t[lo] * t[lo]
        out[lo] = (z - _DR1) * (z - _DR2) * _polevl(z, _RP0) / _p1evl(z, _RQ0)
    hi = ~lo
    if np.any(hi):
        x = t[hi]
        w = 5.0 / x
        q = 25.0 / (x * x)
        p = _polevl(q, _PP0) / _polevl(q, _PQ0)
        qq = _polevl(q, _QP0) / _p1evl(q, _QQ0)
        xn = x - _PIO4
        out[hi] = _SQ2OPI * (p * np.cos(xn) - w * qq * np.sin(xn)) / np.sqrt(x)
    return out


def _bessel_j1(t):
    """J1(t) for t >= 0, array input."""
    out = np.empty_like(t)
    lo = t <= 5.0
    if np.any(lo):
        x = t[lo]
        z = x * x
        out[lo] = _polevl(z, _RP1) / _p1evl(z, _RQ1) * x * (z - _Z1) * (z - _Z2)
    hi = ~lo
    if np.any(hi):
        x = t[hi]
        w = 5.0 / x
        z = w * w
        p = _polevl(z, _PP1) / _polevl(z, _PQ1)
        q = _polevl(z, _QP1) / _p1evl(z, _QQ1)
        xn = x - _THPIO4
        out[hi] = _SQ2OPI * (p * np.cos(xn) - w * q * np.sin(xn)) / np.sqrt(x)
    return out


def _bessel_j_order(nu: float, t):
    """J_nu(t) for t >= ~8 via forward recurrence; nu a multiple of 1/2."""
    if nu == 1.0:
        return _bessel_j1(t)
    if nu == 0.0:
        return _bessel_j0(t)
    if nu == int(nu):
        jm, jp = _bessel_j0(t), _bessel_j1(t)
        k = 1.0
    else:
        # J_{-1/2}, J_{1/2}
        amp = np.sqrt(2.0 / (math.pi * t))
        jm, jp = amp * np.cos(t), amp * np.sin(t)
        k = 0.5
    while k < nu:
        jm, jp = jp, (2.0 * k / t) * jp - jm
        k += 1.0
    return jp


@lru_cache(maxsize=64)
def _jj_series_coeffs(nu: float, n_terms: int = 48) -> tuple:
    """Coefficients c_k of jj_nu(t) = sum c_k t^(2k)."""
    cs = [1.0]
    for k in range(1, n_terms):
        cs.append(-cs[-1] / (4.0 * k * (nu + k)))
    return tuple(cs)


def _crossover(nu: float) -> float:
    return BESSEL_CROSSOVER if nu == 1.0 else 10.0


def _jj_vec(nu: float, t):
    """Vectorized jj_nu on t >= 0 (fixed-length series below the crossover)."""
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    cross = _crossover(nu)
    lo = t < cross
    if np.any(lo):
        x = t[lo] * t[lo]
        cs = _jj_series_coeffs(nu)
        acc = np.full_like(x, cs[-1])
        for c in reversed(cs[:-1]):
            acc = acc * x + c
        out[lo] = acc
    hi = ~lo
    if np.any(hi):
        th = t[hi]
        jn = _bessel_j_order(nu, th)
        out[hi] = _jj_norm_const(nu) * th ** (-nu) * jn
    return out


@lru_cache(maxsize=32)
def _jj_norm_const(nu: float) -> float:
    return float(2.0**nu * gamma(nu + 1.0))


def jj1(t):
    """jj_1(t) = 2 J1(t)/t, the d=4 characteristic function; array-capable."""
    arr, scalar = _as_array(t)
    if np.any(arr < 0):
        raise DomainError("jj1 requires t >= 0")
    return _maybe_scalar(_jj_vec(1.0, arr), scalar)


def jj1_prime(t):
    """d/dt jj_1(t) = 2 J0(t)/t - 4 J1(t)/t^2 (equals -2 J2(t)/t)."""
    arr, scalar = _as_array(t)
    if np.any(arr < 0):
        raise DomainError("jj1_prime requires t >= 0")
    out = np.empty_like(arr)
    lo = arr < 1.0
    if np.any(lo):
        # series: sum_{k>=1} c_k 2k t^(2k-1), c_k from jj1
        x = arr[lo] * arr[lo]
        cs = _jj_series_coeffs(1.0)
        acc = np.zeros_like(x)
        for k in range(len(cs) - 1, 0, -1):
            acc = acc * x + 2.0 * k * cs[k]
        out[lo] = acc * arr[lo]
    hi = ~lo
    if np.any(hi):
        th = arr[hi]
        out[hi] = 2.0 * _bessel_j0(th) / th - 4.0 * _bessel_j1(th) / (th * th)
    return _maybe_scalar(out, scalar)


def jj(nu: float, t, cfg: SeriesConfig = _DEFAULT_SERIES):
    """Normalized Bessel jj_nu(t) = 2^nu Gamma(nu+1) t^(-nu) J_nu(t).

    The power series is used for small t and a standard large-argument
    J_nu evaluation beyond the crossover (12 for nu=1, 10 otherwise).
    Orders are the sphere family nu = d/2 - 1, i.e. multiples of 1/2.
    """
    if nu < 0:
        raise DomainError(f"jj requires nu >= 0, got {nu}")
    if 2.0 * nu != round(2.0 * nu):
        raise DomainError(f"jj supports half-integer orders only, got nu={nu}")
    arr, scalar = _as_array(t)
    if np.any(arr < 0):
        raise DomainError("jj requires t >= 0")
    if scalar:
        tt = float(arr)
        if tt >= _crossover(nu):
            return float(2.0**nu * gamma(nu + 1.0) * tt ** (-nu)
                         * _bessel_j_order(nu, np.asarray([tt]))[0])
        return _jj_series_scalar(nu, tt, cfg)
    return _jj_vec(nu, arr)


def _jj_series_scalar(nu: float, t: float, cfg: SeriesConfig) -> float:
    x = t * t
    term = 1.0
    total = 1.0
    prev = math.inf
    peak = 1.0
    for k in range(1, cfg.max_terms + 1):
        term *= -x / (4.0 * k * (nu + k))
        total += term
        peak = max(peak, abs(term))
        if abs(term) < prev and abs(term) <= cfg.rel_tol * max(abs(total), 1e-14 * peak):
            return total
        prev = abs(term)
    raise ConvergenceError(f"jj series did not converge for nu={nu}, t={t}")


def hyp2f1(a: float, b: float, c: float, t: float, cfg: SeriesConfig = _DEFAULT_SERIES) -> float:
    """Gauss hypergeometric 2F1(a,b;c;t) on 0 <= t <= 1 by power series.

    At t=1 the Gauss summation Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))
    is returned, which requires c-a-b > 0.
    """
    if c <= 0 and c == round(c):
        raise PoleError(f"hyp2f1 parameter pole: c={c}")
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"hyp2f1 implemented for t in [0,1], got {t}")
    if t == 1.0:
        if c - a - b <= 0:
            raise DivergenceError(f"hyp2f1 diverges at t=1 when c-a-b={c - a - b} <= 0")
        return gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b))
    term = 1.0
    total = 1.0
    prev = math.inf
    for k in range(cfg.max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * t
        if term == 0.0:
            return total
        total += term
        if abs(term) < prev and abs(term) <= cfg.rel_tol * max(abs(total), 1e-30):
            return total
        prev = abs(term)
    raise ConvergenceError(f"hyp2f1 series did not converge: a={a}, b={b}, c={c}, t={t}")


def jnu_zeros(nu: float, t_max: float) -> np.ndarray:
    """Positive zeros of J_nu (equivalently of jj_nu) up to t_max, ascending."""
    return np.asarray(_jnu_zeros_cached(float(nu), math.ceil(t_max)))


@lru_cache(maxsize=32)
def _jnu_zeros_cached(nu: float, t_cap: int) -> tuple:
    step = 0.25
    grid = np.arange(step, t_cap + step, step)
    vals = _jj_vec(nu, grid)
    zeros = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            zeros.append(grid[i])
            continue
        if np.sign(vals[i]) * np.sign(vals[i + 1]) < 0:
            a, b = grid[i], grid[i + 1]
            fa = float(_jj_vec(nu, np.asarray([a]))[0])
            for _ in range(80):
                m = 0.5 * (a + b)
                fm = float(_jj_vec(nu, np.asarray([m]))[0])
                if fm == 0.0:
                    a = b = m
                    break
                if np.sign(fm) == np.sign(fa):
                    a, fa = m, fm
                else:
                    b = m
            zeros.append(0.5 * (a + b))
    return tuple(z for z in zeros if z <= t_cap)
