"""Closed-form sharp constants and normalizing factors for sphere-uniform sums.

Conventions: xi_k are i.i.d. uniform on S^(d-1); c_two / c_inf are the
two-equal-weights and Gaussian-limit Khinchin constants; for d=4 and
negative exponent q = -p the corresponding moment constants are C2 / C_infty.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PoleError
from .specfun import gamma, log_gamma

__all__ = [
    "MomentQuery",
    "NormalizerSet",
    "c_two",
    "c_inf",
    "C2",
    "C_infty",
    "normalizers",
    "D",
    "best_constant_status",
]

_POLE_GUARD = 1e-9


def _check_pole(x: float, what: str) -> None:
    if x < _POLE_GUARD and abs(x - round(x)) < _POLE_GUARD:
        raise PoleError(f"{what}: gamma argument {x} within {_POLE_GUARD} of a pole")


@dataclass(frozen=True)
class MomentQuery:
    """One moment E|sum a_k xi_k|^q of a weighted sum of sphere vectors."""

    d: int
    q: float
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.d < 1 or self.d != int(self.d):
            raise DomainError(f"dimension must be a positive integer, got {self.d}")
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))
        if not self.q > -(self.d - 1) and self.d > 1:
            raise DomainError(f"q={self.q} not above -(d-1)={-(self.d - 1)}")
        if self.q == 0:
            raise DomainError("q = 0 (geometric-mean norm) is out of scope")
        if not any(a != 0.0 for a in self.coeffs):
            raise DomainError("coefficients must not all be zero")

    @property
    def norm(self) -> float:
        return math.sqrt(sum(a * a for a in self.coeffs))


@dataclass(frozen=True)
class NormalizerSet:
    """The three normalizing constants of the Fourier moment formulas.

    beta is only defined for 0 < p < 1 and is None outside that range.
    """

    K: float
    kappa: float
    beta: float | None = field(default=None)


def c_two(d: int, q) -> float:
    """Khinchin constant of two equal weights, ||(xi_1+xi_2)/sqrt(2)||_q.

    Valid for -(d-1) < q <= 2, q != 0 (the closed form extends to q = 2,
    where it equals 1).
    """
    _check_dim(d)
    qa, scalar = _as_q_array(q)
    if np.any(qa == 0):
        raise DomainError("q = 0 is excluded")
    if np.any(qa <= -(d - 1) + _POLE_GUARD) or np.any(qa > 2):
        raise DomainError(f"c_two requires -(d-1) < q <= 2, got {q!r}")
    val = (log_gamma(d / 2.0) + log_gamma(d + qa - 1.0)
           - log_gamma((d + qa) / 2.0) - log_gamma(d + qa / 2.0 - 1.0))
    out = np.exp(val / qa) / math.sqrt(2.0)
    return float(out) if scalar else out


def c_inf(d: int, q) -> float:
    """Gaussian-limit Khinchin constant, ||Z/sqrt(d)||_q."""
    _check_dim(d)
    qa, scalar = _as_q_array(q)
    if np.any(qa == 0):
        raise DomainError("q = 0 is excluded")
    if np.any(qa <= -d + _POLE_GUARD):
        raise DomainError(f"c_inf requires q > -d, got {q!r}")
    val = log_gamma((d + qa) / 2.0) - log_gamma(d / 2.0)
    out = math.sqrt(2.0 / d) * np.exp(val / qa)
    return float(out) if scalar else out


def C2(p: float) -> float:
    """Two-point moment constant at d=4: E|(xi_1+xi_2)/sqrt(2)|^(-p)."""
    if not 0.0 < p < 3.0:
        raise DomainError(f"C2 requires 0 < p < 3, got {p}")
    for arg in (3.0 - p, 2.0 - p / 2.0, 3.0 - p / 2.0):
        _check_pole(arg, "C2")
    return 2.0 ** (p / 2.0) * gamma(3.0 - p) / (gamma(2.0 - p / 2.0) * gamma(3.0 - p / 2.0))


def C_infty(p: float) -> float:
    """Gaussian moment constant at d=4: E|Z/2|^(-p)."""
    if not 0.0 < p < 4.0:
        raise DomainError(f"C_infty requires 0 < p < 4, got {p}")
    _check_pole(2.0 - p / 2.0, "C_infty")
    return 2.0 ** (p / 2.0) * gamma(2.0 - p / 2.0)


def normalizers(p: float, d: int) -> NormalizerSet:
    """Constants K, kappa (0 < p < d) and beta (0 < p < 1) of the moment formulas.

    kappa = K * |S^(d-1)|, with |S^(d-1)| = 2 pi^(d/2) / Gamma(d/2).
    """
    _check_dim(d)
    if not 0.0 < p < d:
        raise DomainError(f"normalizers require 0 < p < d, got p={p}, d={d}")
    K = 2.0 ** (-p) * math.pi ** (-d / 2.0) * gamma((d - p) / 2.0) / gamma(p / 2.0)
    kappa = 2.0 ** (1.0 - p) * gamma((d - p) / 2.0) / (gamma(d / 2.0) * gamma(p / 2.0))
    beta = None
    if 0.0 < p < 1.0:
        beta = (math.sqrt(math.pi) * gamma((d - p) / 2.0)
                / (gamma((1.0 - p) / 2.0) * gamma(d / 2.0)))
    return NormalizerSet(K=K, kappa=kappa, beta=beta)


def D(p: float) -> float:
    """Ratio Gamma(3-p) / (Gamma(2-p/2)^2 Gamma(3-p/2)); D(2) = 1, pole at 3."""
    if not 2.0 <= p < 3.0:
        raise DomainError(f"D requires 2 <= p < 3, got {p}")
    _check_pole(3.0 - p, "D")
    return gamma(3.0 - p) / (gamma(2.0 - p / 2.0) ** 2 * gamma(3.0 - p / 2.0))


def best_constant_status(d: int, q: float) -> str:
    """Whether min(c_two, c_inf) is the proven best constant at (d, q).

    Returns "proven" on the ranges settled in the literature and "conjectural"
    on the ranges still open (e.g. -(d-1) < q < -(d-4) for d >= 5).
    """
    _check_dim(d)
    if q >= 2.0:
        return "proven"  # the constant is 1 there
    if d == 1:
        return "proven" if 0.0 < q < 2.0 else "conjectural"
    if d == 2:
        return "proven" if 0.0 <= q < 2.0 else "conjectural"
    if d == 3:
        return "proven" if -1.0 < q < 2.0 else "conjectural"
    if d == 4:
        return "proven" if -3.0 < q < 2.0 else "conjectural"
    return "proven" if -(d - 4.0) <= q < 2.0 else "conjectural"


def _check_dim(d: int) -> None:
    if d < 1 or d != int(d):
        raise DomainError(f"dimension must be a positive integer, got {d}")


def _as_q_array(q):
    arr = np.asarray(q, dtype=float)
    return arr, arr.ndim == 0
