"""Phase-transition machinery: the crossing point of c_two and c_inf.

For each dimension d the two candidate extremizers exchange roles at the
unique root q_d* of c_{d,2}(q) = c_{d,inf}(q).  Everything is evaluated in
log space (log_gamma) so that dimensions up to 60 and roots exponentially
close to -(d-1) remain representable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import c_inf, c_two
from .errors import DomainError, MultipleRootsError, NoBracketError
from .specfun import digamma, log_gamma, trigamma
from .verify import VerificationReport, _make_report

__all__ = [
    "PhaseTransitionResult",
    "h_d",
    "h_tilde",
    "q_star",
    "scan_sign_changes",
    "verify_appendix_claims",
    "asymptotic_check",
]


@dataclass(frozen=True)
class PhaseTransitionResult:
    d: int
    q_star: float
    bracket: tuple[float, float]
    residual: float
    iterations: int

    def __post_init__(self) -> None:
        lo, hi = self.bracket
        if not lo < self.q_star < hi:
            raise ValueError("root must lie strictly inside its bracket")
        if not (self.residual <= 1e-10):
            raise ValueError(f"residual {self.residual} exceeds 1e-10")
        if self.d > 1 and not -(self.d - 1) < self.q_star < 2:
            raise ValueError("root outside (-(d-1), 2)")


def h_d(d: int, q) -> float:
    """log(c_{d,2}(q)^q) - log(c_{d,inf}(q)^q); opposite sign to c2-cinf for q<0."""
    qa = np.asarray(q, dtype=float)
    val = (-qa * math.log(2.0) + qa / 2.0 * math.log(d)
           + 2.0 * log_gamma(d / 2.0) + log_gamma(d + qa - 1.0)
           - 2.0 * log_gamma((d + qa) / 2.0) - log_gamma(d + qa / 2.0 - 1.0))
    return float(val) if val.ndim == 0 else val


def h_tilde(d: int, x) -> float:
    """h_d rewritten through x = (q + d - 1)/2 in (0, (d-1)/2), all in log space."""
    if d < 2:
        raise DomainError(f"h_tilde requires d >= 2, got {d}")
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0) or np.any(xa > (d - 1) / 2.0):
        raise DomainError(f"h_tilde requires 0 < x <= (d-1)/2, got {x!r}")
    const = ((d - 2.0) * math.log(2.0) + 2.0 * log_gamma(d / 2.0)
             - 0.5 * math.log(math.pi) - (d - 1.0) / 2.0 * math.log(d))
    val = (xa * math.log(d) + log_gamma(xa) - log_gamma(xa + 0.5)
           - log_gamma(xa + (d - 1.0) / 2.0) + const)
    return float(val) if val.ndim == 0 else val


def _log_ratio(d: int, q):
    """log c_two - log c_inf, vectorized over q."""
    return np.log(c_two(d, q)) - np.log(c_inf(d, q))


def _scan_grid(d: int) -> np.ndarray:
    if d == 1:
        lo = 1e-3
    else:
        # the root approaches -(d-1) exponentially fast, so the left edge must
        # adapt: walk x toward 0 until h_tilde is positive (left of the root)
        x_left = 5e-4
        while h_tilde(d, x_left) <= 0 and x_left > 1e-9:
            x_left /= 4.0
        lo = -(d - 1) + 2.0 * x_left
    qs = np.arange(lo, 2.0 - 1e-3, 0.01)
    return qs[np.abs(qs) > 1e-6]  # skip the removable singularity at q = 0


def scan_sign_changes(d: int) -> list[tuple[float, float]]:
    """Brackets where c_two - c_inf changes sign over the standard scan grid."""
    qs = _scan_grid(d)
    vals = _log_ratio(d, qs)
    sgn = np.sign(vals)
    idx = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
    return [(float(qs[i]), float(qs[i + 1])) for i in idx]


def q_star(d: int, tol: float = 1e-12) -> PhaseTransitionResult:
    """The unique solution of c_{d,2}(q) = c_{d,inf}(q), by scan + bisection.

    For d = 1 the scan runs over (0, 2) (the two-point constant involves a
    vanishing sum for q <= 0); a single sign change is required, otherwise
    the uniqueness asserted by the phase-transition proposition would fail.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    brackets = scan_sign_changes(d)
    if not brackets:
        raise NoBracketError(f"no sign change found for d={d}")
    if len(brackets) > 1:
        raise MultipleRootsError(f"multiple sign changes for d={d}: {brackets}")
    a, b = brackets[0]
    fa = _log_ratio(d, a)
    iterations = 0
    while b - a > tol and iterations < 200:
        mid = 0.5 * (a + b)
        fm = _log_ratio(d, mid)
        if fm == 0.0:
            a = b = mid
            break
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b = mid
        iterations += 1
    root = 0.5 * (a + b)
    residual = abs(c_two(d, root) - c_inf(d, root))
    lo, hi = brackets[0]
    return PhaseTransitionResult(d=d, q_star=root, bracket=(lo, hi),
                                 residual=residual, iterations=iterations)


def verify_appendix_claims(d: int, n_grid: int = 400) -> VerificationReport:
    """The three h_tilde claims plus their printed sub-certificates.

    Claim 1: h_tilde'' > 0.06 on (0, 1), with the analytic floor 5 - pi^2/2.
    Claim 2: h_tilde' > 0 on (1, (d-1)/2), with f > 0.003 on (1, 1.07).
    Claim 3: h_tilde(1/2) < 0, with the Stirling-chain values f'(5/2) < -0.1
    and f(5/2) < -0.04.  Also h_d'(0) > 0 by one-sided differences.
    """
    if d < 5:
        raise DomainError(f"appendix claims require d >= 5, got {d}")
    points: list[tuple[float, ...]] = []
    margins: list[float] = []

    xs = np.linspace(1e-3, 1.0 - 1e-3, n_grid)
    h2 = trigamma(xs) - trigamma(xs + 0.5) - trigamma(xs + (d - 1) / 2.0)
    i = int(np.argmin(h2))
    points.append((1.0, float(xs[i])))
    margins.append(float(h2[i]) - 0.06)
    points.append((1.0, -1.0))
    margins.append(5.0 - math.pi**2 / 2.0 - 0.06)  # analytic floor of the claim

    xs = np.linspace(1.0 + 1e-6, (d - 1) / 2.0 - 1e-9, n_grid)
    h1 = math.log(d) + digamma(xs) - digamma(xs + 0.5) - digamma(xs + (d - 1) / 2.0)
    i = int(np.argmin(h1))
    points.append((2.0, float(xs[i])))
    margins.append(float(h1[i]))
    xf = np.linspace(1.0 + 1e-9, 1.07, 50)
    fvals = np.log(1.0 + 0.5 / xf) + 0.25 / xf - (digamma(xf + 0.5) - digamma(xf))
    i = int(np.argmin(fvals))
    points.append((2.0, float(xf[i])))
    margins.append(float(fvals[i]) - 0.003)

    points.append((3.0, 0.5))
    margins.append(-h_tilde(d, 0.5))
    fprime_52 = math.log(2.0) - 1.0 + 0.2  # f'(u) = log 2 - 1 + 1/(2u) at u = 5/2
    points.append((3.0, 2.5))
    margins.append(-0.1 - fprime_52)
    f_52 = math.log(math.sqrt(2.0 * math.pi) * 2.0**1.5 * math.exp(-2.5 + 1.0 / 30.0) * math.sqrt(2.5))
    points.append((3.0, -2.5))
    margins.append(-0.04 - f_52)

    eps = 1e-6
    points.append((4.0, 0.0))
    margins.append(h_d(d, eps) / eps)
    points.append((4.0, -0.0))
    margins.append(h_d(d, -eps) / (-eps))

    region = f"d={d}: claims 1-3 with printed floors, plus h_d'(0) > 0"
    return _make_report("appendix_claims", region, (n_grid,), points, margins)


def asymptotic_check(d_range, fit_range: tuple[int, int] = (20, 60),
                     tol_rel: float = 0.15) -> VerificationReport:
    """Decay rate of alpha_d = (q_d* + d - 1)/2 against the predicted exponent.

    Fits log(alpha_d) - log(d) ~ slope * d + const over fit_range and passes
    when the slope is within tol_rel of -(1 - log 2)/2; also records that
    alpha_d < 1/2 for every d >= 10 in the range.
    """
    d_range = sorted(int(d) for d in d_range)
    if any(d < 5 or d > 60 for d in d_range):
        raise DomainError("asymptotic check supports 5 <= d <= 60")
    target = -(1.0 - math.log(2.0)) / 2.0
    alphas = {}
    for d in d_range:
        res = q_star(d, tol=1e-12)
        alphas[d] = (res.q_star + d - 1.0) / 2.0
    points: list[tuple[float, ...]] = []
    margins: list[float] = []
    fit_ds = [d for d in d_range if fit_range[0] <= d <= fit_range[1]]
    if len(fit_ds) < 3:
        raise DomainError("need at least 3 dimensions inside the fit range")
    ys = np.array([math.log(alphas[d]) - math.log(d) for d in fit_ds])
    xs = np.array(fit_ds, dtype=float)
    slope, _ = np.polyfit(xs, ys, 1)
    points.append((float(slope), target))
    margins.append(tol_rel - abs(slope / target - 1.0))
    for d in d_range:
        if d >= 10:
            points.append((float(d), alphas[d]))
            margins.append(0.5 - alphas[d])
    region = (f"d in {d_range[0]}..{d_range[-1]}, fit on [{fit_range[0]}, {fit_range[1]}]; "
              f"slope={slope:.5f} vs target={target:.5f}")
    return _make_report("appendix_asymptotics", region, (len(d_range),), points, margins)
