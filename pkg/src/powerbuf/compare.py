"""Scheme comparisons: when is buffering worth it, and which scheme wins.

Two questions are answered in closed form where possible:

* Incentive region: for which arrival rates does optimal fixed-size
  buffering beat transmitting immediately (no-buffer)?  The differential
  crosses zero at a critical rate lambda_c; above it buffering wins.
* Fixed-size vs fixed-interval: the gap between the two optima.  Constant
  sizes favor fixed-size, exponential sizes tie, and sufficiently
  high-variance laws favor fixed-interval.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .dist import EXPONENTIAL, SizeDistribution, erlang, k_star
from .errors import NoRootError, ParameterError
from .fixed_size import optimal_size
from .power_model import HardwareProfile, TrafficProfile

FIXED_SIZE = "fixed_size"
NO_BUFFER = "no_buffer"


@dataclass(frozen=True)
class IncentiveReport:
    """Outcome of the no-buffer vs optimal fixed-size comparison.

    ``f_lambda`` is the power differential (no-buffer minus optimal
    fixed-size, uW); positive means fixed-size is preferred.
    ``lambda_c`` is the critical rate where the differential crosses zero,
    ``lambda_star`` the rate at which it is most negative.
    """

    f_lambda: float
    lambda_c: float | None
    lambda_star: float | None
    preferred: str


def incentive_differential(hw: HardwareProfile,
                           traffic: TrafficProfile) -> float:
    """No-buffer power minus optimal fixed-size power, in uW.

    lambda e_wu - (p_idle / b_size) (b* + mu_y (cv^2 - 1)/2).  Higher size
    variability erodes the buffering gain; positive skew restores some
    of it.
    """
    mu = traffic.size.mean
    cv2 = traffic.size.cv ** 2
    return traffic.rate * hw.e_wu_w - (hw.p_idle_m / hw.b_size) * (
        optimal_size(hw, traffic) + mu * (cv2 - 1.0) / 2.0)


def critical_rate_exponential(hw: HardwareProfile, mu_y: float) -> float:
    """Critical arrival rate for exponential sizes, in closed form.

    lambda_c = 2 mu_y p_idle / (b_size e_wu): the ratio of the wakeup
    energy to the per-byte idle power (hardware) against the ratio of mean
    size to rate (workload).  Above lambda_c fixed-size buffering wins.
    """
    if mu_y <= 0:
        raise ParameterError(f"mean size must be positive, got {mu_y}")
    return 2.0 * mu_y * hw.p_idle_m / (hw.b_size * hw.e_wu_w)


def erlang_incentive(hw: HardwareProfile, mu_y: float, alpha: int,
                     rate: float) -> tuple[float, float, float]:
    """Incentive differential for Erlang sizes plus its minimizer.

    Returns (f, lambda_star, f_at_star) where f is the differential at the
    given rate, lambda_star = mu_y p_idle (11 + 1/alpha^2) / (24 b_size e_wu)
    is the global minimum point, and f_at_star = -(mu_y p_idle / (24 b_size))
    (1 + 12/alpha - 1/alpha^2) is the (always negative) minimum value.
    """
    if int(alpha) != alpha or alpha < 1:
        raise ParameterError(f"shape must be an integer >= 1, got {alpha}")
    alpha = int(alpha)
    d = erlang(alpha, alpha / mu_y)
    f = incentive_differential(hw, TrafficProfile(rate, d))
    a2 = float(alpha * alpha)
    lam_star = mu_y * hw.p_idle_m * (11.0 + 1.0 / a2) \
        / (24.0 * hw.b_size * hw.e_wu_w)
    f_star = -(mu_y * hw.p_idle_m / (24.0 * hw.b_size)) \
        * (1.0 + 12.0 / alpha - 1.0 / a2)
    return f, lam_star, f_star


def _differential_minimizer(hw: HardwareProfile, d: SizeDistribution) -> float:
    """Rate at which the incentive differential is minimal.

    Stationarity requires b*(lambda) = mu_y, giving
    lambda* = p_idle mu_y (1 - k*) / (2 b_size e_wu) when k* < 1; for
    k* >= 1 the differential is increasing everywhere and the minimum sits
    at rate 0.
    """
    ks = k_star(d)
    if ks >= 1.0:
        return 0.0
    return hw.p_idle_m * d.mean * (1.0 - ks) / (2.0 * hw.b_size * hw.e_wu_w)


def critical_rate_numeric(hw: HardwareProfile, d: SizeDistribution,
                          rel_tol: float = 1e-9) -> float:
    """Locate the critical rate for an arbitrary size law by bisection.

    Searches upward from the differential's minimizer, doubling until the
    sign flips, then bisects to ``rel_tol`` relative width.  Beyond the
    minimizer the differential is increasing, so the root found there is
    the critical rate; any additional sign changes at lower rates (possible
    for very low-variance laws whose differential starts positive) are
    reported as a warning.
    """
    lam_star = _differential_minimizer(hw, d)

    def f(lam: float) -> float:
        return incentive_differential(hw, TrafficProfile(lam, d))

    lo = lam_star if lam_star > 0 else 1e-12
    f_lo = f(lo)
    if f_lo >= 0:
        raise NoRootError(
            "differential is nonnegative at its minimizer; no crossing above it")
    hi = lo * 2.0
    for _ in range(200):
        if f(hi) > 0:
            break
        hi *= 2.0
    else:
        raise NoRootError("no sign change found while doubling the bracket")
    while (hi - lo) > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)

    if lam_star > 0 and f(1e-9 * lam_star) > 0:
        # sign change below the minimizer as well (differential starts
        # positive, dips negative, then recrosses at the returned root)
        warnings.warn(
            "incentive differential has an additional sign change below "
            "its minimizer; returning the crossing above it", stacklevel=2)
    return root


def scheme_gap(hw: HardwareProfile, traffic: TrafficProfile) -> float:
    """Optimal fixed-interval power minus optimal fixed-size power (uW).

    Positive means fixed-size buffering wins.  Equals
    sqrt(2 mu_y lambda p_idle e_wu / b_size)
    - (p_idle / b_size)(b* + mu_y (cv^2 - 1)/2):
    strictly positive for constant sizes, exactly zero for exponential
    sizes, and negative for sufficiently high-variance laws.
    """
    mu = traffic.size.mean
    cv2 = traffic.size.cv ** 2
    return math.sqrt(
        2.0 * mu * traffic.rate * hw.p_idle_m * hw.e_wu_w / hw.b_size) \
        - (hw.p_idle_m / hw.b_size) * (optimal_size(hw, traffic)
                                       + mu * (cv2 - 1.0) / 2.0)


def incentive_report(hw: HardwareProfile,
                     traffic: TrafficProfile) -> IncentiveReport:
    """Assemble the no-buffer vs fixed-size comparison for one workload."""
    f = incentive_differential(hw, traffic)
    d = traffic.size
    lam_star = _differential_minimizer(hw, d) or None
    if d.kind == EXPONENTIAL:
        lam_c = critical_rate_exponential(hw, d.mean)
    else:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                lam_c = critical_rate_numeric(hw, d)
        except NoRootError:
            lam_c = None
    return IncentiveReport(
        f_lambda=f,
        lambda_c=lam_c,
        lambda_star=lam_star,
        preferred=FIXED_SIZE if f > 0 else NO_BUFFER,
    )


__all__ = [
    "FIXED_SIZE", "NO_BUFFER", "IncentiveReport",
    "incentive_differential", "critical_rate_exponential",
    "erlang_incentive", "critical_rate_numeric", "scheme_gap",
    "incentive_report",
]
