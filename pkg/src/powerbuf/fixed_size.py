"""Long-run power model and optimizer for fixed-size buffering.

Under this policy the node buffers incoming data and transmits as soon as
the accumulated volume reaches a byte threshold b.  The long-run mean power
is a renewal-reward average; it is strictly convex in b, with an optimum
that balances the amortized transmit-wakeup cost against idle-mode memory
power.  Size variability enters through the second and third standardized
moments of the size law (via cv and the variability constant k*).

``b`` is treated as a continuous byte threshold; the number of engaged
memory banks is reported separately as ceil(b / b_size).  The power
functions accept a scalar or an ndarray of thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import CONSTANT, k_star
from .errors import InfeasibleError, ParameterError
from .power_model import HardwareProfile, TrafficProfile


@dataclass(frozen=True)
class FixedSizeEval:
    """A fixed-size policy evaluated at threshold ``b``."""

    b: float
    power: float
    banks: int


def avg_power_fs(hw: HardwareProfile, traffic: TrafficProfile, b):
    """Long-run mean power (uW) of fixed-size buffering at threshold b bytes.

    Composed of the amortized transmit wakeup, the per-arrival
    receive/transmit/memory work, and the idle-mode term that grows
    linearly in b.  Assumes e_rx_w == e_tx_w (e_tx_w is used for both).

    Args:
        b: byte threshold, scalar or ndarray, all entries > 0.
    """
    b_arr = np.asarray(b, dtype=float)
    if np.any(b_arr <= 0):
        raise ParameterError("buffer threshold must be positive")
    mu = traffic.size.mean
    lam = traffic.rate
    cv2 = traffic.size.cv ** 2
    ks = k_star(traffic.size)
    half_idle = hw.p_idle_m / (2.0 * hw.b_size)
    per_arrival = mu * (2.0 * hw.e_tx_w + hw.e_w_m + hw.e_r_m) \
        + hw.e_wu_w + 2.0 * hw.e_resyn_m
    power = (lam * mu * hw.e_wu_w + half_idle * mu * mu * ks) / b_arr \
        + lam * per_arrival + half_idle * mu * (cv2 - 1.0) + half_idle * b_arr
    return float(power) if b_arr.ndim == 0 else power


def optimal_size(hw: HardwareProfile, traffic: TrafficProfile) -> float:
    """Power-minimizing byte threshold b*.

    b* = sqrt(2 b_size e_wu lambda mu_y / p_idle + mu_y^2 k*).  The second
    term is the purely variability-induced part; it vanishes for
    exponential sizes (k* = 0).
    """
    mu = traffic.size.mean
    radicand = 2.0 * hw.b_size * hw.e_wu_w * traffic.rate * mu / hw.p_idle_m \
        + mu * mu * k_star(traffic.size)
    if radicand <= 0:
        raise InfeasibleError(
            "no positive optimum: the variability constant is negative "
            "enough to swamp the wakeup term")
    return math.sqrt(radicand)


def evaluate_fixed_size(hw: HardwareProfile, traffic: TrafficProfile,
                        b: float) -> FixedSizeEval:
    """Evaluate a threshold, reporting power and engaged bank count."""
    return FixedSizeEval(
        b=float(b),
        power=avg_power_fs(hw, traffic, b),
        banks=int(math.ceil(float(b) / hw.b_size)),
    )


def optimal_size_banked(hw: HardwareProfile,
                        traffic: TrafficProfile) -> FixedSizeEval:
    """Bank-quantized optimum: b* rounded up to whole memory banks.

    Idle memory power switches in whole-bank steps, so the achievable
    thresholds are multiples of b_size.  The continuous optimum is what
    the reference tables use; this variant reports the bank-feasible one.
    """
    banks = int(math.ceil(optimal_size(hw, traffic) / hw.b_size))
    b = banks * hw.b_size
    return FixedSizeEval(b=b, power=avg_power_fs(hw, traffic, b), banks=banks)


def optimal_bank_count(hw: HardwareProfile, traffic: TrafficProfile) -> float:
    """Optimal bank count n* when every datum exactly fills one bank.

    Only defined for a constant size law equal to b_size; then
    n* = sqrt(2 lambda e_wu / p_idle + 1/12) and the optimal buffer is
    n* * b_size.
    """
    d = traffic.size
    if d.kind != CONSTANT or not math.isclose(d.mean, hw.b_size,
                                              rel_tol=1e-12):
        raise ParameterError(
            "bank-count optimum requires constant sizes equal to b_size")
    return math.sqrt(2.0 * traffic.rate * hw.e_wu_w / hw.p_idle_m + 1.0 / 12.0)


def size_variation_penalty(hw: HardwareProfile,
                           traffic: TrafficProfile) -> float:
    """Extra optimal buffer bytes attributable purely to size variability.

    Difference between b* and the b* a zero-k* law with the same mean
    would need.  Zero for exponential sizes; positive whenever k* > 0,
    and negative skewness makes it larger.
    """
    mu = traffic.size.mean
    base = 2.0 * hw.b_size * hw.e_wu_w * traffic.rate * mu / hw.p_idle_m
    radicand = base + mu * mu * k_star(traffic.size)
    if radicand <= 0:
        raise InfeasibleError("no positive optimum for these parameters")
    return math.sqrt(radicand) - math.sqrt(base)


def relative_variation_effect(hw: HardwareProfile,
                              traffic: TrafficProfile) -> float:
    """Variability penalty relative to the zero-variability optimum.

    Equals sqrt(1 + mu_y p_idle k* / (2 lambda e_wu b_size)) - 1, which
    grows as the arrival rate drops: low-duty-cycle nodes feel size
    variability the most.
    """
    mu = traffic.size.mean
    ratio = mu * hw.p_idle_m * k_star(traffic.size) \
        / (2.0 * traffic.rate * hw.e_wu_w * hw.b_size)
    if ratio < -1.0:
        raise InfeasibleError("no positive optimum for these parameters")
    return math.sqrt(1.0 + ratio) - 1.0


def gain_fs(hw: HardwareProfile, traffic: TrafficProfile, b) -> float:
    """Power penalty (uW) of running at threshold b instead of b*.

    Nonnegative, zero exactly at b = b*.  This is the cost of a
    power-oblivious threshold choice.
    """
    return avg_power_fs(hw, traffic, b) \
        - avg_power_fs(hw, traffic, optimal_size(hw, traffic))
