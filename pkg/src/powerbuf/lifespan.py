"""Battery-lifespan projection and the reference comparison tables.

Lifespan uses the simple energy budget capacity x voltage with no
discharge-curve derating, and a 8760-hour year.  The two table builders
reproduce the published comparison data for a node with constant-size
data equal to one memory bank:

* :func:`table3` compares optimal fixed-size, optimal fixed-interval, and
  a fixed 256-byte power-oblivious threshold across arrival rates.
* :func:`table5` tabulates the optimal fixed-interval scheme under two
  hardware profiles.  In the published table the rate column actually
  lists the mean arrival interval in seconds (every printed T*, power,
  and lifespan value checks out against rate = 1/label), so each row here
  carries both the printed label and the effective rate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import constant, from_moments
from .errors import ParameterError
from .fixed_interval import optimal_interval, power_at_optimal_fi
from .fixed_size import avg_power_fs, optimal_size
from .power_model import HardwareProfile, TrafficProfile

HOURS_PER_YEAR = 24 * 365

TABLE3_LAMBDAS = (1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1)
TABLE5_LABELS = (1.0, 0.5, 0.25, 0.125, 0.0625)


@dataclass(frozen=True)
class Battery:
    """An energy source, e.g. two AA cells: 2700 mAh at 3.3 V."""

    capacity_mah: float
    voltage_v: float

    def __post_init__(self):
        if self.capacity_mah <= 0 or self.voltage_v <= 0:
            raise ParameterError("battery capacity and voltage must be positive")

    @property
    def energy_uwh(self) -> float:
        """Stored energy in uW h (capacity in uAh times voltage)."""
        return self.capacity_mah * 1000.0 * self.voltage_v


@dataclass(frozen=True)
class LifespanRow:
    """One arrival rate of the three-way scheme comparison."""

    rate: float
    power_fs_opt: float
    life_fs_opt: float
    power_fi_opt: float
    life_fi_opt: float
    power_fixed: float
    life_fixed: float


@dataclass(frozen=True)
class IntervalLifespanRow:
    """One row of the fixed-interval table, one cell triple per profile."""

    lambda_label: float
    rate: float
    t_star: tuple[float, ...]
    power: tuple[float, ...]
    years: tuple[float, ...]


def lifespan_years(battery: Battery, power_uw: float) -> float:
    """Years a battery sustains a constant draw of ``power_uw``."""
    if power_uw <= 0:
        raise ParameterError(f"power must be positive, got {power_uw}")
    return battery.energy_uwh / (power_uw * HOURS_PER_YEAR)


def table3(hw: HardwareProfile, battery: Battery, fixed_b: float = 256.0,
           lambdas: Sequence[float] = TABLE3_LAMBDAS) -> list[LifespanRow]:
    """Scheme comparison rows for constant sizes of one memory bank.

    Powers use the continuous optimum b*, not the bank-quantized one
    (see fixed_size.optimal_size_banked for the latter).
    """
    size = constant(hw.b_size)
    rows = []
    for lam in lambdas:
        traffic = TrafficProfile(lam, size)
        p_fs = avg_power_fs(hw, traffic, optimal_size(hw, traffic))
        p_fi = power_at_optimal_fi(hw, traffic)
        p_fx = avg_power_fs(hw, traffic, fixed_b)
        rows.append(LifespanRow(
            rate=lam,
            power_fs_opt=p_fs, life_fs_opt=lifespan_years(battery, p_fs),
            power_fi_opt=p_fi, life_fi_opt=lifespan_years(battery, p_fi),
            power_fixed=p_fx, life_fixed=lifespan_years(battery, p_fx),
        ))
    return rows


def table5(profiles: Sequence[HardwareProfile], battery: Battery,
           lambdas: Sequence[float] = TABLE5_LABELS
           ) -> list[IntervalLifespanRow]:
    """Fixed-interval optimum under several hardware profiles.

    ``lambdas`` are the row labels as printed in the reference table;
    the tabulated data corresponds to an arrival rate of 1/label (the
    published column is really the mean arrival interval).  Sizes are
    constant and equal to each profile's bank size.
    """
    rows = []
    for label in lambdas:
        if label <= 0:
            raise ParameterError(f"row label must be positive, got {label}")
        rate = 1.0 / label
        t_stars, powers, years = [], [], []
        for hw in profiles:
            traffic = TrafficProfile(rate, constant(hw.b_size))
            p = power_at_optimal_fi(hw, traffic)
            t_stars.append(optimal_interval(hw, traffic))
            powers.append(p)
            years.append(lifespan_years(battery, p))
        rows.append(IntervalLifespanRow(
            lambda_label=label, rate=rate,
            t_star=tuple(t_stars), power=tuple(powers), years=tuple(years),
        ))
    return rows


def lifespan_vs_cv(hw: HardwareProfile, battery: Battery,
                   lambdas: Sequence[float],
                   cvs: Sequence[float]) -> np.ndarray:
    """Lifespan grid (years) of the optimal fixed-size scheme over cv.

    Uses a hypothetical symmetric size law (skew = 0, so
    k* = (5/4) cv^4 + 1/12) with mean equal to the bank size.  Lifespan
    declines monotonically as cv grows, at every rate.

    Returns an array of shape (len(lambdas), len(cvs)).
    """
    out = np.empty((len(lambdas), len(cvs)))
    for i, lam in enumerate(lambdas):
        for j, cv in enumerate(cvs):
            traffic = TrafficProfile(lam, from_moments(hw.b_size, cv, 0.0))
            power = avg_power_fs(hw, traffic, optimal_size(hw, traffic))
            out[i, j] = lifespan_years(battery, power)
    return out
