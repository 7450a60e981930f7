"""Parameter sweeps behind the CLI's figure-reproduction command.

Each sweep emits the data for one of the reference trend figures as
(header, rows); plotting itself is out of scope.  Default parameter sets
follow the figure captions and can be overridden per sweep.  Figure ids:

* 3  -- optimal fixed-size threshold b* vs arrival interval, one curve
        per radio wakeup energy (exponential sizes)
* 4  -- optimal period T* vs arrival interval, one curve per wakeup energy
* 5  -- no-buffer vs fixed-size incentive differential vs arrival
        interval, one curve per Erlang shape
* 6  -- fixed-size penalty of a 256-byte threshold vs arrival interval
        (exponential sizes), with b* and its bank count
* 7  -- same as 6 for a 1280-byte threshold; the curve dips to zero where
        b* crosses 1280
* 8  -- optimal fixed-interval minus optimal fixed-size power vs arrival
        interval, one curve per (cv, skew) parameter set
* 9  -- fixed-size penalty of a 256-byte threshold, high-variance sizes
* 10 -- fixed-size penalty of a 1280-byte threshold, high-variance sizes
* 11 -- b* vs arrival interval for high-variance vs constant sizes
* 12 -- lifespan of the optimal fixed-size scheme vs size cv, one curve
        per arrival rate (symmetric sizes, skew 0)
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .dist import constant, exponential, from_moments
from .errors import ParameterError
from .fixed_interval import optimal_interval
from .fixed_size import avg_power_fs, gain_fs, optimal_size
from .lifespan import Battery, lifespan_years
from .power_model import HardwareProfile, TrafficProfile, default_table2_profile
from .compare import erlang_incentive, scheme_gap

# captions give some mean sizes in plain "b"; asserted as bytes throughout

FIGURE_IDS = (3, 4, 5, 6, 7, 8, 9, 10, 11, 12)


def _hw(p_idle=0.409, e_wu=80.0, b_size=128.0) -> HardwareProfile:
    base = default_table2_profile()
    return HardwareProfile(
        e_wu_w=e_wu, e_tx_w=base.e_tx_w, e_rx_w=base.e_rx_w,
        p_idle_m=p_idle, e_r_m=base.e_r_m, e_w_m=base.e_w_m,
        e_resyn_m=base.e_resyn_m, b_size=b_size)


def _inv_lambda_grid(ov, lo, hi, points=60) -> np.ndarray:
    lo = float(ov.get("xmin", lo))
    hi = float(ov.get("xmax", hi))
    points = int(ov.get("points", points))
    if not 0 < lo < hi or points < 2:
        raise ParameterError("need 0 < xmin < xmax and points >= 2")
    return np.logspace(np.log10(lo), np.log10(hi), points)


def _floats(ov, key, default):
    value = ov.get(key)
    if value is None:
        return list(default)
    if isinstance(value, str):
        return [float(v) for v in value.split(",") if v]
    return [float(v) for v in value]


def _thread_cap() -> int:
    raw = os.environ.get("POWERBUF_THREADS", "1") or "1"
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParameterError(
            f"POWERBUF_THREADS must be an integer, got {raw!r}") from None


def _map_rows(row_fn, xs):
    """Evaluate one row per grid point, optionally across worker threads.

    POWERBUF_THREADS caps the pool size; output order always follows the
    grid, so the emitted CSV is identical at any thread count.
    """
    workers = _thread_cap()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row_fn, xs))
    return [row_fn(x) for x in xs]


def fig3(overrides=None):
    ov = overrides or {}
    e_wus = _floats(ov, "e_wu_list", (8.0, 32.0, 128.0, 512.0))
    mu = float(ov.get("mu", 256.0))
    grid = _inv_lambda_grid(ov, 1.0, 1000.0)
    size = exponential(mu)
    hw_list = [_hw(e_wu=e, b_size=float(ov.get("b_size", 256.0)))
               for e in e_wus]
    header = ["inv_lambda"] + [f"bstar_ewu{g:g}" for g in e_wus]
    rows = _map_rows(
        lambda x: [x] + [optimal_size(h, TrafficProfile(1.0 / x, size))
                         for h in hw_list], grid)
    return header, rows


def fig4(overrides=None):
    ov = overrides or {}
    e_wus = _floats(ov, "e_wu_list", (8.0, 80.0, 800.0, 8000.0))
    mu = float(ov.get("mu", 256.0))
    grid = _inv_lambda_grid(ov, 1.0, 1000.0)
    size = exponential(mu)
    hw_list = [_hw(e_wu=e, b_size=float(ov.get("b_size", 256.0)))
               for e in e_wus]
    header = ["inv_lambda"] + [f"tstar_ewu{g:g}" for g in e_wus]
    rows = _map_rows(
        lambda x: [x] + [optimal_interval(h, TrafficProfile(1.0 / x, size))
                         for h in hw_list], grid)
    return header, rows


def fig5(overrides=None):
    ov = overrides or {}
    alphas = [int(a) for a in _floats(ov, "alphas", (1, 2, 4, 8))]
    mu = float(ov.get("mu", 64.0))
    hw = _hw(b_size=float(ov.get("b_size", 256.0)))
    grid = _inv_lambda_grid(ov, 1.0, 10000.0)
    header = ["inv_lambda"] + [f"f_alpha{a}" for a in alphas]
    rows = _map_rows(
        lambda x: [x] + [erlang_incentive(hw, mu, a, 1.0 / x)[0]
                         for a in alphas], grid)
    return header, rows


def _gain_fs_sweep(ov, b_fixed, size_factory):
    mu = float(ov.get("mu", 64.0))
    hw = _hw(b_size=float(ov.get("b_size", 128.0)))
    grid = _inv_lambda_grid(ov, 0.5, 50.0)
    b = float(ov.get("b", b_fixed))
    header = ["inv_lambda", f"gain_b{b:g}", "bstar", "bstar_banks"]

    def row(x):
        traffic = TrafficProfile(1.0 / x, size_factory(mu))
        bstar = optimal_size(hw, traffic)
        return [x, gain_fs(hw, traffic, b), bstar,
                int(np.ceil(bstar / hw.b_size))]

    return header, _map_rows(row, grid)


def fig6(overrides=None):
    return _gain_fs_sweep(overrides or {}, 256.0, exponential)


def fig7(overrides=None):
    return _gain_fs_sweep(overrides or {}, 1280.0, exponential)


_HIGH_VAR = (1.723, 2.718)  # caption parameter set for the skewed mixtures


def _high_var_size(ov):
    cv = float(ov.get("cv", _HIGH_VAR[0]))
    skew = float(ov.get("skew", _HIGH_VAR[1]))
    return lambda m: from_moments(m, cv, skew)


def fig8(overrides=None):
    ov = overrides or {}
    mu = float(ov.get("mu", 64.0))
    hw = _hw(b_size=float(ov.get("b_size", 256.0)))
    sets = ov.get("moment_sets",
                  ((1.0, 2.0), (1.2, 2.4), (1.5, 2.6), _HIGH_VAR))
    if isinstance(sets, str):
        # CLI form: "cv:skew;cv:skew;..."
        try:
            sets = tuple(tuple(float(v) for v in pair.split(":"))
                         for pair in sets.split(";") if pair)
            if any(len(s) != 2 for s in sets):
                raise ValueError
        except ValueError:
            raise ParameterError(
                "moment_sets must look like 1.2:2.4;1.5:2.6") from None
    grid = _inv_lambda_grid(ov, 0.5, 1000.0)
    header = ["inv_lambda"] + [f"gap_cv{c:g}_skew{s:g}" for c, s in sets]
    rows = _map_rows(
        lambda x: [x] + [
            scheme_gap(hw, TrafficProfile(1.0 / x, from_moments(mu, c, s)))
            for c, s in sets], grid)
    return header, rows


def fig9(overrides=None):
    ov = overrides or {}
    return _gain_fs_sweep(ov, 256.0, _high_var_size(ov))


def fig10(overrides=None):
    ov = overrides or {}
    return _gain_fs_sweep(ov, 1280.0, _high_var_size(ov))


def fig11(overrides=None):
    ov = overrides or {}
    mu = float(ov.get("mu", 64.0))
    hw = _hw(b_size=float(ov.get("b_size", 128.0)))
    cv, skew = (float(ov.get("cv", _HIGH_VAR[0])),
                float(ov.get("skew", _HIGH_VAR[1])))
    grid = _inv_lambda_grid(ov, 0.5, 50.0)
    header = ["inv_lambda", "bstar_highvar", "bstar_const"]

    def row(x):
        high = optimal_size(hw, TrafficProfile(1.0 / x, from_moments(mu, cv, skew)))
        const = optimal_size(hw, TrafficProfile(1.0 / x, constant(mu)))
        return [x, high, const]

    return header, _map_rows(row, grid)


def fig12(overrides=None):
    ov = overrides or {}
    lambdas = _floats(ov, "lambdas", (1.0, 0.5, 0.25, 0.1))
    hw = _hw(b_size=float(ov.get("b_size", 128.0)))
    battery = Battery(float(ov.get("capacity_mah", 2700.0)),
                      float(ov.get("voltage_v", 3.3)))
    points = int(ov.get("points", 41))
    cv_max = float(ov.get("cv_max", 2.0))
    cvs = np.linspace(0.0, cv_max, points)
    header = ["cv"] + [f"years_lambda{g:g}" for g in lambdas]

    def row(cv):
        cells = []
        for lam in lambdas:
            traffic = TrafficProfile(lam, from_moments(hw.b_size, cv, 0.0))
            power = avg_power_fs(hw, traffic, optimal_size(hw, traffic))
            cells.append(lifespan_years(battery, power))
        return [cv] + cells

    return header, _map_rows(row, cvs)


FIGURES = {3: fig3, 4: fig4, 5: fig5, 6: fig6, 7: fig7, 8: fig8,
           9: fig9, 10: fig10, 11: fig11, 12: fig12}


def sweep(figure_id: int, overrides=None):
    """Data for one reference figure: (header, rows)."""
    if figure_id not in FIGURES:
        raise ParameterError(
            f"unknown figure id {figure_id}; known: {sorted(FIGURES)}")
    return FIGURES[figure_id](overrides)
