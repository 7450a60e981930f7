"""End-to-end acceptance suite.

Each test prints one PASS/FAIL line (run with ``pytest -s`` to see them on
success).  Tolerances are pinned here and nowhere else; simulation checks
use fixed seeds so the suite is deterministic per backend.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from powerbuf import (
    Battery, BandwidthVector, ChildSpec, HardwareProfile, TrafficProfile,
    avg_power_fi, avg_power_fs, constant, critical_rate_exponential,
    critical_rate_numeric, default_table2_profile, erlang, erlang_incentive,
    exponential, hyperexp2_fit, incentive_differential, k_star,
    lifespan_years, no_buffer_power, optimal_interval, optimal_size,
    parent_power, power_at_optimal_fi, range_bound, scheme_gap, table3,
    table5, uniform_vector,
)
from powerbuf.sim import (
    FixedInterval, FixedSize, NoBuffer, SimConfig, estimate_stopping, run,
    run_parent,
)
from conftest import assert_matches_printed
from paper_tables import TABLE3, TABLE5, TABLE5_ALT, WORKED_EXAMPLE

HW = default_table2_profile()
BATTERY = Battery(2700.0, 3.3)


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} ({description}): FAIL", flush=True)
        raise
    print(f"ACCEPTANCE {number} ({description}): PASS", flush=True)


def test_criterion_1_table3_reproduction():
    with criterion(1, "full power/lifespan comparison table"):
        start = time.perf_counter()
        rows = table3(HW, BATTERY)
        assert len(rows) == 10
        for row, ref in zip(rows, TABLE3):
            lam, fs_p, fs_y, fi_p, fi_y, fx_p, fx_y = ref
            assert row.rate == lam
            assert_matches_printed(row.power_fs_opt, fs_p, 4)
            assert_matches_printed(row.life_fs_opt, fs_y, 4)
            assert_matches_printed(row.power_fi_opt, fi_p, 4)
            assert_matches_printed(row.life_fi_opt, fi_y, 4)
            assert_matches_printed(row.power_fixed, fx_p, 4)
            assert_matches_printed(row.life_fixed, fx_y, 4)
        assert time.perf_counter() - start < 1.0


def test_criterion_2_table5_reproduction():
    with criterion(2, "fixed-interval lifespan table, both profiles"):
        start = time.perf_counter()
        alt = HardwareProfile(
            e_tx_w=HW.e_tx_w, e_rx_w=HW.e_rx_w, e_r_m=HW.e_r_m,
            e_w_m=HW.e_w_m, e_resyn_m=HW.e_resyn_m, b_size=HW.b_size,
            **TABLE5_ALT)
        rows = table5((HW, alt), BATTERY)
        assert len(rows) == 5
        for row, (label, left, right) in zip(rows, TABLE5):
            assert row.lambda_label == label
            for i, (t_ref, p_ref, y_ref) in enumerate((left, right)):
                assert_matches_printed(row.t_star[i], t_ref, 2)
                assert_matches_printed(row.power[i], p_ref, 2)
                assert_matches_printed(row.years[i], y_ref, 3)
        assert time.perf_counter() - start < 1.0


def test_criterion_3_worked_example():
    with criterion(3, "single-point worked example at rate 0.5"):
        traffic = TrafficProfile(0.5, constant(128))
        b = optimal_size(HW, traffic)
        power = avg_power_fs(HW, traffic, b)
        years = lifespan_years(BATTERY, power)
        assert b == pytest.approx(WORKED_EXAMPLE["b_star"], rel=1e-4)
        assert math.ceil(b / HW.b_size) == WORKED_EXAMPLE["banks"]
        assert power == pytest.approx(WORKED_EXAMPLE["power_fs_opt"],
                                      rel=1e-4)
        assert years == pytest.approx(WORKED_EXAMPLE["lifespan_years"],
                                      rel=1e-4)


def test_criterion_4_variability_constant_special_cases():
    with criterion(4, "variability constant closed forms"):
        assert k_star(exponential(211.5)) == 0.0
        assert k_star(constant(64)) == 1.0 / 12.0
        for alpha in (2, 3, 4, 8):
            expected = float(Fraction(alpha * alpha - 1, 12 * alpha * alpha))
            assert k_star(erlang(alpha, alpha / 128)) == expected


def test_criterion_5_stopping_time_oracle():
    with criterion(5, "first-passage Monte Carlo oracle"):
        start = time.perf_counter()
        mean, var = estimate_stopping(exponential(128), 12800.0,
                                      reps=100_000, seed=3)
        assert 100.0 <= mean <= 101.0
        assert abs(var - 100.0) <= 5.0
        _, var4 = estimate_stopping(erlang(4, 4 / 128), 12800.0,
                                    reps=100_000, seed=3)
        target = 25.0 + (1 - 1 / 16) / 12
        assert target == pytest.approx(25.0781, abs=1e-4)
        assert abs(var4 - target) <= 0.05 * target
        assert time.perf_counter() - start < 30.0


def _matrix_configs():
    mu = 128.0
    laws = {
        "constant": constant(mu),
        "exponential": exponential(mu),
        "erlang4": erlang(4, 4 / mu),
        "hyperexp": hyperexp2_fit(mu, 1.723, 2.718),
    }
    plan = [
        ("fixed_size", "constant", 1.0), ("fixed_size", "exponential", 0.1),
        ("fixed_size", "erlang4", 1.0), ("fixed_size", "hyperexp", 1.0),
        ("fixed_interval", "constant", 0.1), ("fixed_interval", "exponential", 1.0),
        ("fixed_interval", "erlang4", 0.1), ("fixed_interval", "hyperexp", 0.1),
        ("no_buffer", "constant", 1.0), ("no_buffer", "exponential", 0.1),
        ("no_buffer", "erlang4", 0.1), ("no_buffer", "hyperexp", 1.0),
    ]
    for i, (scheme, law, lam) in enumerate(plan):
        traffic = TrafficProfile(lam, laws[law])
        if scheme == "fixed_size":
            b = optimal_size(HW, traffic)
            policy, analytic = FixedSize(b), avg_power_fs(HW, traffic, b)
        elif scheme == "fixed_interval":
            T = optimal_interval(HW, traffic)
            policy, analytic = FixedInterval(T), avg_power_fi(HW, traffic, T)
        else:
            policy, analytic = NoBuffer(), no_buffer_power(HW, traffic)
        yield f"{scheme}/{law}/rate={lam}", traffic, policy, analytic, 1000 + i


def test_criterion_6_simulation_matrix():
    with criterion(6, "simulation vs closed forms, 12-config matrix"):
        start = time.perf_counter()
        for name, traffic, policy, analytic, seed in _matrix_configs():
            result = run(SimConfig(hardware=HW, traffic=traffic,
                                   policy=policy, cycles=100_000, seed=seed))
            gap = abs(result.avg_power - analytic)
            assert gap <= 3.0 * result.stderr_power, (
                f"{name}: sim {result.avg_power} vs analytic {analytic}, "
                f"gap {gap} > 3 x stderr {result.stderr_power}")
            assert gap <= 0.02 * analytic, f"{name}: gap above 2%"
        assert time.perf_counter() - start < 300.0


def test_criterion_7_scheme_gap_signs():
    with criterion(7, "optimal-scheme gap sign structure"):
        rng = np.random.default_rng(1234)
        for _ in range(100):
            hw = HardwareProfile(
                e_wu_w=rng.uniform(10, 800), e_tx_w=8.976, e_rx_w=8.976,
                p_idle_m=rng.uniform(0.05, 10), e_r_m=0.018, e_w_m=0.018,
                e_resyn_m=0.912, b_size=float(rng.choice([64, 128, 256])))
            lam = rng.uniform(0.01, 5.0)
            mu = rng.uniform(16, 1024)
            t_exp = TrafficProfile(lam, exponential(mu))
            power = power_at_optimal_fi(hw, t_exp)
            assert abs(scheme_gap(hw, t_exp)) < 1e-9 * power
            t_const = TrafficProfile(lam, constant(mu))
            assert scheme_gap(hw, t_const) > 0
        hw256 = HardwareProfile(
            e_wu_w=80.0, e_tx_w=8.976, e_rx_w=8.976, p_idle_m=0.409,
            e_r_m=0.018, e_w_m=0.018, e_resyn_m=0.912, b_size=256.0)
        high_var = TrafficProfile(1.0, hyperexp2_fit(64, 1.723, 2.718))
        assert scheme_gap(hw256, high_var) < 0


def test_criterion_8_grid_search_optimality():
    with criterion(8, "grid search never beats the closed-form optima"):
        rng = np.random.default_rng(4321)
        for case in range(50):
            lam = rng.uniform(0.02, 4.0)
            mu = rng.uniform(16, 512)
            law = [constant(mu), exponential(mu),
                   erlang(int(rng.integers(2, 9)), 2 / mu)][case % 3]
            traffic = TrafficProfile(lam, law)
            if case % 2 == 0:
                x_star = optimal_size(HW, traffic)
                grid = np.linspace(x_star / 5, 5 * x_star, 10_000)
                powers = avg_power_fs(HW, traffic, grid)
                p_star = avg_power_fs(HW, traffic, x_star)
            else:
                x_star = optimal_interval(HW, traffic)
                grid = np.linspace(x_star / 5, 5 * x_star, 10_000)
                powers = avg_power_fi(HW, traffic, grid)
                p_star = power_at_optimal_fi(HW, traffic)
            i = int(np.argmin(powers))
            assert 0 < i < len(grid) - 1
            assert grid[i - 1] <= x_star <= grid[i + 1]
            assert powers.min() >= p_star * (1 - 1e-6)


def test_criterion_9_majorization_suite():
    with criterion(9, "majorization ordering of parent power"):
        rng = np.random.default_rng(999)
        for _ in range(1000):
            k = int(rng.integers(2, 9))
            v_prime = rng.uniform(0.0, 10.0, size=k)
            v_prime[int(rng.integers(k))] += 1.0
            i, j = rng.choice(k, size=2, replace=False)
            if v_prime[i] < v_prime[j]:
                i, j = j, i
            v = v_prime.copy()
            t = rng.uniform(0, (v[i] - v[j]) / 2)
            v[i] -= t
            v[j] += t
            assert parent_power(HW, BandwidthVector(v)) \
                >= parent_power(HW, BandwidthVector(v_prime)) - 1e-12
        for k, total in [(2, 50.0), (4, 128.0), (7, 333.0)]:
            diff = parent_power(HW, uniform_vector(total, k)) \
                - parent_power(HW, BandwidthVector([total] + [0.0] * (k - 1)))
            bound = range_bound(HW, total, k)
            assert diff == pytest.approx(bound, rel=1e-9)
        children = [ChildSpec(0.25, 128.0)] * 4
        sim = run_parent(HW, children, cycles=50_000, seed=77)
        assert sim.avg_power == pytest.approx(parent_power(HW, children),
                                              rel=0.05)


def test_criterion_10_incentive_boundary():
    with criterion(10, "incentive-region boundary values"):
        lam_c = critical_rate_numeric(HW, exponential(128))
        assert lam_c == pytest.approx(critical_rate_exponential(HW, 128),
                                      rel=1e-6)
        for alpha in (1, 2, 4):
            _, lam_star, f_star = erlang_incentive(HW, 128, alpha, rate=1.0)
            assert f_star < 0
            direct = incentive_differential(
                HW, TrafficProfile(lam_star, erlang(alpha, alpha / 128)))
            assert direct == pytest.approx(f_star, rel=1e-9)
