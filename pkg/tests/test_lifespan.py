import numpy as np
import pytest

from powerbuf import (
    Battery, HardwareProfile, ParameterError, TrafficProfile, avg_power_fs,
    constant, lifespan_vs_cv, lifespan_years, optimal_size, table3, table5,
)
from conftest import assert_matches_printed
from paper_tables import TABLE3, TABLE5, TABLE5_ALT, WORKED_EXAMPLE


def _alt_profile(hw):
    return HardwareProfile(
        e_tx_w=hw.e_tx_w, e_rx_w=hw.e_rx_w, e_r_m=hw.e_r_m, e_w_m=hw.e_w_m,
        e_resyn_m=hw.e_resyn_m, b_size=hw.b_size, **TABLE5_ALT)


class TestLifespanYears:
    def test_worked_example(self, battery):
        years = lifespan_years(battery, WORKED_EXAMPLE["power_fs_opt"])
        assert years == pytest.approx(WORKED_EXAMPLE["lifespan_years"],
                                      abs=1e-6)

    def test_published_high_rate_row(self, battery):
        assert_matches_printed(lifespan_years(battery, 2392.1739), 0.4252, 4)

    def test_inverse_proportionality(self, battery):
        assert lifespan_years(battery, 500.0) \
            == pytest.approx(2 * lifespan_years(battery, 1000.0), rel=1e-12)

    def test_strictly_decreasing_in_power(self, battery):
        powers = np.linspace(100, 5000, 50)
        years = [lifespan_years(battery, p) for p in powers]
        assert all(a > b for a, b in zip(years, years[1:]))

    def test_rejects_nonpositive_power(self, battery):
        with pytest.raises(ParameterError):
            lifespan_years(battery, 0.0)


class TestTable3:
    def test_every_published_cell(self, hw, battery):
        rows = table3(hw, battery)
        assert len(rows) == len(TABLE3)
        for row, ref in zip(rows, TABLE3):
            lam, fs_p, fs_y, fi_p, fi_y, fx_p, fx_y = ref
            assert row.rate == lam
            assert_matches_printed(row.power_fs_opt, fs_p, 4)
            assert_matches_printed(row.life_fs_opt, fs_y, 4)
            assert_matches_printed(row.power_fi_opt, fi_p, 4)
            assert_matches_printed(row.life_fi_opt, fi_y, 4)
            assert_matches_printed(row.power_fixed, fx_p, 4)
            assert_matches_printed(row.life_fixed, fx_y, 4)

    def test_powers_increase_with_rate(self, hw, battery):
        rows = sorted(table3(hw, battery), key=lambda r: r.rate)
        for col in ("power_fs_opt", "power_fi_opt", "power_fixed"):
            values = [getattr(r, col) for r in rows]
            assert all(a < b for a, b in zip(values, values[1:]))

    def test_lifespan_consistency(self, hw, battery):
        for row in table3(hw, battery):
            assert row.life_fs_opt == pytest.approx(
                lifespan_years(battery, row.power_fs_opt), rel=1e-12)


class TestTable5:
    def test_every_published_cell(self, hw, battery):
        rows = table5((hw, _alt_profile(hw)), battery)
        assert len(rows) == len(TABLE5)
        for row, (label, left, right) in zip(rows, TABLE5):
            assert row.lambda_label == label
            assert row.rate == pytest.approx(1.0 / label, rel=1e-12)
            for i, cells in enumerate((left, right)):
                t_ref, p_ref, y_ref = cells
                assert_matches_printed(row.t_star[i], t_ref, 2)
                assert_matches_printed(row.power[i], p_ref, 2)
                assert_matches_printed(row.years[i], y_ref, 3)

    def test_interval_halves_when_rate_quadruples(self, hw, battery):
        rows = table5((hw,), battery, lambdas=(1.0, 0.25))
        assert rows[1].t_star[0] == pytest.approx(rows[0].t_star[0] / 2,
                                                  rel=1e-12)

    def test_rejects_nonpositive_label(self, hw, battery):
        with pytest.raises(ParameterError):
            table5((hw,), battery, lambdas=(0.0,))


class TestLifespanVsCv:
    def test_cv_zero_matches_constant_size_optimum(self, hw, battery):
        lambdas = (1.0, 0.5, 0.1)
        grid = lifespan_vs_cv(hw, battery, lambdas, cvs=(0.0, 1.0))
        for i, lam in enumerate(lambdas):
            traffic = TrafficProfile(lam, constant(hw.b_size))
            power = avg_power_fs(hw, traffic, optimal_size(hw, traffic))
            assert grid[i, 0] == pytest.approx(lifespan_years(battery, power),
                                               rel=1e-12)

    def test_monotone_decline_in_cv(self, hw, battery):
        cvs = np.linspace(0.0, 2.0, 21)
        grid = lifespan_vs_cv(hw, battery, (1.0, 0.25, 0.05), cvs)
        assert np.all(np.diff(grid, axis=1) < 0)

    def test_cv_one_symmetric_law_value(self, hw, battery):
        # symmetric law at cv=1 has k* = 5/4 + 1/12 = 4/3
        from powerbuf import from_moments, k_star
        d = from_moments(hw.b_size, 1.0, 0.0)
        assert k_star(d) == pytest.approx(4 / 3, rel=1e-12)
        traffic = TrafficProfile(0.5, d)
        power = avg_power_fs(hw, traffic, optimal_size(hw, traffic))
        grid = lifespan_vs_cv(hw, battery, (0.5,), (1.0,))
        assert grid[0, 0] == pytest.approx(lifespan_years(battery, power),
                                           rel=1e-12)


def test_battery_energy_budget():
    assert Battery(2700, 3.3).energy_uwh == pytest.approx(8_910_000.0)
    with pytest.raises(ParameterError):
        Battery(0, 3.3)
