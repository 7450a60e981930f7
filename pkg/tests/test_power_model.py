import pytest

from powerbuf import (
    HardwareProfile, ParameterError, TrafficProfile, bandwidth, constant,
    default_table2_profile, exponential,
)


class TestDefaultProfile:
    def test_stock_values(self, hw):
        assert hw.e_tx_w == 8.976
        assert hw.e_rx_w == 8.976
        assert hw.e_wu_w == 80.0
        assert hw.p_idle_m == 0.409
        assert hw.e_resyn_m == 0.912
        assert hw.b_size == 128.0

    def test_transmit_energy_derivation(self, hw):
        # 8.5 mA at 3.3 V moving 8 bits at 25 kbps
        assert hw.e_tx_w == pytest.approx(8.5 * 3.3 * 8 / 25, rel=1e-12)

    def test_read_write_split(self, hw):
        assert hw.e_r_m + hw.e_w_m == pytest.approx(0.036, rel=1e-12)
        assert hw.rw_byte_energy == pytest.approx(0.036, rel=1e-12)


class TestHardwareProfile:
    def test_value_object_equality(self):
        assert default_table2_profile() == default_table2_profile()

    def test_rejects_nonpositive(self):
        kwargs = dict(e_wu_w=80, e_tx_w=9, e_rx_w=9, p_idle_m=0.4,
                      e_r_m=0.02, e_w_m=0.02, e_resyn_m=0.9, b_size=128)
        for key in kwargs:
            bad = dict(kwargs, **{key: 0.0})
            with pytest.raises(ParameterError):
                HardwareProfile(**bad)

    def test_resyn_from_transition_energies(self):
        hw = HardwareProfile.from_transition_energies(
            e_ena_m=1.0, e_dem_m=0.824, e_wu_w=80, e_tx_w=9, e_rx_w=9,
            p_idle_m=0.4, e_r_m=0.02, e_w_m=0.02, b_size=128)
        assert hw.e_resyn_m == pytest.approx((1.0 + 0.824) / 2)


class TestTraffic:
    @pytest.mark.parametrize("rate,mu,expected", [
        (0.5, 128, 64.0), (1.0, 128, 128.0), (0.1, 64, 6.4),
    ])
    def test_bandwidth(self, rate, mu, expected):
        t = TrafficProfile(rate, constant(mu))
        assert bandwidth(t) == pytest.approx(expected, rel=1e-12)

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(ParameterError):
            TrafficProfile(0.0, exponential(64))
