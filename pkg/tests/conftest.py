import numpy as np
import pytest

from powerbuf import Battery, default_table2_profile


@pytest.fixture
def hw():
    return default_table2_profile()


@pytest.fixture
def battery():
    return Battery(capacity_mah=2700.0, voltage_v=3.3)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def assert_matches_printed(computed: float, printed: float, decimals: int):
    """Check a computed value against a published one at printed precision.

    Passes when the value, rounded to the printed number of decimals,
    differs from the printed figure by at most one unit in the last digit
    (the published tables carry a couple of one-ulp rounding slips).
    """
    ulp = 10.0 ** -decimals
    assert abs(round(computed, decimals) - printed) <= ulp + 1e-12, (
        f"{computed!r} rounds to {round(computed, decimals)!r}, "
        f"published value is {printed!r} (+-{ulp})")
