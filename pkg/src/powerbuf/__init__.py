"""Power-aware buffering models for duty-cycled sensor nodes.

Closed-form long-run power models and optimizers for fixed-size and
fixed-interval data buffering, their comparison (incentive regions,
scheme gap), battery-lifespan projection, collection-tree parent power
with majorization analysis, and a discrete-event Monte Carlo oracle that
validates every closed form.
"""

from .dist import (
    SizeDistribution, StoppingStats, constant, erlang, exponential,
    from_moments, hyperexp2, hyperexp2_balanced, hyperexp2_fit, k_star,
    k_star_from_cv_skew, moments, sample, sample_many, stopping_time_stats,
    variance_gap,
)
from .errors import (
    ConfigError, InfeasibleError, NoRootError, ParameterError, PowerBufError,
    UnsupportedDistributionError,
)
from .power_model import (
    HardwareProfile, TrafficProfile, bandwidth, default_table2_profile,
)
from .fixed_size import (
    FixedSizeEval, avg_power_fs, evaluate_fixed_size, gain_fs,
    optimal_bank_count, optimal_size, optimal_size_banked,
    relative_variation_effect, size_variation_penalty,
)
from .fixed_interval import (
    FixedIntervalEval, avg_power_fi, evaluate_fixed_interval, gain_fi,
    no_buffer_power, optimal_interval, power_at_optimal_fi,
)
from .compare import (
    IncentiveReport, critical_rate_exponential, critical_rate_numeric,
    erlang_incentive, incentive_differential, incentive_report, scheme_gap,
)
from .lifespan import (
    Battery, IntervalLifespanRow, LifespanRow, lifespan_vs_cv,
    lifespan_years, table3, table5,
)
from .tree import (
    BandwidthVector, ChildSpec, degenerate_vector, majorizes,
    parent_optimal_interval, parent_power, power_ordering_check, range_bound,
    uniform_vector,
)

__version__ = "0.1.0"
