"""Discrete-event Monte Carlo oracle for the buffering policies.

The simulator accumulates per-cycle energy term by term (receive wakeup
and reception per arrival, bank writes with an elevate/demote pair per
arrival, idle-mode bank energy over the exact occupancy times, one
transmit wakeup plus read/transmit work per flush) rather than using the
closed forms, so agreement between the two is a genuine two-path check.
Per-category energy meters are kept to localize any disagreement.

Determinism: a run is a pure function of its config; identical configs
(including seed) on the same backend produce bit-identical results.  The
compiled and pure-numpy backends draw from different generators, so
results are reproducible per (seed, backend) pair; see
:mod:`powerbuf.sim._backend`.

Listening energy is identically zero: wakeups are radio-triggered.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..dist import SizeDistribution, exponential, kernel_params
from ..errors import ParameterError, UnsupportedDistributionError
from ..power_model import HardwareProfile
from ..tree import ChildSpec
from ._backend import resolve_backend
from . import _numpy_kernels as _np_k

CATEGORIES = ("wakeup", "idle", "read", "write", "tx", "rx", "resync")


@dataclass(frozen=True)
class FixedSize:
    """Transmit when the buffered volume first reaches ``b`` bytes."""
    b: float


@dataclass(frozen=True)
class FixedInterval:
    """Transmit every ``T`` seconds regardless of buffered volume."""
    T: float


@dataclass(frozen=True)
class NoBuffer:
    """Forward every arrival immediately."""


Policy = Union[FixedSize, FixedInterval, NoBuffer]


@dataclass(frozen=True)
class SimConfig:
    """One simulation run.

    Exactly one of ``cycles`` (renewal-cycle count) or ``sim_time``
    (seconds) fixes the horizon.  ``quantized_banks`` switches the idle
    occupancy from continuous bytes to whole banks (sensitivity mode;
    the closed forms use the continuous form).
    """

    hardware: HardwareProfile
    traffic: TrafficProfile
    policy: Policy
    cycles: Optional[int] = None
    sim_time: Optional[float] = None
    seed: int = 0
    quantized_banks: bool = False

    def __post_init__(self):
        if (self.cycles is None) == (self.sim_time is None):
            raise ParameterError("specify exactly one of cycles or sim_time")
        if self.cycles is not None and self.cycles < 1:
            raise ParameterError(f"cycles must be >= 1, got {self.cycles}")
        if self.sim_time is not None and self.sim_time <= 0:
            raise ParameterError(f"sim_time must be positive, got {self.sim_time}")
        if isinstance(self.policy, FixedSize) and self.policy.b <= 0:
            raise ParameterError("fixed-size threshold must be positive")
        if isinstance(self.policy, FixedInterval) and self.policy.T <= 0:
            raise ParameterError("fixed-interval period must be positive")


@dataclass(frozen=True)
class SimResult:
    """Long-run averages plus the raw energy bookkeeping of one run.

    ``avg_power`` is total_energy/total_time (uW); ``mean_tau``/``var_tau``
    are the per-cycle arrival-count statistics; ``stderr_power`` is a
    batch-means standard error over contiguous cycle batches.
    ``energy_by_category`` holds the seven meters, which sum exactly to
    ``total_energy``.
    """

    avg_power: float
    total_energy: float
    total_time: float
    cycles: int
    mean_tau: float
    var_tau: float
    mean_cycle_len: float
    stderr_power: float
    energy_by_category: dict
    backend: str


def _fold_seed32(seed: int) -> int:
    """Fold a 64-bit seed into the uint32 range the numba generator takes."""
    seed64 = seed & 0xFFFFFFFFFFFFFFFF
    return (seed64 ^ (seed64 >> 32)) & 0xFFFFFFFF


def _batch_stderr(cycle_energy: np.ndarray, lens: np.ndarray) -> float:
    """Batch-means standard error of the power ratio estimator."""
    n = cycle_energy.size
    if n < 4:
        return float("nan")
    n_batches = 100 if n >= 10_000 else min(30, n // 2)
    p = np.array([e.sum() / l.sum()
                  for e, l in zip(np.array_split(cycle_energy, n_batches),
                                  np.array_split(lens, n_batches))])
    return float(p.std(ddof=1) / math.sqrt(n_batches))


def _assemble(lens: np.ndarray, taus: np.ndarray, cats: np.ndarray,
              backend: str) -> SimResult:
    cat_totals = cats.sum(axis=0)
    by_cat = dict(zip(CATEGORIES, (float(v) for v in cat_totals)))
    total_energy = sum(by_cat.values())
    cycle_energy = cats.sum(axis=1)
    total_time = float(lens.sum())
    n = lens.size
    return SimResult(
        avg_power=total_energy / total_time,
        total_energy=total_energy,
        total_time=total_time,
        cycles=n,
        mean_tau=float(taus.mean()),
        var_tau=float(taus.var(ddof=1)) if n > 1 else 0.0,
        mean_cycle_len=total_time / n,
        stderr_power=_batch_stderr(cycle_energy, lens),
        energy_by_category=by_cat,
        backend=backend,
    )


def _load_numba():
    from . import _numba_kernels as kernels
    return kernels


def _run_cycles(cfg: SimConfig, n_cycles: int, backend: str):
    hw, tr, pol = cfg.hardware, cfg.traffic, cfg.policy
    if backend == "numba":
        k = _load_numba()
        code, p0, p1, p2 = kernel_params(tr.size)
        seed = _fold_seed32(cfg.seed)
        args = (hw.e_wu_w, hw.e_tx_w, hw.e_rx_w, hw.e_r_m, hw.e_w_m,
                hw.e_resyn_m, hw.p_idle_m, hw.b_size)
        if isinstance(pol, FixedSize):
            return k.fixed_size_cycles(n_cycles, tr.rate, pol.b,
                                       code, p0, p1, p2, *args,
                                       cfg.quantized_banks, seed)
        if isinstance(pol, FixedInterval):
            return k.fixed_interval_cycles(n_cycles, tr.rate, pol.T,
                                           code, p0, p1, p2, *args,
                                           cfg.quantized_banks, seed)
        return k.no_buffer_cycles(n_cycles, tr.rate, code, p0, p1, p2,
                                  hw.e_wu_w, hw.e_tx_w, hw.e_rx_w,
                                  hw.e_r_m, hw.e_w_m, hw.e_resyn_m, seed)
    seed = cfg.seed & 0xFFFFFFFFFFFFFFFF
    if isinstance(pol, FixedSize):
        return _np_k.fixed_size_cycles(n_cycles, tr.rate, pol.b, tr.size,
                                       hw, cfg.quantized_banks, seed)
    if isinstance(pol, FixedInterval):
        return _np_k.fixed_interval_cycles(n_cycles, tr.rate, pol.T, tr.size,
                                           hw, cfg.quantized_banks, seed)
    return _np_k.no_buffer_cycles(n_cycles, tr.rate, tr.size, hw, seed)


def _expected_cycle_len(cfg: SimConfig) -> float:
    pol, tr = cfg.policy, cfg.traffic
    if isinstance(pol, FixedSize):
        return pol.b / (tr.rate * tr.size.mean)
    if isinstance(pol, FixedInterval):
        return pol.T
    return 1.0 / tr.rate


def run(cfg: SimConfig, trace_path: Optional[str] = None) -> SimResult:
    """Simulate one buffering policy and return its long-run averages.

    With a ``sim_time`` horizon, whole renewal cycles are simulated until
    the cumulative time first covers the horizon (the crossing cycle is
    kept in full).  ``trace_path`` optionally writes a per-cycle CSV of
    cycle length, arrival count, and the seven energy meters.
    """
    if not cfg.traffic.size.sampleable:
        raise UnsupportedDistributionError(
            "simulation needs a sampleable size law")
    backend = resolve_backend()
    if cfg.cycles is not None:
        lens, taus, cats = _run_cycles(cfg, int(cfg.cycles), backend)
    else:
        # rerun from the same seed with a growing cycle budget until the
        # simulated time covers the horizon, then cut at the crossing cycle
        n = max(int(cfg.sim_time / _expected_cycle_len(cfg) * 1.25) + 64, 64)
        while True:
            lens, taus, cats = _run_cycles(cfg, n, backend)
            cum = np.cumsum(lens)
            if cum[-1] >= cfg.sim_time:
                stop = int(np.searchsorted(cum, cfg.sim_time)) + 1
                lens, taus, cats = lens[:stop], taus[:stop], cats[:stop]
                break
            n *= 2
    if trace_path is not None:
        _write_trace(trace_path, lens, taus, cats)
    return _assemble(lens, taus, cats, backend)


def run_parent(hw: HardwareProfile, children: Sequence[ChildSpec],
               T: Optional[float] = None, *, cycles: int, seed: int = 0,
               sizes: Optional[Sequence[SizeDistribution]] = None,
               quantized_banks: bool = False,
               replications: int = 1) -> SimResult:
    """Simulate a collection-tree parent receiving periodic child bursts.

    Each child transmits every ``sqrt(2 e_wu b_size / (p_idle rate_i
    mu_i))`` seconds (its own fixed-interval optimum, from a random
    initial phase) a payload equal to the sum of its Poisson arrivals
    over one period.  ``T`` defaults to the parent's optimal period.
    ``sizes`` optionally sets each child's per-arrival size law;
    exponential with the child's mean is used otherwise (the parent's
    mean power depends on the law only through its mean).

    ``replications`` pools that many independent runs (fresh phases and
    payloads, one derived seed each); the reported standard error is then
    taken across replication powers.  Child phases persist within a run
    when the burst periods divide the parent period, so averaging over
    replications is the way to estimate small power differences.

    This path is vectorized numpy only; it is never hot enough to warrant
    a compiled kernel.
    """
    if len(children) == 0:
        raise ParameterError("at least one child is required")
    if sizes is None:
        sizes = [exponential(c.mean_size) for c in children]
    if len(sizes) != len(children):
        raise ParameterError("sizes must match children one to one")
    periods = [math.sqrt(2.0 * hw.e_wu_w * hw.b_size
                         / (hw.p_idle_m * c.bandwidth)) for c in children]
    if T is None:
        total = sum(c.bandwidth for c in children)
        T = math.sqrt(2.0 * hw.e_wu_w * hw.b_size / (hw.p_idle_m * total))
    if T <= 0:
        raise ParameterError("parent period must be positive")
    if cycles < 1:
        raise ParameterError(f"cycles must be >= 1, got {cycles}")
    if replications < 1:
        raise ParameterError(f"replications must be >= 1, got {replications}")
    rates = [c.rate for c in children]

    if replications == 1:
        lens, taus, cats = _np_k.parent_cycles(
            rates, sizes, periods, float(T), int(cycles), hw,
            quantized_banks, seed & 0xFFFFFFFFFFFFFFFF)
        return _assemble(lens, taus, cats, "numpy")

    cat_totals = np.zeros(len(CATEGORIES))
    rep_powers = np.empty(replications)
    total_time = 0.0
    tau_n = 0
    tau_sum = 0.0
    tau_sumsq = 0.0
    for r in range(replications):
        rep_seed = (seed + 9973 * r) & 0xFFFFFFFFFFFFFFFF
        lens, taus, cats = _np_k.parent_cycles(
            rates, sizes, periods, float(T), int(cycles), hw,
            quantized_banks, rep_seed)
        rep_energy = cats.sum()
        rep_time = lens.sum()
        rep_powers[r] = rep_energy / rep_time
        cat_totals += cats.sum(axis=0)
        total_time += rep_time
        tau_n += taus.size
        tau_sum += taus.sum()
        tau_sumsq += (taus * taus).sum()
    by_cat = dict(zip(CATEGORIES, (float(v) for v in cat_totals)))
    total_energy = sum(by_cat.values())
    mean_tau = tau_sum / tau_n
    var_tau = (tau_sumsq - tau_n * mean_tau ** 2) / (tau_n - 1)
    return SimResult(
        avg_power=total_energy / total_time,
        total_energy=total_energy,
        total_time=total_time,
        cycles=tau_n,
        mean_tau=mean_tau,
        var_tau=float(var_tau),
        mean_cycle_len=total_time / tau_n,
        stderr_power=float(rep_powers.std(ddof=1)
                           / math.sqrt(replications)),
        energy_by_category=by_cat,
        backend="numpy",
    )


def estimate_stopping(d: SizeDistribution, b: float, reps: int,
                      seed: int = 0) -> tuple[float, float]:
    """Empirical mean and variance of the buffer-fill arrival count.

    Runs ``reps`` independent walks of i.i.d. sizes and records how many
    arrivals each needs to first reach ``b`` bytes.
    """
    if not d.sampleable:
        raise UnsupportedDistributionError(
            "stopping-time estimation needs a sampleable size law")
    if b <= 0:
        raise ParameterError(f"buffer size must be positive, got {b}")
    if reps < 1000:
        raise ParameterError(f"need at least 1000 replications, got {reps}")
    backend = resolve_backend()
    if backend == "numba":
        code, p0, p1, p2 = kernel_params(d)
        taus = _load_numba().stopping_taus(code, p0, p1, p2, float(b),
                                              int(reps), _fold_seed32(seed))
    else:
        taus = _np_k.stopping_taus(d, float(b), int(reps),
                                   seed & 0xFFFFFFFFFFFFFFFF)
    return float(taus.mean()), float(taus.var(ddof=1))


def _write_trace(path: str, lens: np.ndarray, taus: np.ndarray,
                 cats: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["cycle_index", "cycle_len_s", "tau"]
                        + [f"e_{c}" for c in CATEGORIES])
        for i in range(lens.size):
            writer.writerow([i, repr(float(lens[i])), int(taus[i])]
                            + [repr(float(v)) for v in cats[i]])


__all__ = [
    "CATEGORIES", "FixedSize", "FixedInterval", "NoBuffer",
    "SimConfig", "SimResult", "run", "run_parent", "estimate_stopping",
]
