"""Parent-node power in a one-level data-collection tree.

Each child buffers its own traffic with the fixed-interval scheme at its
individual optimum and forwards periodic bursts to the parent, which in
turn runs fixed-interval buffering.  The parent's optimal period depends
only on the total child bandwidth, but its power also depends on how that
bandwidth is spread across children, through a sum of square roots: more
evenly spread bandwidth costs the parent more (the square root is concave,
so the sum is Schur-concave).  Majorization is the natural order for
"more evenly spread", and the uniform/degenerate extremes bound the
spread-induced power range.

Deeper trees can be composed by feeding a parent's output stream in as a
child of the next level, but no fidelity claim is made for that
composition; the model here is a single parent with its children.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ParameterError
from .power_model import HardwareProfile


@dataclass(frozen=True)
class ChildSpec:
    """One child node: Poisson rate (1/s) and mean data size (bytes)."""

    rate: float
    mean_size: float

    def __post_init__(self):
        if self.rate <= 0 or self.mean_size <= 0:
            raise ParameterError("child rate and mean size must be positive")

    @property
    def bandwidth(self) -> float:
        return self.rate * self.mean_size


@dataclass(frozen=True)
class BandwidthVector:
    """Per-child bandwidths (bytes/s) of a parent node.

    Zero entries are allowed (a child that contributes nothing), but at
    least one entry must be positive.
    """

    entries: tuple[float, ...]

    def __init__(self, entries: Sequence[float]):
        entries = tuple(float(e) for e in entries)
        if len(entries) < 1:
            raise ParameterError("bandwidth vector needs at least one entry")
        if any(e < 0 for e in entries):
            raise ParameterError("bandwidth entries must be nonnegative")
        if not any(e > 0 for e in entries):
            raise ParameterError("at least one bandwidth entry must be positive")
        object.__setattr__(self, "entries", entries)

    def total(self) -> float:
        return float(sum(self.entries))

    def __len__(self) -> int:
        return len(self.entries)


Children = Union[BandwidthVector, Sequence[ChildSpec]]


def _bandwidths(children: Children) -> np.ndarray:
    if isinstance(children, BandwidthVector):
        return np.asarray(children.entries, dtype=float)
    bw = np.asarray([c.bandwidth for c in children], dtype=float)
    if bw.size == 0:
        raise ParameterError("at least one child is required")
    return bw


def uniform_vector(total_bw: float, k: int) -> BandwidthVector:
    """Every child contributes total_bw / k."""
    if k < 1 or total_bw <= 0:
        raise ParameterError("need k >= 1 and positive total bandwidth")
    return BandwidthVector([total_bw / k] * k)


def degenerate_vector(total_bw: float, k: int) -> BandwidthVector:
    """One child carries everything, the rest contribute nothing."""
    if k < 1 or total_bw <= 0:
        raise ParameterError("need k >= 1 and positive total bandwidth")
    return BandwidthVector([total_bw] + [0.0] * (k - 1))


def parent_optimal_interval(hw: HardwareProfile, children: Children) -> float:
    """Optimal parent period, sqrt(2 e_wu b_size / (p_idle total_bw)).

    Reads the children only through their total bandwidth, so every
    distribution of the same total shares this optimum.
    """
    total = float(_bandwidths(children).sum())
    if total <= 0:
        raise ParameterError("total child bandwidth must be positive")
    return math.sqrt(2.0 * hw.e_wu_w * hw.b_size / (hw.p_idle_m * total))


def parent_power(hw: HardwareProfile, children: Children) -> float:
    """Parent's long-run mean power (uW) at its optimal period.

    Three pieces: the buffering term sqrt(2 p_idle e_wu total/b_size),
    per-byte relay work proportional to the total bandwidth, and a
    per-child reception overhead proportional to sqrt(child bandwidth)
    (one wakeup plus one resynchronization pair per burst, and bursts
    arrive at a rate that scales with sqrt of the child's bandwidth).
    Zero-bandwidth children never transmit and contribute nothing.
    """
    bw = _bandwidths(children)
    total = float(bw.sum())
    if total <= 0:
        raise ParameterError("total child bandwidth must be positive")
    byte_chain = 2.0 * hw.e_tx_w + hw.e_w_m + hw.e_r_m
    per_burst = (hw.e_resyn_m + hw.e_wu_w / 2.0) \
        * math.sqrt(2.0 * hw.p_idle_m / (hw.e_wu_w * hw.b_size))
    return math.sqrt(2.0 * hw.p_idle_m * hw.e_wu_w * total / hw.b_size) \
        + byte_chain * total + per_burst * float(np.sqrt(bw).sum())


def majorizes(x: BandwidthVector, y: BandwidthVector) -> bool:
    """True when x is majorized by y (x is the more even spread).

    With entries in ascending order, every leading partial sum of x must
    dominate that of y, and the totals must agree (1e-9 relative).  The
    relation is a preorder: reflexive and transitive.
    """
    if len(x) != len(y):
        raise ParameterError("vectors must have equal length")
    xs = np.sort(np.asarray(x.entries, dtype=float))
    ys = np.sort(np.asarray(y.entries, dtype=float))
    tx, ty = xs.sum(), ys.sum()
    scale = max(abs(tx), abs(ty), 1e-300)
    if abs(tx - ty) > 1e-9 * scale:
        raise ParameterError(f"totals differ ({tx} vs {ty}); equal sums required")
    cx, cy = np.cumsum(xs), np.cumsum(ys)
    slack = 1e-9 * scale
    return bool(np.all(cx[:-1] >= cy[:-1] - slack))


def power_ordering_check(hw: HardwareProfile, v: BandwidthVector,
                         v_prime: BandwidthVector) -> float:
    """Parent power under v minus under v_prime, for v majorized by v_prime.

    Requires v to be the more even spread (v majorized by v_prime); the
    difference reduces to the per-burst overhead times the gap in the
    sums of square roots, and is therefore nonnegative.
    """
    if not majorizes(v, v_prime):
        raise ParameterError("v must be majorized by v_prime")
    sq_gap = float(np.sqrt(np.asarray(v.entries)).sum()
                   - np.sqrt(np.asarray(v_prime.entries)).sum())
    per_burst = (hw.e_resyn_m + hw.e_wu_w / 2.0) \
        * math.sqrt(2.0 * hw.p_idle_m / (hw.e_wu_w * hw.b_size))
    return per_burst * sq_gap


def range_bound(hw: HardwareProfile, total_bw: float, k: int) -> float:
    """Width of the spread-induced parent power range for k children.

    Parent power under the uniform spread exceeds that under the
    degenerate one by exactly
    (e_resyn + e_wu/2) sqrt(2 p_idle total / (e_wu b_size)) (sqrt(k) - 1),
    growing with the square root of the child count.
    """
    if k < 1:
        raise ParameterError(f"child count must be >= 1, got {k}")
    if total_bw <= 0:
        raise ParameterError(f"total bandwidth must be positive, got {total_bw}")
    return (hw.e_resyn_m + hw.e_wu_w / 2.0) \
        * math.sqrt(2.0 * hw.p_idle_m * total_bw / (hw.e_wu_w * hw.b_size)) \
        * (math.sqrt(k) - 1.0)
