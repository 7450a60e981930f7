"""Data-size distributions and first-passage (stopping-time) statistics.

The buffering analyses need three things from a size law: its first three
standardized moments (mean, coefficient of variation, skewness), the
dimensionless constant ``k*`` those moments induce in the asymptotic
variance of the buffer-fill stopping count, and samples for the simulation
oracle.  Five kinds are supported:

* ``constant``     -- every datum has the same size
* ``exponential``  -- memoryless sizes
* ``erlang``       -- sum of ``shape`` exponential phases (low variance)
* ``hyperexp2``    -- two-phase mixture of exponentials (high variance)
* ``moments``      -- no sampleable law, just (mean, cv, skew); lets the
  closed forms be driven by measured traffic statistics

All sizes are in bytes.  Values are immutable and safe to share across
threads; only the caller-supplied random generator carries state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, UnsupportedDistributionError

CONSTANT = "constant"
EXPONENTIAL = "exponential"
ERLANG = "erlang"
HYPEREXP2 = "hyperexp2"
MOMENTS = "moments"

KINDS = (CONSTANT, EXPONENTIAL, ERLANG, HYPEREXP2, MOMENTS)

# integer codes used to hand a distribution to the compiled sim kernels
KIND_CODES = {CONSTANT: 0, EXPONENTIAL: 1, ERLANG: 2, HYPEREXP2: 3}


@dataclass(frozen=True)
class SizeDistribution:
    """A positive data-size law with analytically known moments.

    Build instances through :func:`constant`, :func:`exponential`,
    :func:`erlang`, :func:`hyperexp2`, or :func:`from_moments`; the
    constructors validate parameters and precompute the standardized
    moments.

    Attributes:
        kind: one of the module-level kind names.
        mean: mean size in bytes (mu_y), strictly positive.
        cv: coefficient of variation sigma_y / mu_y, >= 0.
        skew: third standardized moment.
        params: kind-specific raw parameters, used for sampling.
    """

    kind: str
    mean: float
    cv: float
    skew: float
    params: tuple = ()

    @property
    def variance(self) -> float:
        return (self.cv * self.mean) ** 2

    @property
    def sampleable(self) -> bool:
        return self.kind != MOMENTS

    def __str__(self) -> str:
        inner = ", ".join(f"{p:g}" for p in self.params)
        return f"{self.kind}({inner})" if self.params else (
            f"moments(mean={self.mean:g}, cv={self.cv:g}, skew={self.skew:g})"
        )


@dataclass(frozen=True)
class StoppingStats:
    """Asymptotic statistics of the count of arrivals needed to fill b bytes.

    ``mean_tau`` and ``var_tau`` are dimensionless counts; ``k_star`` is the
    intercept constant of the variance line.
    """

    mean_tau: float
    var_tau: float
    k_star: float


def constant(value: float) -> SizeDistribution:
    """Degenerate law: every datum is exactly ``value`` bytes.

    Skewness of a zero-variance law is 0/0; it is defined as 0 here so that
    the variability constant comes out as 1/12, the value the constant-size
    analyses rely on.
    """
    value = float(value)
    if value <= 0:
        raise ParameterError(f"constant size must be positive, got {value}")
    return SizeDistribution(CONSTANT, value, 0.0, 0.0, (value,))


def exponential(mean: float) -> SizeDistribution:
    mean = float(mean)
    if mean <= 0:
        raise ParameterError(f"exponential mean must be positive, got {mean}")
    return SizeDistribution(EXPONENTIAL, mean, 1.0, 2.0, (mean,))


def erlang(shape: int, rate: float) -> SizeDistribution:
    """Erlang law with integer shape alpha >= 1 and rate in 1/bytes.

    mean = shape/rate, cv = 1/sqrt(shape), skew = 2/sqrt(shape).
    ``erlang(1, 1/m)`` coincides with ``exponential(m)``.
    """
    if int(shape) != shape or shape < 1:
        raise ParameterError(f"erlang shape must be an integer >= 1, got {shape}")
    rate = float(rate)
    if rate <= 0:
        raise ParameterError(f"erlang rate must be positive, got {rate}")
    shape = int(shape)
    rs = math.sqrt(shape)
    return SizeDistribution(ERLANG, shape / rate, 1.0 / rs, 2.0 / rs,
                            (float(shape), rate))


def hyperexp2(p: float, mean1: float, mean2: float) -> SizeDistribution:
    """Two-phase hyperexponential: exp(mean1) w.p. p, exp(mean2) otherwise."""
    p, mean1, mean2 = float(p), float(mean1), float(mean2)
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"mixing probability must lie in [0, 1], got {p}")
    if mean1 <= 0 or mean2 <= 0:
        raise ParameterError("hyperexp2 branch means must be positive")
    m1 = p * mean1 + (1 - p) * mean2
    m2 = 2.0 * (p * mean1 ** 2 + (1 - p) * mean2 ** 2)
    m3 = 6.0 * (p * mean1 ** 3 + (1 - p) * mean2 ** 3)
    var = m2 - m1 * m1
    sigma = math.sqrt(max(var, 0.0))
    if sigma == 0.0:  # p in {0,1} or equal means: degenerates to exponential
        cv, skew = 1.0, 2.0
    else:
        mu3 = m3 - 3.0 * m1 * var - m1 ** 3
        cv, skew = sigma / m1, mu3 / sigma ** 3
    return SizeDistribution(HYPEREXP2, m1, cv, skew, (p, mean1, mean2))


def from_moments(mean: float, cv: float, skew: float = 0.0) -> SizeDistribution:
    """Moments-only law for driving the closed forms; not sampleable."""
    mean, cv, skew = float(mean), float(cv), float(skew)
    if mean <= 0:
        raise ParameterError(f"mean must be positive, got {mean}")
    if cv < 0:
        raise ParameterError(f"coefficient of variation must be >= 0, got {cv}")
    return SizeDistribution(MOMENTS, mean, cv, skew, ())


def hyperexp2_balanced(mean: float, cv: float) -> SizeDistribution:
    """Solve for the mixing probability at a target (mean, cv).

    Uses the balanced-means convention (each branch contributes half the
    mean), which pins down the remaining degree of freedom.  Requires
    cv >= 1; cv = 1 collapses to the exponential law.
    """
    mean, cv = float(mean), float(cv)
    if mean <= 0:
        raise ParameterError(f"mean must be positive, got {mean}")
    if cv < 1.0:
        raise ParameterError(
            f"a hyperexponential mixture cannot have cv < 1, got {cv}")
    # cv^2 = 1/(2p(1-p)) - 1 under balanced means
    p = 0.5 * (1.0 + math.sqrt((cv * cv - 1.0) / (cv * cv + 1.0)))
    return hyperexp2(p, mean / (2.0 * p), mean / (2.0 * (1.0 - p)))


def hyperexp2_fit(mean: float, cv: float, skew: float) -> SizeDistribution:
    """Fit a two-phase hyperexponential to three target moments.

    The branch means are the roots of t^2 - a t + b = 0 obtained from the
    reduced moment recursion; infeasible targets (no valid mixture) raise
    :class:`ParameterError`.
    """
    mean, cv, skew = float(mean), float(cv), float(skew)
    if mean <= 0 or cv <= 0:
        raise ParameterError("mean and cv must be positive for a mixture fit")
    sigma = cv * mean
    u1 = mean
    u2 = (sigma * sigma + mean * mean) / 2.0          # E[y^2]/2
    u3 = (skew * sigma ** 3 + 3 * mean * sigma * sigma + mean ** 3) / 6.0
    denom = u2 - u1 * u1
    if denom <= 0:
        raise ParameterError("target moments do not describe a hyperexponential")
    a = (u3 - u1 * u2) / denom
    b = a * u1 - u2
    disc = a * a - 4.0 * b
    if disc < 0:
        raise ParameterError(
            f"no 2-phase hyperexponential has mean={mean}, cv={cv}, skew={skew}")
    root = math.sqrt(disc)
    t1, t2 = (a + root) / 2.0, (a - root) / 2.0
    if t2 <= 0 or t1 <= t2 - 1e-30:
        raise ParameterError(
            f"no 2-phase hyperexponential has mean={mean}, cv={cv}, skew={skew}")
    p = (u1 - t2) / (t1 - t2) if t1 != t2 else 1.0
    if not -1e-12 <= p <= 1 + 1e-12:
        raise ParameterError(
            f"no 2-phase hyperexponential has mean={mean}, cv={cv}, skew={skew}")
    return hyperexp2(min(max(p, 0.0), 1.0), t1, t2)


def moments(d: SizeDistribution) -> tuple[float, float, float, float]:
    """Return (mean, variance, cv, skew) of a size law.

    Analytically exact for the parametric kinds; the moments kind echoes
    its stored values with variance = (cv * mean)^2.
    """
    return d.mean, d.variance, d.cv, d.skew


def k_star_from_cv_skew(cv: float, skew: float) -> float:
    """Variability constant from a (cv, skew) pair.

    k* = (5/4) cv^4 + 1/12 - (2/3) cv^3 skew, evaluated in the rational
    form (15 cv^4 - 8 cv^3 skew + 1)/12 so the memoryless case cancels
    exactly.
    """
    c3 = cv ** 3
    return (15.0 * c3 * cv - 8.0 * c3 * skew + 1.0) / 12.0


def k_star(d: SizeDistribution) -> float:
    """Dimensionless intercept of the asymptotic stopping-count variance.

    Positive skewness shrinks it, negative skewness inflates it.  The
    closed-form special cases are returned directly so they are exact:
    0 for exponential, 1/12 for constant, (1 - 1/alpha^2)/12 for Erlang.
    """
    if d.kind == EXPONENTIAL:
        return 0.0
    if d.kind == CONSTANT:
        return 1.0 / 12.0
    if d.kind == ERLANG:
        a2 = d.params[0] * d.params[0]
        # single division of exactly-representable integers: the result is
        # the correctly rounded value of the rational (a^2 - 1) / (12 a^2)
        return (a2 - 1.0) / (12.0 * a2)
    return k_star_from_cv_skew(d.cv, d.skew)


def stopping_time_stats(d: SizeDistribution, b: float) -> StoppingStats:
    """Asymptotic mean and variance of the arrival count that first fills b.

    mean ~ b/mu_y (the buffer holds b/mu_y data on average) and
    var ~ b cv^2 / mu_y + k*.  Both are large-b approximations; the count
    itself is always >= 1, so the mean is floored there.
    """
    b = float(b)
    if b <= 0:
        raise ParameterError(f"buffer size must be positive, got {b}")
    ks = k_star(d)
    var = b * d.cv ** 2 / d.mean + ks
    if var < 0:
        raise ParameterError(
            f"asymptotic variance is negative for {d} at b={b}; "
            "the large-b model does not apply here")
    return StoppingStats(max(b / d.mean, 1.0), var, ks)


def variance_gap(d1: SizeDistribution, d2: SizeDistribution, b: float) -> float:
    """Stopping-count variance of d1 minus that of d2 at the same mean.

    Raises :class:`ParameterError` when the means differ by more than 1e-9
    relative, because the comparison is only meaningful at equal means.
    """
    if abs(d1.mean - d2.mean) > 1e-9 * max(abs(d1.mean), abs(d2.mean)):
        raise ParameterError(
            f"means differ ({d1.mean} vs {d2.mean}); equal means required")
    return stopping_time_stats(d1, b).var_tau - stopping_time_stats(d2, b).var_tau


def sample(d: SizeDistribution, rng: np.random.Generator) -> float:
    """Draw one size.  Deterministic given the generator state."""
    return float(sample_many(d, 1, rng)[0])


def sample_many(d: SizeDistribution, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` sizes as a float64 array."""
    if not d.sampleable:
        raise UnsupportedDistributionError(
            "a moments-only size law cannot be sampled")
    if d.kind == CONSTANT:
        return np.full(n, d.params[0])
    if d.kind == EXPONENTIAL:
        return rng.exponential(d.params[0], n)
    if d.kind == ERLANG:
        shape, rate = d.params
        return rng.gamma(shape, 1.0 / rate, n)
    p, m1, m2 = d.params
    scale = np.where(rng.random(n) < p, m1, m2)
    return rng.exponential(1.0, n) * scale


def kernel_params(d: SizeDistribution) -> tuple[int, float, float, float]:
    """Encode a sampleable law as (code, p0, p1, p2) for the sim kernels."""
    if not d.sampleable:
        raise UnsupportedDistributionError(
            "a moments-only size law cannot be sampled")
    code = KIND_CODES[d.kind]
    if d.kind == CONSTANT or d.kind == EXPONENTIAL:
        return code, d.params[0], 0.0, 0.0
    if d.kind == ERLANG:
        shape, rate = d.params
        return code, shape, 1.0 / rate, 0.0
    p, m1, m2 = d.params
    return code, p, m1, m2
