"""Distance learning from sorted SNR samples.

Each observed SNR maps through the power-control law to a distance whose median
is the true MBS-user distance.  Counting how many of the K sorted sample
distances fall below a probe distance therefore turns order statistics of fair
coins into probability bounds on where the user actually is.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import PATH_LOSS_SLOPE_DB


def snr_to_distance_km(x_db, d1_km: float, target_snr_db: float):
    """Distance estimate implied by an observed SNR of x_db.

    Strictly increasing in x_db: d1 * 10^((x - target)/37.6).
    """
    return d1_km * 10.0 ** ((np.asarray(x_db, dtype=np.float64) - target_snr_db) / PATH_LOSS_SLOPE_DB)


def distance_to_snr_db(d_km, d1_km: float, target_snr_db: float):
    """Inverse of snr_to_distance_km: the SNR whose distance estimate is d_km."""
    return target_snr_db + PATH_LOSS_SLOPE_DB * np.log10(np.asarray(d_km, dtype=np.float64) / d1_km)


@dataclass(frozen=True)
class SnrSampleSet:
    """One learning episode's K SNR samples in dB, ascending."""

    samples_db: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples_db, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("need a one-dimensional, non-empty sample vector")
        if np.any(np.diff(arr) < 0.0):
            raise ValueError("samples must be sorted ascending")
        object.__setattr__(self, "samples_db", arr)

    @classmethod
    def from_unsorted(cls, values) -> "SnrSampleSet":
        return cls(np.sort(np.asarray(values, dtype=np.float64)))

    @property
    def k(self) -> int:
        return int(self.samples_db.size)


class BoundaryTag(Enum):
    BELOW = "below"       # probe below every sample distance
    BETWEEN = "between"   # k-th sample distance <= probe < (k+1)-th
    ABOVE = "above"       # probe at or above the largest sample distance


@dataclass(frozen=True)
class BoundaryIndex:
    """Where a probe distance sits among the K sorted sample distances.

    `count` is the number of sample distances <= probe (0..K); the tag is the
    derived trichotomy.  Intervals are closed on the left: a probe equal to the
    k-th sample distance belongs to slot k.
    """

    count: int
    k_total: int

    def __post_init__(self):
        if not 0 <= self.count <= self.k_total:
            raise ValueError("count out of range")

    @property
    def tag(self) -> BoundaryTag:
        if self.count == 0:
            return BoundaryTag.BELOW
        if self.count == self.k_total:
            return BoundaryTag.ABOVE
        return BoundaryTag.BETWEEN

    @property
    def between_k(self) -> int:
        if self.tag is not BoundaryTag.BETWEEN:
            raise ValueError(f"no interior index for tag {self.tag}")
        return self.count


def boundary_index(
    samples: SnrSampleSet, d_boundary_km: float, d1_km: float, target_snr_db: float
) -> BoundaryIndex:
    """Locate a boundary distance among the sample distances by binary search.

    Ties resolve to the largest valid slot (left-closed intervals), which also
    handles duplicate sample values.
    """
    if d_boundary_km <= 0.0:
        raise ValueError("boundary distance must be positive")
    distances = snr_to_distance_km(samples.samples_db, d1_km, target_snr_db)
    count = int(np.searchsorted(distances, d_boundary_km, side="right"))
    return BoundaryIndex(count=count, k_total=samples.k)


def binom_tail_half(n: int, k: int) -> float:
    """Pr{Binomial(n, 1/2) >= k}, correctly rounded.

    Accumulates the binomial coefficients with the exact integer recurrence
    C(n, i-1) = C(n, i) * i / (n - i + 1) walking down from i = n, so no
    floating-point 2^n or coefficient is ever formed; the single int-to-float
    conversion at the end rounds correctly for any n where 2^-n is normal
    (n <= 1000 comfortably exceeds 12 significant digits).
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        return 1.0
    coeff = 1  # C(n, n)
    total = 1
    for i in range(n, k, -1):
        coeff = coeff * i // (n - i + 1)
        total += coeff
    return float(total) * 2.0 ** (-n)


def binom_tail_table(n: int) -> np.ndarray:
    """tail[k] = Pr{Binomial(n, 1/2) >= k} for k = 0..n+1 (tail[n+1] = 0)."""
    table = np.zeros(n + 2, dtype=np.float64)
    coeff = 1
    total = 0
    scale = 2.0 ** (-n)
    for k in range(n, -1, -1):
        total += coeff
        table[k] = float(total) * scale
        coeff = coeff * k // (n - k + 1) if k > 0 else coeff
    return table


@dataclass(frozen=True)
class ProbBounds:
    """Closed probability interval [lower, upper]."""

    lower: float
    upper: float

    def __post_init__(self):
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise ValueError(f"invalid bounds [{self.lower}, {self.upper}]")


def distance_tail_bounds(
    samples: SnrSampleSet, probe_km: float, d1_km: float, target_snr_db: float
) -> ProbBounds:
    """Bounds on the probability that the true distance is at least probe_km.

    With the probe in slot c of the sorted sample distances the interval is
    [tail(c+1), tail(c)] of the fair-coin binomial: below all samples that is
    [1 - 2^-K, 1], above all of them [0, 2^-K].
    """
    idx = boundary_index(samples, probe_km, d1_km, target_snr_db)
    n = samples.k
    upper = binom_tail_half(n, idx.count)
    lower = binom_tail_half(n, idx.count + 1) if idx.count < n else 0.0
    return ProbBounds(lower=lower, upper=upper)
