"""System-level configuration for the two-tier coexistence model."""

from __future__ import annotations

import math
from dataclasses import dataclass

# Distance-power law: loss_dB(d) = 128 + 37.6 log10(d_km), valid for d >= min distance.
PATH_LOSS_OFFSET_DB = 128.0
PATH_LOSS_SLOPE_DB = 37.6

MODE_IDEAL = "ideal"
MODE_NOISY = "noisy"
MEASUREMENT_MODES = (MODE_IDEAL, MODE_NOISY)

ACCESS_EXPECTATION = "expectation"
ACCESS_BERNOULLI = "bernoulli"
ACCESS_MODES = (ACCESS_EXPECTATION, ACCESS_BERNOULLI)


class ConfigError(ValueError):
    """Raised when a configuration value violates a model invariant."""


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class SystemConfig:
    """Physical and protocol constants of one macro cell with one cognitive small cell.

    Distances are km, powers linear mW; dB values only where the name says so.
    Defaults are the standard evaluation setup: 0.5 km macro cell, 0.1 km small
    cell, -114 dBm noise floor, 20 dB CLPC target, 1% interference budget and
    50 observation blocks of one subblock each.
    """

    macro_radius_km: float = 0.5
    small_radius_km: float = 0.1
    min_distance_km: float = 0.035
    noise_power_mw: float = 10.0 ** -11.4
    target_snr_db: float = 20.0
    ip_constraint_eta: float = 0.01
    shadow_sigma_db: float = 8.0
    blocks: int = 50
    subblocks: int = 1
    measurement_mode: str = MODE_IDEAL
    samples_per_subblock: int = 64
    rng_seed: int = 20260810

    def __post_init__(self):
        r, rr, xi = self.macro_radius_km, self.small_radius_km, self.min_distance_km
        if not 0.0 < xi < rr < r:
            raise ConfigError(
                "radii must satisfy 0 < min_distance_km < small_radius_km "
                f"< macro_radius_km, got {xi}, {rr}, {r}"
            )
        if r <= 2.0 * rr + xi:
            # Required for the near / interior / edge placement regimes to be
            # disjoint intervals of the MBS-SBS distance.
            raise ConfigError(
                "macro_radius_km must exceed 2*small_radius_km + min_distance_km"
            )
        if not 0.0 <= self.ip_constraint_eta < 1.0:
            raise ConfigError("ip_constraint_eta out of (0,1)")
        if self.shadow_sigma_db < 0.0:
            raise ConfigError("shadow_sigma_db must be >= 0")
        if self.noise_power_mw <= 0.0:
            raise ConfigError("noise_power_mw must be > 0")
        if self.blocks < 1:
            raise ConfigError("blocks must be >= 1")
        if self.subblocks < 1:
            raise ConfigError("subblocks must be >= 1")
        if self.measurement_mode not in MEASUREMENT_MODES:
            raise ConfigError(
                f"measurement_mode must be one of {MEASUREMENT_MODES}, "
                f"got {self.measurement_mode!r}"
            )
        if self.samples_per_subblock < 1:
            raise ConfigError("samples_per_subblock must be >= 1")

    @property
    def n_samples(self) -> int:
        """Number of SNR samples one learning episode collects (blocks x subblocks)."""
        return self.blocks * self.subblocks

    @property
    def target_snr_linear(self) -> float:
        return db_to_linear(self.target_snr_db)

    @property
    def cell_area_km2(self) -> float:
        """Area where a macro user may lie: macro disk minus the exclusion disk."""
        return math.pi * (self.macro_radius_km**2 - self.min_distance_km**2)
