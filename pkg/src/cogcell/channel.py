"""Channel and signal model: path loss, fading, shadowing, power control, SNR observation.

The macro base station runs close-loop power control towards its user, so the
downlink power carries the MBS-user distance.  The small base station overhears
that downlink; in dB its per-subblock SNR is

    target_snr_db + 37.6*log10(d0/d1) + theta_r + theta_s

with theta_r the fading power ratio and theta_s the shadowing difference, both
in dB.  This module provides the scalar building blocks plus the vectorized
sampler the Monte Carlo engine uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import (
    MODE_NOISY,
    PATH_LOSS_OFFSET_DB,
    PATH_LOSS_SLOPE_DB,
    SystemConfig,
    db_to_linear,
)

# Linear-SNR floor applied before dB conversion in the noisy estimator; keeps
# log10 defined when the power estimate lands below the noise floor.
SNR_ESTIMATE_FLOOR = 1e-6


def path_loss_db(d_km: float, min_distance_km: float = 0.035) -> float:
    """Distance-power loss in dB for a link of d_km kilometres."""
    if d_km < min_distance_km:
        raise ValueError(f"link distance {d_km} km below minimum {min_distance_km} km")
    return PATH_LOSS_OFFSET_DB + PATH_LOSS_SLOPE_DB * math.log10(d_km)


def path_loss_gain(d_km: float, min_distance_km: float = 0.035) -> float:
    """Linear power gain 10^-12.8 * d^-3.76; strictly decreasing in distance."""
    if d_km < min_distance_km:
        raise ValueError(f"link distance {d_km} km below minimum {min_distance_km} km")
    return 10.0**-12.8 * d_km**-3.76


@dataclass(frozen=True)
class LinkGeometry:
    """Distances from the MBS to the macro user (d0) and to the small cell (d1)."""

    d0_km: float
    d1_km: float

    def __post_init__(self):
        if self.d0_km <= 0.0 or self.d1_km <= 0.0:
            raise ValueError("link distances must be positive")


@dataclass(frozen=True)
class ChannelDraw:
    """One subblock's channel state: fading powers per subblock, shadowing per block."""

    h0_sq: float
    h1_sq: float
    gs0: float
    gs1: float

    def __post_init__(self):
        if min(self.h0_sq, self.h1_sq, self.gs0, self.gs1) <= 0.0:
            raise ValueError("channel gains must be strictly positive")

    @property
    def fading_ratio_db(self) -> float:
        """theta_r = 10 log10(h1^2 / h0^2)."""
        return 10.0 * math.log10(self.h1_sq / self.h0_sq)

    @property
    def shadow_diff_db(self) -> float:
        """theta_s = 10 log10(gs1) - 10 log10(gs0)."""
        return 10.0 * math.log10(self.gs1) - 10.0 * math.log10(self.gs0)


def clpc_transmit_power_mw(cfg: SystemConfig, d0_km: float, h0_sq: float, gs0: float) -> float:
    """MBS transmit power that hits the SNR target at the user exactly.

    Inverts the user's instantaneous channel, so the received SNR equals the
    target whatever the draw.
    """
    if h0_sq <= 0.0 or gs0 <= 0.0:
        raise ValueError("channel gains must be strictly positive")
    g0 = path_loss_gain(d0_km, cfg.min_distance_km)
    return cfg.target_snr_linear * cfg.noise_power_mw / (h0_sq * g0 * gs0)


def mu_snr_linear(cfg: SystemConfig, d0_km: float, h0_sq: float, gs0: float, p0_mw: float) -> float:
    """Received SNR at the macro user for transmit power p0_mw (linear)."""
    g0 = path_loss_gain(d0_km, cfg.min_distance_km)
    return p0_mw * h0_sq * g0 * gs0 / cfg.noise_power_mw


def measure_snr_linear(snr_linear, m_samples: int, rng: np.random.Generator):
    """Noisy SNR estimate from m complex received samples of signal plus AWGN.

    The averaged sample power over noise, minus one, is an unbiased estimate of
    the linear SNR; its exact law is a scaled noncentral chi-square with 2m
    degrees of freedom.  Floored at SNR_ESTIMATE_FLOOR.  Accepts scalars or
    arrays.
    """
    df = 2.0 * m_samples
    raw = rng.noncentral_chisquare(df, df * np.asarray(snr_linear)) / df - 1.0
    return np.maximum(raw, SNR_ESTIMATE_FLOOR)


def csbs_snr_db(
    cfg: SystemConfig,
    geom: LinkGeometry,
    draw: ChannelDraw,
    rng: np.random.Generator | None = None,
) -> float:
    """SNR of the overheard downlink at the small base station, in dB.

    Ideal mode returns the closed form; noisy mode passes the implied linear
    SNR through the finite-sample estimator and needs an rng.
    """
    if min(geom.d0_km, geom.d1_km) < cfg.min_distance_km:
        raise ValueError("geometry violates the minimum link distance")
    ideal_db = (
        cfg.target_snr_db
        + PATH_LOSS_SLOPE_DB * math.log10(geom.d0_km / geom.d1_km)
        + draw.fading_ratio_db
        + draw.shadow_diff_db
    )
    if cfg.measurement_mode != MODE_NOISY:
        return ideal_db
    if rng is None:
        raise ValueError("noisy measurement mode requires an rng")
    est = measure_snr_linear(db_to_linear(ideal_db), cfg.samples_per_subblock, rng)
    return 10.0 * math.log10(float(est))


def draw_block_channels(cfg: SystemConfig, rng: np.random.Generator) -> list[ChannelDraw]:
    """Draw blocks x subblocks channel states.

    Fading powers are unit-mean exponential per subblock; shadowing is
    log-normal with shadow_sigma_db in dB, redrawn per block and held across
    the block's subblocks.
    """
    draws = []
    for _ in range(cfg.blocks):
        if cfg.shadow_sigma_db > 0.0:
            gs0 = db_to_linear(rng.normal(0.0, cfg.shadow_sigma_db))
            gs1 = db_to_linear(rng.normal(0.0, cfg.shadow_sigma_db))
        else:
            gs0 = gs1 = 1.0
        for _ in range(cfg.subblocks):
            draws.append(
                ChannelDraw(
                    h0_sq=rng.exponential(),
                    h1_sq=rng.exponential(),
                    gs0=gs0,
                    gs1=gs1,
                )
            )
    return draws


def sample_snr_batch_db(
    cfg: SystemConfig,
    rng: np.random.Generator,
    d0_km,
    d1_km: float,
    clpc_target_db=None,
) -> np.ndarray:
    """SNR sample matrix for a batch of independent learning episodes.

    One row per episode (one macro user drop), one column per subblock in
    block-major order.  `d0_km` is a scalar or a length-n vector; the optional
    `clpc_target_db` (scalar or per-episode vector) is the SNR target the power
    control actually tracks, which may differ from the `cfg.target_snr_db` the
    learner assumes.

    Draw order is fixed (fading numerator, fading denominator, per-block
    shadowing, then measurement noise) so a seeded generator reproduces the
    matrix bit for bit.
    """
    d0 = np.atleast_1d(np.asarray(d0_km, dtype=np.float64))
    n = d0.shape[0]
    k = cfg.n_samples
    if clpc_target_db is None:
        clpc_target_db = cfg.target_snr_db
    base = clpc_target_db + PATH_LOSS_SLOPE_DB * np.log10(d0 / d1_km)

    theta_r = 10.0 * np.log10(rng.exponential(size=(n, k)) / rng.exponential(size=(n, k)))
    if cfg.shadow_sigma_db > 0.0:
        block_shadow = rng.normal(
            0.0, math.sqrt(2.0) * cfg.shadow_sigma_db, size=(n, cfg.blocks)
        )
        theta_s = np.repeat(block_shadow, cfg.subblocks, axis=1)
    else:
        theta_s = 0.0

    ideal_db = base[:, None] + theta_r + theta_s
    if cfg.measurement_mode != MODE_NOISY:
        return ideal_db
    est = measure_snr_linear(10.0 ** (ideal_db / 10.0), cfg.samples_per_subblock, rng)
    return 10.0 * np.log10(est)
