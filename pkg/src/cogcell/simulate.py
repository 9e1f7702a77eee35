"""Monte Carlo harness: drop users, learn, design, measure access and interference.

One trial = one user dropped uniformly in the macro annulus, one learning
episode of K SNR samples, one designed access probability.  The empirical
interference probability uses the expectation form mean(ap * hit) by default;
a Bernoulli access mode exists for end-to-end realism.  Sweeps are reproducible:
every grid point gets its own child stream spawned from the master seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .apdesign import CaseTag, ScenarioCase, design_ap
from .channel import sample_snr_batch_db
from .config import (
    ACCESS_BERNOULLI,
    ACCESS_EXPECTATION,
    ACCESS_MODES,
    ConfigError,
    SystemConfig,
)
from .geometry import classify_scenario, interference_area, region_areas, region_boundaries
from .learning import SnrSampleSet, binom_tail_table, distance_to_snr_db


class ExternalBaselineUnavailable(NotImplementedError):
    """A comparison algorithm defined only in an external reference."""


@dataclass(frozen=True)
class TrialOutcome:
    access_prob: float
    mu_in_interference_region: bool
    scenario_case: ScenarioCase


@dataclass(frozen=True)
class SimReport:
    """Aggregated results of one sweep point."""

    sweep_name: str
    sweep_value: float
    empirical_ap: float
    stderr_ap: float
    empirical_ip: float
    stderr_ip: float
    n_trials: int
    case_counts: tuple[int, ...]  # indexed by CaseTag order I..VI
    seed: int

    def case_fraction(self, tag: CaseTag) -> float:
        return self.case_counts[tag.value - 1] / self.n_trials


def drop_mu(rng: np.random.Generator, cfg: SystemConfig) -> np.ndarray:
    """One user position, uniform over the annulus between exclusion and cell edge."""
    radius, angle = _drop_mu_polar(rng, cfg, 1)
    return np.array([radius[0] * math.cos(angle[0]), radius[0] * math.sin(angle[0])])


def _drop_mu_polar(rng, cfg, n):
    # Radial inverse-CDF for a uniform annulus: d^2 uniform on [xi^2, R^2].
    u = rng.random(n)
    radius = np.sqrt(cfg.min_distance_km**2 + u * (cfg.macro_radius_km**2 - cfg.min_distance_km**2))
    angle = rng.random(n) * (2.0 * math.pi)
    return radius, angle


def _mean_and_stderr(values: np.ndarray) -> tuple[float, float]:
    n = values.size
    mean = math.fsum(values) / n
    if n < 2:
        return mean, 0.0
    var = math.fsum((values - mean) ** 2) / (n - 1)
    return mean, math.sqrt(var / n)


def run_trial(rng: np.random.Generator, cfg: SystemConfig, d1_km: float) -> TrialOutcome:
    """One full trial; a fixed-seed rng reproduces the outcome sequence bit for bit.

    Same draw order as the batch engine: drop radius, drop angle, CLPC target,
    sample matrix.
    """
    d0, angle = _drop_mu_polar(rng, cfg, 1)
    clpc_db = rng.uniform(cfg.target_snr_db, cfg.target_snr_db, size=1)
    samples = sample_snr_batch_db(cfg, rng, d0, d1_km, clpc_target_db=clpc_db)
    decision = design_ap(SnrSampleSet.from_unsorted(samples[0]), d1_km, cfg)
    gap_sq = d0[0] ** 2 + d1_km**2 - 2.0 * d0[0] * d1_km * math.cos(angle[0])
    hit = bool(gap_sq <= cfg.small_radius_km**2)
    return TrialOutcome(
        access_prob=decision.access_prob,
        mu_in_interference_region=hit,
        scenario_case=decision.scenario_case,
    )


def _simulate_point(
    cfg: SystemConfig,
    d1_km: float,
    n_trials: int,
    rng: np.random.Generator,
    clpc_low_db: float,
    clpc_high_db: float,
    access_mode: str,
):
    """Batch engine for one sweep point; returns per-trial terms and case ids."""
    scenario = classify_scenario(d1_km, cfg)
    areas = region_areas(scenario, d1_km, cfg)
    inner_km, outer_km = region_boundaries(scenario, d1_km, cfg)
    t_in = float(distance_to_snr_db(inner_km, d1_km, cfg.target_snr_db))
    t_out = float(distance_to_snr_db(outer_km, d1_km, cfg.target_snr_db))
    tail = binom_tail_table(cfg.n_samples)

    d0, angle = _drop_mu_polar(rng, cfg, n_trials)
    # True CLPC target per trial; the degenerate interval reproduces the
    # perfectly-known case exactly.
    clpc_db = rng.uniform(clpc_low_db, clpc_high_db, size=n_trials)
    samples = sample_snr_batch_db(cfg, rng, d0, d1_km, clpc_target_db=clpc_db)

    ap, case_id = kernels.evaluate_trials(
        samples, t_in, t_out, tail, cfg.ip_constraint_eta,
        areas.region_km2, areas.interference_km2,
    )
    gap_sq = d0**2 + d1_km**2 - 2.0 * d0 * d1_km * np.cos(angle)
    hit = gap_sq <= cfg.small_radius_km**2

    if access_mode == ACCESS_BERNOULLI:
        access = rng.random(n_trials) < ap
        ap_terms = access.astype(np.float64)
        ip_terms = (access & hit).astype(np.float64)
    else:
        ap_terms = ap
        ip_terms = ap * hit
    return ap_terms, ip_terms, case_id


def _aggregate(sweep_name, sweep_value, ap_terms, ip_terms, case_id, seed) -> SimReport:
    ap_mean, ap_se = _mean_and_stderr(ap_terms)
    ip_mean, ip_se = _mean_and_stderr(ip_terms)
    counts = np.bincount(case_id, minlength=7)[1:7]
    return SimReport(
        sweep_name=sweep_name,
        sweep_value=float(sweep_value),
        empirical_ap=ap_mean,
        stderr_ap=ap_se,
        empirical_ip=ip_mean,
        stderr_ip=ip_se,
        n_trials=int(ap_terms.size),
        case_counts=tuple(int(c) for c in counts),
        seed=seed,
    )


def run_sweep(
    cfg: SystemConfig,
    d1_grid_km,
    n_trials: int,
    seed: int | None = None,
    access_mode: str = ACCESS_EXPECTATION,
) -> list[SimReport]:
    """Independent trials at every d1 grid point; reports in grid order."""
    return run_imperfect_target_sweep(
        cfg, d1_grid_km, n_trials,
        clpc_low_db=cfg.target_snr_db, clpc_high_db=cfg.target_snr_db,
        seed=seed, access_mode=access_mode,
    )


def run_imperfect_target_sweep(
    cfg: SystemConfig,
    d1_grid_km,
    n_trials: int,
    clpc_low_db: float,
    clpc_high_db: float,
    seed: int | None = None,
    access_mode: str = ACCESS_EXPECTATION,
) -> list[SimReport]:
    """d1 sweep where the true CLPC target is uniform in [low, high] dB per trial.

    The learner keeps assuming cfg.target_snr_db; a degenerate interval equals
    the perfectly-known-target sweep exactly.
    """
    grid = [float(v) for v in np.atleast_1d(np.asarray(d1_grid_km, dtype=np.float64))]
    if not grid:
        raise ConfigError("empty d1 grid")
    if n_trials < 1:
        raise ConfigError("n_trials must be >= 1")
    if clpc_low_db > clpc_high_db:
        raise ConfigError("clpc_low_db must not exceed clpc_high_db")
    if access_mode not in ACCESS_MODES:
        raise ConfigError(f"access_mode must be one of {ACCESS_MODES}")
    master = cfg.rng_seed if seed is None else int(seed)
    streams = np.random.SeedSequence(master).spawn(len(grid))
    reports = []
    for d1_km, stream in zip(grid, streams):
        rng = np.random.default_rng(stream)
        ap_terms, ip_terms, case_id = _simulate_point(
            cfg, d1_km, n_trials, rng, clpc_low_db, clpc_high_db, access_mode
        )
        reports.append(_aggregate("d1_km", d1_km, ap_terms, ip_terms, case_id, master))
    return reports


def run_blocks_sweep(
    cfg: SystemConfig,
    blocks: int,
    d1_grid_km,
    n_trials: int,
    seed: int | None = None,
    access_mode: str = ACCESS_EXPECTATION,
) -> list[SimReport]:
    """d1 sweep with the observation-block count overridden."""
    return run_sweep(
        replace(cfg, blocks=int(blocks)), d1_grid_km, n_trials,
        seed=seed, access_mode=access_mode,
    )


def run_target_snr_sweep(
    cfg: SystemConfig,
    d1_km: float,
    target_snr_grid_db,
    n_trials: int,
    seed: int | None = None,
    access_mode: str = ACCESS_EXPECTATION,
) -> list[SimReport]:
    """Sweep the CLPC target (known exactly to the learner) at a fixed placement."""
    grid = [float(v) for v in np.atleast_1d(np.asarray(target_snr_grid_db, dtype=np.float64))]
    if not grid:
        raise ConfigError("empty target SNR grid")
    if n_trials < 1:
        raise ConfigError("n_trials must be >= 1")
    master = cfg.rng_seed if seed is None else int(seed)
    streams = np.random.SeedSequence(master).spawn(len(grid))
    reports = []
    for snr_db, stream in zip(grid, streams):
        point_cfg = replace(cfg, target_snr_db=snr_db)
        rng = np.random.default_rng(stream)
        ap_terms, ip_terms, case_id = _simulate_point(
            point_cfg, d1_km, n_trials, rng, snr_db, snr_db, access_mode
        )
        reports.append(_aggregate("target_snr_db", snr_db, ap_terms, ip_terms, case_id, master))
    return reports


def sli_baseline_ap(d1_km: float, cfg: SystemConfig) -> float:
    """Access probability using only the uniform location prior, no learning.

    The prior chance of hitting the user is interference_area / cell_area, so
    the largest compliant AP is min{eta * cell_area / interference_area, 1}.
    """
    s_c = interference_area(d1_km, cfg)
    if s_c <= 0.0:
        return 1.0
    return min(cfg.ip_constraint_eta * cfg.cell_area_km2 / s_c, 1.0)


def baseline_ap(name: str, d1_km: float, cfg: SystemConfig) -> float:
    """Registered baselines by name; unimplemented comparators raise clearly."""
    key = name.strip().lower()
    if key == "sli":
        return sli_baseline_ap(d1_km, cfg)
    if key == "coverage-detection":
        raise ExternalBaselineUnavailable(
            "the coverage-detection comparator is specified only in an external "
            "reference; not implemented (no fabricated numbers)"
        )
    raise KeyError(f"unknown baseline {name!r}; registered: sli, coverage-detection")
