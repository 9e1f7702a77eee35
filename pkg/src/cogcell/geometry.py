"""Placement scenarios and interference-region geometry.

The small cell's placement splits into three regimes by its distance d1 from
the macro station: near (the coverage disk reaches the exclusion disk), interior
(fully inside the macro cell) and edge (the disk crosses the macro boundary).
Each regime has an annular region where the served user could be hit, and an
interference area: the part of the small-cell disk a user may actually occupy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .config import ConfigError, SystemConfig

# Relative slack for tangency detection and arccos domain guarding.
_EDGE_TOL = 1e-12


class Scenario(Enum):
    NEAR = 1      # xi <= d1 <= r + xi
    INTERIOR = 2  # r + xi < d1 < R - r
    EDGE = 3      # R - r <= d1 <= R + r


def _snap(value: float, target: float) -> float:
    if abs(value - target) <= _EDGE_TOL * max(abs(target), 1.0):
        return target
    return value


def normalize_d1(d1_km: float, cfg: SystemConfig) -> float:
    """Snap d1 onto the modelled range when within rounding slack, else reject.

    Grid generators routinely land an ulp outside [xi, R + r]; anything further
    out is a real domain error.
    """
    lo = cfg.min_distance_km
    hi = cfg.macro_radius_km + cfg.small_radius_km
    d1 = _snap(_snap(float(d1_km), lo), hi)
    if not lo <= d1 <= hi:
        raise ConfigError(f"d1={d1_km} km outside the modelled range [{lo}, {hi}] km")
    return d1


def classify_scenario(d1_km: float, cfg: SystemConfig) -> Scenario:
    """Which placement regime a small cell at distance d1 from the MBS is in."""
    d1 = normalize_d1(d1_km, cfg)
    if d1 <= cfg.small_radius_km + cfg.min_distance_km:
        return Scenario.NEAR
    if d1 < cfg.macro_radius_km - cfg.small_radius_km:
        return Scenario.INTERIOR
    return Scenario.EDGE


def _guarded_arccos(u: float) -> float:
    """arccos with clamping only for arguments within _EDGE_TOL of +-1."""
    if u > 1.0:
        if u - 1.0 > _EDGE_TOL:
            raise ValueError(f"arccos argument {u} out of domain")
        u = 1.0
    elif u < -1.0:
        if -1.0 - u > _EDGE_TOL:
            raise ValueError(f"arccos argument {u} out of domain")
        u = -1.0
    return math.acos(u)


def circle_overlap_area(r_a: float, r_b: float, d: float) -> float:
    """Intersection area of two circles with radii r_a, r_b and centre gap d.

    Sector at each centre minus the kite between them; tangency within
    _EDGE_TOL (relative) snaps to the exact contained/disjoint value so the
    areas are continuous through the geometric seams.
    """
    if min(r_a, r_b, d) < 0.0:
        raise ValueError("radii and distance must be nonnegative")
    if d >= (r_a + r_b) * (1.0 - _EDGE_TOL):
        return 0.0
    if d <= abs(r_a - r_b) * (1.0 + _EDGE_TOL) or d == 0.0:
        rmin = min(r_a, r_b)
        return math.pi * rmin * rmin
    phi_a = _guarded_arccos((r_a * r_a + d * d - r_b * r_b) / (2.0 * r_a * d))
    phi_b = _guarded_arccos((r_b * r_b + d * d - r_a * r_a) / (2.0 * r_b * d))
    return phi_a * r_a * r_a + phi_b * r_b * r_b - r_a * d * math.sin(phi_a)


def interference_area_near(d1_km: float, r_km: float, xi_km: float) -> float:
    """Small-cell disk area minus its overlap with the exclusion disk (near regime)."""
    if not xi_km * (1.0 - _EDGE_TOL) <= d1_km <= (r_km + xi_km) * (1.0 + _EDGE_TOL):
        raise ValueError(f"d1={d1_km} km outside the near regime [{xi_km}, {r_km + xi_km}] km")
    return math.pi * r_km * r_km - circle_overlap_area(xi_km, r_km, d1_km)


def interference_area_edge(d1_km: float, r_km: float, big_r_km: float) -> float:
    """Lens of the small-cell disk and the macro disk (edge regime)."""
    lo, hi = big_r_km - r_km, big_r_km + r_km
    if not lo * (1.0 - _EDGE_TOL) <= d1_km <= hi * (1.0 + _EDGE_TOL):
        raise ValueError(f"d1={d1_km} km outside the edge regime [{lo}, {hi}] km")
    return circle_overlap_area(big_r_km, r_km, d1_km)


@dataclass(frozen=True)
class RegionAreas:
    """Region where interference is possible, and the interference area inside it."""

    region_km2: float
    interference_km2: float

    def __post_init__(self):
        if not 0.0 <= self.interference_km2 <= self.region_km2:
            raise ValueError("interference area must lie within the region area")


def region_boundaries(scenario: Scenario, d1_km: float, cfg: SystemConfig) -> tuple[float, float]:
    """Inner and outer MBS distance delimiting the interference-capable region."""
    d1 = normalize_d1(d1_km, cfg)
    r = cfg.small_radius_km
    if scenario is Scenario.NEAR:
        return cfg.min_distance_km, d1 + r
    if scenario is Scenario.INTERIOR:
        return d1 - r, d1 + r
    return d1 - r, cfg.macro_radius_km


def region_areas(scenario: Scenario, d1_km: float, cfg: SystemConfig) -> RegionAreas:
    """Areas for the given scenario; raises if the scenario does not match d1."""
    if classify_scenario(d1_km, cfg) is not scenario:
        raise ConfigError(f"scenario {scenario} inconsistent with d1={d1_km} km")
    d1 = normalize_d1(d1_km, cfg)
    r, big_r, xi = cfg.small_radius_km, cfg.macro_radius_km, cfg.min_distance_km
    if scenario is Scenario.NEAR:
        region = math.pi * ((d1 + r) ** 2 - xi**2)
        interference = interference_area_near(d1, r, xi)
    elif scenario is Scenario.INTERIOR:
        region = math.pi * ((d1 + r) ** 2 - (d1 - r) ** 2)
        interference = math.pi * r * r
    else:
        region = math.pi * (big_r**2 - (d1 - r) ** 2)
        interference = interference_area_edge(d1, r, big_r)
    return RegionAreas(region_km2=region, interference_km2=interference)


def interference_area(d1_km: float, cfg: SystemConfig) -> float:
    """Interference area for any valid d1, dispatching on the placement regime."""
    scenario = classify_scenario(d1_km, cfg)
    return region_areas(scenario, d1_km, cfg).interference_km2
