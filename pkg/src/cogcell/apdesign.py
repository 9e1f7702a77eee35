"""Access-probability design under the interference-probability constraint.

The region boundaries land somewhere among the K learned sample distances;
the (inner, outer) trichotomy pair picks one of six cases, each with its own
binomial-tail upper bound on the probability that the user is inside the
region.  The designed access probability is then

    min{ eta * region_area / (bound * interference_area), 1 }

which caps the interference probability at eta.  All six tail expressions
collapse to tail(c_in) - tail(c_out + 1) with c the boundary slot counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .config import SystemConfig
from .geometry import (
    RegionAreas,
    Scenario,
    classify_scenario,
    region_areas,
    region_boundaries,
)
from .learning import (
    BoundaryIndex,
    BoundaryTag,
    SnrSampleSet,
    binom_tail_half,
    boundary_index,
)


class CaseTag(Enum):
    I = 1    # both boundaries below every sample distance
    II = 2   # inner below, outer interior
    III = 3  # inner below, outer above: region brackets all samples
    IV = 4   # both interior
    V = 5    # inner interior, outer above
    VI = 6   # both boundaries above every sample distance


_CASE_BY_TAGS = {
    (BoundaryTag.BELOW, BoundaryTag.BELOW): CaseTag.I,
    (BoundaryTag.BELOW, BoundaryTag.BETWEEN): CaseTag.II,
    (BoundaryTag.BELOW, BoundaryTag.ABOVE): CaseTag.III,
    (BoundaryTag.BETWEEN, BoundaryTag.BETWEEN): CaseTag.IV,
    (BoundaryTag.BETWEEN, BoundaryTag.ABOVE): CaseTag.V,
    (BoundaryTag.ABOVE, BoundaryTag.ABOVE): CaseTag.VI,
}


@dataclass(frozen=True)
class ScenarioCase:
    """Scenario plus the six-way case of its two region boundaries."""

    scenario: Scenario
    case: CaseTag
    inner_index: BoundaryIndex
    outer_index: BoundaryIndex


@dataclass(frozen=True)
class ApDecision:
    """Designed access probability with its provenance."""

    access_prob: float
    scenario_case: ScenarioCase
    region_prob_upper: float
    areas: RegionAreas


def classify_case(
    samples: SnrSampleSet, scenario: Scenario, d1_km: float, cfg: SystemConfig
) -> ScenarioCase:
    """Resolve the case from where the region boundaries sit among the samples."""
    inner_km, outer_km = region_boundaries(scenario, d1_km, cfg)
    inner = boundary_index(samples, inner_km, d1_km, cfg.target_snr_db)
    outer = boundary_index(samples, outer_km, d1_km, cfg.target_snr_db)
    if inner.count > outer.count:
        # Cannot happen for a sorted sample set: the distance map is monotone
        # and inner < outer.
        raise RuntimeError(
            f"boundary counts out of order ({inner.count} > {outer.count}); "
            "sample set is not sorted"
        )
    case = _CASE_BY_TAGS.get((inner.tag, outer.tag))
    if case is None:
        raise RuntimeError(f"impossible boundary combination {inner.tag}/{outer.tag}")
    return ScenarioCase(scenario=scenario, case=case, inner_index=inner, outer_index=outer)


def region_prob_upper(case: ScenarioCase, k_total: int) -> float:
    """Upper bound on the probability that the user lies inside the region.

    tail(c_in) - tail(c_out + 1): the all-cases form of the six binomial-sum
    expressions (e.g. case I gives 2^-K, case III gives 1).
    """
    c_in, c_out = case.inner_index.count, case.outer_index.count
    upper_in = binom_tail_half(k_total, c_in)
    lower_out = binom_tail_half(k_total, c_out + 1) if c_out < k_total else 0.0
    return upper_in - lower_out


def max_access_prob(
    eta: float, region_km2: float, interference_km2: float, prob_upper: float
) -> float:
    """Largest access probability keeping eta * region >= bound * interference.

    A zero interference area means no user can be hit, so transmit always.
    """
    if interference_km2 <= 0.0:
        return 1.0
    x = (eta * region_km2) / (prob_upper * interference_km2)
    return x if x < 1.0 else 1.0


def design_ap(samples: SnrSampleSet, d1_km: float, cfg: SystemConfig) -> ApDecision:
    """Full design pipeline for one learning episode: scenario, case, areas, AP."""
    scenario = classify_scenario(d1_km, cfg)
    areas = region_areas(scenario, d1_km, cfg)
    case = classify_case(samples, scenario, d1_km, cfg)
    prob_upper = region_prob_upper(case, samples.k)
    ap = max_access_prob(
        cfg.ip_constraint_eta, areas.region_km2, areas.interference_km2, prob_upper
    )
    return ApDecision(
        access_prob=ap, scenario_case=case, region_prob_upper=prob_upper, areas=areas
    )
