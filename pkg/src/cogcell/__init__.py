"""Underlay coexistence toolkit for a cognitive small cell in a macro cell.

Learns the macro-user distance from power-controlled downlink SNR samples,
bounds where the user can be, designs the largest access probability that
respects an interference budget, and reproduces the access/interference sweeps
by Monte Carlo.
"""

from .apdesign import ApDecision, CaseTag, ScenarioCase, classify_case, design_ap
from .channel import (
    ChannelDraw,
    LinkGeometry,
    clpc_transmit_power_mw,
    csbs_snr_db,
    draw_block_channels,
    path_loss_gain,
    sample_snr_batch_db,
)
from .config import ConfigError, SystemConfig
from .geometry import (
    RegionAreas,
    Scenario,
    circle_overlap_area,
    classify_scenario,
    interference_area,
    interference_area_edge,
    interference_area_near,
    region_areas,
)
from .kernels import active_backend, available_backends, evaluate_trials
from .learning import (
    BoundaryIndex,
    BoundaryTag,
    ProbBounds,
    SnrSampleSet,
    binom_tail_half,
    binom_tail_table,
    boundary_index,
    distance_tail_bounds,
    distance_to_snr_db,
    snr_to_distance_km,
)
from .simulate import (
    SimReport,
    TrialOutcome,
    baseline_ap,
    drop_mu,
    run_blocks_sweep,
    run_imperfect_target_sweep,
    run_sweep,
    run_target_snr_sweep,
    run_trial,
    sli_baseline_ap,
)
from .snrstats import (
    SnrCdfModel,
    cdf_fading_ratio_db,
    median_snr_db,
    pdf_fading_ratio_db,
    pdf_shadow_diff_db,
    snr_cdf_db,
    snr_cdf_db_many,
)

__version__ = "0.1.0"
