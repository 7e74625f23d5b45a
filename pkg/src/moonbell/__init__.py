"""moonbell: Bell tests at astronomical distances.

Speed-of-correlation lower bounds for arbitrary experiment geometries,
event-timed Monte Carlo of entangled pairs under finite-speed collapse
models, and link-budget/sample-size planning for Earth-Moon scale links.
"""

__version__ = "0.1.0"

from .bell import (
    CLASSICAL_BOUND,
    DEFAULT_SETTINGS,
    MODELS,
    TSIRELSON_BOUND,
    ChshSettings,
    OutcomeDistribution,
    canonical_angle,
    chsh_value,
    lhv_correlation,
    outcome_distribution,
    quantum_correlation,
)
from .bounds import (
    EARTH_MOON_WINDOW,
    MOND_SCALE_M,
    AprioriCandidate,
    ObservationWindow,
    ProperTimeFactor,
    SpeedBound,
    apriori_scales,
    cadence_threshold,
    classify_scale,
    gain_factor,
    kappa,
    mond_candidate,
    proper_time_factor,
    speed_bound,
    swapping_effective_length,
)
from .claims import Claim, all_claims, claim_by_id, claims_as_dicts, claims_csv
from .constants import CONSTANTS, DEFAULT_TAU_S, PhysicalConstants
from .linkbudget import (
    PUBLISHED_CADENCE_THRESHOLD_HZ,
    IntegrationEstimate,
    LinkSpec,
    SignificancePlan,
    budget_report,
    coincidence_rate,
    geometric_loss_db,
    integration_time,
    pairs_for_significance,
)
from .scenario import (
    LOCAL_ARM_M,
    PRESET_NAMES,
    Arm,
    Scenario,
    ScenarioError,
    Site,
    TracePath,
    UnknownPresetError,
    arm_length,
    detector_separation,
    light_time,
    load_scenario,
    load_scenario_file,
    preset,
    scenario_from_dict,
    scenario_to_dict,
    scenario_to_json,
    symmetric_scenario,
    with_equalized_starts,
)
from .simulate import (
    ArmTiming,
    CollapseModel,
    CorrelationEstimate,
    PairRecord,
    SimulationResult,
    SweepCurve,
    SweepPoint,
    connected,
    critical_speed,
    derive_seed,
    scenario_timing,
    simulate,
    sweep_speed,
)

__all__ = [name for name in dir() if not name.startswith("_")]
