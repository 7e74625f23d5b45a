"""Operational lower bounds on the speed of quantum correlations.

The core rule: if two measurements of duration tau are performed
simultaneously on the two subsystems, an influence confined to the photon
trace paths must cover twice the longest source-to-detector path within tau,
so any experiment that still sees quantum correlations implies

    v_min / c = 2 * L_max / (tau * c).

This module also covers the entanglement-swapping variant of that rule,
configuration-to-configuration gain factors, gravitational proper-time rate
differences between sites, and the dimensional-analysis survey of a-priori
speed/distance scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CONSTANTS
from .scenario import Scenario, arm_length

CLASSIFICATIONS = ("excluded", "unobservable_at_earth_moon", "observable")


@dataclass(frozen=True)
class SpeedBound:
    """Result of the 2*L_max/tau rule, speed in units of c."""

    l_max_m: float
    tau_s: float
    v_min_over_c: float


def speed_bound(scenario: Scenario, tau_override_s: float | None = None) -> SpeedBound:
    """Lower bound on the correlation speed implied by ``scenario``.

    ``tau_override_s`` replaces the scenario's measurement duration; by
    default the larger of the two arm durations is used (the conservative
    choice: a slower measurement weakens the bound).
    """
    if tau_override_s is not None and not tau_override_s > 0.0:
        raise ValueError("tau override must be > 0")
    tau = tau_override_s if tau_override_s is not None else max(a.tau_s for a in scenario.arms)
    l_max = max(arm_length(scenario, 0), arm_length(scenario, 1))
    return SpeedBound(l_max_m=l_max, tau_s=tau, v_min_over_c=2.0 * l_max / (tau * CONSTANTS.c))


def swapping_effective_length(path_a_to_b_via_source_m: float, path_c_to_d_via_source_m: float) -> float:
    """Effective length for an entanglement-swapping experiment, m.

    When A-B and C-D pairs are swapped into an A-D pair, the influence path
    is the longer of the two source-through routes, doubled; dividing the
    result by tau*c gives the swapping bound.
    """
    if not (path_a_to_b_via_source_m > 0.0 and path_c_to_d_via_source_m > 0.0):
        raise ValueError("path lengths must be > 0")
    return 2.0 * max(path_a_to_b_via_source_m, path_c_to_d_via_source_m)


def gain_factor(scenario_new: Scenario, scenario_ref: Scenario) -> float:
    """Ratio of the two scenarios' speed bounds (length ratio at equal tau)."""
    return speed_bound(scenario_new).v_min_over_c / speed_bound(scenario_ref).v_min_over_c


@dataclass(frozen=True)
class ProperTimeFactor:
    """Gravitational time-rate factor alpha = 1 - GM/(R c^2) at a body's surface."""

    alpha: float
    correction: float

    @classmethod
    def from_correction(cls, correction: float) -> "ProperTimeFactor":
        if correction < 0.0:
            raise ValueError("correction must be >= 0")
        return cls(alpha=1.0 - correction, correction=correction)


def proper_time_factor(gm_m3_s2: float, radius_m: float) -> ProperTimeFactor:
    """Proper-time factor for a site on the surface of a body.

    ``gm_m3_s2`` is the body's gravitational parameter GM; the correction
    1 - alpha = GM/(R c^2) is the fractional clock-rate offset relative to a
    far-away observer.
    """
    if not (gm_m3_s2 > 0.0 and radius_m > 0.0):
        raise ValueError("GM and R must be > 0")
    correction = gm_m3_s2 / (radius_m * CONSTANTS.c**2)
    return ProperTimeFactor(alpha=1.0 - correction, correction=correction)


def cadence_threshold(factor_a: ProperTimeFactor, factor_b: ProperTimeFactor) -> float:
    """Detection rate above which the clock-rate difference matters, photons/s.

    Once more than one photon is detected per 1/correction seconds, the
    per-event timestamps shift by a visible fraction of the spacing, so the
    proper-time correction must enter the timing analysis.
    """
    worst = max(factor_a.correction, factor_b.correction)
    if worst == 0.0:
        raise ValueError("both corrections are zero; no finite cadence threshold")
    return 1.0 / worst


@dataclass(frozen=True)
class ObservationWindow:
    """Distance scales an experiment can probe, m."""

    d_min_m: float
    d_max_m: float

    def __post_init__(self) -> None:
        if not self.d_min_m < self.d_max_m:
            raise ValueError("window requires d_min < d_max")


# What an Earth-Moon experiment can see: roughly centimetres up to ten times
# the Earth-Moon distance.
EARTH_MOON_WINDOW = ObservationWindow(1e-2, 10.0 * CONSTANTS.d_earth_moon_mean)

# Distance scale of modified-gravity phenomenology, m.
MOND_SCALE_M = 10.0 * CONSTANTS.kpc


def kappa(mass_kg: float = CONSTANTS.m_proton) -> float:
    """Dimensionless gravitational coupling G m^2 / (hbar c) for the given mass.

    For the proton this is about 5.9e-39; integer powers of it generate the
    only a-priori speed/distance scales available from constants alone.
    """
    if not mass_kg > 0.0:
        raise ValueError("mass must be > 0")
    return CONSTANTS.G * mass_kg**2 / (CONSTANTS.hbar * CONSTANTS.c)


@dataclass(frozen=True)
class AprioriCandidate:
    """One dimensional-analysis candidate: speed V, distance scale D.

    ``n`` is the power of kappa applied to the base values (V = c,
    D = Planck length); ``n=None`` marks rows that do not come from the
    kappa construction (the modified-gravity scale).  ``v_over_c`` may be
    ``inf`` for the instantaneous base case or ``None`` when the hypothesis
    fixes no speed.
    """

    n: int | None
    v_over_c: float | None
    d_m: float
    classification: str

    def __post_init__(self) -> None:
        if self.classification not in CLASSIFICATIONS:
            raise ValueError(f"bad classification {self.classification!r}")
        if self.v_over_c is not None and not self.v_over_c > 0.0:
            raise ValueError("v_over_c must be > 0")


def classify_scale(d_m: float, window: ObservationWindow = EARTH_MOON_WINDOW) -> str:
    """Deterministic, total classification of a distance scale.

    Below the Planck length (or the window floor) the scale is excluded;
    beyond the window ceiling it cannot be observed at Earth-Moon scale;
    anything else is observable.
    """
    if d_m <= CONSTANTS.planck_length or d_m < window.d_min_m:
        return "excluded"
    if d_m > window.d_max_m:
        return "unobservable_at_earth_moon"
    return "observable"


def apriori_scales(
    n_values: list[int],
    mass_kg: float = CONSTANTS.m_proton,
    window: ObservationWindow = EARTH_MOON_WINDOW,
    include_infinite_base: bool = True,
) -> list[AprioriCandidate]:
    """Enumerate kappa-power candidates for the given exponents.

    Each exponent N yields V = kappa^N * c and D = kappa^N * (Planck
    length).  With ``include_infinite_base`` the instantaneous base case
    (V infinite, D at the Planck length) is prepended, since fundamental
    constants alone allow V = c or V = infinity.
    """
    if not n_values:
        raise ValueError("n_values must not be empty")
    k = kappa(mass_kg)
    candidates: list[AprioriCandidate] = []
    if include_infinite_base:
        candidates.append(
            AprioriCandidate(
                n=0,
                v_over_c=math.inf,
                d_m=CONSTANTS.planck_length,
                classification=classify_scale(CONSTANTS.planck_length, window),
            )
        )
    for n in n_values:
        d_m = k**n * CONSTANTS.planck_length
        candidates.append(
            AprioriCandidate(
                n=n,
                v_over_c=k**n,
                d_m=d_m,
                classification=classify_scale(d_m, window),
            )
        )
    return candidates


def mond_candidate(window: ObservationWindow = EARTH_MOON_WINDOW) -> AprioriCandidate:
    """The modified-gravity distance scale (about 10 kpc), no speed attached."""
    return AprioriCandidate(
        n=None,
        v_over_c=None,
        d_m=MOND_SCALE_M,
        classification=classify_scale(MOND_SCALE_M, window),
    )
