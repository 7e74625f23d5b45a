"""Free-space loss scaling, coincidence rates and statistical requirements.

Only the geometric L^-2 law is modeled explicitly (beam divergence against
a finite receiver aperture); atmospheric, pointing and optics losses enter
as one measured reference loss at a reference distance.  Scaling a link
from L_ref to L then adds 20*log10(L/L_ref) dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bell import TSIRELSON_BOUND
from .bounds import ProperTimeFactor, cadence_threshold
from .claims import PUBLISHED_ALPHA_CORRECTION_EARTH, PUBLISHED_ALPHA_CORRECTION_MOON

# Detection rate above which the proposal's quoted proper-time corrections
# start to matter (1/0.08 = 12.5 photons/s).
PUBLISHED_CADENCE_THRESHOLD_HZ = cadence_threshold(
    ProperTimeFactor.from_correction(PUBLISHED_ALPHA_CORRECTION_EARTH),
    ProperTimeFactor.from_correction(PUBLISHED_ALPHA_CORRECTION_MOON),
)

# Per-setting variance of the outcome product at the default angles:
# each |E| = sqrt(2)/2, so 1 - E^2 = 1/2 for all four settings.
_DEFAULT_VARIANCE_SUM = 2.0


@dataclass(frozen=True)
class LinkSpec:
    """One optical arm: its length and a measured reference operating point.

    Parameters
    ----------
    length_m : float
        Actual link length, m.
    reference_length_m : float
        Length at which the total loss was measured or budgeted, m.
    reference_loss_db : float
        Total loss at the reference length (atmosphere, pointing, optics), dB.
    detector_efficiency : float
        End-detector efficiency, in (0, 1].
    """

    length_m: float
    reference_length_m: float
    reference_loss_db: float
    detector_efficiency: float = 1.0

    def __post_init__(self) -> None:
        if not (self.length_m > 0.0 and self.reference_length_m > 0.0):
            raise ValueError("lengths must be > 0")
        if self.reference_loss_db < 0.0:
            raise ValueError("reference loss must be >= 0 dB")
        if not 0.0 < self.detector_efficiency <= 1.0:
            raise ValueError("detector efficiency must be in (0, 1]")

    @property
    def total_loss_db(self) -> float:
        return self.reference_loss_db + geometric_loss_db(self.reference_length_m, self.length_m)


def geometric_loss_db(reference_length_m: float, length_m: float) -> float:
    """Extra loss from stretching a link, dB; the L^-2 law gives 20 dB/decade."""
    if not (reference_length_m > 0.0 and length_m > 0.0):
        raise ValueError("lengths must be > 0")
    return 20.0 * math.log10(length_m / reference_length_m)


@dataclass(frozen=True)
class SignificancePlan:
    """Sample size needed to see a Bell violation at ``k_sigma`` significance."""

    s_expected: float
    classical_bound: float
    k_sigma: float
    pairs_per_setting: int

    @property
    def total_pairs(self) -> int:
        return 4 * self.pairs_per_setting


def pairs_for_significance(s_expected: float, k_sigma: float) -> SignificancePlan:
    """Smallest per-setting count putting the expected violation k sigma out.

    Uses the standard-error model sqrt(sum (1 - E_i^2)/n) with the four
    default-setting correlations |E_i| = sqrt(2)/2 and equal counts per
    setting.  The returned n satisfies
    (s_expected - 2) / sqrt(2/n) >= k_sigma.
    """
    if not s_expected > 2.0:
        raise ValueError("s_expected must exceed the classical bound 2")
    if k_sigma < 0.0:
        raise ValueError("k_sigma must be >= 0")
    n = max(1, math.ceil(_DEFAULT_VARIANCE_SUM * (k_sigma / (s_expected - 2.0)) ** 2))
    return SignificancePlan(
        s_expected=s_expected,
        classical_bound=2.0,
        k_sigma=k_sigma,
        pairs_per_setting=n,
    )


def coincidence_rate(
    pair_rate_hz: float,
    loss_a_db: float,
    loss_b_db: float,
    eff_a: float = 1.0,
    eff_b: float = 1.0,
) -> float:
    """Detected coincidences per second after both arms' losses."""
    if not pair_rate_hz > 0.0:
        raise ValueError("pair rate must be > 0")
    if loss_a_db < 0.0 or loss_b_db < 0.0:
        raise ValueError("losses must be >= 0 dB")
    if not (0.0 < eff_a <= 1.0 and 0.0 < eff_b <= 1.0):
        raise ValueError("efficiencies must be in (0, 1]")
    return pair_rate_hz * 10.0 ** (-loss_a_db / 10.0) * 10.0 ** (-loss_b_db / 10.0) * eff_a * eff_b


@dataclass(frozen=True)
class IntegrationEstimate:
    """Time to collect ``total_pairs`` coincidences at a given rate."""

    time_s: float
    rate_hz: float
    total_pairs: int
    cadence_threshold_hz: float
    correction_applies: bool


def integration_time(
    rate_hz: float,
    total_pairs: int,
    cadence_threshold_hz: float = PUBLISHED_CADENCE_THRESHOLD_HZ,
) -> IntegrationEstimate:
    """total_pairs / rate, flagged when the cadence needs the clock correction."""
    if not rate_hz > 0.0:
        raise ValueError("rate must be > 0")
    if total_pairs < 1:
        raise ValueError("total_pairs must be >= 1")
    return IntegrationEstimate(
        time_s=total_pairs / rate_hz,
        rate_hz=rate_hz,
        total_pairs=total_pairs,
        cadence_threshold_hz=cadence_threshold_hz,
        correction_applies=rate_hz >= cadence_threshold_hz,
    )


def budget_report(
    arm_a: LinkSpec,
    arm_b: LinkSpec,
    pair_rate_hz: float,
    s_expected: float = TSIRELSON_BOUND,
    k_sigma: float = 3.0,
) -> dict:
    """Full link budget as the published JSON shape."""
    rate = coincidence_rate(
        pair_rate_hz,
        arm_a.total_loss_db,
        arm_b.total_loss_db,
        arm_a.detector_efficiency,
        arm_b.detector_efficiency,
    )
    plan = pairs_for_significance(s_expected, k_sigma)
    integration = integration_time(rate, plan.total_pairs)
    return {
        "losses_db": {"arm_a": arm_a.total_loss_db, "arm_b": arm_b.total_loss_db},
        "coincidence_rate": rate,
        "pairs_required": plan.total_pairs,
        "pairs_per_setting": plan.pairs_per_setting,
        "integration_time_s": integration.time_s,
        "cadence_flag": {
            "threshold_hz": integration.cadence_threshold_hz,
            "correction_applies": integration.correction_applies,
        },
    }
