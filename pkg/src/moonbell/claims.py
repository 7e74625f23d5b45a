"""Ledger of figures printed in the analyzed proposal versus recomputed values.

The Earth-Moon proposal this toolkit models prints several numbers that do
not follow from its own formulas (bounds quoted three inconsistent ways,
proper-time corrections off by orders of magnitude, a Bell value of 2.2).
Rather than silently "fixing" them, every such figure is kept here as a
claim: where it appears in the source text, the printed value, and the value
this package computes from the stated formula and reference constants.
Reports embed the full ledger so the two columns can always be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bell import DEFAULT_SETTINGS, chsh_value, quantum_correlation
from .bounds import (
    ProperTimeFactor,
    cadence_threshold,
    gain_factor,
    kappa,
    proper_time_factor,
    speed_bound,
)
from .constants import CONSTANTS
from .scenario import detector_separation, preset

# Proper-time corrections as printed in the proposal text (dimensionless).
PUBLISHED_ALPHA_CORRECTION_EARTH = 0.08
PUBLISHED_ALPHA_CORRECTION_MOON = 0.0031

# Earth-Moon distance as rounded in the proposal's abstract, m.
PUBLISHED_EARTH_MOON_DISTANCE_M = 3.9e8

CSV_HEADER = "claim_id,paper_location,paper_value,computed_value,relative_difference"


@dataclass(frozen=True)
class Claim:
    """One printed figure and the value recomputed from the stated formula."""

    claim_id: str
    paper_location: str
    paper_value: float
    computed_value: float
    note: str = ""

    @property
    def relative_difference(self) -> float:
        """(computed - printed) / printed; signed."""
        return (self.computed_value - self.paper_value) / self.paper_value


def _printed_combination(settings=DEFAULT_SETTINGS) -> float:
    # The source text prints the fourth term with a minus sign.
    return (
        quantum_correlation(settings.a, settings.b)
        - quantum_correlation(settings.a, settings.b_prime)
        + quantum_correlation(settings.a_prime, settings.b)
        - quantum_correlation(settings.a_prime, settings.b_prime)
    )


def all_claims() -> tuple[Claim, ...]:
    """The full ledger, sorted by claim id (stable across runs)."""
    gisin = preset("gisin1999")
    cao = preset("cao2017")
    case3 = preset("earth_moon_case3")
    lagrange = preset("lagrange_l4l5")
    mars = preset("mars")

    v_gisin = speed_bound(gisin).v_min_over_c
    v_cao = speed_bound(cao).v_min_over_c
    alpha_earth = proper_time_factor(CONSTANTS.GM_earth, CONSTANTS.R_earth)
    alpha_moon = proper_time_factor(CONSTANTS.GM_moon, CONSTANTS.R_moon)
    k = kappa()

    claims = [
        Claim(
            "chsh_quantum_value",
            "section 2",
            2.2,
            chsh_value(quantum_correlation, DEFAULT_SETTINGS),
            "printed quantum Bell value vs cos-law maximum 2*sqrt(2)",
        ),
        Claim(
            "chsh_printed_sign_combination",
            "section 2",
            2.2,
            _printed_combination(),
            "the printed combination (minus sign on the fourth term) evaluates to sqrt(2)",
        ),
        Claim(
            "gisin_bound_quoted_reference",
            "footnote 1",
            32e7,
            v_gisin,
            "bound quoted from the 1999 experiment report",
        ),
        Claim(
            "gisin_bound_section_figure",
            "section 3.2",
            7e6,
            v_gisin,
            "order-of-magnitude figure in the running text",
        ),
        Claim(
            "gisin_bound_spelled_out",
            "section 3.2",
            7e5,
            v_gisin,
            "'700000 times c' in the running text",
        ),
        Claim(
            "cao_bound_order",
            "section 4.1",
            1e7,
            v_cao,
            "satellite-experiment bound quoted as order 1e7 c",
        ),
        Claim(
            "earth_moon_distance",
            "abstract",
            PUBLISHED_EARTH_MOON_DISTANCE_M,
            CONSTANTS.d_earth_moon_mean,
            "rounded 390,000 km vs mean-distance reference",
        ),
        Claim(
            "earth_moon_gain_vs_city_separation",
            "section 4.2",
            300.0,
            CONSTANTS.d_earth_moon_mean / detector_separation(cao),
            "Earth-Moon distance over the 1203 km ground separation",
        ),
        Claim(
            "earth_moon_gain_bound_ratio",
            "section 4.2",
            300.0,
            gain_factor(case3, cao),
            "ratio of the speed bounds themselves (arm-length ratio)",
        ),
        Claim(
            "lagrange_distance_gain",
            "section 4.2",
            20.0,
            gain_factor(lagrange, case3),
            "gain of the Lagrange-spacecraft configuration over Earth-Moon",
        ),
        Claim(
            "mars_distance_gain",
            "section 4.3",
            1000.0,
            gain_factor(mars, case3),
            "order-of-magnitude gain of a Mars link over Earth-Moon",
        ),
        Claim(
            "alpha_correction_earth",
            "section 4.2",
            PUBLISHED_ALPHA_CORRECTION_EARTH,
            alpha_earth.correction,
            "printed 1 - alpha for Earth vs GM/(R c^2)",
        ),
        Claim(
            "alpha_correction_moon",
            "section 4.2",
            PUBLISHED_ALPHA_CORRECTION_MOON,
            alpha_moon.correction,
            "printed 1 - alpha for the Moon vs GM/(R c^2)",
        ),
        Claim(
            "cadence_threshold",
            "section 4.2",
            12.0,
            cadence_threshold(
                ProperTimeFactor.from_correction(PUBLISHED_ALPHA_CORRECTION_EARTH),
                ProperTimeFactor.from_correction(PUBLISHED_ALPHA_CORRECTION_MOON),
            ),
            "printed 12 photons/sec vs 1/0.08 from the printed corrections",
        ),
        Claim(
            "apriori_kappa",
            "section 3.3",
            1e-39,
            k,
            "order-of-magnitude coupling vs G m_p^2/(hbar c)",
        ),
        Claim(
            "apriori_distance_n_minus_1",
            "section 3.3",
            1e37,
            CONSTANTS.planck_length / k,
            "printed 1e39 cm vs kappa^-1 times the Planck length",
        ),
        Claim(
            "apriori_distance_n_plus_1",
            "section 3.3",
            1e-41,
            CONSTANTS.planck_length * k,
            "printed 1e-39 cm vs kappa times the Planck length",
        ),
    ]
    claims.sort(key=lambda c: c.claim_id)
    return tuple(claims)


def claims_as_dicts() -> list[dict]:
    """Ledger rows as plain dicts (report embedding)."""
    return [
        {
            "claim_id": c.claim_id,
            "paper_location": c.paper_location,
            "paper_value": c.paper_value,
            "computed_value": c.computed_value,
            "relative_difference": c.relative_difference,
            "note": c.note,
        }
        for c in all_claims()
    ]


def claims_csv() -> str:
    """Ledger as CSV text; byte-stable across runs."""
    lines = [CSV_HEADER]
    for c in all_claims():
        lines.append(
            f"{c.claim_id},{c.paper_location},{c.paper_value!r},"
            f"{c.computed_value!r},{c.relative_difference!r}"
        )
    return "\n".join(lines) + "\n"


def claim_by_id(claim_id: str) -> Claim:
    for c in all_claims():
        if c.claim_id == claim_id:
            return c
    raise KeyError(claim_id)
