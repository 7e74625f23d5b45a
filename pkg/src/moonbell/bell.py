"""Closed-form polarization correlation models and the four-angle Bell sum.

Two analytic models are provided: the quantum prediction for a maximally
entangled photon pair, E(a, b) = cos 2(a - b), and a deterministic
hidden-polarization model whose correlation is the sawtooth
E = 1 - 4*delta/pi (delta = |a - b| folded into [0, pi/2]).  The sawtooth
saturates the classical bound of 2 at the standard test angles, so it is the
sharpest local-realistic fallback for simulations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

CorrelationFn = Callable[[float, float], float]

MODELS = ("quantum", "lhv")

# Quantum and classical ceilings of the four-term combination.
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
CLASSICAL_BOUND = 2.0


def canonical_angle(theta: float) -> float:
    """Fold an analyzer angle into [0, pi); polarizers are pi-periodic."""
    if not math.isfinite(theta):
        raise ValueError("analyzer angle must be finite")
    folded = theta % math.pi
    # tiny negative inputs round up to pi itself under float modulo
    return 0.0 if folded == math.pi else folded


@dataclass(frozen=True)
class ChshSettings:
    """The four analyzer angles of one Bell test, radians.

    Defaults are the standard maximal-violation choice a=0, a'=pi/4,
    b=pi/8, b'=3pi/8.
    """

    a: float = 0.0
    a_prime: float = math.pi / 4.0
    b: float = math.pi / 8.0
    b_prime: float = 3.0 * math.pi / 8.0

    def __post_init__(self) -> None:
        for field in ("a", "a_prime", "b", "b_prime"):
            object.__setattr__(self, field, canonical_angle(getattr(self, field)))

    def pairs(self) -> tuple[tuple[float, float], ...]:
        """The four measured angle combinations, in the order used by
        :func:`chsh_value`: (a,b), (a,b'), (a',b), (a',b')."""
        return (
            (self.a, self.b),
            (self.a, self.b_prime),
            (self.a_prime, self.b),
            (self.a_prime, self.b_prime),
        )


DEFAULT_SETTINGS = ChshSettings()


def quantum_correlation(a: float, b: float) -> float:
    """E(a, b) = cos 2(a - b) for a maximally entangled polarization pair."""
    return math.cos(2.0 * (a - b))


def _folded_delta(a: float, b: float) -> float:
    """|a - b| reduced to [0, pi/2] by polarizer symmetry."""
    delta = abs(a - b) % math.pi
    return math.pi - delta if delta > math.pi / 2.0 else delta


def lhv_correlation(a: float, b: float) -> float:
    """Sawtooth correlation of the deterministic hidden-polarization model.

    Each pair carries a hidden angle lambda, uniform over [0, pi); a
    detector at angle theta reports sign(cos 2(theta - lambda)).  Averaging
    the outcome product over lambda gives 1 - 4*delta/pi.
    """
    return 1.0 - 4.0 * _folded_delta(a, b) / math.pi


@dataclass(frozen=True)
class OutcomeDistribution:
    """Joint probabilities of the four outcome pairs (+1/-1 per arm)."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    def __post_init__(self) -> None:
        probs = self.probabilities()
        if any(p < 0.0 for p in probs):
            raise ValueError("outcome probabilities must be non-negative")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError("outcome probabilities must sum to 1")

    def probabilities(self) -> tuple[float, float, float, float]:
        """In fixed order (++, +-, -+, --); matches outcome products (+1,-1,-1,+1)."""
        return (self.p_pp, self.p_pm, self.p_mp, self.p_mm)

    def correlation(self) -> float:
        """Expectation of the outcome product."""
        return self.p_pp + self.p_mm - self.p_pm - self.p_mp


def outcome_distribution(model: str, a: float, b: float) -> OutcomeDistribution:
    """Joint outcome table for one angle pair under the named model.

    Both tables have unbiased single-arm marginals (each outcome 1/2) and a
    signed sum equal to the model's correlation function.
    """
    if model == "quantum":
        same = math.cos(a - b) ** 2 / 2.0
        diff = math.sin(a - b) ** 2 / 2.0
        return OutcomeDistribution(same, diff, diff, same)
    if model == "lhv":
        e = lhv_correlation(a, b)
        same = (1.0 + e) / 4.0
        diff = (1.0 - e) / 4.0
        return OutcomeDistribution(same, diff, diff, same)
    raise ValueError(f"unknown model {model!r}; choose from {MODELS}")


def chsh_value(correlation_fn: CorrelationFn, settings: ChshSettings = DEFAULT_SETTINGS) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b')."""
    return (
        correlation_fn(settings.a, settings.b)
        - correlation_fn(settings.a, settings.b_prime)
        + correlation_fn(settings.a_prime, settings.b)
        + correlation_fn(settings.a_prime, settings.b_prime)
    )
