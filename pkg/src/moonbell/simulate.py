"""Event-timed Monte Carlo of entangled pairs under finite-speed collapse.

Every pair gets an exact integer-femtosecond timeline in the privileged
frame: photon arrivals, measurement start and end per arm.  A collapse
influence departs from the first-measured arm and travels the combined
trace-path length of both arms (back through the source) at v = v_over_c*c.
If it arrives before the partner measurement ends, the pair is "connected"
and produces quantum statistics; otherwise a fallback model (uncorrelated
or local-hidden-variable) supplies the outcomes.

Randomness is counter-based: every draw is a pure function of
(seed, pair index, slot), so chunking and worker count can never change a
result bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bell import ChshSettings, outcome_distribution
from .constants import CONSTANTS
from .scenario import Scenario, arm_length

FS_PER_SECOND = 1e15

FALLBACKS = ("uncorrelated", "lhv")

# Outcome products for the joint-outcome order (++, +-, -+, --).
_PRODUCTS = np.array([1, -1, -1, 1], dtype=np.int64)
_OUTCOMES = ((1, 1), (1, -1), (-1, 1), (-1, -1))

_BLOCK = 1 << 16


@dataclass(frozen=True)
class CollapseModel:
    """Finite influence speed plus the statistics of disconnected pairs.

    ``depart_at_end`` switches the influence departure from the start of
    the first measurement to its completion (a stricter variant; default
    off).
    """

    v_over_c: float
    fallback: str = "uncorrelated"
    depart_at_end: bool = False

    def __post_init__(self) -> None:
        if not self.v_over_c > 0.0:
            raise ValueError("v_over_c must be > 0 (use math.inf for instantaneous)")
        if self.fallback not in FALLBACKS:
            raise ValueError(f"fallback must be one of {FALLBACKS}")


@dataclass(frozen=True)
class ArmTiming:
    """Integer-femtosecond event times for one arm."""

    arrival_fs: int
    measure_start_fs: int
    measure_end_fs: int


@dataclass(frozen=True)
class PairRecord:
    """One simulated pair, for trace dumps and timing checks."""

    emission_fs: int
    arms: tuple[ArmTiming, ArmTiming]
    connected: bool
    settings: tuple[float, float]
    outcomes: tuple[int, int]


@dataclass(frozen=True)
class CorrelationEstimate:
    """Per-setting correlation estimates and their Bell combination.

    ``e_hat``/``counts`` follow the setting order (a,b), (a,b'), (a',b),
    (a',b'); ``stderr_s`` is sqrt(sum (1 - E^2)/n) over the four settings.
    """

    settings: ChshSettings
    e_hat: tuple[float, float, float, float]
    counts: tuple[int, int, int, int]
    s_hat: float
    stderr_s: float


@dataclass(frozen=True)
class SimulationResult:
    estimate: CorrelationEstimate
    connected: bool
    fraction_connected: float
    n_pairs: int
    seed: int
    records: tuple[PairRecord, ...] = ()


@dataclass(frozen=True)
class SweepPoint:
    v_over_c: float
    s_hat: float
    stderr_s: float
    n_pairs: int
    fraction_connected: float


@dataclass(frozen=True)
class SweepCurve:
    points: tuple[SweepPoint, ...]

    def to_csv(self) -> str:
        """CSV with full-precision floats; byte-stable for fixed inputs."""
        lines = ["v_over_c,S_hat,stderr_S,n_pairs,fraction_connected"]
        for p in self.points:
            lines.append(
                f"{p.v_over_c!r},{p.s_hat!r},{p.stderr_s!r},{p.n_pairs},{p.fraction_connected!r}"
            )
        return "\n".join(lines) + "\n"

    def transition_bracket(self) -> tuple[float | None, float | None]:
        """(largest disconnected v, smallest connected v); None when one-sided."""
        below = None
        above = None
        for p in self.points:
            if p.fraction_connected < 0.5:
                below = p.v_over_c
            elif above is None:
                above = p.v_over_c
        return (below, above)


def _to_fs(seconds: float) -> int:
    """Nearest integer femtosecond."""
    return int(round(seconds * FS_PER_SECOND))


def scenario_timing(scenario: Scenario, emission_fs: int = 0) -> tuple[ArmTiming, ArmTiming]:
    """Arrival and measurement window per arm for one emission, fs."""
    timings = []
    for i in (0, 1):
        arm = scenario.arms[i]
        arrival = emission_fs + _to_fs(arm.path.length_m / CONSTANTS.c)
        start = arrival + _to_fs(arm.offset_s)
        end = start + _to_fs(arm.tau_s)
        timings.append(ArmTiming(arrival, start, end))
    return (timings[0], timings[1])


def _departure_and_window(
    timing: tuple[ArmTiming, ArmTiming], depart_at_end: bool
) -> tuple[int, int]:
    # Arm with the earlier measurement start emits the influence; ties go to
    # arm 0 (symmetric timings make the choice irrelevant).
    first, second = (
        (timing[0], timing[1])
        if timing[0].measure_start_fs <= timing[1].measure_start_fs
        else (timing[1], timing[0])
    )
    departure = first.measure_end_fs if depart_at_end else first.measure_start_fs
    return departure, second.measure_end_fs - departure


def _connects(total_m: float, v_over_c: float, window_fs: int) -> bool:
    # travel_time <= window, cross-multiplied; the single shared expression
    # keeps connected() and critical_speed() bit-consistent at the boundary.
    return total_m * FS_PER_SECOND <= v_over_c * (CONSTANTS.c * window_fs)


def connected(
    timing: tuple[ArmTiming, ArmTiming],
    lengths_m: tuple[float, float],
    v_over_c: float,
    depart_at_end: bool = False,
) -> bool:
    """True when the influence reaches the partner before its measurement ends.

    The influence covers the full trace of both arms (L_first + L_second,
    back through the source); the straight detector-to-detector distance is
    never used.
    """
    if not (lengths_m[0] > 0.0 and lengths_m[1] > 0.0):
        raise ValueError("arm lengths must be > 0")
    if not v_over_c > 0.0:
        raise ValueError("v_over_c must be > 0")
    if math.isinf(v_over_c):
        return True
    _, window_fs = _departure_and_window(timing, depart_at_end)
    return _connects(lengths_m[0] + lengths_m[1], v_over_c, window_fs)


def critical_speed(scenario: Scenario, depart_at_end: bool = False) -> float:
    """Smallest v_over_c (inclusive) at which ``scenario`` is connected.

    Exact boundary of :func:`connected` on the scenario's own timeline:
    v* = (L_0 + L_1) / (c * (start lag + later measurement duration)).
    """
    timing = scenario_timing(scenario)
    lengths = (arm_length(scenario, 0), arm_length(scenario, 1))
    _, window_fs = _departure_and_window(timing, depart_at_end)
    if window_fs <= 0:
        return math.inf
    total_m = lengths[0] + lengths[1]
    v = total_m * FS_PER_SECOND / (CONSTANTS.c * window_fs)
    # Round up to the first float that the connectivity test accepts.
    while not _connects(total_m, v, window_fs):
        v = math.nextafter(v, math.inf)
    return v


# --- counter-based randomness ---------------------------------------------

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)
_SLOT_STRIDE = np.uint64(0xD1342543DE82EF95)


def _mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer on a uint64 array; wraps modulo 2^64."""
    z = x + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX_A
    z = (z ^ (z >> np.uint64(27))) * _MIX_B
    return z ^ (z >> np.uint64(31))


def _mix_scalar(*parts: int) -> np.uint64:
    acc = np.array([0], dtype=np.uint64)
    for p in parts:
        acc = _mix64(acc * _SLOT_STRIDE + np.uint64(p & 0xFFFFFFFFFFFFFFFF))
    return acc[0]


def _uniforms(seed: int, slot: int, indices: np.ndarray) -> np.ndarray:
    """Uniforms in [0, 1) as a pure function of (seed, slot, pair index)."""
    key = _mix_scalar(seed, slot)
    words = _mix64(indices.astype(np.uint64) * _GOLDEN + key)
    return (words >> np.uint64(11)) * 2.0**-53


def derive_seed(seed: int, index: int) -> int:
    """Stable sub-seed for sweep point ``index``."""
    return int(_mix_scalar(seed, index))


def _block_tallies(args: tuple) -> tuple[np.ndarray, np.ndarray]:
    """(setting counts, outcome-product sums) for pair indices [start, stop)."""
    seed, start, stop, cum_probs = args
    idx = np.arange(start, stop, dtype=np.uint64)
    setting = np.minimum((_uniforms(seed, 0, idx) * 4.0).astype(np.int64), 3)
    u = _uniforms(seed, 1, idx)
    thresholds = cum_probs[setting]  # (n, 3) cumulative cut points
    outcome = (u[:, None] >= thresholds).sum(axis=1)
    product = _PRODUCTS[outcome]
    counts = np.bincount(setting, minlength=4)
    # Products are +-1 ints; float partial sums stay exact integers.
    prod_sums = np.bincount(setting, weights=product, minlength=4).astype(np.int64)
    return counts, prod_sums


def _pair_draws(seed: int, n: int, cum_probs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Setting index and outcome index for pairs [0, n) (trace records)."""
    idx = np.arange(0, n, dtype=np.uint64)
    setting = np.minimum((_uniforms(seed, 0, idx) * 4.0).astype(np.int64), 3)
    u = _uniforms(seed, 1, idx)
    outcome = (u[:, None] >= cum_probs[setting]).sum(axis=1)
    return setting, outcome


def _outcome_tables(
    settings: ChshSettings, is_connected: bool, fallback: str
) -> np.ndarray:
    """Joint outcome probabilities per setting combination, shape (4, 4)."""
    rows = []
    for a, b in settings.pairs():
        if is_connected:
            dist = outcome_distribution("quantum", a, b)
            rows.append(dist.probabilities())
        elif fallback == "lhv":
            dist = outcome_distribution("lhv", a, b)
            rows.append(dist.probabilities())
        else:
            rows.append((0.25, 0.25, 0.25, 0.25))
    return np.array(rows, dtype=np.float64)


def _estimate_from_tallies(
    settings: ChshSettings, counts: np.ndarray, prod_sums: np.ndarray
) -> CorrelationEstimate:
    e_hat = np.full(4, np.nan)
    nonzero = counts > 0
    e_hat[nonzero] = prod_sums[nonzero] / counts[nonzero]
    s_hat = e_hat[0] - e_hat[1] + e_hat[2] + e_hat[3]
    with np.errstate(divide="ignore", invalid="ignore"):
        stderr = float(np.sqrt(np.sum((1.0 - e_hat**2) / counts)))
    return CorrelationEstimate(
        settings=settings,
        e_hat=tuple(float(x) for x in e_hat),
        counts=tuple(int(x) for x in counts),
        s_hat=float(s_hat),
        stderr_s=stderr,
    )


def simulate(
    scenario: Scenario,
    model: CollapseModel,
    settings: ChshSettings,
    n_pairs: int,
    seed: int,
    workers: int = 1,
    trace_limit: int = 0,
) -> SimulationResult:
    """Monte Carlo estimate of the Bell combination for one configuration.

    Each pair is assigned one of the four setting combinations uniformly at
    random and sampled from the quantum joint distribution when the timing
    connects the measurements, else from the fallback.  Results are a pure
    function of (scenario, model, settings, n_pairs, seed): worker count and
    chunking cannot change a single bit.
    """
    if n_pairs < 4:
        raise ValueError("n_pairs must be at least 4")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    timing = scenario_timing(scenario)
    lengths = (arm_length(scenario, 0), arm_length(scenario, 1))
    is_connected = connected(timing, lengths, model.v_over_c, model.depart_at_end)

    tables = _outcome_tables(settings, is_connected, model.fallback)
    cum_probs = np.cumsum(tables, axis=1)[:, :3]

    blocks = [
        (seed, start, min(start + _BLOCK, n_pairs), cum_probs)
        for start in range(0, n_pairs, _BLOCK)
    ]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_block_tallies, blocks))
    else:
        results = [_block_tallies(b) for b in blocks]

    counts = np.zeros(4, dtype=np.int64)
    prod_sums = np.zeros(4, dtype=np.int64)
    for c, p in results:
        counts += c
        prod_sums += p

    records: tuple[PairRecord, ...] = ()
    if trace_limit > 0:
        n_rec = min(trace_limit, n_pairs)
        setting_idx, outcome_idx = _pair_draws(seed, n_rec, cum_probs)
        angle_pairs = settings.pairs()
        records = tuple(
            PairRecord(
                emission_fs=0,
                arms=timing,
                connected=is_connected,
                settings=angle_pairs[int(s)],
                outcomes=_OUTCOMES[int(o)],
            )
            for s, o in zip(setting_idx, outcome_idx)
        )

    return SimulationResult(
        estimate=_estimate_from_tallies(settings, counts, prod_sums),
        connected=is_connected,
        fraction_connected=1.0 if is_connected else 0.0,
        n_pairs=n_pairs,
        seed=seed,
        records=records,
    )


def sweep_speed(
    scenario: Scenario,
    fallback: str,
    settings: ChshSettings,
    v_grid: list[float],
    n_pairs_per_point: int,
    seed: int,
    workers: int = 1,
    depart_at_end: bool = False,
) -> SweepCurve:
    """One simulation per grid speed, with independent per-point sub-seeds."""
    grid = [float(v) for v in v_grid]
    if len(grid) == 0:
        raise ValueError("v_grid must not be empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("v_grid must be strictly ascending")
    points = []
    for i, v in enumerate(grid):
        model = CollapseModel(v_over_c=v, fallback=fallback, depart_at_end=depart_at_end)
        result = simulate(
            scenario, model, settings, n_pairs_per_point, derive_seed(seed, i), workers=workers
        )
        points.append(
            SweepPoint(
                v_over_c=v,
                s_hat=result.estimate.s_hat,
                stderr_s=result.estimate.stderr_s,
                n_pairs=n_pairs_per_point,
                fraction_connected=result.fraction_connected,
            )
        )
    return SweepCurve(points=tuple(points))
