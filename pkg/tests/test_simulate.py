import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from moonbell import (
    CONSTANTS,
    DEFAULT_SETTINGS,
    ArmTiming,
    ChshSettings,
    CollapseModel,
    connected,
    critical_speed,
    preset,
    scenario_timing,
    simulate,
    speed_bound,
    sweep_speed,
    symmetric_scenario,
    with_equalized_starts,
)
from moonbell.simulate import derive_seed

C = CONSTANTS.c


def _timing(starts_fs, taus_fs, arrivals_fs=None):
    arrivals = arrivals_fs or starts_fs
    return tuple(
        ArmTiming(arrival_fs=a, measure_start_fs=s, measure_end_fs=s + t)
        for a, s, t in zip(arrivals, starts_fs, taus_fs)
    )


def test_timing_uses_exact_femtosecond_integers():
    t0, t1 = scenario_timing(preset("earth_moon_case3"))
    for t in (t0, t1):
        assert isinstance(t.arrival_fs, int)
        assert isinstance(t.measure_start_fs, int)
        assert isinstance(t.measure_end_fs, int)
    # long arm: 3.844e8 m at c, in fs
    assert t1.arrival_fs == round(3.844e8 / C * 1e15)
    assert t1.arrival_fs > 1.28e15  # seconds-scale delay
    assert t1.measure_end_fs - t1.measure_start_fs == 5000  # 5 ps window
    assert t0.measure_start_fs == t0.arrival_fs  # no offset configured


def test_timing_applies_offsets():
    s = with_equalized_starts(preset("earth_moon_case3"))
    t0, t1 = scenario_timing(s)
    assert t0.arrival_fs < t1.arrival_fs
    assert abs(t0.measure_start_fs - t1.measure_start_fs) <= 1


def test_connected_infinite_speed():
    timing = _timing((0, 0), (5000, 5000))
    assert connected(timing, (1.0, 1.0), math.inf) is True


def test_connected_threshold_symmetric():
    # simultaneous starts, both arms 3.844e8 m, tau = 5 ps
    timing = _timing((0, 0), (5000, 5000))
    lengths = (3.844e8, 3.844e8)
    v_star = 2 * 3.844e8 / (5e-12 * C)
    assert connected(timing, lengths, v_star * 1.001)
    assert not connected(timing, lengths, v_star * 0.999)
    assert v_star == pytest.approx(5.13e11, rel=5e-3)


def test_connected_at_exact_critical_speed():
    for name in ("gisin1999", "earth_moon_case2", "earth_moon_case3", "mars"):
        scen = preset(name)
        v_star = critical_speed(scen)
        timing = scenario_timing(scen)
        lengths = (scen.arms[0].path.length_m, scen.arms[1].path.length_m)
        assert connected(timing, lengths, v_star)
        assert connected(timing, lengths, v_star * 1.05)
        assert not connected(timing, lengths, v_star * 0.95)


def test_critical_speed_symmetric_matches_bound():
    s = symmetric_scenario(3.844e8)
    assert critical_speed(s) == pytest.approx(
        speed_bound(s).v_min_over_c, rel=1e-9
    )
    assert critical_speed(s) == pytest.approx(512_888_152_776.68, rel=1e-9)


def test_critical_speed_natural_timing_just_below_light_speed():
    # With measurements at the natural photon arrivals, the light-time head
    # start of the short arm covers almost the whole influence path.
    scen = preset("earth_moon_case3")
    v_star = critical_speed(scen)
    l_long = scen.arms[1].path.length_m
    expected = l_long / (l_long + C * 5e-12)
    assert v_star < 1.0
    assert v_star == pytest.approx(expected, rel=1e-6)
    timing = scenario_timing(scen)
    lengths = (scen.arms[0].path.length_m, l_long)
    assert connected(timing, lengths, 1.0 + 1e-6)


def test_connected_tie_break_is_deterministic():
    timing = _timing((100, 100), (4000, 5000))
    lengths = (1000.0, 2000.0)
    # window must come from arm 1 (the "second" on a tie with arm 0 first)
    v_min = (3000.0 * 1e15) / (C * (timing[1].measure_end_fs - 100))
    assert connected(timing, lengths, v_min * 1.0001)
    assert not connected(timing, lengths, v_min * 0.9999)


def test_connected_rejects_bad_inputs():
    timing = _timing((0, 0), (5000, 5000))
    with pytest.raises(ValueError):
        connected(timing, (0.0, 1.0), 1.0)
    with pytest.raises(ValueError):
        connected(timing, (1.0, 1.0), 0.0)


@given(
    st.integers(0, 10**15),
    st.integers(0, 10**15),
    st.integers(1, 10**5),
    st.integers(1, 10**5),
    st.floats(1e-6, 1e12),
    st.floats(1.0, 2.0),
)
@hyp_settings(max_examples=200, deadline=None)
def test_connected_monotone_in_speed(s0, s1, t0, t1, v, factor):
    timing = _timing((s0, s1), (t0, t1))
    lengths = (1234.5, 987.0)
    if connected(timing, lengths, v):
        assert connected(timing, lengths, v * factor)


def test_depart_at_end_is_stricter():
    scen = preset("earth_moon_case3")
    assert critical_speed(scen, depart_at_end=True) >= critical_speed(scen)
    timing = scenario_timing(scen)
    lengths = (scen.arms[0].path.length_m, scen.arms[1].path.length_m)
    v_star_end = critical_speed(scen, depart_at_end=True)
    assert connected(timing, lengths, v_star_end, depart_at_end=True)
    assert not connected(timing, lengths, v_star_end * 0.95, depart_at_end=True)


def test_simulate_requires_four_pairs():
    with pytest.raises(ValueError):
        simulate(
            preset("gisin1999"),
            CollapseModel(v_over_c=math.inf),
            DEFAULT_SETTINGS,
            n_pairs=3,
            seed=0,
        )


def test_simulate_quantum_limit():
    result = simulate(
        preset("earth_moon_case3"),
        CollapseModel(v_over_c=math.inf),
        DEFAULT_SETTINGS,
        n_pairs=200_000,
        seed=12,
    )
    est = result.estimate
    assert result.connected and result.fraction_connected == 1.0
    assert sum(est.counts) == 200_000
    assert abs(est.s_hat - 2 * math.sqrt(2)) <= 5 * est.stderr_s
    assert est.stderr_s == pytest.approx(
        math.sqrt(sum((1 - e * e) / n for e, n in zip(est.e_hat, est.counts))), rel=1e-12
    )


def test_simulate_lhv_fallback_saturates_classical_bound():
    scen = with_equalized_starts(preset("earth_moon_case3"))
    result = simulate(
        scen,
        CollapseModel(v_over_c=1e-3, fallback="lhv"),
        DEFAULT_SETTINGS,
        n_pairs=200_000,
        seed=5,
        trace_limit=16,
    )
    assert not result.connected
    assert abs(result.estimate.s_hat - 2.0) <= 5 * result.estimate.stderr_s
    assert all(not r.connected for r in result.records)


def test_simulate_uncorrelated_fallback_gives_zero():
    result = simulate(
        preset("earth_moon_case3"),
        CollapseModel(v_over_c=1e-3, fallback="uncorrelated"),
        DEFAULT_SETTINGS,
        n_pairs=200_000,
        seed=9,
    )
    assert abs(result.estimate.s_hat) <= 5 * result.estimate.stderr_s


def test_simulate_deterministic_and_worker_independent():
    scen = preset("gisin1999")
    model = CollapseModel(v_over_c=math.inf)
    a = simulate(scen, model, DEFAULT_SETTINGS, n_pairs=150_000, seed=77, workers=1)
    b = simulate(scen, model, DEFAULT_SETTINGS, n_pairs=150_000, seed=77, workers=1)
    assert a.estimate == b.estimate
    c = simulate(scen, model, DEFAULT_SETTINGS, n_pairs=150_000, seed=77, workers=3)
    assert a.estimate == c.estimate
    d = simulate(scen, model, DEFAULT_SETTINGS, n_pairs=150_000, seed=78)
    assert d.estimate != a.estimate


def test_estimator_consistency_on_angle_grid():
    # E_hat must track cos 2(a-b) within 5 standard errors per cell.
    scen = preset("gisin1999")
    model = CollapseModel(v_over_c=math.inf)
    grid = np.linspace(0.0, math.pi / 2, 5)
    n = 100_000
    for i, a in enumerate(grid):
        for j, b in enumerate(grid):
            settings = ChshSettings(a=a, a_prime=a, b=b, b_prime=b)
            result = simulate(scen, model, settings, n_pairs=n, seed=1000 + 10 * i + j)
            est = result.estimate
            pooled = sum(e * k for e, k in zip(est.e_hat, est.counts)) / sum(est.counts)
            truth = math.cos(2 * (a - b))
            tol = 5 * math.sqrt((1 - truth**2) / n + 1e-12)
            assert abs(pooled - truth) <= max(tol, 5e-3)


def test_pair_records_timing_invariants():
    scen = preset("earth_moon_case3")
    result = simulate(
        scen,
        CollapseModel(v_over_c=math.inf),
        DEFAULT_SETTINGS,
        n_pairs=64,
        seed=2,
        trace_limit=8,
    )
    assert len(result.records) == 8
    for rec in result.records:
        assert rec.emission_fs == 0
        for arm_index, t in enumerate(rec.arms):
            arm = scen.arms[arm_index]
            assert t.arrival_fs == rec.emission_fs + round(arm.path.length_m / C * 1e15)
            assert t.measure_start_fs == t.arrival_fs + round(arm.offset_s * 1e15)
            assert t.measure_end_fs == t.measure_start_fs + round(arm.tau_s * 1e15)
        assert rec.connected is True
        assert rec.outcomes[0] in (-1, 1) and rec.outcomes[1] in (-1, 1)
        assert rec.settings in DEFAULT_SETTINGS.pairs()


def test_sweep_transition_bracket():
    scen = symmetric_scenario(3.844e8)
    v_star = critical_speed(scen)
    grid = list(np.logspace(10, 13, 12))
    curve = sweep_speed(
        scen,
        fallback="lhv",
        settings=DEFAULT_SETTINGS,
        v_grid=grid,
        n_pairs_per_point=4000,
        seed=3,
    )
    below, above = curve.transition_bracket()
    assert below is not None and above is not None
    assert below < v_star <= above
    for p in curve.points:
        if p.fraction_connected == 1.0:
            assert abs(p.s_hat - 2 * math.sqrt(2)) <= 5 * p.stderr_s
        else:
            assert p.s_hat <= 2.0 + 5 * p.stderr_s


def test_sweep_single_point_and_validation():
    scen = preset("gisin1999")
    curve = sweep_speed(
        scen, "uncorrelated", DEFAULT_SETTINGS, [math.inf], 1000, seed=0
    )
    assert len(curve.points) == 1
    assert curve.points[0].fraction_connected == 1.0
    with pytest.raises(ValueError):
        sweep_speed(scen, "lhv", DEFAULT_SETTINGS, [], 1000, seed=0)
    with pytest.raises(ValueError):
        sweep_speed(scen, "lhv", DEFAULT_SETTINGS, [2.0, 1.0], 1000, seed=0)


def test_sweep_csv_byte_stable():
    scen = symmetric_scenario(3.844e8)
    grid = list(np.logspace(11, 12, 5))
    kwargs = dict(
        fallback="lhv",
        settings=DEFAULT_SETTINGS,
        v_grid=grid,
        n_pairs_per_point=2000,
        seed=123,
    )
    csv_a = sweep_speed(scen, **kwargs).to_csv()
    csv_b = sweep_speed(scen, **kwargs, workers=2).to_csv()
    assert csv_a == csv_b
    assert csv_a.splitlines()[0] == "v_over_c,S_hat,stderr_S,n_pairs,fraction_connected"
    # numpy scalars from the grid must not leak into the CSV text
    assert "np.float64" not in csv_a
    row = csv_a.splitlines()[1].split(",")
    assert float(row[0]) == pytest.approx(grid[0])


def test_derive_seed_spreads():
    seeds = {derive_seed(0, i) for i in range(100)}
    assert len(seeds) == 100


def test_collapse_model_validation():
    with pytest.raises(ValueError):
        CollapseModel(v_over_c=0.0)
    with pytest.raises(ValueError):
        CollapseModel(v_over_c=1.0, fallback="telepathy")
