"""Tests for the Monte Carlo cycle simulator."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from ftqec_limits.bounds import NoiseModel
from ftqec_limits.codes import build_code, code_profile
from ftqec_limits.decoders import build_lookup_decoder, compute_beta
from ftqec_limits.frames import FAULT_KINDS
from ftqec_limits.gadgets import build_round, fault_effects
from ftqec_limits.layouts import build_layout
from ftqec_limits.paulis import weight
from ftqec_limits.simulate import (
    TrialStats,
    _astuple,
    _vector_engine,
    counter_uniforms,
    estimate,
    execution_order,
    final_decoder,
    run_cycle,
    wilson_interval,
)


def _setup(family):
    code = build_code(family, 3)
    layout = build_layout(code_profile(code), "optimized")
    return code, layout


# ---------------------------------------------------------------------------
# helpers and counters

def test_execution_order():
    code, layout = _setup("steane")
    assert execution_order(layout, "xz") == tuple(range(6))
    assert execution_order(layout, "interleaved") == (0, 3, 1, 4, 2, 5)
    surf, surf_layout = _setup("surface")
    assert execution_order(surf_layout, "interleaved") == (
        0, 6, 1, 7, 2, 8, 3, 9, 4, 10, 5, 11)
    with pytest.raises(ValueError):
        execution_order(layout, "zx")


def test_final_decoder_selection():
    assert type(final_decoder(build_code("steane", 3))).__name__ == "SyndromeLUT"
    assert type(final_decoder(build_code("surface", 3))).__name__ == "MatchingDecoder"


def test_wilson_interval():
    value, lo, hi = wilson_interval(0, 0)
    assert math.isnan(value) and (lo, hi) == (0.0, 1.0)
    value, lo, hi = wilson_interval(0, 100)
    assert value == 0.0 and lo == 0.0 and hi > 0
    value, lo, hi = wilson_interval(100, 100)
    assert value == 1.0 and hi == 1.0
    value, lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi and 0 <= lo <= hi <= 1
    with pytest.raises(ValueError):
        wilson_interval(5, 4)


def test_trial_stats_merge_properties():
    rng = random.Random(61)
    def rand_stats():
        return TrialStats(*(rng.randrange(100) for _ in range(9)))
    for _ in range(50):
        a, b, c = rand_stats(), rand_stats(), rand_stats()
        assert _astuple(a.merge(b)) == _astuple(b.merge(a))
        assert _astuple(a.merge(b).merge(c)) == _astuple(a.merge(b.merge(c)))
        assert _astuple(a.merge(TrialStats.zero())) == _astuple(a)


def test_trial_stats_metrics():
    stats = TrialStats(trials=10, decode_fail=2, residual=1, total_fail=3,
                       aborted=2, rounds_sum=16, rounds_sq_sum=32,
                       flag_events=0, unknown_flags=0)
    assert stats.completed == 8
    assert stats.metric("p_fail_dec")[0] == 0.25
    assert stats.metric("p_res")[0] == 0.125
    assert stats.metric("aborted")[0] == 0.2
    assert stats.mean_rounds == 2.0
    with pytest.raises(ValueError):
        stats.metric("p_magic")


def test_counter_uniforms_pinned_and_pure():
    u = counter_uniforms(0, np.arange(2, dtype=np.uint64), 0, 2)
    assert u == pytest.approx(np.array(
        [[0.8833108082136426, 0.43152799704850997],
         [0.7497482413580301, 0.37239342287916577]]), abs=0)
    # Rows are a pure function of the trial id: any batching agrees.
    whole = counter_uniforms(9, np.arange(100, dtype=np.uint64), 3, 7)
    parts = np.vstack([
        counter_uniforms(9, np.arange(i, min(i + 13, 100), dtype=np.uint64), 3, 7)
        for i in range(0, 100, 13)])
    assert np.array_equal(whole, parts)


def test_counter_uniforms_statistics():
    u = counter_uniforms(123, np.arange(2000, dtype=np.uint64), 5, 40)
    assert 0.0 < u.min() and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.005
    assert abs(u.var() - 1 / 12) < 0.002
    # Different tags decorrelate the same trial ids.
    v = counter_uniforms(123, np.arange(2000, dtype=np.uint64), 6, 40)
    corr = np.corrcoef(u.ravel(), v.ravel())[0, 1]
    assert abs(corr) < 0.02


# ---------------------------------------------------------------------------
# scalar engine

def test_noiseless_cycle_is_trivial():
    for family in ("steane", "surface", "rotated_surface"):
        code, layout = _setup(family)
        out = run_cycle(code, layout, NoiseModel(0.0, 0.0), random.Random(1))
        assert not out.decode_fail and not out.total_fail and not out.residual
        assert out.rounds_used == code.t + 1
        assert out.final_syndrome == 0
        assert out.flag_events == 0 and out.unknown_flags == 0
        assert not out.aborted


def test_profile_only_code_cannot_simulate():
    from ftqec_limits.codes import UnsupportedCodeError
    code = build_code("mobius", 3)
    layout = build_layout(code_profile(code), "optimized")
    with pytest.raises(UnsupportedCodeError):
        run_cycle(code, layout, NoiseModel(0.0, 0.0), random.Random(1))


def test_single_data_fault_golden_case():
    # An X fault right after the first data coupling of gadget 0 lands on
    # one data qubit, is seen identically by every following round, and is
    # decoded away: two rounds, no flags, no failure.
    code, layout = _setup("steane")
    gadget = build_round(code, layout)[0]
    ordinal = next(loc.ordinal for loc in gadget.locations
                   if loc.phase == "data_gate_data")
    qubit = gadget.data_qubits[0]
    out = run_cycle(code, layout, NoiseModel(0.0, 0.0), rng=None,
                    forced={(1, 0, ordinal): "X"})
    assert out.rounds_used == 2
    assert out.final_syndrome == code.syndrome(1 << qubit, 0)
    assert not out.decode_fail and not out.total_fail
    assert out.flag_events == 0 and out.unknown_flags == 0


def test_flagged_hook_fault_golden_case():
    # A dangerous hook fault must raise a flag and then be corrected by the
    # next round's table lookup.
    code, layout = _setup("steane")
    gadget = build_round(code, layout)[0]
    eff = next(e for e in fault_effects(code, gadget)
               if e.flag_bits and weight(e.data_x, e.data_z) >= 2)
    out = run_cycle(code, layout, NoiseModel(0.0, 0.0), rng=None,
                    forced={(1, 0, eff.location.ordinal): eff.kind})
    assert out.flag_events == 1
    assert out.unknown_flags == 0
    assert not out.decode_fail and not out.total_fail
    assert not out.aborted


def test_abort_when_syndrome_never_settles():
    # A readout flip on gadget 0 in every second round keeps the effective
    # syndrome alternating, so the cap is hit and the trial aborts.
    code, layout = _setup("steane")
    gadget = build_round(code, layout)[0]
    ordinal = next(loc.ordinal for loc in gadget.locations
                   if loc.phase == "pre_measure")
    forced = {(r, 0, ordinal): "X" for r in (1, 3)}
    out = run_cycle(code, layout, NoiseModel(0.0, 0.0), rng=None,
                    forced=forced, max_rounds=3)
    assert out.aborted and out.rounds_used == 3
    with pytest.raises(ValueError):
        run_cycle(code, layout, NoiseModel(0.0, 0.0), random.Random(1),
                  max_rounds=1)


def test_initial_error_is_decoded():
    code, layout = _setup("surface")
    for q in range(code.n):
        out = run_cycle(code, layout, NoiseModel(0.0, 0.0), rng=None,
                        initial_error=(1 << q, 0), forced={})
        assert not out.decode_fail and not out.total_fail
        assert out.rounds_used == code.t + 1


def test_logical_initial_error_fails():
    code, layout = _setup("steane")
    out = run_cycle(code, layout, NoiseModel(0.0, 0.0), rng=None,
                    initial_error=(code.logical_x, 0), forced={})
    assert out.decode_fail and out.total_fail and not out.residual


# ---------------------------------------------------------------------------
# scalar/vector agreement

def _column_offsets(layout):
    offsets = []
    total = 0
    for g in layout.gadgets:
        offsets.append(total)
        total += g.n_fl
    return offsets


def _vector_single(engine, code, inject, initial=(0, 0)):
    stats = engine.run_batch(None, 0, np.arange(1, dtype=np.uint64),
                             inject=inject, initial_errors=initial)
    assert stats.trials == 1
    return stats


def _outcome_tuple(out):
    return (int(out.decode_fail), int(out.residual), int(out.total_fail),
            int(out.aborted), out.rounds_used, out.flag_events,
            out.unknown_flags)


def _stats_tuple(stats):
    return (stats.decode_fail, stats.residual, stats.total_fail,
            stats.aborted, stats.rounds_sum, stats.flag_events,
            stats.unknown_flags)


def test_scalar_vector_agree_on_every_single_fault():
    code, layout = _setup("steane")
    engine = _vector_engine(code, layout, "xz")
    offsets = _column_offsets(layout)
    for gi, spec in enumerate(layout.gadgets):
        for ordinal in range(spec.n_fl):
            for ki, kind in enumerate(FAULT_KINDS):
                out = run_cycle(code, layout, NoiseModel(0.0, 0.0), rng=None,
                                forced={(1, gi, ordinal): kind})
                stats = _vector_single(
                    engine, code, {(0, 1): [(offsets[gi] + ordinal, ki)]})
                assert _stats_tuple(stats) == _outcome_tuple(out), (
                    gi, ordinal, kind)


def test_scalar_vector_agree_on_random_schedules():
    rng = random.Random(62)
    for family, order in (("surface", "xz"), ("rotated_surface", "interleaved")):
        code, layout = _setup(family)
        engine = _vector_engine(code, layout, order)
        offsets = _column_offsets(layout)
        for _ in range(120):
            initial = (rng.getrandbits(code.n), rng.getrandbits(code.n))
            forced = {}
            inject = {}
            for _ in range(rng.randrange(5)):
                r = rng.randrange(1, 4)
                gi = rng.randrange(len(layout.gadgets))
                ordinal = rng.randrange(layout.gadgets[gi].n_fl)
                ki = rng.randrange(3)
                # Only the last fault per (round, location) slot survives
                # in the scalar dict; mirror that on the vector side.
                forced[(r, gi, ordinal)] = FAULT_KINDS[ki]
            for (r, gi, ordinal), kind in forced.items():
                inject.setdefault((0, r), []).append(
                    (offsets[gi] + ordinal, FAULT_KINDS.index(kind)))
            out = run_cycle(code, layout, NoiseModel(0.0, 0.0), rng=None,
                            order=order, forced=forced,
                            initial_error=initial)
            stats = _vector_single(engine, code, inject, initial)
            assert _stats_tuple(stats) == _outcome_tuple(out)


# ---------------------------------------------------------------------------
# vectorized estimation

def test_estimate_batch_size_invariance():
    code, layout = _setup("steane")
    noise = NoiseModel.from_ratio(0.01, 100.0)
    full = estimate(code, layout, noise, 4096, 5, batch_size=4096)
    odd = estimate(code, layout, noise, 4096, 5, batch_size=997)
    tiny = estimate(code, layout, noise, 4096, 5, batch_size=64)
    assert _astuple(full) == _astuple(odd) == _astuple(tiny)


def test_estimate_merges_id_ranges_exactly():
    code, layout = _setup("surface")
    engine = _vector_engine(code, layout, "xz")
    noise = NoiseModel.from_ratio(0.02, 100.0)
    whole = engine.run_batch(noise, 3, np.arange(5000, dtype=np.uint64))
    first = engine.run_batch(noise, 3, np.arange(2000, dtype=np.uint64))
    rest = engine.run_batch(noise, 3, np.arange(2000, 5000, dtype=np.uint64))
    assert _astuple(first.merge(rest)) == _astuple(whole)


def test_estimate_determinism_pin():
    # Frozen counters for a fixed (seed, noise, trials): any change to the
    # counter stream layout or the engine's event handling breaks this.
    code, layout = _setup("steane")
    stats = estimate(code, layout, NoiseModel.from_ratio(0.02, 100.0), 2000, 7)
    assert _astuple(stats) == (2000, 18, 6, 24, 0, 4100, 8574, 37, 5)


def test_estimate_validation():
    code, layout = _setup("steane")
    noise = NoiseModel(0.01, 0.0)
    with pytest.raises(ValueError):
        estimate(code, layout, noise, 0, 1)
    with pytest.raises(ValueError):
        estimate(code, layout, noise, 10, 1, batch_size=0)


def test_ideal_gates_match_exact_single_decode():
    # With p_ft = 0 the cycle is one perfect decode of the channel error;
    # the failure rate must match the exact per-weight enumeration.
    code, layout = _setup("steane")
    lut = build_lookup_decoder(code)
    p = Fraction(5, 100)
    exact = sum(math.comb(7, w) * p**w * (1 - p) ** (7 - w)
                * (1 - compute_beta(code, lut, w)) for w in range(8))
    stats = estimate(code, layout, NoiseModel(0.05, 0.0), 150_000, 11)
    se = math.sqrt(float(exact) * (1 - float(exact)) / stats.trials)
    assert abs(stats.metric("p_fail_dec")[0] - float(exact)) < 4 * se
    # No gate faults: nothing can differ between input and output error.
    assert stats.residual == 0
    assert stats.total_fail == stats.decode_fail
    assert stats.mean_rounds == code.t + 1
    assert stats.aborted == 0


def test_estimate_rates_move_with_noise():
    code, layout = _setup("steane")
    lo = estimate(code, layout, NoiseModel.from_ratio(0.005, 100.0), 30_000, 2)
    hi = estimate(code, layout, NoiseModel.from_ratio(0.05, 100.0), 30_000, 2)
    assert lo.metric("p_fail_dec")[0] < hi.metric("p_fail_dec")[0]
    assert lo.mean_rounds < hi.mean_rounds
