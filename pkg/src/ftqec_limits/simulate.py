"""Circuit-level Monte Carlo of repeated syndrome-extraction cycles.

Two engines share one protocol.  The scalar engine walks every gate of
every gadget through a Pauli frame and is the reference implementation.
The vectorized engine precomputes what each single fault does to the data
register, to its own readout, to later readouts of the same round, and to
the flag pattern; because frame propagation and parity readout are both
linear over F2, any multiset of faults composes by XOR of those effect
records, so batches of trials run as flat numpy arrays with no per-gate
work.  An exhaustive replay test pins the two engines to each other.

Protocol per trial: depolarize the data register at rate p, then extract
full syndromes round after round (each fault location drawing an X, Y or
Z fault at rate p_ft/3 each) until t+1 consecutive rounds agree, then
decode.  Flag handling inside the loop: a round whose flags fired on
exactly one gadget arms a pending event; the next round's raw syndrome
completes the lookup key and the tabulated correction is applied at the
end of that round.  Unknown keys and rounds with flags on several gadgets
fall back to the identity and are counted.  The round-to-round stopping
comparison uses effective syndromes, the raw bits XORed with the syndrome
of whatever correction was just applied.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bounds import NoiseModel
from .codes import StabilizerCode, UnsupportedCodeError
from .decoders import (build_lookup_decoder, build_matching_decoder,
                       decode_success)
from .frames import FAULT_KINDS, PauliFrame
from .gadgets import (build_flag_table, build_round, fault_effects,
                      gadget_register, run_gadget)
from .layouts import FtLayout

ORDERS = ("xz", "interleaved")
METRICS = ("p_fail_dec", "p_res", "p_fail", "mean_rounds", "aborted")

_Z95 = 1.959963984540054
_ROUND_CAP_FACTOR = 1000


def execution_order(layout: FtLayout, order: str) -> tuple[int, ...]:
    """Gadget execution sequence as catalog indices.

    ``xz`` runs every X-type gadget then every Z-type gadget, which is
    also catalog order.  ``interleaved`` alternates the two groups.
    """
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    if order == "xz":
        return tuple(range(len(layout.gadgets)))
    xs = [g.index for g in layout.gadgets if g.gen_kind == "X"]
    zs = [g.index for g in layout.gadgets if g.gen_kind == "Z"]
    seq: list[int] = []
    for a, b in itertools.zip_longest(xs, zs):
        seq.extend(i for i in (a, b) if i is not None)
    return tuple(seq)


def final_decoder(code: StabilizerCode):
    """Decoder applied to the last effective syndrome.

    Planar surface codes get minimum-weight matching, anything else small
    enough gets the exact minimum-weight lookup table.
    """
    if code.family in ("surface", "rotated_surface"):
        return build_matching_decoder(code)
    return build_lookup_decoder(code)


@dataclass(frozen=True)
class CycleOutcome:
    """Classification of one simulated cycle.

    ``decode_fail`` tests the chain correction (any flag correction
    resolved during the last round composed with the final decode)
    against the data error at the input of the last round, ``total_fail``
    tests the final decode against the error at the output of the last
    round (the codeword-preservation test), and ``residual`` flags trials
    failing the second test but not the first.
    """

    decode_fail: bool
    residual: bool
    total_fail: bool
    rounds_used: int
    final_syndrome: int
    flag_events: int
    unknown_flags: int
    aborted: bool


@dataclass(frozen=True)
class TrialStats:
    """Merged counters over a set of trials.

    Failure rates are taken over completed (non-aborted) trials, as are
    the round-count moments; the abort rate is over all trials.  All
    fields are exact integers so merging is associative and order
    independent.
    """

    trials: int
    decode_fail: int
    residual: int
    total_fail: int
    aborted: int
    rounds_sum: int
    rounds_sq_sum: int
    flag_events: int
    unknown_flags: int

    @classmethod
    def zero(cls) -> "TrialStats":
        return cls(0, 0, 0, 0, 0, 0, 0, 0, 0)

    @property
    def completed(self) -> int:
        return self.trials - self.aborted

    def merge(self, other: "TrialStats") -> "TrialStats":
        return TrialStats(*(a + b for a, b in
                            zip(_astuple(self), _astuple(other))))

    @property
    def mean_rounds(self) -> float:
        return self.rounds_sum / self.completed if self.completed else math.nan

    def metric(self, name: str) -> tuple[float, float, float]:
        """(value, ci_low, ci_high) for one reported metric at 95%."""
        if name == "p_fail_dec":
            return wilson_interval(self.decode_fail, self.completed)
        if name == "p_res":
            return wilson_interval(self.residual, self.completed)
        if name == "p_fail":
            return wilson_interval(self.total_fail, self.completed)
        if name == "aborted":
            return wilson_interval(self.aborted, self.trials)
        if name == "mean_rounds":
            n = self.completed
            if n == 0:
                return math.nan, 0.0, math.inf
            mean = self.rounds_sum / n
            if n == 1:
                return mean, mean, mean
            var = (self.rounds_sq_sum - self.rounds_sum**2 / n) / (n - 1)
            half = _Z95 * math.sqrt(max(var, 0.0) / n)
            return mean, mean - half, mean + half
        raise ValueError(f"unknown metric {name!r}; expected one of {METRICS}")


def _astuple(s: TrialStats) -> tuple[int, ...]:
    return (s.trials, s.decode_fail, s.residual, s.total_fail, s.aborted,
            s.rounds_sum, s.rounds_sq_sum, s.flag_events, s.unknown_flags)


def wilson_interval(successes: int, n: int) -> tuple[float, float, float]:
    """Point estimate with the 95% Wilson score interval."""
    if n == 0:
        return math.nan, 0.0, 1.0
    if not 0 <= successes <= n:
        raise ValueError(f"need 0 <= successes <= n, got {successes}/{n}")
    z2 = _Z95 * _Z95
    center = (successes + z2 / 2) / (n + z2)
    half = (_Z95 / (n + z2)) * math.sqrt(
        successes * (n - successes) / n + z2 / 4)
    return successes / n, max(center - half, 0.0), min(center + half, 1.0)


@lru_cache(maxsize=None)
def _cycle_parts(code: StabilizerCode, layout: FtLayout, order: str):
    gadgets = build_round(code, layout)
    table = build_flag_table(code, layout, gadgets)
    decoder = final_decoder(code)
    seq = execution_order(layout, order)
    return gadgets, table, decoder, seq


def _round_cap(code: StabilizerCode, max_rounds: int | None) -> int:
    if max_rounds is None:
        return _ROUND_CAP_FACTOR * (code.t + 1)
    if max_rounds < code.t + 1:
        raise ValueError(f"max_rounds must allow at least t+1={code.t + 1} rounds")
    return max_rounds


def run_cycle(code: StabilizerCode, layout: FtLayout, noise: NoiseModel,
              rng, *, order: str = "xz", max_rounds: int | None = None,
              initial_error: tuple[int, int] | None = None,
              forced=None) -> CycleOutcome:
    """Simulate one full cycle gate by gate through a Pauli frame.

    ``rng`` needs a ``random()`` method returning floats in [0, 1).
    ``forced`` maps (round, gadget index, location ordinal) to a fault
    kind and switches the engine to deterministic mode: no randomness is
    consumed at all, so tests can inject exact schedules.  An explicit
    ``initial_error`` is applied on top of (or, under ``forced``, instead
    of) the sampled data channel.
    """
    if code.profile_only:
        raise UnsupportedCodeError(
            f"{code.name} has no generator masks; cycles cannot be simulated")
    gadgets, table, decoder, seq = _cycle_parts(code, layout, order)
    cap = _round_cap(code, max_rounds)
    data_mask = (1 << code.n) - 1

    frame = PauliFrame(gadget_register(code, layout))
    if initial_error is not None:
        frame.x ^= initial_error[0] & data_mask
        frame.z ^= initial_error[1] & data_mask
    if forced is None and noise.p > 0:
        for q in range(code.n):
            u = rng.random()
            if u < noise.p:
                frame.apply(q, FAULT_KINDS[min(int(3.0 * u / noise.p), 2)])

    pending: tuple[int, int] | None = None
    e_prev: int | None = None
    streak = 0
    flag_events = 0
    unknown = 0
    effective = 0
    in_x = in_z = 0
    round_cx = round_cz = 0
    stopped = False
    rounds_used = 0

    for round_no in range(1, cap + 1):
        rounds_used = round_no
        in_x, in_z = frame.x & data_mask, frame.z & data_mask
        round_cx = round_cz = 0
        raw = 0
        events: list[tuple[int, int]] = []
        for gi in seq:
            gadget = gadgets[gi]
            if forced is not None:
                # An explicit (possibly empty) dict per gadget keeps the
                # whole cycle free of random draws in forced mode.
                forced_here = {ordinal: kind
                               for (r, g, ordinal), kind in forced.items()
                               if r == round_no and g == gi}
                bit, flags = run_gadget(gadget, frame, forced=forced_here)
            else:
                bit, flags = run_gadget(gadget, frame, p_ft=noise.p_ft,
                                        rng=rng)
            raw |= bit << gadget.generator_index
            if flags:
                events.append((gi, flags))

        effective = raw
        if pending is not None:
            hit = table.correction(pending[0], pending[1], raw)
            if hit is None:
                unknown += 1
            else:
                frame.x ^= hit[0]
                frame.z ^= hit[1]
                round_cx ^= hit[0]
                round_cz ^= hit[1]
                effective ^= code.syndrome(hit[0], hit[1])
            pending = None
        if len(events) == 1:
            pending = events[0]
            flag_events += 1
        elif len(events) > 1:
            flag_events += len(events)
            unknown += 1

        streak = streak + 1 if effective == e_prev else 1
        e_prev = effective
        if streak == code.t + 1:
            stopped = True
            break

    cx, cz = decoder.decode(effective)
    out_x, out_z = frame.x & data_mask, frame.z & data_mask
    # A flag correction resolved during the last round is part of the
    # syndrome-chain correction, so the decode test composes it with the
    # decoder output; the output-side test needs no composition because
    # the frame already absorbed it.
    decode_fail = not decode_success(code, (in_x, in_z),
                                     (cx ^ round_cx, cz ^ round_cz))
    total_fail = not decode_success(code, (out_x, out_z), (cx, cz))
    return CycleOutcome(
        decode_fail=decode_fail,
        residual=total_fail and not decode_fail,
        total_fail=total_fail,
        rounds_used=rounds_used,
        final_syndrome=effective,
        flag_events=flag_events,
        unknown_flags=unknown,
        aborted=not stopped,
    )


# --- counter-based uniforms -------------------------------------------------
#
# estimate() needs every trial's randomness to be a pure function of
# (seed, trial index) so that batch boundaries and the set of still-active
# neighbours cannot influence outcomes and merged results are reproducible
# under any scheduling.  Generator streams cannot give that cheaply, so the
# engine derives uniforms from a splitmix64-style avalanche over the counter
# (seed, trial, stream tag, slot).

_MIX_B = 0xBF58476D1CE4E5B9
_MIX_C = 0x94D049BB133111EB
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_B)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_C)
    return z ^ (z >> np.uint64(31))


def counter_uniforms(seed: int, trial_ids: np.ndarray, tag: int,
                     width: int) -> np.ndarray:
    """Matrix of float64 uniforms in [0, 1), one row per trial id.

    Entry (i, j) depends only on (seed, trial_ids[i], tag, j); rows for a
    trial are identical no matter which batch or active subset it sits in.
    """
    seed_h = _mix64(np.uint64([(seed ^ (tag * _GOLDEN)) & 0xFFFFFFFFFFFFFFFF]))
    base = _mix64(seed_h ^ trial_ids.astype(np.uint64))
    # Slots advance the counter additively from 1, as splitmix64 steps its
    # state, so the finalizer's fixed point at zero is never pinned to the
    # (seed 0, trial 0, slot 0) cell.
    slots = np.arange(1, width + 1, dtype=np.uint64) * np.uint64(_GOLDEN)
    bits = _mix64(base[:, None] + slots[None, :])
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53


# --- vectorized engine ------------------------------------------------------


class _VectorEngine:
    """Precomputed tables for batch simulation of one (code, layout, order).

    All heavy per-round work is numpy; only rare events (flagged rounds,
    pending-table lookups) drop to per-trial Python.
    """

    def __init__(self, code: StabilizerCode, layout: FtLayout, order: str):
        if code.k != 1:
            raise UnsupportedCodeError(
                "vectorized membership test assumes a single logical qubit")
        gadgets, table, decoder, seq = _cycle_parts(code, layout, order)
        self.code = code
        self.layout = layout
        self.gadgets = gadgets
        self.seq = seq
        self.table = table.entries
        self.t = code.t
        n = code.n

        # Map each gadget to the OR of the syndrome bits measured after it
        # in execution order; a fault's data error shows up only there.
        after_mask = {}
        for pos, gi in enumerate(seq):
            mask = 0
            for gj in seq[pos + 1:]:
                mask |= 1 << gadgets[gj].generator_index
            after_mask[gi] = mask

        offsets = []
        total = 0
        for gadget in gadgets:
            offsets.append(total)
            total += gadget.n_fl
        self.n_fl_total = total
        self.loc_gadget = np.zeros(total, dtype=np.int64)

        eff_dx = np.zeros(total * 3, dtype=np.uint32)
        eff_dz = np.zeros(total * 3, dtype=np.uint32)
        eff_delta = np.zeros(total * 3, dtype=np.uint32)
        eff_flags = np.zeros(total * 3, dtype=np.uint32)
        for gi, gadget in enumerate(gadgets):
            for eff in fault_effects(code, gadget):
                col = offsets[gi] + eff.location.ordinal
                self.loc_gadget[col] = gi
                row = col * 3 + FAULT_KINDS.index(eff.kind)
                eff_dx[row] = eff.data_x
                eff_dz[row] = eff.data_z
                sigma = code.syndrome(eff.data_x, eff.data_z)
                eff_delta[row] = ((eff.own_flip << gadget.generator_index)
                                  ^ (sigma & after_mask[gi]))
                eff_flags[row] = eff.flag_bits
        self.eff_dx, self.eff_dz = eff_dx, eff_dz
        self.eff_delta, self.eff_flags = eff_delta, eff_flags

        # Full-syndrome correction tables for branch-free final decoding.
        size = 1 << (n - code.k)
        dec_cx = np.zeros(size, dtype=np.uint32)
        dec_cz = np.zeros(size, dtype=np.uint32)
        for s in range(size):
            cx, cz = decoder.decode(s)
            dec_cx[s], dec_cz[s] = cx, cz
        self.dec_cx, self.dec_cz = dec_cx, dec_cz

        self.gen_specs = tuple(code.generators())
        self.logical_x = code.logical_x
        self.logical_z = code.logical_z

    def syndrome_of(self, ex: np.ndarray, ez: np.ndarray) -> np.ndarray:
        s = np.zeros(ex.shape, dtype=np.uint32)
        for i, (kind, mask) in enumerate(self.gen_specs):
            arr = ez if kind == "X" else ex
            bit = np.bitwise_count(arr & np.uint32(mask)).astype(np.uint32) & 1
            s |= bit << np.uint32(i)
        return s

    def in_stabilizer(self, ex: np.ndarray, ez: np.ndarray) -> np.ndarray:
        comm_x = np.bitwise_count(ez & np.uint32(self.logical_x)) & 1
        comm_z = np.bitwise_count(ex & np.uint32(self.logical_z)) & 1
        return (self.syndrome_of(ex, ez) == 0) & (comm_x == 0) & (comm_z == 0)

    def run_batch(self, noise: NoiseModel | None, seed: int,
                  trial_ids: np.ndarray, max_rounds: int | None = None,
                  inject=None,
                  initial_errors: tuple[int, int] | None = None) -> TrialStats:
        """Simulate one batch of trials; sampled or injected faults.

        With ``noise`` given, faults are sampled from the counter stream.
        With ``noise=None``, ``inject`` supplies the exact schedule as a
        dict {(row, round): [(location, kind index), ...]} and
        ``initial_errors`` the shared starting data error; this path is
        what the scalar-equivalence tests replay single faults through.
        """
        code = self.code
        cap = _round_cap(code, max_rounds)
        nb = trial_ids.shape[0]

        ex = np.zeros(nb, dtype=np.uint32)
        ez = np.zeros(nb, dtype=np.uint32)
        if initial_errors is not None:
            ex |= np.uint32(initial_errors[0])
            ez |= np.uint32(initial_errors[1])
        if noise is not None and noise.p > 0:
            u0 = counter_uniforms(seed, trial_ids, 0, code.n)
            for q in range(code.n):
                uq = u0[:, q]
                hit = np.flatnonzero(uq < noise.p)
                if hit.size == 0:
                    continue
                kind = np.minimum(
                    (3.0 * uq[hit] / noise.p).astype(np.int64), 2)
                ex[hit[kind <= 1]] ^= np.uint32(1 << q)
                ez[hit[kind >= 1]] ^= np.uint32(1 << q)

        ex_in = ex.copy()
        ez_in = ez.copy()
        fl_cx = np.zeros(nb, dtype=np.uint32)
        fl_cz = np.zeros(nb, dtype=np.uint32)
        e_prev = np.full(nb, -1, dtype=np.int64)
        streak = np.zeros(nb, dtype=np.int32)
        rounds = np.zeros(nb, dtype=np.int32)
        pend_g = np.full(nb, -1, dtype=np.int64)
        pend_f = np.zeros(nb, dtype=np.int64)
        final_e = np.zeros(nb, dtype=np.int64)
        aborted = np.zeros(nb, dtype=bool)
        active = np.ones(nb, dtype=bool)
        flag_events = 0
        unknown = 0

        round_no = 0
        while True:
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            round_no += 1
            ex_in[idx] = ex[idx]
            ez_in[idx] = ez[idx]
            fl_cx[idx] = 0
            fl_cz[idx] = 0
            s = self.syndrome_of(ex[idx], ez[idx]).astype(np.int64)
            row_events: dict[int, dict[int, int]] = {}

            if noise is not None and noise.p_ft > 0:
                u = counter_uniforms(seed, trial_ids[idx], round_no,
                                     self.n_fl_total)
                rows, cols = np.nonzero(u < noise.p_ft)
                if rows.size:
                    uh = u[rows, cols]
                    kinds = np.minimum(
                        (3.0 * uh / noise.p_ft).astype(np.int64), 2)
                    self._apply_faults(rows, cols, kinds, idx, ex, ez, s,
                                       row_events)
                del u
            elif inject is not None:
                for pos, row in enumerate(idx):
                    sched = inject.get((int(row), round_no))
                    if not sched:
                        continue
                    rows = np.full(len(sched), pos, dtype=np.int64)
                    cols = np.array([c for c, _ in sched], dtype=np.int64)
                    kinds = np.array([k for _, k in sched], dtype=np.int64)
                    self._apply_faults(rows, cols, kinds, idx, ex, ez, s,
                                       row_events)

            e = s.copy()
            pend_rows = np.flatnonzero(pend_g[idx] >= 0)
            for r in pend_rows:
                b = idx[r]
                hit = self.table.get(
                    (int(pend_g[b]), int(pend_f[b]), int(s[r])))
                if hit is None:
                    unknown += 1
                else:
                    cx, cz = hit
                    ex[b] ^= np.uint32(cx)
                    ez[b] ^= np.uint32(cz)
                    fl_cx[b] ^= np.uint32(cx)
                    fl_cz[b] ^= np.uint32(cz)
                    e[r] ^= code.syndrome(cx, cz)
                pend_g[b] = -1
            for r, per_gadget in row_events.items():
                fired = {g: bits for g, bits in per_gadget.items() if bits}
                if not fired:
                    continue
                b = idx[r]
                if len(fired) == 1:
                    g, bits = next(iter(fired.items()))
                    pend_g[b] = g
                    pend_f[b] = bits
                    flag_events += 1
                else:
                    flag_events += len(fired)
                    unknown += 1

            grew = e == e_prev[idx]
            streak[idx] = np.where(grew, streak[idx] + 1, 1)
            e_prev[idx] = e
            rounds[idx] += 1
            done = streak[idx] >= self.t + 1
            hit_cap = ~done & (rounds[idx] >= cap)
            finished = done | hit_cap
            if finished.any():
                fin = idx[finished]
                final_e[fin] = e[finished]
                aborted[idx[hit_cap]] = True
                active[fin] = False

        cx = self.dec_cx[final_e]
        cz = self.dec_cz[final_e]
        # Same composition as the scalar path: final-round flag
        # corrections count toward the decode test, not the output test.
        dec_fail = ~self.in_stabilizer(ex_in ^ cx ^ fl_cx, ez_in ^ cz ^ fl_cz)
        raw_fail = ~self.in_stabilizer(ex ^ cx, ez ^ cz)
        ok = ~aborted
        res = raw_fail & ~dec_fail
        r_ok = rounds[ok].astype(np.int64)
        return TrialStats(
            trials=nb,
            decode_fail=int(np.count_nonzero(dec_fail & ok)),
            residual=int(np.count_nonzero(res & ok)),
            total_fail=int(np.count_nonzero(raw_fail & ok)),
            aborted=int(np.count_nonzero(aborted)),
            rounds_sum=int(r_ok.sum()),
            rounds_sq_sum=int((r_ok * r_ok).sum()),
            flag_events=flag_events,
            unknown_flags=unknown,
        )

    def _apply_faults(self, rows, cols, kinds, idx, ex, ez, s, row_events):
        """XOR the effect records of the given faults into the round state.

        ``rows`` must be sorted ascending (np.nonzero order); repeated rows
        aggregate by XOR, which is exact because frames compose linearly.
        """
        flat = cols * 3 + kinds
        starts = np.flatnonzero(
            np.r_[True, rows[1:] != rows[:-1]]) if rows.size else rows
        agg = rows[starts]
        ex[idx[agg]] ^= np.bitwise_xor.reduceat(self.eff_dx[flat], starts)
        ez[idx[agg]] ^= np.bitwise_xor.reduceat(self.eff_dz[flat], starts)
        s[agg] ^= np.bitwise_xor.reduceat(
            self.eff_delta[flat], starts).astype(np.int64)
        flagged = np.flatnonzero(self.eff_flags[flat])
        for j in flagged:
            row = int(rows[j])
            gadget = int(self.loc_gadget[cols[j]])
            per = row_events.setdefault(row, {})
            per[gadget] = per.get(gadget, 0) ^ int(self.eff_flags[flat[j]])


@lru_cache(maxsize=None)
def _vector_engine(code: StabilizerCode, layout: FtLayout,
                   order: str) -> _VectorEngine:
    return _VectorEngine(code, layout, order)


def estimate(code: StabilizerCode, layout: FtLayout, noise: NoiseModel,
             trials: int, seed: int, *, order: str = "xz",
             batch_size: int = 65536,
             max_rounds: int | None = None) -> TrialStats:
    """Monte Carlo estimate over ``trials`` independent cycles.

    Trial i draws all of its randomness from the counter stream keyed by
    (seed, i), so results are bit-identical for any batch size or degree
    of parallelism, and partial results merge associatively.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    engine = _vector_engine(code, layout, order)
    stats = TrialStats.zero()
    for start in range(0, trials, batch_size):
        ids = np.arange(start, min(start + batch_size, trials),
                        dtype=np.uint64)
        stats = stats.merge(engine.run_batch(noise, seed, ids,
                                             max_rounds=max_rounds))
    return stats
