"""Closed-form bounds on logical failure rates of a QEC cycle.

Covers the exact codeword error probability of an idealized cycle, decoder
failure-fraction profiles, the fault-count distribution of repeat-until-quiet
syndrome extraction, the refined decoding-failure bound built from it, and
the residual-error bounds for flag- and cat-based extraction.

Alternating inclusion-exclusion sums are evaluated with exact integers or
rationals; outer probability mixtures use mpmath at 50 significant digits,
keeping every advertised result far inside a 1e-12 relative budget.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .codes import StabilizerCode, weight_enumerator
from .layouts import FtLayout

_DPS = 50

PROFILE_KINDS = ("bounded_distance", "beta_refined", "enumerator_refined")
A_RES_MODES = ("theorem_gm", "all_generators")


def _clamp01(x):
    return min(max(x, 0), 1)


@dataclass(frozen=True)
class NoiseModel:
    """Channel depolarizing rate and per-location fault rate."""

    p: float
    p_ft: float

    def __post_init__(self) -> None:
        for name, value in (("p", self.p), ("p_ft", self.p_ft)):
            if not 0 <= value <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")

    @classmethod
    def from_ratio(cls, p: float, ratio: float) -> "NoiseModel":
        """Noise model with p_ft = p / ratio."""
        return cls(p=p, p_ft=p / ratio)


@dataclass(frozen=True)
class DecoderProfile:
    """Failure fraction f(e) of a decoder as a function of error weight.

    ``bounded_distance`` charges every weight above t as a failure.
    ``beta_refined`` credits the fraction beta of weight-(t+1) errors a
    minimum-weight decoder still corrects.  ``enumerator_refined``
    additionally credits higher weights using the code's weight enumerator.
    """

    kind: str
    t: int
    beta: Fraction | None = None
    enumerator: tuple[int, ...] | None = None
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in PROFILE_KINDS:
            raise ValueError(
                f"unknown profile kind {self.kind!r}; choose from {PROFILE_KINDS}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")
        if self.kind in ("beta_refined", "enumerator_refined"):
            if self.beta is None:
                raise ValueError(f"{self.kind} profile requires beta")
            if not 0 <= self.beta <= 1:
                raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        if self.kind == "enumerator_refined":
            if self.enumerator is None or self.k is None:
                raise ValueError(
                    "enumerator_refined profile requires enumerator and k")

    def failure_fraction(self, e: int) -> Fraction:
        """Fraction f(e) of weight-e errors that defeat the decoder."""
        if e < 0:
            raise ValueError(f"error weight must be >= 0, got {e}")
        if e <= self.t:
            return Fraction(0)
        if self.kind == "bounded_distance":
            return Fraction(1)
        if e == self.t + 1:
            return Fraction(1) - self.beta
        if self.kind == "beta_refined":
            return Fraction(1)
        n = len(self.enumerator) - 1
        credited = Fraction(self.enumerator[e], 4**self.k * math.comb(n, e))
        # The enumerator can exceed the ball count at high weights; the
        # failure fraction is still a probability.
        return max(Fraction(0), Fraction(1) - credited)


def bounded_distance_profile(t: int) -> DecoderProfile:
    return DecoderProfile(kind="bounded_distance", t=t)


def beta_profile(t: int, beta: Fraction) -> DecoderProfile:
    return DecoderProfile(kind="beta_refined", t=t, beta=beta)


def enumerator_profile(t: int, beta: Fraction,
                       enumerator: tuple[int, ...], k: int) -> DecoderProfile:
    return DecoderProfile(kind="enumerator_refined", t=t, beta=beta,
                          enumerator=tuple(enumerator), k=k)


@dataclass(frozen=True)
class BoundInputs:
    """Everything the cycle-level bounds consume, validated once."""

    code: StabilizerCode
    layout: FtLayout
    noise: NoiseModel
    profile: DecoderProfile | None = None
    v_m: int = 1
    a_res_mode: str = "theorem_gm"

    def __post_init__(self) -> None:
        if self.v_m < 1:
            raise ValueError(f"v_m must be >= 1, got {self.v_m}")
        if self.a_res_mode not in A_RES_MODES:
            raise ValueError(
                f"unknown a_res_mode {self.a_res_mode!r}; choose from {A_RES_MODES}")
        if self.layout.profile.n != self.code.n:
            raise ValueError(
                "layout was built for a different code "
                f"(n={self.layout.profile.n} vs {self.code.n})")
        if self.profile is not None and self.profile.t != self.code.t:
            raise ValueError(
                f"decoder profile t={self.profile.t} does not match code t={self.code.t}")


def codeword_error_exact(code: StabilizerCode, p: float) -> float:
    """Probability that depolarizing noise defeats ideal error correction.

    Exact: one minus the total probability of the error patterns that a
    maximum-likelihood-over-cosets decoder handles, expressed through the
    code's weight enumerator.
    """
    a = weight_enumerator(code)
    pf = Fraction(p)
    qf = 1 - pf
    four_k = Fraction(4**code.k)
    kept = sum((Fraction(a[w]) / four_k) * pf**w * qf**(code.n - w)
               for w in range(code.n + 1))
    return float(_clamp01(1 - kept))


def decoder_failure_profile(profile: DecoderProfile, e: int) -> Fraction:
    """Failure fraction f(e); exposed as a free function for convenience."""
    return profile.failure_fraction(e)


def qec_upper_bound(code: StabilizerCode, p: float,
                    profile: DecoderProfile) -> float:
    """Upper bound on logical error after one ideal decode at channel rate p.

    Binomial mixture of the profile's failure fractions over error weights.
    """
    n = code.n
    with mpmath.workdps(_DPS):
        pm = mpmath.mpf(p)
        qm = 1 - pm
        total = mpmath.mpf(0)
        for e in range(profile.t + 1, n + 1):
            f = profile.failure_fraction(e)
            if f == 0:
                continue
            weight = mpmath.mpf(math.comb(n, e)) * pm**e * qm**(n - e)
            total += weight * mpmath.mpf(f.numerator) / f.denominator
        return float(_clamp01(total))


def _channel_pmf_mp(c: int, n: int, p) -> mpmath.mpf:
    """Binomial probability of c channel errors among n qubits."""
    return mpmath.mpf(math.comb(n, c)) * p**c * (1 - p)**(n - c)


def _fault_pmf_mp(s: int, n_locations: int, t: int, p) -> mpmath.mpf:
    """Fault-count PMF evaluated inside an mpmath working context.

    The inner alternating sum counts, exactly in integer arithmetic, the
    ways of spreading s faults over ell rounds with every round hit at
    least once; only the positive outer mixture runs in floating point.
    """
    if p == 0:
        return mpmath.mpf(1 if s == 0 else 0)
    q = 1 - p
    quiet = q ** ((t + 1) * n_locations)
    if s == 0:
        return quiet
    busy = 1 - q**n_locations
    total = mpmath.mpf(0)
    first = -(-s // n_locations)
    for ell in range(first, s + 1):
        ways = sum((-1)**j * math.comb(ell, j)
                   * math.comb((ell - j) * n_locations, s)
                   for j in range(ell + 1))
        if ways == 0:
            continue
        conditional = (mpmath.mpf(ways) * p**s
                       * q**(ell * n_locations - s) / busy**ell)
        total += conditional * quiet * (1 - quiet)**ell
    return total


def fault_count_pmf(s: int, n_locations: int, t: int, p_ft: float) -> float:
    """PMF of the total fault count of repeat-until-quiet extraction.

    The extraction loop reruns rounds until t+1 consecutive rounds are
    fault-free; s counts faults over every round before that quiet window.
    """
    if not isinstance(s, int) or isinstance(s, bool):
        raise ValueError(f"s must be an integer, got {s!r}")
    if s < 0:
        raise ValueError(f"s must be >= 0, got {s}")
    if n_locations < 1:
        raise ValueError(f"n_locations must be >= 1, got {n_locations}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if not 0 <= p_ft <= 1:
        raise ValueError(f"p_ft must lie in [0, 1], got {p_ft}")
    with mpmath.workdps(_DPS):
        return float(_fault_pmf_mp(s, n_locations, t, mpmath.mpf(p_ft)))


def round_count_pmf(ell: int, n_locations: int, t: int, p_ft: float) -> float:
    """PMF of the number of faulty rounds before t+1 consecutive quiet ones."""
    if ell < 0:
        raise ValueError(f"ell must be >= 0, got {ell}")
    with mpmath.workdps(_DPS):
        quiet = (1 - mpmath.mpf(p_ft)) ** ((t + 1) * n_locations)
        return float(quiet * (1 - quiet)**ell)


def simple_decoding_bound(inputs: BoundInputs) -> float:
    """Decoding-failure bound charging every fault as a data error.

    Treats channel errors and extraction faults as additive weight and
    declares failure beyond the decoder's guaranteed radius t.
    """
    n = inputs.code.n
    t = inputs.code.t
    n_fl = inputs.layout.n_fl_total
    with mpmath.workdps(_DPS):
        p = mpmath.mpf(inputs.noise.p)
        pf = mpmath.mpf(inputs.noise.p_ft)
        covered = mpmath.mpf(0)
        for e in range(t + 1):
            for m in range(e + 1):
                covered += (_channel_pmf_mp(e - m, n, p)
                            * _fault_pmf_mp(m, n_fl, t, pf))
        return float(_clamp01(1 - covered))


def occupancy_pmf(e: int, c: int, q: int, n: int) -> Fraction:
    """Distribution of occupied bins after dropping q balls on c pre-filled.

    n bins hold c distinct pre-placed errors; q propagated errors land
    uniformly and independently, overlaps allowed.  Returns the exact
    probability that e bins end up occupied.
    """
    if not 0 <= c <= n:
        raise ValueError(f"c must lie in [0, n], got c={c}, n={n}")
    if q < 0:
        raise ValueError(f"q must be >= 0, got {q}")
    if e < c or e > min(n, c + q):
        return Fraction(0)
    total = Fraction(0)
    for v in range(e - c + 1):
        total += ((-1)**v * math.comb(e - c, v)
                  * Fraction(e - v, n)**q)
    return math.comb(n - c, e - c) * total


@dataclass(frozen=True)
class RefinedBoundTerms:
    """Layout-derived ingredients of the refined decoding bound."""

    p_fd: Fraction
    p_meas: Fraction
    tau: int

    def propagated_pmf(self, q: int, s: int) -> Fraction:
        """Probability that q of s extraction faults reach data qubits."""
        if not 0 <= q <= s:
            return Fraction(0)
        return (math.comb(s, q) * self.p_fd**q
                * (1 - self.p_fd)**(s - q))


def refined_bound_terms(inputs: BoundInputs) -> RefinedBoundTerms:
    """Fault-propagation and measurement-error terms of the refined bound.

    p_fd averages, over gadget locations, how many locations propagate an
    error onto data qubits; p_meas bounds t+1 repeated readout errors on a
    single syndrome bit; tau is the largest fault count the repeat logic
    can still absorb, set by the widest generator.
    """
    layout = inputs.layout
    t = inputs.code.t
    n_fl = layout.n_fl_total
    p_fd = Fraction(0)
    p_meas = Fraction(0)
    for g in layout.gadgets:
        p_fd += Fraction(5 * g.gamma - 2, 3) + 4 * g.n_flag
        p_meas += (Fraction(2 * g.gamma, 3) + Fraction(8, 3)
                   + 2 * g.n_flag) ** (t + 1) / Fraction(n_fl) ** (t + 1)
    p_fd /= n_fl
    if p_fd > 1:
        warnings.warn(
            f"propagation probability {float(p_fd):.4f} exceeds 1; clamped",
            RuntimeWarning, stacklevel=2)
        p_fd = Fraction(1)
    widest = max(g.gamma for g in layout.gadgets)
    tau = t + 1 if widest <= 2 * (t + 1) else t
    return RefinedBoundTerms(p_fd=p_fd, p_meas=p_meas, tau=tau)


def refined_decoding_bound(inputs: BoundInputs) -> float:
    """Decoding-failure bound tracking error propagation and measurement noise.

    Improves on simple_decoding_bound by charging extraction faults only
    when they propagate onto data qubits, modeling overlap of propagated
    errors as an occupancy process, and absorbing syndrome-repeat effects
    into a measurement-error correction term.
    """
    if inputs.profile is None:
        raise ValueError("refined_decoding_bound requires a decoder profile")
    code = inputs.code
    n, t = code.n, code.t
    n_fl = inputs.layout.n_fl_total
    terms = refined_bound_terms(inputs)
    tau = terms.tau
    profile = inputs.profile

    # f(e) folded over the occupancy distribution, exactly.
    def folded_failure(c: int, q: int) -> Fraction:
        acc = Fraction(0)
        for e in range(c, min(n, c + q) + 1):
            f = profile.failure_fraction(e)
            if f == 0:
                continue
            acc += f * occupancy_pmf(e, c, q, n)
        return acc

    with mpmath.workdps(_DPS):
        p = mpmath.mpf(inputs.noise.p)
        pf = mpmath.mpf(inputs.noise.p_ft)
        p_s = [_fault_pmf_mp(s, n_fl, t, pf) for s in range(max(tau, t + 1) + 1)]
        missed = 1 - mpmath.fsum(p_s[: tau + 1])
        meas = ((tau - t) * p_s[t + 1]
                * mpmath.mpf(terms.p_meas.numerator) / terms.p_meas.denominator)
        spread = mpmath.mpf(0)
        for c in range(n + 1):
            pc = _channel_pmf_mp(c, n, p)
            if pc == 0:
                continue
            inner = mpmath.mpf(0)
            for s in range(tau + 1):
                for q in range(s + 1):
                    weight = terms.propagated_pmf(q, s)
                    if weight == 0:
                        continue
                    h = folded_failure(c, q)
                    if h == 0:
                        continue
                    hw = h * weight
                    inner += (p_s[s] * mpmath.mpf(hw.numerator) / hw.denominator)
            spread += pc * inner
        return float(_clamp01(missed + meas + spread))


def residual_q(p_ft: Fraction | float, v_m: int = 1) -> Fraction:
    """Per-qubit residual-error rate feeding the lower bound.

    Accounts for faults on each qubit's last controlled gate plus the
    longest run of identical controlled-gate types ending the extraction,
    whose errors the following generators cannot flag.
    """
    if v_m < 1:
        raise ValueError(f"v_m must be >= 1, got {v_m}")
    p = Fraction(p_ft)
    return (Fraction(1, 2) + p / 3
            - (3 - 4 * p)**(v_m + 1) / (6 * (3 - 2 * p)**v_m))


def residual_lower_bound(inputs: BoundInputs) -> float:
    """Lower bound on the residual-error probability after a cycle."""
    a = weight_enumerator(inputs.code)
    code = inputs.code
    q = residual_q(inputs.noise.p_ft, inputs.v_m)
    r = 1 - q
    four_k = Fraction(4**code.k)
    kept = sum((Fraction(a[w]) / four_k) * q**w * r**(code.n - w)
               for w in range(code.n + 1))
    return float(_clamp01(1 - kept))


def residual_upper_bound(inputs: BoundInputs) -> float:
    """Upper bound on the residual-error probability, low-fault-rate regime.

    Counts single-fault locations whose error survives to the end of the
    cycle: data-qubit gates before the last one, ancilla locations of the
    dominating generator group, and flag-qubit locations.  a_res_mode
    selects whether ancilla locations are counted over the dominating
    group only or over every generator.
    """
    layout = inputs.layout
    prof = layout.profile
    pf = Fraction(inputs.noise.p_ft)
    d_res = max(sum(prof.v_z), sum(prof.v_x))
    scale = 1 if layout.kind == "flag" else 2
    group = layout.group_gadgets(layout.measured_group)
    counted = (layout.gadgets if inputs.a_res_mode == "all_generators"
               else group)
    a_res = sum(scale * g.gamma - 1 + 2 * g.n_flag for g in counted)
    f_res = 4 * sum(g.n_flag for g in group)
    value = prof.n * pf + (d_res + a_res + Fraction(3, 2) * f_res) * pf / 3
    return float(_clamp01(value))


def total_failure_bound(residual_ub: float, decoding_ub: float) -> float:
    """Combine residual and decoding bounds into a cycle failure bound."""
    for name, value in (("residual_ub", residual_ub),
                        ("decoding_ub", decoding_ub)):
        if not 0 <= value <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return min(1.0, residual_ub + decoding_ub * (1 - residual_ub))
