"""Fault-tolerant syndrome-extraction layouts.

A layout assigns every stabilizer generator a measurement gadget (flag- or
cat-state-based), records how many flag qubits each gadget carries and how
many faulty circuit locations it exposes, and identifies the generator group
whose residual-error contribution dominates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .codes import CodeProfile

SCHEMES = (
    "optimized",
    "chao_reichardt_1",
    "chao_reichardt_2",
    "prabhu_reichardt",
)

KINDS = ("flag", "cat")


class UnsupportedLayoutError(ValueError):
    """Scheme/weight/distance combination the catalog does not define."""


def n_flag(scheme: str, gamma: int, d: int) -> int:
    """Number of flag qubits a scheme assigns to a weight-gamma generator."""
    if gamma < 1:
        raise UnsupportedLayoutError(f"generator weight must be >= 1, got {gamma}")
    if scheme == "optimized":
        # From exhaustive search over low-weight gadgets; defined up to
        # weight 5 only.
        if gamma <= 3:
            return 0
        if gamma <= 5:
            return 2
        raise UnsupportedLayoutError(
            f"optimized scheme is defined only for weight <= 5, got {gamma}")
    if scheme == "chao_reichardt_1":
        return gamma * (d - 1)
    if scheme == "chao_reichardt_2":
        if gamma // 2 < d:
            return math.comb(-(-gamma // 2), 2) + math.comb(gamma // 2, 2)
        return 2 * math.comb(d, 2) + (d - 1) * (gamma - 2 * d)
    if scheme == "prabhu_reichardt":
        if d == 5:
            if gamma % 2:
                raise UnsupportedLayoutError(
                    "prabhu_reichardt at distance 5 covers even weights only")
            return 6 if gamma <= 8 else gamma // 2 + 1
        if d == 7:
            return gamma + 1
        raise UnsupportedLayoutError(
            f"prabhu_reichardt is defined for distances 5 and 7, got {d}")
    raise UnsupportedLayoutError(
        f"unknown scheme {scheme!r}; choose from {SCHEMES}")


def faulty_locations(kind: str, gamma: int, nflag: int) -> int:
    """Faulty-location count of one gadget.

    Flag gadgets expose two locations per data coupling, four for the
    ancilla (initialization, two Hadamards, readout) and six per flag qubit.
    Cat gadgets add the cat-state preparation, itself protected by the same
    flag construction.
    """
    if kind == "flag":
        return 2 * gamma + 4 + 6 * nflag
    if kind == "cat":
        return 4 * gamma + (3 * gamma + 4 + 6 * nflag)
    raise UnsupportedLayoutError(f"unknown gadget kind {kind!r}")


@dataclass(frozen=True)
class GadgetSpec:
    """One generator's measurement gadget within a layout."""

    index: int          # position in catalog order (X group first)
    gen_kind: str       # 'X' or 'Z'
    gamma: int
    n_flag: int
    n_fl: int


@dataclass(frozen=True)
class FtLayout:
    """Per-generator gadget assignment for a full extraction round."""

    profile: CodeProfile
    scheme: str
    kind: str
    gadgets: tuple[GadgetSpec, ...]

    @property
    def n_fl_total(self) -> int:
        return sum(g.n_fl for g in self.gadgets)

    @property
    def measured_group(self) -> str:
        """Generator group dominating the residual bound.

        The group with more generators; ties resolve to Z (both groups are
        interchangeable then, and the Z group is the one whose gadgets run
        last in the extraction order used here).
        """
        return "X" if len(self.profile.gamma_x) > len(self.profile.gamma_z) else "Z"

    def group_gadgets(self, gen_kind: str) -> tuple[GadgetSpec, ...]:
        return tuple(g for g in self.gadgets if g.gen_kind == gen_kind)


def build_layout(profile: CodeProfile, scheme: str,
                 kind: str = "flag") -> FtLayout:
    """Assign gadgets to every generator of a code profile."""
    if kind not in KINDS:
        raise UnsupportedLayoutError(f"unknown gadget kind {kind!r}")
    gadgets = []
    index = 0
    for gen_kind, gammas in (("X", profile.gamma_x), ("Z", profile.gamma_z)):
        for gamma in gammas:
            f = n_flag(scheme, gamma, profile.d)
            gadgets.append(GadgetSpec(
                index=index, gen_kind=gen_kind, gamma=gamma, n_flag=f,
                n_fl=faulty_locations(kind, gamma, f)))
            index += 1
    return FtLayout(profile=profile, scheme=scheme, kind=kind,
                    gadgets=tuple(gadgets))
