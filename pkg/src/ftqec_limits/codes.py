"""Stabilizer-code catalog.

Three families ship with explicit generator layouts (Steane, planar surface,
rotated surface); four more are catalogued by their structural profile only
(generator weight and qubit participation lists), which is all the analytic
bounds need.  Generator layouts for the shipped distances are frozen as
plain-text data files under ``data/layouts/`` and are the source of truth;
the geometric builders exist to regenerate them and to construct larger
distances on the fly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

from .paulis import (
    commutes,
    mask_from_indices,
    indices_from_mask,
    parity,
    stabilizer_group,
    symplectic_rank,
    weight,
)

FAMILIES = (
    "steane",
    "surface",
    "rotated_surface",
    "mobius",
    "honeycomb_color",
    "square_octagon_color",
    "gross",
)

#: Families whose generator layouts are available (matrix-backed).
LAYOUT_FAMILIES = ("steane", "surface", "rotated_surface")

#: Distances whose layouts are frozen as data files.
_FROZEN_DISTANCES = {
    "steane": (3,),
    "surface": (3, 5, 7),
    "rotated_surface": (3, 5, 7),
}

_LAYOUT_VERSION = "ftqec-limits layout v1"

# Group enumeration is capped at 2^20 elements; beyond that the weight
# enumerator is declared unavailable rather than silently slow.
_ENUM_LIMIT_RANK = 20


class UnsupportedCodeError(ValueError):
    """Requested family/distance combination is outside the catalog."""


class CodeConstructionError(RuntimeError):
    """A constructed code violated one of its structural invariants."""


class EnumeratorUnavailableError(RuntimeError):
    """Weight enumeration needs generator data and a tractable group size."""


@dataclass(frozen=True)
class StabilizerCode:
    """A CSS stabilizer code, possibly profile-only.

    ``x_generators``/``z_generators`` are bit masks over data qubits in
    catalog order (ascending weight, then ascending mask).  They are ``None``
    for profile-only families, where only the structural counts below are
    known.  ``gamma_x``/``gamma_z`` list generator weights per type and
    ``v_x``/``v_z`` the per-qubit participation counts (how many generators
    of that type touch each qubit), both sorted ascending.
    """

    family: str
    distance: int
    n: int
    k: int
    d: int
    x_generators: tuple[int, ...] | None
    z_generators: tuple[int, ...] | None
    logical_x: int | None
    logical_z: int | None
    gamma_x: tuple[int, ...]
    gamma_z: tuple[int, ...]
    v_x: tuple[int, ...]
    v_z: tuple[int, ...]

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    @property
    def name(self) -> str:
        if self.family == "steane":
            return "steane"
        return f"{self.family}_d{self.distance}"

    @property
    def profile_only(self) -> bool:
        return self.x_generators is None

    def generators(self) -> tuple[tuple[str, int], ...]:
        """All generators in catalog order: X group first, then Z group."""
        if self.profile_only:
            raise CodeConstructionError(
                f"{self.name} is profile-only; no generator masks available")
        return tuple([("X", m) for m in self.x_generators]
                     + [("Z", m) for m in self.z_generators])

    def syndrome(self, ex: int, ez: int) -> int:
        """Packed syndrome of a Pauli error; bit i covers generator i.

        X-type generators flag the Z part of the error and vice versa.
        """
        bits = 0
        for i, (kind, mask) in enumerate(self.generators()):
            hit = ez if kind == "X" else ex
            if parity(mask & hit):
                bits |= 1 << i
        return bits


@dataclass(frozen=True)
class CodeProfile:
    """Structural counts consumed by the layout and bound modules."""

    family: str
    distance: int
    n: int
    k: int
    d: int
    gamma_x: tuple[int, ...]
    gamma_z: tuple[int, ...]
    v_x: tuple[int, ...]
    v_z: tuple[int, ...]

    @property
    def t(self) -> int:
        return (self.d - 1) // 2

    @property
    def gammas(self) -> tuple[int, ...]:
        """All generator weights, X group then Z group."""
        return self.gamma_x + self.gamma_z


# ---------------------------------------------------------------------------
# geometric constructions

def _steane_masks() -> tuple[list[int], list[int], int, int]:
    # Hamming(7,4) parity checks, applied identically as X- and Z-type.
    supports = [(0, 2, 4, 6), (1, 2, 5, 6), (3, 4, 5, 6)]
    masks = [mask_from_indices(s) for s in supports]
    logical = mask_from_indices((0, 1, 2))
    return list(masks), list(masks), logical, logical


def _surface_masks(d: int) -> tuple[list[int], list[int], int, int]:
    """Planar surface code on a (2d-1) x (2d-1) site grid.

    Data qubits sit on sites with even coordinate sum; X checks on sites
    with odd row / even column, Z checks on even row / odd column.  Checks
    act on the (up to four) orthogonally adjacent qubit sites.
    """
    size = 2 * d - 1
    qubit_index: dict[tuple[int, int], int] = {}
    for i in range(size):
        for j in range(size):
            if (i + j) % 2 == 0:
                qubit_index[(i, j)] = len(qubit_index)

    def check_mask(i: int, j: int) -> int:
        neigh = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
        return mask_from_indices(qubit_index[s] for s in neigh
                                 if s in qubit_index)

    x_gens = [check_mask(i, j) for i in range(1, size, 2)
              for j in range(0, size, 2)]
    z_gens = [check_mask(i, j) for i in range(0, size, 2)
              for j in range(1, size, 2)]
    logical_x = mask_from_indices(qubit_index[(0, j)]
                                  for j in range(0, size, 2))
    logical_z = mask_from_indices(qubit_index[(i, 0)]
                                  for i in range(0, size, 2))
    return x_gens, z_gens, logical_x, logical_z


def _rotated_surface_masks(d: int) -> tuple[list[int], list[int], int, int]:
    """Rotated surface code on a d x d data grid.

    Plaquette (r, c) covers the data qubits at (r, c), (r, c+1), (r+1, c),
    (r+1, c+1) clipped to the grid; it is X-type when r + c is odd.  Interior
    plaquettes are kept whole; boundary halves survive on the top/bottom rows
    for X type and the left/right columns for Z type.
    """
    def idx(r: int, c: int) -> int:
        return r * d + c

    x_gens: list[int] = []
    z_gens: list[int] = []
    for r in range(-1, d):
        for c in range(-1, d):
            corners = [(r + dr, c + dc) for dr in (0, 1) for dc in (0, 1)]
            inside = [(rr, cc) for rr, cc in corners
                      if 0 <= rr < d and 0 <= cc < d]
            is_x = (r + c) % 2 != 0
            if len(inside) == 4:
                keep = True
            elif len(inside) == 2:
                keep = (r in (-1, d - 1)) if is_x else (c in (-1, d - 1))
            else:
                keep = False
            if not keep:
                continue
            mask = mask_from_indices(idx(rr, cc) for rr, cc in inside)
            (x_gens if is_x else z_gens).append(mask)

    logical_x = mask_from_indices(idx(r, 0) for r in range(d))
    logical_z = mask_from_indices(idx(0, c) for c in range(d))
    return x_gens, z_gens, logical_x, logical_z


_BUILDERS = {
    "steane": lambda d: _steane_masks(),
    "surface": _surface_masks,
    "rotated_surface": _rotated_surface_masks,
}


# ---------------------------------------------------------------------------
# closed-form structural profiles

def _closed_form_counts(family: str, d: int):
    """(n, k, per-type gamma list, per-type v list) from the catalog formulas.

    Gamma and v lists are per generator type; every catalogued family is
    symmetric, with identical lists for the X and Z groups.
    """
    if family == "mobius":
        n = 2 * d * d - d
        gammas = [3] * (2 * d) + [4] * (2 * d * d - d - 1 - 2 * d)
        v = [1] * (2 * d) + [2] * (n - 2 * d)
        return n, 1, _half(gammas), v
    if family == "honeycomb_color":
        n = (3 * d * d + 1) // 4
        total = 3 * (d * d - 1) // 4
        gammas = [4] * (3 * (d - 1)) + [6] * (total - 3 * (d - 1))
        v = [1] * 3 + [2] * (3 * (d - 1) - 3) + [3] * (n - 3 * (d - 1))
        return n, 1, _half(gammas), v
    if family == "square_octagon_color":
        n = (d * d - 1) // 2 + d
        total = (d * d - 1) // 2 + d - 1
        n4 = (d - 1) * (d + 5) // 4
        gammas = [4] * n4 + [8] * (total - n4)
        v = [1] * 3 + [2] * (3 * (d - 1) - 3) + [3] * (n - 3 * (d - 1))
        return n, 1, _half(gammas), v
    if family == "gross":
        # Catalogued with the full redundant measurement set of 72 checks per
        # type (the independent generator count is n - k = 132), which is the
        # set the participation counts v_j = 3 are consistent with.
        return 144, 12, [6] * 72, [3] * 144
    raise UnsupportedCodeError(f"unknown family {family!r}")


def _half(gammas: list[int]) -> list[int]:
    # per-type list: symmetric families split every weight class evenly
    from collections import Counter
    counts = Counter(gammas)
    out: list[int] = []
    for w in sorted(counts):
        c = counts[w]
        if c % 2:
            raise CodeConstructionError(
                f"weight-{w} generator count {c} is odd; cannot split by type")
        out.extend([w] * (c // 2))
    return out


def _validate_distance(family: str, d: int) -> None:
    if family == "steane":
        if d != 3:
            raise UnsupportedCodeError("steane exists only at distance 3")
        return
    if family == "gross":
        if d != 12:
            raise UnsupportedCodeError("gross code has fixed distance 12")
        return
    if d < 3 or d % 2 == 0:
        raise UnsupportedCodeError(
            f"{family} requires an odd distance >= 3, got {d}")
    if family == "square_octagon_color" and d == 3:
        # The catalog formulas put weight-8 generators on 7 qubits at d=3;
        # the family is only meaningful from d=5 up.
        raise UnsupportedCodeError(
            "square_octagon_color is supported for odd distance >= 5")


# ---------------------------------------------------------------------------
# layout data files

def _layout_resource(family: str, d: int):
    name = "steane_d3.txt" if family == "steane" else f"{family}_d{d}.txt"
    return resources.files("ftqec_limits").joinpath("data", "layouts", name)


def format_layout(family: str, d: int, n: int, k: int,
                  x_gens: list[int], z_gens: list[int]) -> str:
    """Serialize generators as the frozen plain-text layout format."""
    lines = [f"# {_LAYOUT_VERSION}",
             f"# family={family} distance={d} n={n} k={k}"]
    for tag, gens in (("X", x_gens), ("Z", z_gens)):
        for mask in gens:
            lines.append(tag + " " + " ".join(
                str(q) for q in indices_from_mask(mask)))
    return "\n".join(lines) + "\n"


def _parse_layout(text: str, family: str, d: int) -> tuple[list[int], list[int], int, int]:
    lines = text.splitlines()
    if not lines or lines[0].lstrip("# ").strip() != _LAYOUT_VERSION:
        raise CodeConstructionError("layout file has unknown version header")
    meta = dict(kv.split("=") for kv in lines[1].lstrip("# ").split())
    if meta["family"] != family or int(meta["distance"]) != d:
        raise CodeConstructionError(
            f"layout file metadata {meta} does not match request "
            f"({family}, d={d})")
    x_gens: list[int] = []
    z_gens: list[int] = []
    for line in lines[2:]:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tag, *idx = line.split()
        mask = mask_from_indices(int(q) for q in idx)
        if tag == "X":
            x_gens.append(mask)
        elif tag == "Z":
            z_gens.append(mask)
        else:
            raise CodeConstructionError(f"unknown generator tag {tag!r}")
    return x_gens, z_gens, int(meta["n"]), int(meta["k"])


# ---------------------------------------------------------------------------
# construction and checks

def _sorted_gens(gens: list[int]) -> tuple[int, ...]:
    return tuple(sorted(gens, key=lambda m: (m.bit_count(), m)))


def _participation(gens: tuple[int, ...], n: int) -> tuple[int, ...]:
    v = [0] * n
    for mask in gens:
        for q in indices_from_mask(mask):
            v[q] += 1
    return tuple(sorted(v))


def _check_structure(code: StabilizerCode) -> None:
    """Structural invariants for matrix-backed codes."""
    n = code.n
    gens = code.generators()
    for kind_a, a in gens:
        for kind_b, b in gens:
            xa, za = (a, 0) if kind_a == "X" else (0, a)
            xb, zb = (b, 0) if kind_b == "X" else (0, b)
            if not commutes(xa, za, xb, zb):
                raise CodeConstructionError(
                    f"{code.name}: generators do not commute")
    paulis = [((m, 0) if kind == "X" else (0, m)) for kind, m in gens]
    if symplectic_rank(paulis, n) != n - code.k:
        raise CodeConstructionError(
            f"{code.name}: generators are not independent / wrong count")
    lx, lz = code.logical_x, code.logical_z
    for m, kind in ((lx, "X"), (lz, "Z")):
        x, z = (m, 0) if kind == "X" else (0, m)
        for kind_g, g in gens:
            gx, gz = (g, 0) if kind_g == "X" else (0, g)
            if not commutes(x, z, gx, gz):
                raise CodeConstructionError(
                    f"{code.name}: logical {kind} fails to commute "
                    "with a generator")
    if commutes(lx, 0, 0, lz):
        raise CodeConstructionError(
            f"{code.name}: logical X and Z do not anticommute")


def build_code(family: str, distance: int) -> StabilizerCode:
    """Construct a catalogued code.

    Raises ``UnsupportedCodeError`` for combinations outside the catalog.
    """
    if family not in FAMILIES:
        raise UnsupportedCodeError(
            f"unknown family {family!r}; choose from {FAMILIES}")
    _validate_distance(family, distance)

    if family in LAYOUT_FAMILIES:
        res = _layout_resource(family, distance)
        if distance in _FROZEN_DISTANCES[family]:
            x_gens, z_gens, n, k = _parse_layout(
                res.read_text(), family, distance)
            _, _, logical_x, logical_z = _BUILDERS[family](distance)
        else:
            x_gens, z_gens, logical_x, logical_z = _BUILDERS[family](distance)
        n, k = _family_nk(family, distance)
        xg = _sorted_gens(x_gens)
        zg = _sorted_gens(z_gens)
        code = StabilizerCode(
            family=family, distance=distance, n=n, k=k, d=distance,
            x_generators=xg, z_generators=zg,
            logical_x=logical_x, logical_z=logical_z,
            gamma_x=tuple(m.bit_count() for m in xg),
            gamma_z=tuple(m.bit_count() for m in zg),
            v_x=_participation(xg, n),
            v_z=_participation(zg, n),
        )
        _check_structure(code)
        return code

    n, k, gammas_type, v_type = _closed_form_counts(family, distance)
    return StabilizerCode(
        family=family, distance=distance, n=n, k=k, d=distance,
        x_generators=None, z_generators=None,
        logical_x=None, logical_z=None,
        gamma_x=tuple(gammas_type), gamma_z=tuple(gammas_type),
        v_x=tuple(v_type), v_z=tuple(v_type),
    )


def _family_nk(family: str, d: int) -> tuple[int, int]:
    if family == "steane":
        return 7, 1
    if family == "surface":
        return 2 * d * d - 2 * d + 1, 1
    if family == "rotated_surface":
        return d * d, 1
    n, k, _, _ = _closed_form_counts(family, d)
    return n, k


def code_profile(code: StabilizerCode) -> CodeProfile:
    """Structural profile (weights and participation counts) of a code."""
    return CodeProfile(
        family=code.family, distance=code.distance,
        n=code.n, k=code.k, d=code.d,
        gamma_x=code.gamma_x, gamma_z=code.gamma_z,
        v_x=code.v_x, v_z=code.v_z,
    )


def weight_enumerator(code: StabilizerCode) -> tuple[int, ...]:
    """Weight enumerator coefficients (A_0 .. A_n).

    A_w is 4^k times the number of weight-w elements of the (projective)
    stabilizer group, so A_0 = 4^k and sum(A) = 4^k 2^(n-k).  Available only
    for matrix-backed codes whose group is small enough to enumerate.
    """
    if code.profile_only:
        raise EnumeratorUnavailableError(
            f"{code.name} has no generator layout; enumerator unavailable")
    r = code.n - code.k
    if r > _ENUM_LIMIT_RANK:
        raise EnumeratorUnavailableError(
            f"stabilizer group of 2^{r} elements is too large to enumerate")
    gens = [(m, 0) for m in code.x_generators]
    gens += [(0, m) for m in code.z_generators]
    hist = [0] * (code.n + 1)
    for x, z in stabilizer_group(gens, code.n):
        hist[weight(x, z)] += 1
    scale = 4 ** code.k
    return tuple(scale * h for h in hist)
