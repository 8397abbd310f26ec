"""Flag-guarded syndrome-extraction gadgets and their fault catalog.

A gadget measures one stabilizer generator through a bare ancilla, guarded
by flag qubits that catch the ancilla errors able to spread onto several
data qubits.  Construction conventions, frozen so fault enumerations and
tables are reproducible:

- Z-type generators couple data onto the ancilla (CNOT data -> ancilla);
  the ancilla is a plain parity accumulator read in the Z basis, and its
  dangerous mid-window errors are Z components, which the flags pick up
  through CNOT flag -> ancilla with the flag read in the X basis.
- X-type generators use the mirrored coupling with the ancilla as control
  (the controlled-Z form with the data-side basis change folded into the
  gate, which leaves the location count unchanged); dangerous mid-window
  ancilla errors are X components, caught by CNOT ancilla -> flag with the
  flag read in the Z basis.
- Data couplings run in ascending qubit order.  With two flags the window
  is: data 1, entangle flag 1, data 2, entangle flag 2, data 3 ...
  data gamma-1, disentangle flag 1, data gamma, disentangle flag 2.
- Every fault location applies a depolarizing fault immediately after its
  circuit element, except the readout locations, which sit just before
  their measurement (so X and Y flip the outcome and Z is silent).
- The ancilla exposes four locations (after initialization, one per
  Hadamard slot, pre-readout) regardless of generator type; for the
  parity-accumulator form the Hadamard pair compiles away but its two
  fault slots remain, keeping the per-gadget location count at
  2*gamma + 4 + 6*n_flag in all cases.
- Each flag exposes six locations: initialization, both sides of each of
  its two coupling CNOTs, and readout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import StabilizerCode
from .frames import (
    FAULT_KINDS,
    FaultLocation,
    PauliFrame,
    conjugate_through,
    measure_z,
    sample_fault,
)
from .layouts import FtLayout, UnsupportedLayoutError
from .paulis import indices_from_mask, weight


@dataclass(frozen=True)
class ExtractionGadget:
    """One generator's measurement circuit with enumerated fault slots.

    ``elements`` is the temporally ordered stream the scalar engine walks:
    ``("gate", g)``, ``("fault", FaultLocation)``, ``("measure_ancilla",
    qubit)`` or ``("measure_flag", qubit, flag_ordinal)``.  ``locations``
    lists the same FaultLocation objects in ordinal order.  ``roles`` is
    the full register the gadget runs on (data qubits first, then the
    shared ancilla and flag slots).
    """

    generator_index: int
    gen_kind: str
    mask: int
    gamma: int
    n_flag: int
    data_qubits: tuple[int, ...]
    ancilla: int
    flag_qubits: tuple[int, ...]
    roles: tuple[str, ...]
    elements: tuple[tuple, ...]
    locations: tuple[FaultLocation, ...]

    @property
    def n_fl(self) -> int:
        return len(self.locations)

    def fresh_frame(self) -> PauliFrame:
        return PauliFrame(self.roles)


def gadget_register(code: StabilizerCode, layout: FtLayout) -> tuple[str, ...]:
    """Qubit roles for a register every gadget of the layout fits in.

    Data qubits occupy indices 0..n-1; the ancilla and the widest gadget's
    flag slots follow.  Ancilla and flags are measured and reset inside
    each gadget, so consecutive gadgets reuse the same indices.
    """
    widest = max(g.n_flag for g in layout.gadgets)
    return ("data",) * code.n + ("ancilla",) + ("flag",) * widest


def build_gadget(code: StabilizerCode, generator_index: int,
                 layout: FtLayout) -> ExtractionGadget:
    """Build the extraction circuit for one generator of the layout."""
    if layout.kind != "flag":
        raise UnsupportedLayoutError(
            f"only flag gadgets are simulable, not {layout.kind!r}")
    if layout.scheme != "optimized":
        raise UnsupportedLayoutError(
            f"gadget circuits exist for the optimized scheme only, "
            f"not {layout.scheme!r}")
    gen_kind, mask = code.generators()[generator_index]
    gspec = layout.gadgets[generator_index]
    gamma = weight(mask, 0)
    if gspec.gamma != gamma or gspec.gen_kind != gen_kind:
        raise UnsupportedLayoutError(
            f"layout gadget {generator_index} ({gspec.gen_kind}, weight "
            f"{gspec.gamma}) does not match generator ({gen_kind}, weight "
            f"{gamma})")
    nflag = gspec.n_flag
    if nflag not in (0, 2) or (nflag == 2 and gamma < 4):
        raise UnsupportedLayoutError(
            f"no circuit template for weight {gamma} with {nflag} flags")

    roles = gadget_register(code, layout)
    data_qubits = indices_from_mask(mask)
    ancilla = code.n
    flag_qubits = tuple(code.n + 1 + k for k in range(nflag))
    x_basis_flags = gen_kind == "Z"

    elements: list[tuple] = []
    locations: list[FaultLocation] = []

    def fault(qubit: int, phase: str) -> None:
        loc = FaultLocation(gadget=generator_index, generator=generator_index,
                            ordinal=len(locations), qubit=qubit, phase=phase)
        locations.append(loc)
        elements.append(("fault", loc))

    def couple(d: int) -> tuple:
        if gen_kind == "X":
            return ("CNOT", ancilla, d)
        return ("CNOT", d, ancilla)

    def flag_couple(fq: int) -> tuple:
        if gen_kind == "X":
            return ("CNOT", ancilla, fq)
        return ("CNOT", fq, ancilla)

    fault(ancilla, "after_init")
    if gen_kind == "X":
        elements.append(("gate", ("H", ancilla)))
    fault(ancilla, "after_h1")

    if nflag == 0:
        schedule: list[tuple] = [("data", j) for j in range(gamma)]
    else:
        schedule = [("data", 0), ("entangle", 0), ("data", 1), ("entangle", 1)]
        schedule += [("data", j) for j in range(2, gamma - 1)]
        schedule += [("disentangle", 0), ("data", gamma - 1), ("disentangle", 1)]

    for step, which in schedule:
        if step == "data":
            d = data_qubits[which]
            elements.append(("gate", couple(d)))
            fault(ancilla, "data_gate_ancilla")
            fault(d, "data_gate_data")
        elif step == "entangle":
            fq = flag_qubits[which]
            fault(fq, "flag_init")
            if x_basis_flags:
                elements.append(("gate", ("H", fq)))
            elements.append(("gate", flag_couple(fq)))
            fault(ancilla, "flag_entangle_ancilla")
            fault(fq, "flag_entangle_flag")
        else:
            fq = flag_qubits[which]
            elements.append(("gate", flag_couple(fq)))
            fault(ancilla, "flag_disentangle_ancilla")
            fault(fq, "flag_disentangle_flag")
            if x_basis_flags:
                elements.append(("gate", ("H", fq)))

    if gen_kind == "X":
        elements.append(("gate", ("H", ancilla)))
    fault(ancilla, "after_h2")
    fault(ancilla, "pre_measure")
    elements.append(("measure_ancilla", ancilla))
    for k, fq in enumerate(flag_qubits):
        fault(fq, "flag_readout")
        elements.append(("measure_flag", fq, k))

    gadget = ExtractionGadget(
        generator_index=generator_index, gen_kind=gen_kind, mask=mask,
        gamma=gamma, n_flag=nflag, data_qubits=data_qubits, ancilla=ancilla,
        flag_qubits=flag_qubits, roles=roles, elements=tuple(elements),
        locations=tuple(locations))
    if gadget.n_fl != gspec.n_fl:
        raise UnsupportedLayoutError(
            f"built {gadget.n_fl} locations, layout declares {gspec.n_fl}")
    return gadget


def build_round(code: StabilizerCode, layout: FtLayout) -> tuple[ExtractionGadget, ...]:
    """All gadgets of one extraction round, in generator catalog order."""
    return tuple(build_gadget(code, i, layout)
                 for i in range(len(layout.gadgets)))


def run_gadget(gadget: ExtractionGadget, frame: PauliFrame,
               p_ft: float = 0.0, rng=None, forced=None,
               collect=None) -> tuple[int, int]:
    """Walk one gadget on a frame; returns (ancilla bit, flag bit pattern).

    ``forced`` maps location ordinals to fault kinds ('X'/'Y'/'Z') for
    deterministic injection and suppresses sampling entirely; otherwise
    each location draws once from ``rng`` at rate ``p_ft``.  ``collect``,
    if given, receives (location, kind) for every fault that fired.
    """
    ancilla_bit = 0
    flag_bits = 0
    for el in gadget.elements:
        tag = el[0]
        if tag == "gate":
            conjugate_through(el[1], frame)
        elif tag == "fault":
            loc = el[1]
            if forced is not None:
                kind = forced.get(loc.ordinal)
            elif p_ft > 0.0:
                kind = sample_fault(loc, p_ft, rng)
            else:
                kind = None
            if kind is not None:
                frame.apply(loc.qubit, kind)
                if collect is not None:
                    collect.append((loc, kind))
        elif tag == "measure_ancilla":
            ancilla_bit = measure_z(frame, el[1])
        else:
            flag_bits |= measure_z(frame, el[1]) << el[2]
    return ancilla_bit, flag_bits


@dataclass(frozen=True)
class FaultEffect:
    """What one single fault does, propagated to the end of its gadget.

    ``data_x``/``data_z`` is the Pauli left on the data register,
    ``own_flip`` whether the gadget's own ancilla readout flipped, and
    ``flag_bits`` the flag pattern raised.
    """

    location: FaultLocation
    kind: str
    data_x: int
    data_z: int
    own_flip: int
    flag_bits: int


def fault_effects(code: StabilizerCode,
                  gadget: ExtractionGadget) -> tuple[FaultEffect, ...]:
    """Exhaustive single-fault propagation catalog of one gadget."""
    data_mask = (1 << code.n) - 1
    effects = []
    for loc in gadget.locations:
        for kind in FAULT_KINDS:
            frame = gadget.fresh_frame()
            bit, flags = run_gadget(gadget, frame, forced={loc.ordinal: kind})
            leftover = (frame.x | frame.z) & ~data_mask
            if leftover:
                raise RuntimeError(
                    f"gadget {gadget.generator_index} left ancilla/flag bits "
                    f"{leftover:#x} unmeasured")
            effects.append(FaultEffect(
                location=loc, kind=kind, data_x=frame.x & data_mask,
                data_z=frame.z & data_mask, own_flip=bit, flag_bits=flags))
    return tuple(effects)


@dataclass(frozen=True)
class FlagTable:
    """Correction lookup for flagged extraction rounds.

    Keys are (gadget index, flag pattern, follow-up syndrome), where the
    follow-up syndrome is the full raw syndrome of the round after the
    flagged one.  With a clean input and a single fault that round measures
    exactly the fault's induced data error, so the key matches the one the
    offline enumeration stored.  A syndrome-difference key was tried first
    and rejected: differencing consecutive rounds cancels the bits of every
    generator measured after the flagged gadget, which is precisely where
    an early-group gadget's hook errors show up, and the resulting key
    collisions break the single-fault guarantee.  Values are data-register
    corrections as (x, z) masks.
    """

    entries: dict

    def correction(self, gadget_index: int, flag_bits: int,
                   followup: int) -> tuple[int, int] | None:
        """Correction for a flagged gadget, or None for an unknown key."""
        return self.entries.get((gadget_index, flag_bits, followup))


def build_flag_table(code: StabilizerCode, layout: FtLayout,
                     gadgets: tuple[ExtractionGadget, ...] | None = None,
                     ) -> FlagTable:
    """Enumerate every single fault and tabulate flagged-case corrections.

    Every fault that raises flags is recorded under (gadget, flag pattern,
    syndrome of its induced data error); per key the stored correction is
    the minimum-weight induced error among the faults landing there (ties
    broken by the (x, z) masks).
    """
    if gadgets is None:
        gadgets = build_round(code, layout)
    best: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    for gadget in gadgets:
        for eff in fault_effects(code, gadget):
            if eff.flag_bits == 0:
                continue
            key = (gadget.generator_index, eff.flag_bits,
                   code.syndrome(eff.data_x, eff.data_z))
            cand = (weight(eff.data_x, eff.data_z), eff.data_x, eff.data_z)
            if key not in best or cand < best[key]:
                best[key] = cand
    entries = {key: (x, z) for key, (_, x, z) in best.items()}
    return FlagTable(entries=entries)


def flag_decode(table: FlagTable, gadget_index: int, flag_bits: int,
                followup: int) -> tuple[int, int]:
    """Table lookup with the identity fallback for unknown keys."""
    hit = table.correction(gadget_index, flag_bits, followup)
    return hit if hit is not None else (0, 0)
