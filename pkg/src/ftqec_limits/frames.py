"""Pauli-frame kernel under the cycle simulator.

Tracks, per qubit, the X and Z components of the accumulated Pauli error
(the frame) while Clifford gates act on it by conjugation.  Phases are never
tracked: measurement-outcome flips and stabilizer membership depend only on
the projective frame, and every circuit simulated here is Clifford with
Pauli noise, so the frame picture is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .paulis import PAULI_CHARS

ROLES = ("data", "ancilla", "flag")

#: Fault kinds in the order ``sample_fault`` maps its uniform draw onto.
FAULT_KINDS = ("X", "Y", "Z")


@dataclass(slots=True)
class PauliFrame:
    """Mutable X/Z bit-mask pair over a fixed qubit register.

    ``roles[q]`` tags qubit ``q`` as data, ancilla, or flag.  The tags only
    matter to consumers (classifying residual errors, deciding what a
    readout resets); the gate rules ignore them.  Composing two frames is
    XOR of the masks and the identity frame is all-zero.
    """

    roles: tuple[str, ...]
    x: int = 0
    z: int = 0

    def __post_init__(self) -> None:
        self.roles = tuple(self.roles)
        for role in self.roles:
            if role not in ROLES:
                raise ValueError(f"unknown qubit role {role!r}")

    @property
    def n(self) -> int:
        return len(self.roles)

    def copy(self) -> "PauliFrame":
        return PauliFrame(self.roles, self.x, self.z)

    def apply(self, qubit: int, pauli: str) -> None:
        """Multiply an X, Y or Z on one qubit into the frame."""
        if not 0 <= qubit < self.n:
            raise ValueError(f"qubit {qubit} outside register of {self.n}")
        if pauli not in FAULT_KINDS:
            raise ValueError(f"expected one of {FAULT_KINDS}, got {pauli!r}")
        bit = 1 << qubit
        if pauli != "Z":
            self.x ^= bit
        if pauli != "X":
            self.z ^= bit

    def pauli_on(self, qubit: int) -> str:
        """Single-qubit component as a character from ``PAULI_CHARS``."""
        xb = (self.x >> qubit) & 1
        zb = (self.z >> qubit) & 1
        return PAULI_CHARS[xb | (zb << 1)]

    def compose(self, other: "PauliFrame") -> "PauliFrame":
        if self.roles != other.roles:
            raise ValueError("frames live on different registers")
        return PauliFrame(self.roles, self.x ^ other.x, self.z ^ other.z)


@dataclass(frozen=True)
class FaultLocation:
    """One fault-injection point inside an extraction gadget.

    ``ordinal`` numbers the locations of a gadget 0..n_fl-1 in temporal
    order.  ``gadget`` is the gadget's position in the extraction round and
    ``generator`` the catalog index of the generator it measures (equal for
    every layout built here, kept separate because a schedule could in
    principle measure one generator twice).  ``phase`` names the circuit
    position ('after_init', 'data_gate_data', 'flag_entangle_ancilla', ...)
    so tests and tallies can select structural subsets.
    """

    gadget: int
    generator: int
    ordinal: int
    qubit: int
    phase: str


def conjugate_through(gate: tuple, frame: PauliFrame) -> PauliFrame:
    """Push the frame through one Clifford gate, in place.

    Gates are tuples: ``("H", q)``, ``("CNOT", control, target)`` or
    ``("CZ", a, b)``.  H swaps the X and Z bits of its qubit; CNOT copies
    an X from control onto the target and a Z from target onto the control;
    CZ turns an X on either qubit into an extra Z on the other and leaves
    Z components alone.  All three rules are self-inverse.  Returns the
    mutated frame for chaining.
    """
    kind = gate[0]
    if kind == "H":
        _, q = gate
        if q >= frame.n:
            raise ValueError(f"qubit {q} outside register of {frame.n}")
        diff = (frame.x ^ frame.z) & (1 << q)
        frame.x ^= diff
        frame.z ^= diff
        return frame
    if kind == "CNOT":
        _, control, target = gate
        if max(control, target) >= frame.n or control == target:
            raise ValueError(f"bad CNOT qubits {(control, target)}")
        if frame.x & (1 << control):
            frame.x ^= 1 << target
        if frame.z & (1 << target):
            frame.z ^= 1 << control
        return frame
    if kind == "CZ":
        _, a, b = gate
        if max(a, b) >= frame.n or a == b:
            raise ValueError(f"bad CZ qubits {(a, b)}")
        flips = 0
        if frame.x & (1 << a):
            flips |= 1 << b
        if frame.x & (1 << b):
            flips |= 1 << a
        frame.z ^= flips
        return frame
    raise ValueError(f"unknown gate kind {kind!r}")


def sample_fault(location: FaultLocation, p_ft: float, rng) -> str | None:
    """Draw the depolarizing fault for one location.

    Returns 'X', 'Y' or 'Z' each with probability p_ft/3, else None.  The
    caller applies the result to ``location.qubit``.  Exactly one uniform
    draw is consumed whether or not a fault fires, so a fixed location
    order yields a reproducible draw sequence.
    """
    if not 0.0 <= p_ft <= 1.0:
        raise ValueError(f"fault rate must be in [0, 1], got {p_ft}")
    u = rng.random()
    if u >= p_ft:
        return None
    # u is uniform on [0, p_ft); rescaling keeps the three kinds uniform
    # with no second draw.  min() guards the rounding edge at u -> p_ft.
    return FAULT_KINDS[min(int(3.0 * u / p_ft), 2)]


def measure_z(frame: PauliFrame, qubit: int, flip_fault: bool = False) -> int:
    """Z-readout outcome flip of one qubit; the qubit then resets.

    In the frame picture the qubit is ideally in a Z eigenstate, so the
    recorded outcome flips iff the frame carries an X component there.
    ``flip_fault`` models a classical readout flip.  The measured qubit's
    frame bits are cleared afterwards (measure-and-reinitialize, the way
    every ancilla and flag here is reused).
    """
    if not 0 <= qubit < frame.n:
        raise ValueError(f"qubit {qubit} outside register of {frame.n}")
    bit = 1 << qubit
    outcome = int(bool(frame.x & bit)) ^ int(flip_fault)
    frame.x &= ~bit
    frame.z &= ~bit
    return outcome
