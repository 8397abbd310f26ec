"""Tests for the Pauli-frame kernel."""

import random

import pytest

from ftqec_limits.frames import (
    FAULT_KINDS,
    FaultLocation,
    PauliFrame,
    conjugate_through,
    measure_z,
    sample_fault,
)


def _frame(n=4, x=0, z=0):
    return PauliFrame(("data",) * n, x=x, z=z)


def test_frame_apply_and_pauli_on():
    f = _frame()
    f.apply(0, "X")
    f.apply(1, "Z")
    f.apply(2, "Y")
    assert f.pauli_on(0) == "X"
    assert f.pauli_on(1) == "Z"
    assert f.pauli_on(2) == "Y"
    assert f.pauli_on(3) == "I"
    # Applying the same Pauli twice cancels.
    f.apply(2, "Y")
    assert f.pauli_on(2) == "I"


def test_frame_validation():
    with pytest.raises(ValueError):
        PauliFrame(("data", "spectator"))
    f = _frame()
    with pytest.raises(ValueError):
        f.apply(4, "X")
    with pytest.raises(ValueError):
        f.apply(0, "I")


def test_frame_compose_is_xor():
    a = _frame(x=0b0011, z=0b0101)
    b = _frame(x=0b0110, z=0b0100)
    c = a.compose(b)
    assert (c.x, c.z) == (0b0101, 0b0001)
    with pytest.raises(ValueError):
        a.compose(PauliFrame(("data",) * 3))


def test_frame_copy_is_independent():
    a = _frame(x=1)
    b = a.copy()
    b.apply(1, "X")
    assert a.x == 1 and b.x == 0b11


def test_hadamard_swaps_x_and_z():
    cases = {"I": "I", "X": "Z", "Z": "X", "Y": "Y"}
    for before, after in cases.items():
        f = _frame()
        if before != "I":
            f.apply(0, before)
        conjugate_through(("H", 0), f)
        assert f.pauli_on(0) == after
        assert all(f.pauli_on(q) == "I" for q in range(1, 4))


def test_cnot_propagation_table():
    # (control pauli, target pauli) before -> after
    cases = {
        ("X", "I"): ("X", "X"),
        ("I", "X"): ("I", "X"),
        ("Z", "I"): ("Z", "I"),
        ("I", "Z"): ("Z", "Z"),
        ("Y", "I"): ("Y", "X"),
        ("I", "Y"): ("Z", "Y"),
        ("X", "X"): ("X", "I"),
        ("Z", "Z"): ("I", "Z"),
    }
    for (pc, pt), (ec, et) in cases.items():
        f = _frame()
        if pc != "I":
            f.apply(0, pc)
        if pt != "I":
            f.apply(1, pt)
        conjugate_through(("CNOT", 0, 1), f)
        assert (f.pauli_on(0), f.pauli_on(1)) == (ec, et)


def test_cz_propagation_table():
    cases = {
        ("X", "I"): ("X", "Z"),
        ("I", "X"): ("Z", "X"),
        ("Z", "I"): ("Z", "I"),
        ("Y", "I"): ("Y", "Z"),
        ("X", "X"): ("Y", "Y"),
    }
    for (pa, pb), (ea, eb) in cases.items():
        f = _frame()
        if pa != "I":
            f.apply(0, pa)
        if pb != "I":
            f.apply(1, pb)
        conjugate_through(("CZ", 0, 1), f)
        assert (f.pauli_on(0), f.pauli_on(1)) == (ea, eb)


def test_gates_are_self_inverse():
    rng = random.Random(41)
    gates = [("H", 0), ("H", 3), ("CNOT", 0, 1), ("CNOT", 2, 0),
             ("CZ", 1, 3), ("CZ", 3, 2)]
    for _ in range(200):
        f = _frame(x=rng.getrandbits(4), z=rng.getrandbits(4))
        g = rng.choice(gates)
        before = (f.x, f.z)
        conjugate_through(g, f)
        conjugate_through(g, f)
        assert (f.x, f.z) == before


def test_conjugate_validation():
    f = _frame()
    with pytest.raises(ValueError):
        conjugate_through(("H", 9), f)
    with pytest.raises(ValueError):
        conjugate_through(("CNOT", 1, 1), f)
    with pytest.raises(ValueError):
        conjugate_through(("CZ", 0, 7), f)
    with pytest.raises(ValueError):
        conjugate_through(("SWAP", 0, 1), f)


def test_sample_fault_edges_and_draw_discipline():
    loc = FaultLocation(gadget=0, generator=0, ordinal=0, qubit=0,
                        phase="after_init")
    rng = random.Random(42)
    assert all(sample_fault(loc, 0.0, rng) is None for _ in range(100))
    assert all(sample_fault(loc, 1.0, rng) in FAULT_KINDS for _ in range(100))
    with pytest.raises(ValueError):
        sample_fault(loc, -0.1, rng)
    # Exactly one uniform is consumed per call, fault or not.
    a, b = random.Random(7), random.Random(7)
    for _ in range(50):
        sample_fault(loc, 0.3, a)
        b.random()
    assert a.random() == b.random()


def test_sample_fault_statistics():
    loc = FaultLocation(gadget=0, generator=0, ordinal=0, qubit=0,
                        phase="after_init")
    rng = random.Random(43)
    p = 0.3
    trials = 30_000
    counts = {"X": 0, "Y": 0, "Z": 0, None: 0}
    for _ in range(trials):
        counts[sample_fault(loc, p, rng)] += 1
    # Each kind fires with probability p/3 = 0.1; 4 sigma ~ 0.007.
    for kind in FAULT_KINDS:
        assert abs(counts[kind] / trials - p / 3) < 0.008


def test_measure_z_reads_x_component_and_resets():
    f = _frame()
    f.apply(1, "X")
    f.apply(2, "Z")
    assert measure_z(f, 1) == 1
    assert measure_z(f, 2) == 0
    assert measure_z(f, 3) == 0
    # Measured qubits are cleared entirely.
    assert f.x == 0 and f.z == 0
    f.apply(0, "Y")
    assert measure_z(f, 0) == 1
    assert (f.x, f.z) == (0, 0)


def test_measure_z_flip_fault_and_validation():
    f = _frame()
    assert measure_z(f, 0, flip_fault=True) == 1
    f.apply(1, "X")
    assert measure_z(f, 1, flip_fault=True) == 0
    with pytest.raises(ValueError):
        measure_z(f, 11)
