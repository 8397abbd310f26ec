"""Tests for the symplectic Pauli primitives."""

import random

import pytest

from ftqec_limits.paulis import (
    F2Space,
    commutes,
    f2_rank,
    indices_from_mask,
    mask_from_indices,
    parity,
    pauli_from_string,
    pauli_to_string,
    stabilizer_group,
    symplectic_rank,
    weight,
)


def test_parity_known_values():
    assert parity(0) == 0
    assert parity(1) == 1
    assert parity(0b1011) == 1
    assert parity(0b1111) == 0


def test_parity_random_sweep():
    rng = random.Random(11)
    for _ in range(500):
        m = rng.getrandbits(64)
        assert parity(m) == bin(m).count("1") % 2


def test_weight_counts_support_not_letters():
    # Y counts once even though both bits are set on that qubit.
    assert weight(0b101, 0b110) == 3
    assert weight(0, 0) == 0
    assert weight(0b1, 0b1) == 1


def test_weight_random_sweep():
    rng = random.Random(12)
    for _ in range(500):
        x = rng.getrandbits(30)
        z = rng.getrandbits(30)
        assert weight(x, z) == bin(x | z).count("1")


def test_commutes_single_qubit_pairs():
    ident, x, z, y = (0, 0), (1, 0), (0, 1), (1, 1)
    for a in (ident, x, z, y):
        assert commutes(*a, *a)
        assert commutes(*a, *ident)
    assert not commutes(*x, *z)
    assert not commutes(*x, *y)
    assert not commutes(*z, *y)


def test_commutes_disjoint_supports():
    a = pauli_from_string("XYZI")
    b = pauli_from_string("IIIX")
    assert commutes(*a, *b)


def test_commutes_symmetry_sweep():
    rng = random.Random(13)
    for _ in range(300):
        a = (rng.getrandbits(16), rng.getrandbits(16))
        b = (rng.getrandbits(16), rng.getrandbits(16))
        assert commutes(*a, *b) == commutes(*b, *a)


def test_pauli_string_round_trip():
    s = "IXZY"
    assert pauli_to_string(*pauli_from_string(s), 4) == s
    # Qubit 0 is the leftmost character.
    x, z = pauli_from_string("XII")
    assert x == 0b001 and z == 0


def test_pauli_string_round_trip_sweep():
    rng = random.Random(14)
    for _ in range(200):
        n = rng.randrange(1, 12)
        s = "".join(rng.choice("IXZY") for _ in range(n))
        assert pauli_to_string(*pauli_from_string(s), n) == s


def test_pauli_from_string_rejects_unknown_letter():
    with pytest.raises(ValueError):
        pauli_from_string("XQZ")


def test_mask_index_round_trip():
    assert mask_from_indices([0, 3, 5]) == 0b101001
    assert indices_from_mask(0b101001) == (0, 3, 5)
    assert indices_from_mask(0) == ()
    rng = random.Random(15)
    for _ in range(200):
        idx = sorted(rng.sample(range(20), rng.randrange(0, 8)))
        assert list(indices_from_mask(mask_from_indices(idx))) == idx


def test_f2_space_rank_and_membership():
    space = F2Space()
    assert space.add(0b011)
    assert space.add(0b110)
    # Dependent vector: XOR of the two rows already present.
    assert not space.add(0b101)
    assert space.rank == 2
    assert 0b101 in space
    assert 0b011 in space
    assert 0 in space
    assert 0b111 not in space


def test_f2_space_reduce_is_idempotent():
    rng = random.Random(16)
    space = F2Space()
    for _ in range(6):
        space.add(rng.getrandbits(12))
    for _ in range(50):
        v = rng.getrandbits(12)
        r = space.reduce(v)
        assert space.reduce(r) == r
        # Reduction only differs from the input by a member of the space.
        assert (v ^ r) in space


def test_f2_space_membership_sweep():
    rng = random.Random(17)
    basis = [rng.getrandbits(24) for _ in range(8)]
    space = F2Space()
    for b in basis:
        space.add(b)
    for _ in range(200):
        combo = 0
        for b in basis:
            if rng.random() < 0.5:
                combo ^= b
        assert combo in space


def test_f2_rank_matches_elimination_oracle():
    def rank_oracle(rows, width):
        rows = list(rows)
        rank = 0
        for col in range(width):
            pivot = None
            for i in range(rank, len(rows)):
                if rows[i] >> col & 1:
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i] >> col & 1:
                    rows[i] ^= rows[rank]
            rank += 1
        return rank

    rng = random.Random(18)
    for _ in range(100):
        rows = [rng.getrandbits(10) for _ in range(rng.randrange(1, 8))]
        assert f2_rank(rows) == rank_oracle(rows, 10)


def test_symplectic_rank_of_steane_generators():
    supports = [0b1010101, 0b0110011, 0b0001111]
    gens = [(m, 0) for m in supports] + [(0, m) for m in supports]
    assert symplectic_rank(gens, 7) == 6


def test_stabilizer_group_size_and_closure():
    supports = [0b1010101, 0b0110011, 0b0001111]
    gens = [(m, 0) for m in supports] + [(0, m) for m in supports]
    group = stabilizer_group(gens, 7)
    assert len(group) == 2 ** 6
    members = set(group)
    assert (0, 0) in members
    for g in gens:
        assert g in members
    rng = random.Random(19)
    for _ in range(100):
        (ax, az), (bx, bz) = rng.choice(group), rng.choice(group)
        assert (ax ^ bx, az ^ bz) in members


def test_stabilizer_group_rejects_dependent_generators():
    gens = [(0b011, 0), (0b110, 0), (0b101, 0)]
    with pytest.raises(ValueError):
        stabilizer_group(gens, 3)
