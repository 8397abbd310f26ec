"""Binary-symplectic representation of Pauli operators.

An n-qubit Pauli (up to phase) is a pair of integer bit masks ``(x, z)``:
bit ``q`` of ``x`` set means an X component on qubit ``q``, bit ``q`` of
``z`` a Z component, and both bits set a Y.  Phases are never tracked:
every consumer in this package (syndromes, coset membership, weights)
only needs the projective group structure.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

PAULI_CHARS = "IXZY"

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}


def parity(mask: int) -> int:
    """Parity (0/1) of the number of set bits."""
    return mask.bit_count() & 1


def weight(x: int, z: int) -> int:
    """Number of qubits acted on non-trivially."""
    return (x | z).bit_count()


def commutes(x1: int, z1: int, x2: int, z2: int) -> bool:
    """True if the two Paulis commute (symplectic inner product is 0)."""
    return (parity(x1 & z2) ^ parity(z1 & x2)) == 0


def pauli_from_string(s: str) -> tuple[int, int]:
    """Parse e.g. ``"XIZY"``; qubit 0 is the leftmost character."""
    x = z = 0
    for q, ch in enumerate(s):
        try:
            xb, zb = _CHAR_TO_BITS[ch]
        except KeyError:
            raise ValueError(f"invalid Pauli character {ch!r}") from None
        x |= xb << q
        z |= zb << q
    return x, z


def pauli_to_string(x: int, z: int, n: int) -> str:
    chars = []
    for q in range(n):
        xb = (x >> q) & 1
        zb = (z >> q) & 1
        chars.append(PAULI_CHARS[xb | (zb << 1) if not (xb and zb) else 3])
    return "".join(chars)


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for q in indices:
        mask |= 1 << q
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return tuple(out)


class F2Space:
    """Row space of a set of F2 vectors (stored as bit masks) in RREF.

    Supports rank queries and membership tests; used for stabilizer-group
    membership where phases are irrelevant.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self._rows: list[int] = []  # kept in decreasing order of pivot bit
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        """Reduce ``v`` against the current basis; 0 means v is in the span."""
        for row in self._rows:
            v = min(v, v ^ row)
        return v

    def add(self, v: int) -> bool:
        """Insert ``v``; returns True if it enlarged the space."""
        v = self.reduce(v)
        if v == 0:
            return False
        # re-reduce existing rows so the basis stays in RREF
        self._rows = [min(r, r ^ v) for r in self._rows]
        self._rows.append(v)
        self._rows.sort(reverse=True)
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[int, ...]:
        return tuple(self._rows)


def f2_rank(vectors: Iterable[int]) -> int:
    return F2Space(vectors).rank


def symplectic_rank(paulis: Iterable[tuple[int, int]], n: int) -> int:
    """Rank of Paulis as F2 vectors of length 2n (x bits low, z bits high)."""
    return f2_rank(x | (z << n) for x, z in paulis)


def stabilizer_group(generators: Sequence[tuple[int, int]], n: int,
                     limit: int = 1 << 20) -> list[tuple[int, int]]:
    """All 2^r elements generated by XOR-combining ``generators``.

    Phases are dropped, so the result is the projective stabilizer group.
    Raises ``ValueError`` if the group would exceed ``limit`` elements.
    """
    r = symplectic_rank(generators, n)
    if r != len(generators):
        raise ValueError("generators are not independent")
    if 1 << r > limit:
        raise ValueError(f"group of 2^{r} elements exceeds enumeration limit")
    elems = [(0, 0)]
    for gx, gz in generators:
        elems += [(x ^ gx, z ^ gz) for x, z in elems]
    return elems
