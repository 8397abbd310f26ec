"""Final-syndrome decoders and exact decoder-quality enumeration.

Two decoders over a code's packed syndrome: a minimum-weight lookup table
for any small code, and minimum-weight perfect matching for planar CSS
codes.  Both return Pauli corrections as (x_mask, z_mask) pairs.
compute_beta measures the exact fraction of fixed-weight errors a decoder
handles, by full enumeration.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .codes import StabilizerCode, UnsupportedCodeError
from .paulis import F2Space, parity

# Single-qubit letters in this package's integer encoding order: X, Z, Y.
_LETTER_BITS = ((1, 0), (0, 1), (1, 1))

_LUT_MAX_N = 15


@lru_cache(maxsize=None)
def _symplectic_space(code: StabilizerCode) -> F2Space:
    space = F2Space()
    for kind, mask in code.generators():
        x, z = (mask, 0) if kind == "X" else (0, mask)
        space.add(x | z << code.n)
    return space


def decode_success(code: StabilizerCode, error: tuple[int, int],
                   correction: tuple[int, int]) -> bool:
    """True iff correction applied after error preserves the codeword.

    Degeneracy-aware: the composite must lie in the stabilizer group, not
    necessarily be the identity.
    """
    ex, ez = error
    cx, cz = correction
    return (ex ^ cx) | (ez ^ cz) << code.n in _symplectic_space(code)


@dataclass(frozen=True)
class SyndromeLUT:
    """Minimum-weight coset representative for every syndrome."""

    code: StabilizerCode
    table: tuple[tuple[int, int], ...]

    def decode(self, syndrome: int) -> tuple[int, int]:
        return self.table[syndrome]


def _pauli_patterns(n: int, w: int):
    """All weight-w Paulis on n qubits, in the frozen enumeration order.

    Supports ascend lexicographically; letters cycle X, Z, Y per qubit.
    """
    for support in itertools.combinations(range(n), w):
        for letters in itertools.product(_LETTER_BITS, repeat=w):
            ex = ez = 0
            for q, (bx, bz) in zip(support, letters):
                ex |= bx << q
                ez |= bz << q
            yield ex, ez


def build_lookup_decoder(code: StabilizerCode) -> SyndromeLUT:
    """Table of minimum-weight corrections, one per syndrome.

    Errors are enumerated in increasing weight and the first writer wins,
    so every stored representative has minimal weight in its syndrome
    class.
    """
    if code.profile_only:
        raise UnsupportedCodeError(
            f"{code.name} has no generator masks; lookup decoding unavailable")
    if code.n > _LUT_MAX_N:
        raise UnsupportedCodeError(
            f"lookup table over {code.n} qubits is infeasible (limit {_LUT_MAX_N})")
    size = 1 << (code.n - code.k)
    table: list[tuple[int, int] | None] = [None] * size
    table[0] = (0, 0)
    filled = 1
    for w in range(1, code.n + 1):
        if filled == size:
            break
        for ex, ez in _pauli_patterns(code.n, w):
            s = code.syndrome(ex, ez)
            if table[s] is None:
                table[s] = (ex, ez)
                filled += 1
                if filled == size:
                    break
    if filled != size:
        raise UnsupportedCodeError(
            f"{code.name}: {size - filled} syndromes unreachable by Pauli errors")
    return SyndromeLUT(code=code, table=tuple(table))


def _defect_graph(masks: tuple[int, ...], n: int, edge_order: str):
    """Adjacency of the matching graph for one generator type.

    Nodes are the generators of that type plus one boundary node; each
    data qubit is an edge between the (at most two) generators it belongs
    to, or between a generator and the boundary.  edge_order fixes the
    BFS exploration order and with it which of several equally short
    correction chains is returned; it is part of the frozen decoder
    contract (see build_matching_decoder).
    """
    m = len(masks)
    boundary = m
    adj: list[list[tuple[int, int]]] = [[] for _ in range(m + 1)]
    for j in range(n):
        owners = [i for i, mask in enumerate(masks) if (mask >> j) & 1]
        if not owners:
            continue
        if len(owners) == 1:
            a, b = owners[0], boundary
        elif len(owners) == 2:
            a, b = owners
        else:
            raise UnsupportedCodeError(
                f"qubit {j} belongs to {len(owners)} same-type generators; "
                "matching requires a planar layout")
        adj[a].append((b, j))
        adj[b].append((a, j))
    key = (lambda e: (e[1], e[0])) if edge_order == "qubit" else (lambda e: e)
    for rows in adj:
        rows.sort(key=key)
    return adj, boundary


def _bfs_paths(adj, source: int):
    """Hop distances and deterministic shortest-path parents from source."""
    dist = {source: 0}
    parent: dict[int, tuple[int, int]] = {}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for v, qubit in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = (u, qubit)
                    nxt.append(v)
        frontier = nxt
    return dist, parent


def _path_mask(parent, source: int, target: int) -> int:
    mask = 0
    node = target
    while node != source:
        node, qubit = parent[node]
        mask ^= 1 << qubit
    return mask


def _best_matching(defects: tuple[int, ...], dist, boundary: int):
    """Minimum-cost pairing; ties broken by the sorted pair list."""
    best: tuple[int, tuple[tuple[int, int], ...]] | None = None

    def rec(remaining, cost, pairs):
        nonlocal best
        if best is not None and cost > best[0]:
            return
        if not remaining:
            cand = (cost, tuple(sorted(pairs)))
            if best is None or cand < best:
                best = cand
            return
        u, rest = remaining[0], remaining[1:]
        rec(rest, cost + dist[u][boundary], pairs + [(u, boundary)])
        for idx, v in enumerate(rest):
            rec(rest[:idx] + rest[idx + 1:], cost + dist[u][v],
                pairs + [(u, v)])

    rec(defects, 0, [])
    assert best is not None
    return best[1]


@dataclass(frozen=True)
class MatchingDecoder:
    """Independent X/Z minimum-weight perfect matching over planar graphs."""

    code: StabilizerCode
    x_corrections: tuple[int, ...]  # indexed by Z-generator defect bits
    z_corrections: tuple[int, ...]  # indexed by X-generator defect bits

    def decode(self, syndrome: int) -> tuple[int, int]:
        mx = len(self.code.x_generators)
        x_defects = syndrome >> mx
        z_defects = syndrome & ((1 << mx) - 1)
        return self.x_corrections[x_defects], self.z_corrections[z_defects]


def _matching_table(masks: tuple[int, ...], n: int,
                    edge_order: str) -> tuple[int, ...]:
    adj, boundary = _defect_graph(masks, n, edge_order)
    m = len(masks)
    dist = []
    parents = []
    for u in range(m + 1):
        d, par = _bfs_paths(adj, u)
        dist.append(d)
        parents.append(par)
    table = []
    for bits in range(1 << m):
        defects = tuple(i for i in range(m) if (bits >> i) & 1)
        correction = 0
        for u, v in _best_matching(defects, dist, boundary):
            correction ^= _path_mask(parents[u], u, v)
        achieved = 0
        for i, mask in enumerate(masks):
            if parity(mask & correction):
                achieved |= 1 << i
        if achieved != bits:
            raise UnsupportedCodeError(
                f"matching produced syndrome {achieved:0{m}b} for {bits:0{m}b}")
        table.append(correction)
    return tuple(table)


def build_matching_decoder(code: StabilizerCode) -> MatchingDecoder:
    """Per-type matching tables for a planar CSS code.

    Tie handling is frozen as part of this package's contract: matchings
    tie-break on the lexicographically smallest sorted pair list, and
    equally short correction chains resolve through the BFS exploration
    order, qubit-major for the X-correction table and node-major for the
    Z-correction table.  Decoder quality on degenerate weight-2 errors
    depends on these choices, and the frozen pair is the one whose
    measured quality matches the frozen reference values.
    """
    if code.profile_only:
        raise UnsupportedCodeError(
            f"{code.name} has no generator masks; matching unavailable")
    if code.family not in ("surface", "rotated_surface"):
        raise UnsupportedCodeError(
            f"matching decoder supports planar surface layouts, not {code.family}")
    # X errors flip Z-generator bits and are fixed by X-type corrections.
    x_corr = _matching_table(code.z_generators, code.n, "qubit")
    z_corr = _matching_table(code.x_generators, code.n, "node")
    return MatchingDecoder(code=code, x_corrections=x_corr, z_corrections=z_corr)


def mwpm_decode(code: StabilizerCode, syndrome: int) -> tuple[int, int]:
    """One-shot matching decode; builds (and caches) the decoder."""
    return _cached_matching(code).decode(syndrome)


@lru_cache(maxsize=None)
def _cached_matching(code: StabilizerCode) -> MatchingDecoder:
    return build_matching_decoder(code)


def compute_beta(code: StabilizerCode, decoder, w: int) -> Fraction:
    """Exact success fraction of a decoder over all weight-w errors."""
    total_patterns = math.comb(code.n, w) * 3**w
    if total_patterns > 2_000_000:
        raise UnsupportedCodeError(
            f"enumerating {total_patterns} weight-{w} patterns is infeasible")
    wins = 0
    for ex, ez in _pauli_patterns(code.n, w):
        correction = decoder.decode(code.syndrome(ex, ez))
        if decode_success(code, (ex, ez), correction):
            wins += 1
    return Fraction(wins, total_patterns)
