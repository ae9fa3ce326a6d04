"""Pure-Python hypercube kernels (arbitrary precision, no compilation).

Reference implementation of the hot loops; `subgadgets.kernels` picks the
compiled twin from `_fastcore` when it is available and the values fit in
machine words.  Semantics here are the contract: the compiled kernels must
produce identical output on identical input.
"""

from __future__ import annotations

from typing import Sequence

BACKEND_NAME = "python"


def scan_submodularity(values: Sequence[int], k: int) -> list[tuple[int, int, int, int]]:
    """All violating triples of the pair condition, lexicographic in (S, i, j).

    `values` is the dense table of 2**k integer (scaled) function values.
    A triple violates when v[S] - v[S|i] - v[S|j] + v[S|ij] > 0; the returned
    slack is that positive excess, in the same scaling as `values`.
    """
    n = 1 << k
    out = []
    pairs = [(i, j, (1 << i), (1 << j)) for i in range(k) for j in range(i + 1, k)]
    for s in range(n):
        vs = values[s]
        for i, j, bi, bj in pairs:
            if s & (bi | bj):
                continue
            slack = vs - values[s | bi] - values[s | bj] + values[s | bi | bj]
            if slack > 0:
                out.append((s, i, j, slack))
    return out


def sorted_distance_rows(k: int, points: Sequence[int]) -> list[bytes]:
    """For every x in [0, 2**k): the sorted Hamming distances to `points`.

    Rows are returned as bytes so they can be used directly as dict keys.
    """
    n = 1 << k
    pts = list(points)
    rows = []
    for x in range(n):
        dists = sorted((x ^ c).bit_count() for c in pts)
        rows.append(bytes(dists))
    return rows


def reduced_constraint_rows(orbit_ids: Sequence[int], k: int) -> list[tuple[int, int, int, int]]:
    """Deduplicated orbit-level pair-condition rows.

    Each triple (S, i, j) maps to the signed combination
    +f[o(S)] - f[o(S|i)] - f[o(S|j)] + f[o(S|ij)] <= 0 over orbit variables;
    the canonical key sorts each sign class, which identifies equal rows.
    Rows whose positive and negative halves cancel entirely are dropped.
    Result is sorted (deterministic).
    """
    n = 1 << k
    seen = set()
    for i in range(k):
        bi = 1 << i
        for j in range(i + 1, k):
            bj = 1 << j
            mask = bi | bj
            for s in range(n):
                if s & mask:
                    continue
                op = orbit_ids[s]
                oq = orbit_ids[s | mask]
                if op > oq:
                    op, oq = oq, op
                om = orbit_ids[s | bi]
                on = orbit_ids[s | bj]
                if om > on:
                    om, on = on, om
                if op == om and oq == on:
                    continue
                seen.add((op, oq, om, on))
    return sorted(seen)
