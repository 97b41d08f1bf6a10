"""Exhaustive references for differential testing.

Nothing here touches the incremental (v1, v2) machinery: every vertex is
evaluated from scratch.
"""
from __future__ import annotations

import itertools

import numpy as np

from .core import Instance, VarboundError

MAX_BRUTE_N = 25
MAX_CLIQUE_N = 20
_CHUNK_BITS = 16


def _sign_block(n: int, start: int, stop: int) -> np.ndarray:
    # row t encodes t in binary, coordinate 0 most significant; bit 0 -> -1
    t = np.arange(start, stop, dtype=np.int64)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)[None, :]
    return np.where((t >> shifts) & 1, 1, -1).astype(np.int8)


def brute_force_max(instance: Instance, rel_tie: float = 1e-12) -> tuple[float, np.ndarray]:
    """Maximum variance over all 2**n vertices.

    Ties (within ``rel_tie`` relative) go to the lexicographically smallest
    sign vector, ordering -1 before +1.
    """
    n = instance.n
    if n > MAX_BRUTE_N:
        raise VarboundError(f"brute force refused: n={n} > {MAX_BRUTE_N}")
    total = 1 << n
    step = 1 << min(n, _CHUNK_BITS)
    values = np.empty(total, dtype=np.float64)
    for start in range(0, total, step):
        s = _sign_block(n, start, start + step)
        x = np.where(s > 0, instance.upper, instance.lower)
        d = x - x.mean(axis=1, keepdims=True)
        values[start:start + step] = (d * d).mean(axis=1)
    best = values.max()
    first = int(np.flatnonzero(values >= best - rel_tie * max(1.0, abs(best)))[0])
    return float(values[first]), _sign_block(n, first, first + 1)[0]


def brute_force_clique(edges, n: int) -> int:
    """Exact clique number of the graph on ``range(n)`` with the given edges."""
    if n > MAX_CLIQUE_N:
        raise VarboundError(f"clique search refused: n={n} > {MAX_CLIQUE_N}")
    if n == 0:
        return 0
    adj = [0] * n
    for e in edges:
        i, j = tuple(e)
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    best = 1
    # grow cliques size by size; a k-clique exists only if some (k-1)-clique extends
    frontier = [(1 << v, adj[v] & ~((1 << (v + 1)) - 1)) for v in range(n)]
    while frontier:
        nxt = []
        for members, cand in frontier:
            c = cand
            while c:
                low = c & -c
                v = low.bit_length() - 1
                nxt.append((members | low, cand & adj[v] & ~((1 << (v + 1)) - 1)))
                c ^= low
        if nxt:
            best += 1
        frontier = nxt
    return best


def brute_force_clique_subsets(edges, n: int) -> int:
    """Plain subset check; only for tiny graphs in tests."""
    pairs = {frozenset(e) for e in edges}
    for k in range(n, 0, -1):
        for combo in itertools.combinations(range(n), k):
            if all(frozenset(p) in pairs for p in itertools.combinations(combo, 2)):
                return k
    return 0
