"""Narrowed intervals and the clique number of their intersection graph.

Interval ``i`` shrunk by factor n about its center is
``[center_i - radius_i / n, center_i + radius_i / n]``.  Two indices are
adjacent when their narrowed intervals (closed) intersect; the graph is an
interval graph, so its clique number is the deepest point overlap.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import Instance


class NarrowedInterval(NamedTuple):
    lo: float
    hi: float
    owner: int


def narrowed_bounds(instance: Instance) -> tuple[np.ndarray, np.ndarray]:
    # every consumer (sweep, schedule, edge list) must share this rounding
    n = instance.n
    shrink = instance.radius / n
    return instance.center - shrink, instance.center + shrink


def narrowed_intervals(instance: Instance) -> list[NarrowedInterval]:
    lo, hi = narrowed_bounds(instance)
    return [NarrowedInterval(float(a), float(b), i) for i, (a, b) in enumerate(zip(lo, hi))]


def max_overlap(lo: np.ndarray, hi: np.ndarray) -> int:
    """Deepest overlap of closed intervals ``[lo_i, hi_i]``.

    Begin events sort before end events at equal coordinates, so intervals
    touching at a single point count as overlapping.
    """
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    if lo.size == 0:
        return 0
    values = np.concatenate([lo, hi])
    kinds = np.concatenate([np.zeros(lo.size, np.int8), np.ones(hi.size, np.int8)])
    order = np.lexsort((kinds, values))
    steps = np.where(kinds[order] == 0, 1, -1)
    return int(np.cumsum(steps).max())


def omega_sweep(instance: Instance) -> int:
    return max_overlap(*narrowed_bounds(instance))


def edge_list(instance: Instance) -> set[frozenset[int]]:
    """All pairs whose narrowed intervals intersect.  Quadratic; meant for small n."""
    lo, hi = narrowed_bounds(instance)
    meet = np.maximum.outer(lo, lo) <= np.minimum.outer(hi, hi)
    i, j = np.nonzero(np.triu(meet, k=1))
    return {frozenset((int(a), int(b))) for a, b in zip(i, j)}
