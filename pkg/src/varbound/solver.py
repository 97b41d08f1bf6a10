"""Exact maximisation of sample variance over an interval box.

The sweep visits every distinct narrowed-interval endpoint in increasing
order.  At each point the indices whose narrowed interval contains it are
free; all others are forced (upper endpoint if the interval lies to the
right, lower if it lies to the left).  The free indices are walked with a
Gray code so each new vertex costs one O(1) update of ``(v1, v2)``.

Work is O(n log n + n * 2**omega) where omega is the deepest overlap of
the narrowed intervals.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .core import (
    EnumerationWidthError,
    Instance,
    VarianceState,
    flip_deltas,
    state_init_upper,
    variance_direct,
)
from .intgraph import narrowed_bounds, omega_sweep

WIDTH_LIMIT = 62


@dataclass(frozen=True)
class SweepSchedule:
    """Distinct narrowed endpoints with CSR begin/end index lists."""

    points: np.ndarray
    begin_ptr: np.ndarray
    begin_idx: np.ndarray
    end_ptr: np.ndarray
    end_idx: np.ndarray
    begin_pos: np.ndarray
    end_pos: np.ndarray

    @property
    def m(self) -> int:
        return int(self.points.size)

    def begins(self, k: int) -> list[int]:
        return self.begin_idx[self.begin_ptr[k]:self.begin_ptr[k + 1]].tolist()

    def ends(self, k: int) -> list[int]:
        return self.end_idx[self.end_ptr[k]:self.end_ptr[k + 1]].tolist()


def build_schedule(instance: Instance) -> SweepSchedule:
    # No restriction to the attainable-mean range: an interval whose narrowed
    # copy lies wholly outside it must still be switched to its forced endpoint.
    lo, hi = narrowed_bounds(instance)
    n = instance.n
    values = np.concatenate([lo, hi])
    order = np.argsort(values, kind="stable")
    ordered = values[order]
    fresh = np.empty(ordered.size, dtype=bool)
    fresh[0] = True
    np.not_equal(ordered[1:], ordered[:-1], out=fresh[1:])
    points = ordered[fresh]
    slot = np.empty(ordered.size, dtype=np.int64)
    slot[order] = np.cumsum(fresh) - 1
    begin_pos, end_pos = slot[:n], slot[n:]
    m = points.size
    # within the stable order, begin entries appear grouped by point already
    is_begin = order < n
    begin_idx = order[is_begin].astype(np.int64)
    end_idx = (order[~is_begin] - n).astype(np.int64)
    begin_ptr = np.zeros(m + 1, dtype=np.int64)
    end_ptr = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(np.bincount(begin_pos, minlength=m), out=begin_ptr[1:])
    np.cumsum(np.bincount(end_pos, minlength=m), out=end_ptr[1:])
    return SweepSchedule(points, begin_ptr, begin_idx, end_ptr, end_idx, begin_pos, end_pos)


@dataclass
class FreeEnumeration:
    best: float
    best_signs: Optional[np.ndarray]
    state: VarianceState
    vertices_examined: int
    flips: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None


def enumerate_free(
    L: Sequence[int],
    state: VarianceState,
    instance: Instance,
    best: float,
    signs=None,
    record: bool = False,
) -> FreeEnumeration:
    """Examine every vertex reachable by moving only the coordinates in ``L``.

    ``signs`` is the current full sign vector (all +1 if omitted); the
    coordinates in ``L`` must be at +1 on entry.  ``best_signs`` is set only
    when some vertex strictly beats ``best``.  With ``record=True`` the
    position flipped at each step and the tracked variance after it are
    returned in ``flips`` and ``values``.
    """
    L = np.asarray(L, dtype=np.int64)
    width = L.size
    if width > WIDTH_LIMIT:
        raise EnumerationWidthError(width, WIDTH_LIMIT)
    if width and (L.min() < 0 or L.max() >= instance.n):
        raise IndexError("free index out of range")
    if signs is None:
        signs = np.ones(instance.n, dtype=np.int8)
    else:
        signs = np.asarray(signs, dtype=np.int8)
        if width and np.any(signs[L] != 1):
            raise ValueError("free coordinates must start at their upper endpoint")
    if width == 0:
        return FreeEnumeration(best, None, state, 0)

    d1, d2 = flip_deltas(instance)
    st = state.as_array()
    steps = 1 << width
    flips = np.empty(steps if record else 0, dtype=np.int64)
    values = np.empty(steps if record else 0, dtype=np.float64)
    new_best, mask, improved = _kernels.enumerate_free_kernel(
        L, width, d1, d2, st, float(best), flips, values, record
    )
    best_signs = None
    if improved:
        best_signs = signs.copy()
        for j in range(width):
            if (int(mask) >> j) & 1:
                best_signs[L[j]] = -1
    return FreeEnumeration(
        float(new_best),
        best_signs,
        VarianceState.from_array(st),
        steps,
        flips if record else None,
        values if record else None,
    )


@dataclass(frozen=True)
class SolveResult:
    max_variance: float
    argmax_signs: np.ndarray
    omega_observed: int
    m: int
    vertices_examined: int
    schedule_points: int
    wall_time: float  # seconds

    def argmax(self, instance: Instance) -> np.ndarray:
        return np.where(self.argmax_signs > 0, instance.upper, instance.lower)


def solve_max_variance(instance: Instance, width_limit: int = WIDTH_LIMIT) -> SolveResult:
    """Maximum of the population variance over the box, with its argmax vertex."""
    width_limit = min(width_limit, WIDTH_LIMIT)
    t0 = time.perf_counter()
    schedule = build_schedule(instance)
    d1, d2 = flip_deltas(instance)
    state = state_init_upper(instance)
    st = state.as_array()
    (best, best_k, best_mask, best_L, best_width,
     max_width, examined, status) = _kernels.sweep_kernel(
        d1, d2,
        schedule.begin_ptr, schedule.begin_idx,
        schedule.end_ptr, schedule.end_idx,
        st, state.value, width_limit,
    )
    if status == _kernels.STATUS_TOO_WIDE:
        # the kernel stops at the first over-wide point; report the true omega
        raise EnumerationWidthError(omega_sweep(instance), width_limit)

    signs = np.ones(instance.n, dtype=np.int8)
    if best_k >= 0:
        signs[schedule.end_pos < best_k] = -1
        mask = int(best_mask)
        for j in range(best_width):
            if (mask >> j) & 1:
                signs[best_L[j]] = -1
    value = variance_direct(instance, signs)
    return SolveResult(
        max_variance=value,
        argmax_signs=signs,
        omega_observed=int(max_width),
        m=schedule.m,
        vertices_examined=int(examined),
        schedule_points=schedule.m,
        wall_time=time.perf_counter() - t0,
    )


def warmup() -> None:
    """Trigger JIT compilation so later timings exclude it."""
    solve_max_variance(Instance([0.0, 0.5], [1.0, 2.0]))
    enumerate_free([0], state_init_upper(Instance([0.0], [1.0])), Instance([0.0], [1.0]), 0.0)
