"""Interval instances and variance arithmetic.

A vertex of the box ``lower <= x <= upper`` is selected by a sign vector
``s`` in {-1, +1}^n: ``x_i = lower_i`` when ``s_i = -1`` and ``x_i = upper_i``
when ``s_i = +1``.  Variance is population-normalised (divide by n).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class VarboundError(Exception):
    """Base class for refusals raised by this package."""


class EnumerationWidthError(VarboundError):
    """Raised when a free-index set is too wide to enumerate."""

    def __init__(self, width: int, limit: int):
        super().__init__(
            f"enumeration width exceeds limit: omega={width} > {limit}"
        )
        self.width = width
        self.limit = limit


class Interval(NamedTuple):
    lower: float
    upper: float


@dataclass(frozen=True)
class Instance:
    """n closed intervals stored column-wise.

    ``lower`` and ``upper`` are read-only float64 arrays; ``center`` and
    ``radius`` are derived once at construction.
    """

    lower: np.ndarray
    upper: np.ndarray
    center: np.ndarray = field(init=False, repr=False)
    radius: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        lower = np.array(self.lower, dtype=np.float64).ravel()
        upper = np.array(self.upper, dtype=np.float64).ravel()
        if lower.shape != upper.shape:
            raise ValueError(
                f"lower/upper length mismatch: {lower.size} != {upper.size}"
            )
        if lower.size < 1:
            raise ValueError("an instance needs at least one interval")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ValueError("interval bounds must be finite")
        bad = np.flatnonzero(lower > upper)
        if bad.size:
            i = int(bad[0])
            raise ValueError(
                f"interval {i} has lower > upper ({float(lower[i])!r} > {float(upper[i])!r})"
            )
        center = (lower + upper) / 2
        radius = (upper - lower) / 2
        for arr in (lower, upper, center, radius):
            arr.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    @classmethod
    def from_intervals(cls, intervals: Iterable[Sequence[float]]) -> "Instance":
        pairs = [tuple(iv) for iv in intervals]
        if any(len(p) != 2 for p in pairs):
            raise ValueError("each interval must be a (lower, upper) pair")
        return cls([p[0] for p in pairs], [p[1] for p in pairs])

    @classmethod
    def from_center_radius(cls, center, radius) -> "Instance":
        center = np.asarray(center, dtype=np.float64)
        radius = np.asarray(radius, dtype=np.float64)
        if np.any(radius < 0):
            raise ValueError("radii must be nonnegative")
        return cls(center - radius, center + radius)

    @property
    def n(self) -> int:
        return int(self.lower.size)

    @property
    def intervals(self) -> list[Interval]:
        return [Interval(float(a), float(b)) for a, b in zip(self.lower, self.upper)]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(
            self.upper, other.upper
        )

    def __hash__(self) -> int:
        return hash((self.lower.tobytes(), self.upper.tobytes()))


def _check_signs(instance: Instance, s) -> np.ndarray:
    s = np.asarray(s)
    if s.shape != (instance.n,):
        raise ValueError(
            f"sign vector has shape {s.shape}, instance has n={instance.n}"
        )
    if not np.all((s == 1) | (s == -1)):
        raise ValueError("sign vector entries must be -1 or +1")
    return s.astype(np.int8)


def vertex_from_signs(instance: Instance, s) -> np.ndarray:
    s = _check_signs(instance, s)
    return np.where(s > 0, instance.upper, instance.lower)


def variance_of(x) -> float:
    """Population variance of ``x`` with exactly rounded sums."""
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    mean = math.fsum(x) / n
    d = x - mean
    return math.fsum(d * d) / n


def variance_direct(instance: Instance, s) -> float:
    return variance_of(vertex_from_signs(instance, s))


def mean_bounds(instance: Instance) -> tuple[float, float]:
    """Range of attainable means, ``(mean(lower), mean(upper))``."""
    n = instance.n
    return math.fsum(instance.lower) / n, math.fsum(instance.upper) / n


def neumaier_add(total: float, comp: float, x: float) -> tuple[float, float]:
    """One step of Neumaier-compensated summation; the running value is ``total + comp``."""
    t = total + x
    if abs(total) >= abs(x):
        comp += (total - t) + x
    else:
        comp += (x - t) + total
    return t, comp


def flip_deltas(instance: Instance) -> tuple[np.ndarray, np.ndarray]:
    """Per-coordinate increments of (v1, v2) for a lower -> upper move."""
    n = instance.n
    lo, hi = instance.lower, instance.upper
    return (hi * hi - lo * lo) / n, (hi - lo) / n


@dataclass(frozen=True)
class VarianceState:
    """Running ``v1 = mean(x**2)`` and ``v2 = mean(x)`` with compensation terms."""

    v1: float
    v2: float
    comp1: float = 0.0
    comp2: float = 0.0

    @property
    def mean_sq(self) -> float:
        return self.v1 + self.comp1

    @property
    def mean(self) -> float:
        return self.v2 + self.comp2

    @property
    def value(self) -> float:
        m = self.mean
        return self.mean_sq - m * m

    def as_array(self) -> np.ndarray:
        return np.array([self.v1, self.comp1, self.v2, self.comp2], dtype=np.float64)

    @classmethod
    def from_array(cls, a) -> "VarianceState":
        return cls(float(a[0]), float(a[2]), float(a[1]), float(a[3]))


def state_init_upper(instance: Instance) -> VarianceState:
    n = instance.n
    up = instance.upper
    return VarianceState(math.fsum(up * up) / n, math.fsum(up) / n)


def state_flip(
    state: VarianceState, instance: Instance, i: int, new_sign: int
) -> VarianceState:
    """Move coordinate ``i`` to the endpoint selected by ``new_sign``.

    The caller guarantees coordinate ``i`` currently sits at the other endpoint.
    """
    if not 0 <= i < instance.n:
        raise IndexError(f"coordinate {i} out of range for n={instance.n}")
    if new_sign not in (-1, 1):
        raise ValueError("new_sign must be -1 or +1")
    n = instance.n
    lo, hi = float(instance.lower[i]), float(instance.upper[i])
    d1 = (hi * hi - lo * lo) / n
    d2 = (hi - lo) / n
    if new_sign < 0:
        d1, d2 = -d1, -d2
    v1, c1 = neumaier_add(state.v1, state.comp1, d1)
    v2, c2 = neumaier_add(state.v2, state.comp2, d2)
    return VarianceState(v1, v2, c1, c2)
