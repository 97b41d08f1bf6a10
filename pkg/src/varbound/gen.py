"""Random interval instances: i.i.d. centers, radii drawn independently
(or, for ``dependent_power``, as a deterministic function of the center).

Sampling is inverse-transform on uniforms taken from NumPy's Philox4x64
counter-based generator.  Centers use key ``seed`` in stream 0 and radii use
stream 1, so draw ``i`` depends only on ``(seed, stream, i)``.  Instances
with the same seed are therefore prefixes of one another.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.special import gamma as gamma_fn
from scipy.special import ndtri

from .core import Instance

U64 = (1 << 64) - 1

CENTER_KINDS = {
    "uniform": "uniform",
    "gaussian": "gaussian",
    "normal": "gaussian",
    "power": "power_cdf",
    "power_cdf": "power_cdf",
}
RADIUS_KINDS = {
    "const": "constant",
    "constant": "constant",
    "exp": "exponential",
    "exponential": "exponential",
    "pareto": "pareto",
    "halfnormal": "half_gaussian",
    "half_gaussian": "half_gaussian",
    "dep": "dependent_power",
    "dependent_power": "dependent_power",
}
_SHORT = {
    "uniform": "uniform", "gaussian": "gaussian", "power_cdf": "power",
    "constant": "const", "exponential": "exp", "pareto": "pareto",
    "half_gaussian": "halfnormal", "dependent_power": "dependent_power",
}


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class CenterDistribution:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in ("uniform", "gaussian", "power_cdf"):
            raise SpecError(f"unknown center kind {self.kind!r}")
        p = tuple(float(v) for v in self.params)
        object.__setattr__(self, "params", p)
        want = {"uniform": 2, "gaussian": 2, "power_cdf": 1}[self.kind]
        if len(p) != want:
            raise SpecError(f"center {self.kind} takes {want} parameter(s), got {len(p)}")
        if not all(math.isfinite(v) for v in p):
            raise SpecError("center parameters must be finite")
        if self.kind == "uniform" and not p[0] < p[1]:
            raise SpecError("uniform(a, b) needs a < b")
        if self.kind == "gaussian" and not p[1] > 0:
            raise SpecError("gaussian sigma must be positive")
        if self.kind == "power_cdf" and not 0 < p[0] <= 1:
            raise SpecError("power_cdf epsilon must lie in (0, 1]")

    def ppf(self, u: np.ndarray) -> np.ndarray:
        p = self.params
        if self.kind == "uniform":
            return p[0] + (p[1] - p[0]) * u
        if self.kind == "gaussian":
            return p[0] + p[1] * ndtri(u)
        return u ** (1.0 / p[0])

    def cdf(self, z: np.ndarray) -> np.ndarray:
        from scipy.stats import norm

        p = self.params
        z = np.asarray(z, dtype=np.float64)
        if self.kind == "uniform":
            return np.clip((z - p[0]) / (p[1] - p[0]), 0.0, 1.0)
        if self.kind == "gaussian":
            return norm.cdf(z, loc=p[0], scale=p[1])
        return np.clip(z, 0.0, 1.0) ** p[0]


@dataclass(frozen=True)
class RadiusDistribution:
    kind: str
    params: tuple = ()

    def __post_init__(self):
        kinds = {"constant": 1, "exponential": 1, "pareto": 2,
                 "half_gaussian": 1, "dependent_power": 1}
        if self.kind not in kinds:
            raise SpecError(f"unknown radius kind {self.kind!r}")
        p = tuple(float(v) for v in self.params)
        object.__setattr__(self, "params", p)
        if len(p) != kinds[self.kind]:
            raise SpecError(
                f"radius {self.kind} takes {kinds[self.kind]} parameter(s), got {len(p)}"
            )
        if not all(math.isfinite(v) for v in p):
            raise SpecError("radius parameters must be finite")
        ok = {
            "constant": lambda: p[0] >= 0,
            "exponential": lambda: p[0] > 0,
            "pareto": lambda: p[0] > 1 and p[1] > 0,
            "half_gaussian": lambda: p[0] > 0,
            "dependent_power": lambda: 0 < p[0] < 1,
        }[self.kind]()
        if not ok:
            raise SpecError(f"invalid parameters for radius {self.kind}: {p}")

    def cdf(self, z: np.ndarray) -> np.ndarray:
        p = self.params
        z = np.asarray(z, dtype=np.float64)
        if self.kind == "exponential":
            return np.where(z > 0, -np.expm1(-p[0] * np.maximum(z, 0)), 0.0)
        if self.kind == "pareto":
            return np.where(z >= p[1], 1.0 - (p[1] / np.maximum(z, p[1])) ** p[0], 0.0)
        if self.kind == "half_gaussian":
            from scipy.special import erf

            return np.where(z > 0, erf(np.maximum(z, 0) / (p[0] * math.sqrt(2))), 0.0)
        raise SpecError(f"no closed-form cdf for radius {self.kind}")


@dataclass(frozen=True)
class GeneratorSpec:
    center: CenterDistribution
    radius: RadiusDistribution
    seed: int = 0

    def __post_init__(self):
        if not 0 <= int(self.seed) <= U64:
            raise SpecError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "seed", int(self.seed))
        if self.radius.kind == "dependent_power" and not (
            self.center.kind == "uniform" and self.center.params == (0.0, 1.0)
        ):
            raise SpecError("dependent_power radii require uniform:0,1 centers")

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return replace(self, seed=seed)

    def __str__(self) -> str:
        return format_spec(self)


def _fmt(v: float) -> str:
    return repr(int(v)) if float(v).is_integer() and abs(v) < 2**53 else repr(float(v))


def format_spec(spec: GeneratorSpec) -> str:
    c = ",".join(_fmt(v) for v in spec.center.params)
    r = ",".join(_fmt(v) for v in spec.radius.params)
    return (f"center={_SHORT[spec.center.kind]}:{c} "
            f"radius={_SHORT[spec.radius.kind]}:{r} seed={spec.seed}")


def _parse_dist(text: str, table: dict, what: str):
    kind, _, rest = text.partition(":")
    key = kind.strip().lower()
    if key not in table:
        raise SpecError(f"unknown {what} kind {kind!r}; expected one of {sorted(table)}")
    try:
        params = tuple(float(v) for v in rest.split(",")) if rest.strip() else ()
    except ValueError as exc:
        raise SpecError(f"bad {what} parameters {rest!r}") from exc
    return table[key], params


def parse_spec(text: str, seed: Optional[int] = None) -> GeneratorSpec:
    """Parse ``center=<kind>:<params> radius=<kind>:<params> [seed=<u64>]``.

    An explicit ``seed`` argument overrides the one in the text.
    """
    fields = {}
    for token in text.split():
        key, eq, value = token.partition("=")
        if not eq or key not in ("center", "radius", "seed"):
            raise SpecError(f"unrecognised token {token!r}")
        if key in fields:
            raise SpecError(f"duplicate key {key!r}")
        fields[key] = value
    for key in ("center", "radius"):
        if key not in fields:
            raise SpecError(f"missing {key}=...")
    ckind, cpar = _parse_dist(fields["center"], CENTER_KINDS, "center")
    rkind, rpar = _parse_dist(fields["radius"], RADIUS_KINDS, "radius")
    if seed is None:
        try:
            seed = int(fields.get("seed", "0"))
        except ValueError as exc:
            raise SpecError(f"bad seed {fields['seed']!r}") from exc
    return GeneratorSpec(CenterDistribution(ckind, cpar), RadiusDistribution(rkind, rpar), seed)


def uniform_stream(seed: int, stream: int, size: int) -> np.ndarray:
    """``size`` doubles in the open interval (0, 1) from Philox key (seed, stream)."""
    bitgen = np.random.Philox(key=(int(stream) << 64) | int(seed))
    raw = bitgen.random_raw(size)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def sample_radii(radius: RadiusDistribution, u: np.ndarray, centers: np.ndarray) -> np.ndarray:
    p = radius.params
    if radius.kind == "constant":
        return np.full(u.shape, p[0])
    if radius.kind == "exponential":
        return -np.log(u) / p[0]
    if radius.kind == "pareto":
        return p[1] * u ** (-1.0 / p[0])
    if radius.kind == "half_gaussian":
        return p[0] * ndtri(0.5 + 0.5 * u)
    return centers ** (p[0] - 1.0)


def sample_centers_radii(spec: GeneratorSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    if n < 1:
        raise ValueError("n must be at least 1")
    centers = spec.center.ppf(uniform_stream(spec.seed, 0, n))
    radii = sample_radii(spec.radius, uniform_stream(spec.seed, 1, n), centers)
    return centers, radii


def sample_instance(spec: GeneratorSpec, n: int) -> Instance:
    centers, radii = sample_centers_radii(spec, n)
    return Instance(centers - radii, centers + radii)


def lipschitz_constant(spec: GeneratorSpec) -> Optional[float]:
    """Peak density of the center distribution, or None when unbounded."""
    c = spec.center
    if c.kind == "uniform":
        return 1.0 / (c.params[1] - c.params[0])
    if c.kind == "gaussian":
        return 1.0 / (c.params[1] * math.sqrt(2 * math.pi))
    return 1.0 if c.params[0] == 1.0 else None


def moment_bound(spec: GeneratorSpec, eps: float) -> Optional[float]:
    """E[radius ** (1 + eps)], or None when the moment is infinite."""
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    r = spec.radius
    q = 1.0 + eps
    p = r.params
    if r.kind == "constant":
        return p[0] ** q
    if r.kind == "exponential":
        return float(gamma_fn(1.0 + q)) / p[0] ** q
    if r.kind == "pareto":
        a, m = p
        return a * m**q / (a - q) if a > q else None
    if r.kind == "half_gaussian":
        return float(p[0] ** q * 2 ** (q / 2) * gamma_fn((q + 1) / 2) / math.sqrt(math.pi))
    # radius = u**(e0 - 1) with u ~ U(0, 1): E = int_0^1 u**((e0 - 1) q) du
    expo = (p[0] - 1.0) * q
    return 1.0 / (1.0 + expo) if expo > -1.0 else None
