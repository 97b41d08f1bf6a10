"""Seeded Monte-Carlo runs of omega and solver time over a generator spec."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import bounds
from .core import EnumerationWidthError
from .gen import GeneratorSpec, format_spec, sample_instance
from .intgraph import omega_sweep
from .solver import WIDTH_LIMIT, solve_max_variance, warmup

MODES = ("omega_only", "solve_and_time")
CSV_HEADER = [
    "n", "trial", "seed", "omega", "log2_two_pow_omega",
    "solve_ns", "vertices_examined", "max_variance",
]
TIMING_COLUMNS = ("solve_ns",)
REPEAT_FROM_N = 100_000


@dataclass(frozen=True)
class ExperimentConfig:
    spec: GeneratorSpec
    n_values: tuple
    trials: int
    master_seed: int = 0
    mode: str = "omega_only"
    omega_cap: int = 30

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not self.n_values:
            raise ValueError("n_values must be nonempty")
        if any(n < 1 for n in self.n_values):
            raise ValueError("every n must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if not 0 <= self.omega_cap <= WIDTH_LIMIT:
            raise ValueError(f"omega_cap must lie in [0, {WIDTH_LIMIT}]")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    trial: int
    seed: int
    omega: int
    solve_ns: Optional[int] = None
    vertices_examined: Optional[int] = None
    max_variance: Optional[float] = None

    @property
    def log2_two_pow_omega(self) -> float:
        return float(self.omega)

    @property
    def two_pow_omega(self) -> float:
        # exact in a double up to 2**52; beyond that callers should use the log
        return float(2**self.omega) if self.omega <= 52 else math.inf

    def csv_row(self) -> list[str]:
        def opt(v):
            return "" if v is None else repr(v)

        return [str(self.n), str(self.trial), str(self.seed), str(self.omega),
                repr(self.log2_two_pow_omega), opt(self.solve_ns),
                opt(self.vertices_examined), opt(self.max_variance)]


def trial_seed(master_seed: int, n: int, trial: int) -> int:
    ss = np.random.SeedSequence([int(master_seed), int(n), int(trial)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _time_solve(inst, repeats: int):
    times = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        result = solve_max_variance(inst)
        times.append(time.perf_counter_ns() - t0)
    return result, int(statistics.median(times))


def run_trial(config: ExperimentConfig, n: int, trial: int) -> ExperimentRecord:
    seed = trial_seed(config.master_seed, n, trial)
    inst = sample_instance(config.spec.with_seed(seed), n)
    omega = omega_sweep(inst)
    if config.mode == "omega_only" or omega > config.omega_cap:
        return ExperimentRecord(n, trial, seed, omega)
    repeats = 3 if n >= REPEAT_FROM_N else 1
    try:
        result, ns = _time_solve(inst, repeats)
    except EnumerationWidthError:
        return ExperimentRecord(n, trial, seed, omega)
    return ExperimentRecord(n, trial, seed, omega, ns,
                            result.vertices_examined, result.max_variance)


def _run_chunk(args):
    config, jobs = args
    if config.mode == "solve_and_time":
        warmup()
    return [run_trial(config, n, t) for n, t in jobs]


def default_workers() -> int:
    env = os.environ.get("VARBOUND_THREADS")
    return max(1, int(env)) if env else 1


def run_experiment(config: ExperimentConfig, workers: Optional[int] = None) -> list[ExperimentRecord]:
    """All (n, trial) records, sorted by (n, trial) whatever the worker count."""
    workers = default_workers() if workers is None else max(1, int(workers))
    jobs = [(n, t) for n in config.n_values for t in range(config.trials)]
    if workers == 1 or len(jobs) == 1:
        records = _run_chunk((config, jobs))
    else:
        chunks = [jobs[i::workers] for i in range(workers)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            records = [r for part in pool.map(_run_chunk, [(config, c) for c in chunks]) for r in part]
    records.sort(key=lambda r: (r.n, r.trial))
    return records


@dataclass
class Summary:
    n: int
    trials: int
    mean_omega: float
    log2_mean_two_pow_omega: float
    omega_quantiles: dict
    omega_counts: dict = field(repr=False)
    mean_solve_time: Optional[float] = None  # seconds
    solved: int = 0

    @property
    def mean_two_pow_omega(self) -> float:
        if self.log2_mean_two_pow_omega >= 1024:
            return math.inf
        return 2.0**self.log2_mean_two_pow_omega

    def tail_freq(self, t: float) -> float:
        """Fraction of trials with omega >= t."""
        hits = sum(c for w, c in self.omega_counts.items() if w >= t)
        return hits / self.trials


def log2_mean_pow2(omegas: Sequence[int]) -> float:
    """log2 of mean(2**omega) without forming 2**omega."""
    w = np.asarray(omegas, dtype=np.float64)
    return float(np.logaddexp2.reduce(w) - math.log2(w.size))


def aggregate(records: Sequence[ExperimentRecord], n: int) -> Summary:
    sel = [r for r in records if r.n == n]
    if not sel:
        raise ValueError(f"no records for n={n}")
    omegas = np.array([r.omega for r in sel])
    q = {str(p): float(np.quantile(omegas, p)) for p in (0.5, 0.9, 0.99, 1.0)}
    values, counts = np.unique(omegas, return_counts=True)
    solved = [r.solve_ns for r in sel if r.solve_ns is not None]
    return Summary(
        n=n,
        trials=len(sel),
        mean_omega=float(omegas.mean()),
        log2_mean_two_pow_omega=log2_mean_pow2(omegas),
        omega_quantiles=q,
        omega_counts={int(v): int(c) for v, c in zip(values, counts)},
        mean_solve_time=(sum(solved) / len(solved) / 1e9) if solved else None,
        solved=len(solved),
    )


def scaling_fit(summaries: Sequence[Summary]) -> float:
    """Least-squares slope of ln(mean solve time) against ln(n)."""
    pts = [(s.n, s.mean_solve_time) for s in summaries if s.mean_solve_time]
    if len({n for n, _ in pts}) < 3:
        raise ValueError("scaling fit needs timing data at 3 or more distinct n")
    x = np.log([n for n, _ in pts])
    y = np.log([t for _, t in pts])
    return float(np.polyfit(x, y, 1)[0])


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[ExperimentRecord]:
    def opt(v, kind):
        return None if v == "" else kind(v)

    rows = csv.DictReader(io.StringIO(text))
    return [
        ExperimentRecord(int(r["n"]), int(r["trial"]), int(r["seed"]), int(r["omega"]),
                         opt(r["solve_ns"], int), opt(r["vertices_examined"], int),
                         opt(r["max_variance"], float))
        for r in rows
    ]


def _overlay(n: int) -> dict:
    if n < bounds.MIN_N:
        return {"expected_omega_bound": None, "expected_two_omega_bound": None,
                "log_tail_omega_bound": None}
    return {
        "expected_omega_bound": bounds.expected_omega_bound(n),
        "expected_two_omega_bound": bounds.expected_two_omega_bound(n),
        "log_tail_omega_bound": bounds.log_tail_omega_bound(n),
    }


def summary_json(config: ExperimentConfig, records: Sequence[ExperimentRecord]) -> dict:
    per_n = []
    summaries = []
    for n in config.n_values:
        s = aggregate(records, n)
        summaries.append(s)
        per_n.append({
            "n": n,
            "trials": s.trials,
            "mean_omega": s.mean_omega,
            "log2_mean_two_pow_omega": s.log2_mean_two_pow_omega,
            "mean_two_pow_omega": s.mean_two_pow_omega,
            "omega_quantiles": s.omega_quantiles,
            "omega_counts": {str(k): v for k, v in s.omega_counts.items()},
            "solved": s.solved,
            "mean_solve_time_s": s.mean_solve_time,
            **_overlay(n),
        })
    out = {
        "spec": format_spec(config.spec),
        "master_seed": config.master_seed,
        "mode": config.mode,
        "omega_cap": config.omega_cap,
        "trials": config.trials,
        "per_n": per_n,
    }
    try:
        out["scaling_exponent"] = scaling_fit(summaries)
    except ValueError:
        out["scaling_exponent"] = None
    return out


def dump_summary(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True)
