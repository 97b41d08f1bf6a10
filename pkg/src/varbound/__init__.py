"""Exact maximum sample variance over interval data, with average-case tooling."""
from .core import (
    EnumerationWidthError,
    Instance,
    Interval,
    VarboundError,
    VarianceState,
    mean_bounds,
    state_flip,
    state_init_upper,
    variance_direct,
    vertex_from_signs,
)
from .intgraph import edge_list, narrowed_intervals, omega_sweep
from .solver import SolveResult, build_schedule, enumerate_free, solve_max_variance

__all__ = [
    "EnumerationWidthError",
    "Instance",
    "Interval",
    "SolveResult",
    "VarboundError",
    "VarianceState",
    "build_schedule",
    "edge_list",
    "enumerate_free",
    "mean_bounds",
    "narrowed_intervals",
    "omega_sweep",
    "solve_max_variance",
    "state_flip",
    "state_init_upper",
    "variance_direct",
    "vertex_from_signs",
]
