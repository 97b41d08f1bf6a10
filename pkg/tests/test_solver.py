import numpy as np
import pytest
from hypothesis import given, settings

from varbound.core import (
    EnumerationWidthError,
    Instance,
    state_init_upper,
    variance_direct,
)
from varbound.intgraph import omega_sweep
from varbound.oracle import brute_force_max
from varbound.solver import build_schedule, enumerate_free, solve_max_variance

from .strategies import instances, random_instance


def test_schedule_examples():
    s = build_schedule(Instance([0.0, 0.0], [1.0, 1.0]))
    assert s.points.tolist() == [0.25, 0.75]
    assert sorted(s.begins(0)) == [0, 1] and s.ends(0) == []
    assert s.begins(1) == [] and sorted(s.ends(1)) == [0, 1]

    s = build_schedule(Instance([0.0, 10.0], [1.0, 11.0]))
    assert s.points.tolist() == [0.25, 0.75, 10.25, 10.75]
    assert s.m == 4

    s = build_schedule(Instance([3.0], [3.0]))
    assert s.points.tolist() == [3.0]
    assert s.begins(0) == [0] and s.ends(0) == [0]


@given(instances(max_n=25))
def test_schedule_invariants(inst):
    s = build_schedule(inst)
    n = inst.n
    assert s.m <= 2 * n
    assert np.all(np.diff(s.points) > 0)
    begins = [i for k in range(s.m) for i in s.begins(k)]
    ends = [i for k in range(s.m) for i in s.ends(k)]
    assert sorted(begins) == list(range(n))
    assert sorted(ends) == list(range(n))
    assert np.all(s.begin_pos <= s.end_pos)
    lo = inst.center - inst.radius / n
    np.testing.assert_array_equal(s.points[s.begin_pos], lo)


def test_enumerate_free_examples():
    inst = Instance([0.0, 0.0], [1.0, 1.0])
    st = state_init_upper(inst)
    out = enumerate_free([0, 1], st, inst, st.value)
    assert out.best == 0.25
    assert variance_direct(inst, out.best_signs) == 0.25
    assert out.vertices_examined == 4
    assert out.state == st

    empty = enumerate_free([], st, inst, st.value)
    assert empty.vertices_examined == 0 and empty.best_signs is None

    flat = Instance([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    st = state_init_upper(flat)
    out = enumerate_free([0, 2], st, flat, st.value)
    assert out.best == st.value and out.best_signs is None
    assert out.state == st


def test_enumerate_free_refuses_wide_sets():
    inst = Instance(np.zeros(70), np.ones(70))
    with pytest.raises(EnumerationWidthError):
        enumerate_free(list(range(63)), state_init_upper(inst), inst, 0.0)


def test_enumerate_free_rejects_free_coordinate_at_lower():
    inst = Instance([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        enumerate_free([0], state_init_upper(inst), inst, 0.0, signs=[-1, 1])


def test_gray_walk_small():
    inst = Instance([0.0, 0.0, 0.0], [1.0, 2.0, 4.0])
    out = enumerate_free([0, 1, 2], state_init_upper(inst), inst, -1.0, record=True)
    # cyclic reflected Gray code: bit flipped at step c is the count of trailing ones of c,
    # clamped to the top bit on the last step
    assert out.flips.tolist() == [0, 1, 0, 2, 0, 1, 0, 2]


def test_solve_examples():
    r = solve_max_variance(Instance([0.0, 10.0], [1.0, 11.0]))
    assert r.max_variance == 30.25
    assert r.argmax_signs.tolist() == [-1, 1]
    assert r.vertices_examined == 1 + 4 * 2

    r = solve_max_variance(Instance([0.0, 0.0], [1.0, 1.0]))
    assert r.max_variance == 0.25
    assert sorted(r.argmax_signs.tolist()) == [-1, 1]

    c = np.array([1.0, 4.0, -2.0, 7.0])
    r = solve_max_variance(Instance(c, c))
    assert r.max_variance == pytest.approx(np.var(c), rel=1e-15)
    # every schedule point holds exactly one degenerate index
    assert r.m == 4 and r.vertices_examined == 1 + 4 * 2


def test_solve_matches_oracle_random():
    rng = np.random.default_rng(99)
    for _ in range(400):
        n = int(rng.integers(1, 13))
        inst = random_instance(rng, n)
        r = solve_max_variance(inst)
        ref, _ = brute_force_max(inst)
        assert abs(r.max_variance - ref) <= 1e-9 * max(1.0, abs(ref))
        assert r.max_variance == variance_direct(inst, r.argmax_signs)


@given(instances(max_n=10))
@settings(max_examples=300, deadline=None)
def test_solve_matches_oracle_hypothesis(inst):
    r = solve_max_variance(inst)
    ref, _ = brute_force_max(inst)
    assert abs(r.max_variance - ref) <= 1e-9 * max(1.0, abs(ref))


@given(instances(max_n=18))
@settings(deadline=None)
def test_solver_instrumentation(inst):
    r = solve_max_variance(inst)
    w = omega_sweep(inst)
    assert r.omega_observed <= w
    assert r.vertices_examined <= 1 + 2 * inst.n * 2**w
    assert r.m == r.schedule_points <= 2 * inst.n


def test_vertices_examined_counts_free_sets():
    rng = np.random.default_rng(5)
    for _ in range(50):
        inst = random_instance(rng, int(rng.integers(1, 30)))
        s = build_schedule(inst)
        expected = 1
        for k in range(s.m):
            width = int(np.sum((s.begin_pos <= k) & (s.end_pos >= k)))
            expected += 2**width
        assert solve_max_variance(inst).vertices_examined == expected


def test_solve_refuses_wide_instances():
    inst = Instance(np.zeros(63), np.ones(63))
    with pytest.raises(EnumerationWidthError) as err:
        solve_max_variance(inst)
    assert err.value.width == 63


def test_solve_deterministic():
    rng = np.random.default_rng(1)
    inst = random_instance(rng, 500, scale=1.0)
    a, b = solve_max_variance(inst), solve_max_variance(inst)
    assert a.max_variance == b.max_variance
    np.testing.assert_array_equal(a.argmax_signs, b.argmax_signs)
    assert (a.omega_observed, a.m, a.vertices_examined) == (b.omega_observed, b.m, b.vertices_examined)


def test_unfiltered_sweep_catches_out_of_range_intervals():
    # mean range [5, 6]; narrowed [0.25, 0.75] sits wholly below it
    inst = Instance([0.0, 10.0], [1.0, 11.0])
    assert solve_max_variance(inst).max_variance == 30.25
    assert variance_direct(inst, [1, 1]) == 25.0
