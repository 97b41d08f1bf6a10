import itertools

import numpy as np
import pytest

from varbound.core import Instance, VarboundError
from varbound.oracle import brute_force_clique, brute_force_clique_subsets, brute_force_max

from .strategies import random_instance


def test_brute_force_max_examples():
    v, s = brute_force_max(Instance([0.0, 0.0], [1.0, 1.0]))
    assert v == 0.25 and s.tolist() == [-1, 1]
    v, s = brute_force_max(Instance([0.0, 10.0], [1.0, 11.0]))
    assert v == 30.25 and s.tolist() == [-1, 1]
    v, s = brute_force_max(Instance([4.0], [9.0]))
    assert v == 0.0 and s.tolist() == [-1]


def test_brute_force_max_refuses_large_n():
    with pytest.raises(VarboundError):
        brute_force_max(Instance(np.zeros(26), np.ones(26)))


def test_brute_force_max_against_itertools():
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(1, 8))
        inst = random_instance(rng, n)
        best = max(
            np.var(np.where(np.array(s) > 0, inst.upper, inst.lower))
            for s in itertools.product([-1, 1], repeat=n)
        )
        assert brute_force_max(inst)[0] == pytest.approx(best, rel=1e-12, abs=1e-15)


def test_brute_force_max_permutation_equivariant():
    rng = np.random.default_rng(8)
    for _ in range(40):
        n = int(rng.integers(2, 9))
        lo = rng.normal(size=n)
        inst = Instance(lo, lo + rng.exponential(size=n))
        perm = rng.permutation(n)
        v, s = brute_force_max(inst)
        vp, sp = brute_force_max(Instance(inst.lower[perm], inst.upper[perm]))
        assert vp == pytest.approx(v, rel=1e-12)
        # generic data: unique maximiser, so the signs permute with the data
        np.testing.assert_array_equal(sp, s[perm])


def test_brute_force_max_chunked_path():
    rng = np.random.default_rng(9)
    inst = random_instance(rng, 17, scale=1.0)
    v, s = brute_force_max(inst)
    x = np.where(s > 0, inst.upper, inst.lower)
    assert np.var(x) == pytest.approx(v, rel=1e-12)


def test_clique_examples():
    assert brute_force_clique(set(), 3) == 1
    k4 = {frozenset(p) for p in itertools.combinations(range(4), 2)}
    assert brute_force_clique(k4, 4) == 4
    assert brute_force_clique({frozenset((0, 1)), frozenset((1, 2))}, 3) == 2


def test_clique_refuses_large_n():
    with pytest.raises(VarboundError):
        brute_force_clique(set(), 21)


def test_clique_search_matches_subset_scan():
    rng = np.random.default_rng(10)
    for _ in range(60):
        n = int(rng.integers(1, 10))
        p = rng.random()
        edges = {frozenset(e) for e in itertools.combinations(range(n), 2) if rng.random() < p}
        assert brute_force_clique(edges, n) == brute_force_clique_subsets(edges, n)
