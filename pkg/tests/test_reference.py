from __future__ import annotations

import random
from fractions import Fraction

import pytest

from stpps.core import BudgetExceeded, GroundSet, InvalidInput, make_graph_cut
from stpps.instances import bundled
from stpps.orientation import Hypergraph, verify_orientation
from stpps.reference import (
    EnumerationBudget,
    brute_best_k_partition,
    brute_curve,
    brute_orientations,
    brute_partition_minimum,
    enumerate_partitions,
    orientation_profile,
)


def test_orientation_stream():
    edge = Hypergraph.build(GroundSet.from_labels(["s", "t"], "s", "t"), [[0, 1]])
    assert len(list(brute_orientations(edge))) == 2
    triple = Hypergraph.build(GroundSet.indexed(3), [[0, 1, 2]], [2])
    assert len(list(brute_orientations(triple))) == 9
    with pytest.raises(BudgetExceeded):
        list(brute_orientations(triple, EnumerationBudget(max_orientations=8)))


def test_c4_feasible_by_stream():
    c4 = bundled("cycle4").hypergraph
    s, t = c4.ground.s_index, c4.ground.t_index
    good = [o for o in brute_orientations(c4) if orientation_profile(o) >= (1, 1)]
    assert good and all(verify_orientation(o, s, t, 1, 1) for o in good)


def test_best_k_partition_on_path(path):
    assert brute_best_k_partition(path, 0, 2, 2).value == 2
    with pytest.raises(InvalidInput):
        brute_best_k_partition(path, 0, 2, 1)


def test_budgets():
    with pytest.raises(BudgetExceeded):
        list(enumerate_partitions(10))
    with pytest.raises(InvalidInput):
        EnumerationBudget(max_n=0)


def test_brute_curve_is_concave_and_matches_sampling():
    rng = random.Random(8)
    n = 5
    f = make_graph_cut(
        GroundSet.indexed(n), [(i, j, rng.randint(0, 3)) for i in range(n) for j in range(i + 1, n)]
    )
    c = brute_curve(f)
    assert all(a < b for a, b in zip(c.breakpoints, c.breakpoints[1:]))
    slopes = [seg.slope for seg in c.segments]
    assert slopes == sorted(slopes, reverse=True)
    for _ in range(100):
        lam = Fraction(rng.randint(-40, 80), rng.randint(1, 7))
        assert c(lam) == brute_partition_minimum(f, lam)[0].rational()
