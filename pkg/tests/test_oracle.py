from __future__ import annotations

import random
from fractions import Fraction

import pytest

from stpps.core import (
    BudgetExceeded,
    Flags,
    GroundSet,
    InvalidInput,
    Partition,
    Value,
    check_monotone,
    check_posimodular,
    check_submodular,
    check_symmetric,
    evaluate_partition,
    intersecting_pairs,
    make_coverage,
    make_function,
    make_graph_cut,
    make_hypergraph_cut,
    make_indegree,
    make_table,
    perturb_cardinality,
    perturb_strict,
    strict_eps,
)
from stpps.corpus import generate
from stpps.instances import parse_instance


def test_partition_values(triangle, crossing):
    assert evaluate_partition(triangle, Partition.singletons(3)) == 6
    assert triangle.evaluate_partition(Partition.whole(3)) == triangle(0b111) == 0
    p1 = Partition.from_text("s,a,b|c,d,e,t", crossing.ground)
    # only b-c (weight 1) crosses, and both blocks count it
    assert crossing.evaluate_partition(p1) == 2


def test_builtin_oracles(triangle):
    assert triangle(0b001) == 2
    g = GroundSet.from_labels(["a", "b"])
    cov = make_coverage(g, [[1], [1, 2]])
    assert cov(0b11) == 2 and cov(0b01) == 1 and cov(0) == 0
    path = GroundSet.from_labels(["s", "a", "t"])
    d = make_indegree(path, [([0, 1], 1, 1), ([1, 2], 2, 1)])
    assert d(0b110) == 1 and d(0b010) == 1 and d(0b001) == 0


def test_hypergraph_cut_counts_each_crossing_edge_once():
    g = GroundSet.indexed(4)
    f = make_hypergraph_cut(g, [((0, 1, 2), 3), ((2, 3), "1/2")])
    assert f(0b0001) == 3 and f(0b0100) == Fraction(7, 2) and f(0b0111) == Fraction(1, 2)
    assert f.granularity == Fraction(1, 2)


def test_builtin_validation():
    g = GroundSet.indexed(3)
    with pytest.raises(InvalidInput):
        make_graph_cut(g, [(0, 0, 1)])
    with pytest.raises(InvalidInput):
        make_graph_cut(g, [(0, 1, -1)])
    with pytest.raises(InvalidInput):
        make_graph_cut(g, [(0, 1, 0.5)])
    with pytest.raises(InvalidInput):
        make_table(g, [0, 1])
    with pytest.raises(InvalidInput):
        make_coverage(g, [[1]])


def test_cardinality_perturbation(triangle):
    up, down = perturb_cardinality(triangle, 1), perturb_cardinality(triangle, -1)
    single = Partition.singletons(3)
    assert up.evaluate_partition(single) == Value(6, 3)
    assert down.evaluate_partition(single) == Value(6, -3)
    assert up(0) == Value(0) and not up(0).has_tier
    with pytest.raises(InvalidInput):
        perturb_cardinality(up, 1)
    with pytest.raises(InvalidInput):
        perturb_cardinality(triangle, 2)


def test_strict_perturbation_values():
    zero = make_function(GroundSet.indexed(3), lambda u: 0)
    sym = perturb_strict(zero, "symmetric", 1)
    assert sym(0b001) == 2 and sym(0b011) == 2 and sym(0b111) == 0
    mono = perturb_strict(zero, "monotone", 1)
    assert mono(0b011) == 3 and mono(0b001) == 2
    with pytest.raises(InvalidInput):
        perturb_strict(zero, "symmetric", 0)
    with pytest.raises(InvalidInput):
        perturb_strict(zero, "symmetric")  # no granularity to derive eps from


def test_strict_eps_is_small():
    assert strict_eps(4, Fraction(1)) == Fraction(1, 25 * 12)


def test_checkers(triangle):
    assert check_submodular(triangle) == (True, None)
    assert check_symmetric(triangle) == (True, None)
    square = make_function(GroundSet.indexed(3), lambda u: u.bit_count() ** 2)
    ok, witness = check_submodular(square)
    assert not ok and witness is not None
    a, b = witness
    assert square(a) + square(b) < square(a | b) + square(a & b)
    cov = make_coverage(GroundSet.indexed(3), [[1], [1, 2], [3]])
    assert check_monotone(cov)[0] and check_posimodular(cov)[0]
    assert not check_monotone(triangle)[0]
    with pytest.raises(BudgetExceeded):
        check_submodular(make_function(GroundSet.indexed(13), lambda u: 0))


def test_exchange_checker_matches_pairwise_definition():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 4)
        vals = [Fraction(rng.randint(0, 4)) for _ in range(1 << n)]
        vals[0] = Fraction(0)
        f = make_table(GroundSet.indexed(n), vals)
        pairwise = all(
            vals[a] + vals[b] >= vals[a | b] + vals[a & b] for a in range(1 << n) for b in range(1 << n)
        )
        assert check_submodular(f)[0] == pairwise


def _oracles(kind, count, seed, n_max):
    for doc in generate(seed, count, kind, 3, n_max):
        yield parse_instance(doc).oracle


@pytest.mark.parametrize("kind", ["graph_cut", "hypergraph_cut", "coverage"])
def test_builtin_flags_hold(kind):
    for f in _oracles(kind, 8, 1, 6):
        assert check_submodular(f)[0]
        assert check_posimodular(f)[0] == f.flags.posimodular
        if f.flags.symmetric:
            assert check_symmetric(f)[0]
        if f.flags.monotone:
            assert check_monotone(f)[0]


@pytest.mark.parametrize("kind", ["graph_cut", "hypergraph_cut", "coverage"])
def test_strict_perturbation_is_strict_and_keeps_flags(kind):
    for f in _oracles(kind, 6, 2, 6):
        h = perturb_strict(f)
        assert h.flags.strict
        assert check_submodular(h, strict=True)[0]
        assert check_posimodular(h)[0]
        if f.flags.symmetric:
            assert h.flags.symmetric and check_symmetric(h)[0]
        if f.flags.monotone and not f.flags.symmetric:
            assert h.flags.monotone and check_monotone(h)[0]


def test_strictness_on_every_intersecting_pair():
    f = parse_instance(generate(9, 1, "graph_cut", 4, 4)[0]).oracle
    h = perturb_strict(f)
    sets = list(range(1, 16))
    for a, b in intersecting_pairs(sets):
        assert h(a) + h(b) > h(a | b) + h(a & b)


def test_oracle_memoizes_and_counts():
    calls = []
    f = make_function(GroundSet.indexed(2), lambda u: calls.append(u) or u)
    f(1), f(1), f(2)
    assert calls == [1, 2] and f.evaluations == 2


def test_table_flags_are_passed_through():
    f = make_table(GroundSet.indexed(1), [0, 1], Flags(monotone=True))
    assert f.flags.monotone and f(1) == 1
