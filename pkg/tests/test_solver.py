from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stpps.core import GroundSet, InvalidInput, Partition, Value, make_function, make_graph_cut, make_table
from stpps.corpus import generate
from stpps.instances import parse_instance
from stpps.reference import brute_partition_minimum, enumerate_partitions
from stpps.solver import (
    dilworth_truncation,
    minimize_set_function,
    min_partition,
    min_partition_extremal,
    min_st_partition,
    min_st_partition_extremal,
    sfm,
    sfm_constrained,
)


def test_constrained_minimization(triangle):
    res = sfm_constrained(triangle, include=0b001, exclude=0b010)
    assert res.value == 2 and res.minimizer in (0b001, 0b101)
    assert sfm(triangle).value == 0
    with pytest.raises(InvalidInput):
        sfm_constrained(triangle, 0b001, 0b001)


def test_dilworth_truncation(triangle):
    low = dilworth_truncation(triangle, 1, 0b111)
    assert low.minimizer == (0b111,) and low.value == -1
    high = dilworth_truncation(triangle, 4, 0b111)
    assert high.minimizer == (0b001, 0b010, 0b100) and high.value == -6
    one = dilworth_truncation(triangle, 0, 0b010)
    assert one.minimizer == (0b010,) and one.value == 2
    with pytest.raises(InvalidInput):
        dilworth_truncation(triangle, 0, 0)


def test_min_partition_examples(path, triangle):
    assert min_partition(path, 3).value == -5
    assert min_partition(path, 3).minimizer == Partition.singletons(3)
    for lam in (0, 1, 2, 3, 4):
        assert min_partition(triangle, lam).value == min_partition(triangle, lam, method="b").value


def test_min_st_partition_examples(path, crossing):
    assert min_st_partition(path, 0, 0, 2).value == 2
    assert min_st_partition(path, 3, 0, 2).value == -5
    ground = crossing.ground
    res = min_st_partition(crossing, 1, ground.s_index, ground.t_index)
    assert res.minimizer == Partition.from_text("s,a,b|c,d,e,t", ground)
    assert res.value == 0
    with pytest.raises(InvalidInput):
        min_st_partition(path, 0, 1, 1)


def test_extremal_attainers_at_a_breakpoint(crossing):
    ground = crossing.ground
    s, t = ground.s_index, ground.t_index
    lo = min_st_partition_extremal(crossing, Fraction(9, 8), s, t, "min_card")
    hi = min_st_partition_extremal(crossing, Fraction(9, 8), s, t, "max_card")
    assert lo.minimizer == Partition.from_text("s,a,b|c,d,e,t", ground)
    assert hi.minimizer == Partition.from_text("s|a|b,c,d,e,t", ground)
    assert lo.value == hi.value == Fraction(-1, 4)
    with pytest.raises(InvalidInput):
        min_st_partition_extremal(crossing, 1, s, t, "median")


def test_plain_extremal_attainers(triangle):
    # at λ=3 both the whole set and the singletons attain -3
    assert min_partition_extremal(triangle, 3, "min_card").minimizer == Partition.whole(3)
    assert min_partition_extremal(triangle, 3, "max_card").minimizer == Partition.singletons(3)


def test_min_norm_agrees_with_exhaustive():
    rng = random.Random(11)
    n = 10
    weights = {(i, j): rng.randint(0, 3) for i in range(n) for j in range(i + 1, n)}
    cut = make_graph_cut(GroundSet.indexed(n), [(i, j, w) for (i, j), w in weights.items()])
    modular = [Fraction(rng.randint(-6, 6)) for _ in range(n)]

    def fn(u: int) -> Fraction:
        return cut(u).rational() + sum((modular[i] for i in range(n) if u >> i & 1), Fraction(0))

    values = [fn(u) for u in range(1 << n)]
    table = make_table(GroundSet.indexed(n), values)
    a = minimize_set_function(table, range(n), 0, "exhaustive")
    b = minimize_set_function(table, range(n), 0, "minnorm")
    assert a[1] == b[1] == min(values)
    assert table(b[0]) == b[1]


def test_backends_and_validation(triangle):
    with pytest.raises(InvalidInput):
        minimize_set_function(triangle, range(3), 0, "simplex")


def _corpus(kind, count, seed):
    return [parse_instance(d).oracle for d in generate(seed, count, kind, 3, 6)]


@pytest.mark.parametrize("kind", ["graph_cut", "hypergraph_cut", "coverage"])
def test_partition_minimum_matches_enumeration(kind):
    rng = random.Random(3)
    for f in _corpus(kind, 10, 4):
        s, t = f.ground.s_index, f.ground.t_index
        for _ in range(4):
            lam = Fraction(rng.randint(-4, 24), rng.choice((1, 2, 3)))
            assert min_partition(f, lam).value == brute_partition_minimum(f, lam)[0]
            assert min_st_partition(f, lam, s, t).value == brute_partition_minimum(f, lam, (s, t))[0]


def test_set_minimizers_of_b_give_partition_minimum():
    # min_U∋v b(U) equals the partition minimum for every anchor v
    for f in _corpus("graph_cut", 6, 8):
        for lam in (Fraction(0), Fraction(2), Fraction(7, 2)):
            best = brute_partition_minimum(f, lam)[0]
            assert min_partition(f, lam, method="b").value == best
            assert min_partition(f, lam).value == best


def test_extremal_cardinalities_match_enumeration():
    for f in _corpus("hypergraph_cut", 6, 12):
        s, t = f.ground.s_index, f.ground.t_index
        for lam in (Fraction(1), Fraction(5, 2), Fraction(4)):
            parts = list(enumerate_partitions(f.n, st=(s, t)))
            vals = {p: f.evaluate_partition(p) - lam * len(p) for p in parts}
            best = min(vals.values())
            sizes = [len(p) for p, v in vals.items() if v == best]
            lo = min_st_partition_extremal(f, lam, s, t, "min_card")
            hi = min_st_partition_extremal(f, lam, s, t, "max_card")
            assert lo.value == hi.value == best
            assert len(lo.minimizer) == min(sizes) and len(hi.minimizer) == max(sizes)


@given(st.lists(st.integers(0, 5), min_size=6, max_size=6), st.fractions(-3, 8))
def test_min_partition_property(ws, lam):
    pairs = [(0, 1), (1, 2), (2, 3), (0, 3), (1, 3), (0, 2)]
    f = make_graph_cut(GroundSet.indexed(4), [(a, b, w) for (a, b), w in zip(pairs, ws)])
    res = min_partition(f, lam)
    assert res.value == brute_partition_minimum(f, lam)[0]
    assert f.evaluate_partition(res.minimizer) - lam * len(res.minimizer) == res.value


def test_arbitrary_function_oracle():
    f = make_function(GroundSet.indexed(3), lambda u: min(u.bit_count(), 2))
    assert min_partition(f, 1).value == brute_partition_minimum(f, 1)[0]


def test_dilworth_value_is_monotone_with_block_slope():
    for f in _corpus("hypergraph_cut", 8, 14):
        full = f.ground.full
        lams = [Fraction(x, 2) for x in range(-4, 16)]
        prev = None
        for lam in lams:
            res = dilworth_truncation(f, lam, full)
            blocks = res.minimizer
            again = sum((f(b) for b in blocks), Value(0)) - lam * len(blocks)
            assert again == res.value
            if prev is not None:
                # a line of slope -|P| through the previous optimum bounds it from above
                p_lam, p_val, p_size = prev
                assert res.value <= p_val - (lam - p_lam) * p_size
                assert res.value <= p_val
            prev = (lam, res.value, len(blocks))
