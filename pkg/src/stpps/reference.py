"""Naive exhaustive oracles.

Nothing here is clever on purpose: these routines are the independent side
of every equivalence test, so they enumerate and compare.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional

from .core import BudgetExceeded, InvalidInput, Partition, SubmodularOracle, Value
from .orientation.model import Hypergraph, Orientation
from .types import KPartitionResult, PiecewiseLinearCurve, Segment


@dataclass(frozen=True)
class EnumerationBudget:
    max_n: int = 9
    max_orientations: int = 100_000

    def __post_init__(self) -> None:
        if self.max_n < 1 or self.max_orientations < 1:
            raise InvalidInput("budgets must be positive")


DEFAULT_BUDGET = EnumerationBudget()


def enumerate_partitions(
    n: int,
    *,
    st: Optional[tuple[int, int]] = None,
    blocks: Optional[int] = None,
    singleton: Optional[int] = None,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> Iterator[Partition]:
    """Yield every partition of ``{0..n-1}`` passing all given filters once.

    Element ``i`` joins one of the open blocks or opens a new one, which is
    the restricted-growth-string encoding.  ``st`` keeps {s,t}-separating
    partitions, ``blocks`` fixes the block count, ``singleton`` forces
    ``{v}`` to be a block.
    """
    if n > budget.max_n:
        raise BudgetExceeded(f"partition enumeration refused for n={n} > {budget.max_n}")
    if n < 1:
        raise InvalidInput("n must be positive")
    if st is not None and st[0] == st[1]:
        raise InvalidInput("terminals must differ")

    current: list[int] = []

    def rec(i: int) -> Iterator[Partition]:
        if blocks is not None and len(current) + (n - i) < blocks:
            return
        if i == n:
            if blocks is None or len(current) == blocks:
                yield Partition(n, tuple(current))
            return
        bit = 1 << i
        for j in range(len(current)):
            b = current[j]
            if singleton is not None and (i == singleton or b == 1 << singleton):
                continue
            if st is not None and (b | bit) >> st[0] & 1 and (b | bit) >> st[1] & 1:
                continue
            current[j] = b | bit
            yield from rec(i + 1)
            current[j] = b
        if blocks is None or len(current) < blocks:
            current.append(bit)
            yield from rec(i + 1)
            current.pop()

    yield from rec(0)


def brute_partition_minimum(
    oracle: SubmodularOracle, lam: object, st: Optional[tuple[int, int]] = None
) -> tuple[Value, Partition]:
    """Minimum of ``f(𝒫) − λ|𝒫|`` with the first minimizer in enumeration order."""
    lam = Value.of(lam)
    best: Optional[tuple[Value, Partition]] = None
    for p in enumerate_partitions(oracle.n, st=st):
        v = oracle.evaluate_partition(p) - lam * len(p)
        if best is None or v < best[0]:
            best = (v, p)
    assert best is not None
    return best


def _size_minima(oracle: SubmodularOracle, st: Optional[tuple[int, int]]) -> dict[int, tuple[Fraction, Partition]]:
    best: dict[int, tuple[Fraction, Partition]] = {}
    for p in enumerate_partitions(oracle.n, st=st):
        v = oracle.evaluate_partition(p).rational()
        c = len(p)
        if c not in best or v < best[c][0]:
            best[c] = (v, p)
    return best


def brute_curve(
    oracle: SubmodularOracle, mode: str = "all", s: Optional[int] = None, t: Optional[int] = None
) -> PiecewiseLinearCurve:
    """Lower envelope of the lines ``f(𝒫) − λ|𝒫|`` over all enumerated partitions."""
    if mode == "st":
        if s is None or t is None:
            raise InvalidInput("mode st needs both terminals")
        st: Optional[tuple[int, int]] = (s, t)
    elif mode == "all":
        st = None
    else:
        raise InvalidInput(f"unknown mode {mode!r}")
    best = _size_minima(oracle, st)
    sizes = sorted(best)
    cur = sizes[0]
    segments = [Segment(best[cur][1], best[cur][0])]
    breakpoints: list[Fraction] = []
    while cur != sizes[-1]:
        # the next envelope line is the one whose intersection with the
        # current line comes first; among ties keep the steepest
        cand = []
        for c in sizes:
            if c > cur:
                cand.append(((best[c][0] - best[cur][0]) / (c - cur), -c))
        lam, neg_c = min(cand)
        cur = -neg_c
        breakpoints.append(lam)
        segments.append(Segment(best[cur][1], best[cur][0]))
    return PiecewiseLinearCurve(mode, tuple(breakpoints), tuple(segments))


def brute_best_k_partition(
    oracle: SubmodularOracle,
    s: int,
    t: int,
    k: int,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> KPartitionResult:
    if not 2 <= k <= oracle.n:
        raise InvalidInput(f"k must lie in [2, {oracle.n}]")
    best: Optional[tuple[Value, Partition]] = None
    for p in enumerate_partitions(oracle.n, st=(s, t), blocks=k, budget=budget):
        v = oracle.evaluate_partition(p)
        if best is None or v < best[0]:
            best = (v, p)
    assert best is not None
    return KPartitionResult(best[1], best[0], "exhaustive")


def brute_orientations(
    g: Hypergraph, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Iterator[Orientation]:
    """Every head assignment, one head per hyperedge copy."""
    choices = []
    total = 1
    for e, c in zip(g.edges, g.multiplicity):
        verts = [i for i in range(g.n) if e >> i & 1]
        for _ in range(c):
            choices.append(verts)
            total *= len(verts)
    if total > budget.max_orientations:
        raise BudgetExceeded(f"{total} orientations exceed the budget of {budget.max_orientations}")
    for pick in product(*choices):
        heads, pos = [], 0
        for c in g.multiplicity:
            heads.append(tuple(pick[pos : pos + c]))
            pos += c
        yield Orientation(g, tuple(heads))


def orientation_profile(o: Orientation) -> tuple[int, int]:
    """``(min in-degree over ∅≠U⊊V, min in-degree over t∈U⊆V−s)`` by enumeration.

    Terminals are read from the ground set of the base hypergraph.
    """
    g = o.base
    s, t = g.ground.s_index, g.ground.t_index
    full = (1 << g.n) - 1
    conn = st_conn = None
    for u in range(1, full):
        d = o.indegree(u)
        conn = d if conn is None else min(conn, d)
        if s is not None and t is not None and u >> t & 1 and not u >> s & 1:
            st_conn = d if st_conn is None else min(st_conn, d)
    return (conn if conn is not None else 0, st_conn if st_conn is not None else 0)
