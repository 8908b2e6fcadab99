"""Set-function oracles, built-in families, perturbations and checkers."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Callable, Iterable, Optional, Sequence

from .errors import BudgetExceeded, InvalidInput
from .partition import Partition
from .sets import GroundSet, mask_of, members
from .values import Value, as_fraction

CHECK_MAX_N = 12


@dataclass(frozen=True)
class Flags:
    symmetric: bool = False
    monotone: bool = False
    posimodular: bool = False
    nonnegative: bool = False
    strict: bool = False


class SubmodularOracle:
    """Memoized evaluator ``mask -> Value`` over a ground set.

    ``granularity`` is a positive rational such that all values are integer
    multiples of it, when known.  ``tiered`` records that the infinitesimal
    tier has been spent by a cardinality perturbation.
    """

    def __init__(
        self,
        ground: GroundSet,
        fn: Callable[[int], object],
        flags: Flags = Flags(),
        granularity: Optional[Fraction] = None,
        kind: str = "custom",
        tiered: bool = False,
    ) -> None:
        if granularity is not None and granularity <= 0:
            raise InvalidInput("granularity must be positive")
        self.ground = ground
        self.flags = flags
        self.granularity = granularity
        self.kind = kind
        self.tiered = tiered
        self._fn = fn
        self._cache: dict[int, Value] = {}
        self.evaluations = 0

    @property
    def n(self) -> int:
        return self.ground.n

    def __call__(self, mask: int) -> Value:
        v = self._cache.get(mask)
        if v is None:
            self.ground.check_mask(mask)
            v = Value.of(self._fn(mask))
            self._cache[mask] = v
            self.evaluations += 1
        return v

    def value(self, elements: Iterable[int]) -> Value:
        return self(mask_of(elements))

    def evaluate_partition(self, p: Partition) -> Value:
        return evaluate_partition(self, p)

    def __repr__(self) -> str:
        return f"SubmodularOracle(kind={self.kind!r}, n={self.n})"


def evaluate_partition(oracle: SubmodularOracle, p: Partition) -> Value:
    if p.n != oracle.n:
        raise InvalidInput("partition does not live on the oracle's ground set")
    total = Value(0)
    for b in p:
        total = total + oracle(b)
    return total


def rational_gcd(values: Iterable[Fraction]) -> Optional[Fraction]:
    """Largest positive rational dividing every value; None if all are zero."""
    num, den = 0, 1
    for v in values:
        if v == 0:
            continue
        num = gcd(num, v.numerator)
        den = lcm(den, v.denominator)
    if num == 0:
        return None
    return Fraction(num, den)


def _weights(ws: Iterable[object]) -> list[Fraction]:
    out = [as_fraction(w) for w in ws]
    if any(w < 0 for w in out):
        raise InvalidInput("weights must be nonnegative")
    return out


def make_hypergraph_cut(
    ground: GroundSet, edges: Sequence[tuple[Iterable[int], object]]
) -> SubmodularOracle:
    """Weight of hyperedges meeting both ``U`` and ``V∖U``."""
    masks = []
    for members_, _ in edges:
        m = mask_of(members_)
        if m == 0:
            raise InvalidInput("hyperedges must be nonempty")
        ground.check_mask(m)
        masks.append(m)
    ws = _weights(w for _, w in edges)
    pairs = [(m, w) for m, w in zip(masks, ws) if w != 0 and m.bit_count() > 1]

    def cut(u: int) -> Fraction:
        return sum((w for m, w in pairs if m & u and m & ~u), Fraction(0))

    flags = Flags(symmetric=True, posimodular=True, nonnegative=True)
    return SubmodularOracle(ground, cut, flags, rational_gcd(ws) or Fraction(1), "hypergraph_cut")


def make_graph_cut(
    ground: GroundSet, edges: Sequence[tuple[int, int, object]]
) -> SubmodularOracle:
    for u, v, _ in edges:
        if u == v:
            raise InvalidInput(f"self-loop at {u}")
    oracle = make_hypergraph_cut(ground, [((u, v), w) for u, v, w in edges])
    oracle.kind = "graph_cut"
    return oracle


def make_coverage(
    ground: GroundSet,
    covers: Sequence[Iterable[object]],
    item_weights: Optional[dict] = None,
) -> SubmodularOracle:
    """``f(U) = w(⋃_{u∈U} covers[u])``; unit item weights by default."""
    if len(covers) != ground.n:
        raise InvalidInput("need one covered set per element")
    items = sorted({x for c in covers for x in c}, key=str)
    pos = {x: i for i, x in enumerate(items)}
    cov = [mask_of(pos[x] for x in c) for c in covers]
    if item_weights is None:
        w = [Fraction(1)] * len(items)
    else:
        missing = [x for x in items if x not in item_weights]
        if missing:
            raise InvalidInput(f"no weight for items {missing}")
        w = _weights(item_weights[x] for x in items)

    def coverage(u: int) -> Fraction:
        covered = 0
        for e in members(u):
            covered |= cov[e]
        return sum((w[i] for i in members(covered)), Fraction(0))

    flags = Flags(monotone=True, posimodular=True, nonnegative=True)
    return SubmodularOracle(ground, coverage, flags, rational_gcd(w) or Fraction(1), "coverage")


def make_indegree(
    ground: GroundSet, arcs: Sequence[tuple[Iterable[int], int, int]]
) -> SubmodularOracle:
    """In-degree of a directed hypergraph given as ``(members, head, multiplicity)``."""
    data = []
    for members_, head, mult in arcs:
        m = mask_of(members_)
        if not m >> head & 1:
            raise InvalidInput("head must belong to its hyperedge")
        if mult < 1:
            raise InvalidInput("multiplicities must be positive")
        ground.check_mask(m)
        data.append((m, 1 << head, mult))

    def indeg(u: int) -> int:
        return sum(c for m, h, c in data if h & u and m & ~u)

    g = rational_gcd(Fraction(c) for _, _, c in data) or Fraction(1)
    return SubmodularOracle(ground, indeg, Flags(nonnegative=True), g, "indegree")


def make_table(
    ground: GroundSet, values: Sequence[object], flags: Flags = Flags()
) -> SubmodularOracle:
    """Explicit value table indexed by bitmask; ``values[0]`` is f(∅)."""
    if len(values) != 1 << ground.n:
        raise InvalidInput(f"table needs 2^{ground.n} = {1 << ground.n} values")
    table = [as_fraction(v) for v in values]
    return SubmodularOracle(ground, table.__getitem__, flags, rational_gcd(table) or Fraction(1), "table")


def make_function(
    ground: GroundSet,
    fn: Callable[[int], object],
    flags: Flags = Flags(),
    granularity: Optional[object] = None,
) -> SubmodularOracle:
    g = as_fraction(granularity) if granularity is not None else None
    return SubmodularOracle(ground, fn, flags, g)


def perturb_cardinality(oracle: SubmodularOracle, sign: int) -> SubmodularOracle:
    """Add ``sign·ε`` to every nonempty set, making partition values carry ``sign·|𝒫|``."""
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    if oracle.tiered:
        raise InvalidInput("the infinitesimal tier is already in use")
    tier = Value(0, sign)

    def fn(u: int) -> Value:
        return oracle(u) + tier if u else oracle(u)

    out = SubmodularOracle(oracle.ground, fn, oracle.flags, oracle.granularity, oracle.kind, tiered=True)
    return out


def strict_eps(n: int, granularity: Fraction) -> Fraction:
    """Perturbation size small enough that perturbed optima stay optimal.

    Partition values of the perturbation lie within ``2·C(n,2)·eps`` of the
    original ones; this choice keeps that below ``granularity / n``.
    """
    m = comb(n, 2)
    return granularity / ((4 * m + 1) * 3 * max(n, 1))


def perturb_strict(
    oracle: SubmodularOracle, mode: str = "auto", eps: Optional[object] = None
) -> SubmodularOracle:
    """Return ``f + eps·|X||V∖X|`` (symmetric) or that plus ``eps·C(|X|,2)`` (monotone)."""
    if mode == "auto":
        if oracle.flags.symmetric or not oracle.flags.monotone:
            mode = "symmetric"
        else:
            mode = "monotone"
    if mode not in ("symmetric", "monotone"):
        raise InvalidInput(f"unknown perturbation mode {mode!r}")
    if eps is None:
        if oracle.granularity is None:
            raise InvalidInput("eps is required when the oracle has no granularity")
        eps = strict_eps(oracle.n, oracle.granularity)
    eps = as_fraction(eps)
    if eps <= 0:
        raise InvalidInput("eps must be positive")
    n = oracle.n
    monotone = mode == "monotone"

    def fn(u: int) -> Value:
        k = u.bit_count()
        extra = k * (n - k) + (k * (k - 1) // 2 if monotone else 0)
        return oracle(u) + eps * extra

    flags = replace(
        oracle.flags,
        symmetric=oracle.flags.symmetric and not monotone,
        monotone=oracle.flags.monotone and monotone,
        strict=True,
    )
    g = rational_gcd([oracle.granularity, eps]) if oracle.granularity is not None else None
    return SubmodularOracle(oracle.ground, fn, flags, g, oracle.kind, oracle.tiered)


# Exhaustive property checkers.  Each returns (holds, first violating pair).

Check = tuple[bool, Optional[tuple[int, int]]]


def _bound(oracle: SubmodularOracle, max_n: int) -> None:
    if oracle.n > max_n:
        raise BudgetExceeded(f"exhaustive check refused for n={oracle.n} > {max_n}")


def check_submodular(
    oracle: SubmodularOracle, strict: bool = False, max_n: int = CHECK_MAX_N
) -> Check:
    """Local exchange test ``f(S+i)+f(S+j) ≥ f(S)+f(S+i+j)``.

    With ``strict`` the inequality must be strict whenever ``S`` is nonempty,
    which is equivalent to strictness on every intersecting pair.
    """
    _bound(oracle, max_n)
    n = oracle.n
    for s in range(1 << n):
        fs = oracle(s)
        outside = [i for i in range(n) if not s >> i & 1]
        for a, i in enumerate(outside):
            fi = oracle(s | 1 << i)
            for j in outside[a + 1 :]:
                lhs = fi + oracle(s | 1 << j)
                rhs = fs + oracle(s | 1 << i | 1 << j)
                if lhs < rhs or (strict and s and lhs == rhs):
                    return False, (s | 1 << i, s | 1 << j)
    return True, None


def check_posimodular(oracle: SubmodularOracle, max_n: int = CHECK_MAX_N) -> Check:
    _bound(oracle, max_n)
    n = oracle.n
    full = (1 << n) - 1
    for a in range(1 << n):
        rest = full & ~a
        b = rest
        # b ranges over subsets of V∖a; pairs (a∪z, b∪z) cover all (A, B)
        while True:
            z = rest & ~b
            while True:
                A, B = a | z, b | z
                if oracle(A) + oracle(B) < oracle(a) + oracle(b):
                    return False, (A, B)
                if z == 0:
                    break
                z = (z - 1) & (rest & ~b)
            if b == 0:
                break
            b = (b - 1) & rest
    return True, None


def check_monotone(oracle: SubmodularOracle, max_n: int = CHECK_MAX_N) -> Check:
    _bound(oracle, max_n)
    n = oracle.n
    for s in range(1 << n):
        for i in range(n):
            if not s >> i & 1 and oracle(s) > oracle(s | 1 << i):
                return False, (s, s | 1 << i)
    return True, None


def check_symmetric(oracle: SubmodularOracle, max_n: int = CHECK_MAX_N) -> Check:
    _bound(oracle, max_n)
    full = (1 << oracle.n) - 1
    for s in range(1 << oracle.n):
        if oracle(s) != oracle(full & ~s):
            return False, (s, full & ~s)
    return True, None
