"""Submodular minimization, Dilworth truncation and partition minimization."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import (
    InternalInconsistency,
    InvalidInput,
    Partition,
    SubmodularOracle,
    Value,
    members,
    perturb_cardinality,
)
from .types import MinimizationResult

EXHAUSTIVE_MAX = 20

SetFn = Callable[[int], Value]


# -- set-function minimization over {base ∪ A : A ⊆ free} ------------------


def _exhaustive(fn: SetFn, free: Sequence[int], base: int) -> tuple[int, Value]:
    best_mask, best = base, fn(base)
    for code in range(1, 1 << len(free)):
        sub = base
        for i, e in enumerate(free):
            if code >> i & 1:
                sub |= 1 << e
        v = fn(sub)
        if v < best:
            best_mask, best = sub, v
    return best_mask, best


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals."""
    n = len(rhs)
    a = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise InternalInconsistency("singular system in the affine minimizer")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                k = a[r][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def _min_norm_point(fn: SetFn, free: Sequence[int], base: int) -> tuple[int, Value]:
    """Fujishige–Wolfe minimum-norm-point algorithm in exact arithmetic.

    Works on ``g(A) = f(base ∪ A) − f(base)`` over the free elements.  The
    minimal minimizer is ``{i : x_i < 0}`` for the min-norm base ``x``.
    """
    m = len(free)
    if m == 0:
        return base, fn(base)
    f0 = fn(base).rational()
    bits = [1 << e for e in free]

    def g(local: int) -> Fraction:
        mask = base
        for i in range(m):
            if local >> i & 1:
                mask |= bits[i]
        return fn(mask).rational() - f0

    def greedy(w: Sequence[Fraction]) -> list[Fraction]:
        order = sorted(range(m), key=lambda i: (w[i], i))
        x = [Fraction(0)] * m
        prefix, prev = 0, Fraction(0)
        for i in order:
            prefix |= 1 << i
            cur = g(prefix)
            x[i] = cur - prev
            prev = cur
        return x

    x = greedy([Fraction(0)] * m)
    pts = [x]
    lam = [Fraction(1)]
    while True:
        q = greedy(x)
        if _dot(x, q) >= _dot(x, x):
            break
        pts.append(q)
        lam.append(Fraction(0))
        while True:
            k = len(pts)
            gram = [[_dot(pts[i], pts[j]) for j in range(k)] for i in range(k)]
            system = [[Fraction(0)] + [Fraction(1)] * k] + [[Fraction(1)] + row for row in gram]
            alpha = _solve(system, [Fraction(1)] + [Fraction(0)] * k)[1:]
            y = [sum((alpha[i] * pts[i][c] for i in range(k)), Fraction(0)) for c in range(m)]
            if all(a > 0 for a in alpha):
                x, lam = y, alpha
                break
            theta = min(lam[i] / (lam[i] - alpha[i]) for i in range(k) if alpha[i] <= 0)
            lam = [theta * a + (1 - theta) * l for a, l in zip(alpha, lam)]
            keep = [i for i in range(k) if lam[i] > 0]
            pts = [pts[i] for i in keep]
            lam = [lam[i] for i in keep]
            x = [sum((lam[i] * pts[i][c] for i in range(len(pts))), Fraction(0)) for c in range(m)]
    local = 0
    for i in range(m):
        if x[i] < 0:
            local |= 1 << i
    if g(local) != sum((v for v in x if v < 0), Fraction(0)):
        raise InternalInconsistency("min-norm point does not certify a minimizer")
    mask = base
    for i in range(m):
        if local >> i & 1:
            mask |= bits[i]
    return mask, fn(mask)


def minimize_set_function(
    fn: SetFn, free: Sequence[int], base: int = 0, backend: str = "auto", tiered: bool = False
) -> tuple[int, Value, str]:
    """Minimize ``fn`` over ``{base ∪ A : A ⊆ free}``; ties go to the first set found."""
    if backend == "auto":
        backend = "exhaustive" if len(free) <= EXHAUSTIVE_MAX or tiered else "minnorm"
    if backend == "exhaustive":
        mask, val = _exhaustive(fn, free, base)
    elif backend == "minnorm":
        if tiered:
            raise InvalidInput("the min-norm backend needs untiered rational values")
        mask, val = _min_norm_point(fn, free, base)
    else:
        raise InvalidInput(f"unknown backend {backend!r}")
    return mask, val, backend


def sfm(oracle: SubmodularOracle, backend: str = "auto") -> MinimizationResult:
    return sfm_constrained(oracle, 0, 0, backend)


def sfm_constrained(
    oracle: SubmodularOracle, include: int, exclude: int, backend: str = "auto"
) -> MinimizationResult:
    """Minimize over ``{U : include ⊆ U ⊆ V∖exclude}``."""
    if include & exclude:
        raise InvalidInput("include and exclude must be disjoint")
    oracle.ground.check_mask(include)
    oracle.ground.check_mask(exclude)
    before = oracle.evaluations
    free = [i for i in range(oracle.n) if not (include | exclude) >> i & 1]
    mask, val, used = minimize_set_function(oracle, free, include, backend, oracle.tiered)
    return MinimizationResult(mask, val, oracle.evaluations - before, used)


# -- partitions ---------------------------------------------------------------


def _truncate(
    oracle: SubmodularOracle, lam: Value, s_mask: int, backend: str
) -> tuple[list[int], Value]:
    """Greedy insertion: each new element merges with the cheapest family of blocks."""
    blocks: list[int] = []
    vals: list[Value] = []
    for v in members(s_mask):
        vbit = 1 << v
        atoms, weights = blocks, vals

        def cost(z: int) -> Value:
            union, paid = vbit, Value(0)
            for i in members(z):
                union |= atoms[i]
                paid = paid + weights[i]
            return oracle(union) - lam - paid

        z, _, _ = minimize_set_function(cost, range(len(atoms)), 0, backend, oracle.tiered)
        merged = vbit
        keep_b, keep_v = [], []
        for i, (b, w) in enumerate(zip(atoms, weights)):
            if z >> i & 1:
                merged |= b
            else:
                keep_b.append(b)
                keep_v.append(w)
        blocks = keep_b + [merged]
        vals = keep_v + [oracle(merged) - lam]
    total = Value(0)
    for w in vals:
        total = total + w
    return blocks, total


def dilworth_truncation(
    oracle: SubmodularOracle, lam: object, s_mask: int, backend: str = "auto"
) -> MinimizationResult:
    """Minimum of ``Σ_B (f(B) − λ)`` over partitions of ``s_mask``.

    The minimizer is a tuple of blocks of ``s_mask`` (not a partition of V).
    """
    if s_mask == 0:
        raise InvalidInput("Dilworth truncation needs a nonempty set")
    oracle.ground.check_mask(s_mask)
    lam = Value.of(lam)
    before = oracle.evaluations
    blocks, total = _truncate(oracle, lam, s_mask, backend)
    used = "exhaustive" if backend == "auto" else backend
    return MinimizationResult(tuple(sorted(blocks, key=lambda b: b & -b)), total, oracle.evaluations - before, used)


def min_partition(
    oracle: SubmodularOracle, lam: object, method: str = "dilworth", backend: str = "auto"
) -> MinimizationResult:
    """A partition minimizing ``f(𝒫) − λ|𝒫|`` over all partitions of V.

    ``method="b"`` minimizes ``b(U) = f(U) − λ + m(U)`` over sets containing
    element 0 instead; both give the same value.
    """
    lam = Value.of(lam)
    before = oracle.evaluations
    if method == "dilworth":
        blocks, total = _truncate(oracle, lam, oracle.ground.full, backend)
        p = Partition(oracle.n, tuple(blocks))
    elif method == "b":
        p, total = _via_b(oracle, lam, 1, 0, backend)
    else:
        raise InvalidInput(f"unknown method {method!r}")
    return MinimizationResult(p, total, oracle.evaluations - before, backend)


def _via_b(
    oracle: SubmodularOracle, lam: Value, include: int, exclude: int, backend: str
) -> tuple[Partition, Value]:
    full = oracle.ground.full
    memo: dict[int, tuple[list[int], Value]] = {}

    def rest(u: int) -> tuple[list[int], Value]:
        if u not in memo:
            memo[u] = _truncate(oracle, lam, full & ~u, backend) if u != full else ([], Value(0))
        return memo[u]

    def b(u: int) -> Value:
        return oracle(u) - lam + rest(u)[1]

    free = [i for i in range(oracle.n) if not (include | exclude) >> i & 1]
    u, val, _ = minimize_set_function(b, free, include, backend, oracle.tiered)
    p = Partition(oracle.n, (u,) + tuple(rest(u)[0]))
    return p, val


def min_st_partition(
    oracle: SubmodularOracle, lam: object, s: int, t: int, backend: str = "auto"
) -> MinimizationResult:
    """An {s,t}-separating partition minimizing ``f(𝒫) − λ|𝒫|``."""
    if s == t:
        raise InvalidInput("terminals must differ")
    lam = Value.of(lam)
    before = oracle.evaluations
    p, val = _via_b(oracle, lam, 1 << s, 1 << t, backend)
    return MinimizationResult(p, val, oracle.evaluations - before, backend)


def _strip(res: MinimizationResult, base: SubmodularOracle, lam: Value) -> MinimizationResult:
    p = res.minimizer
    assert isinstance(p, Partition)
    return MinimizationResult(p, base.evaluate_partition(p) - lam * len(p), res.evaluations, res.backend)


def min_partition_extremal(
    oracle: SubmodularOracle, lam: object, which: str, backend: str = "auto"
) -> MinimizationResult:
    sign = _sign(which)
    lam = Value.of(lam)
    res = min_partition(perturb_cardinality(oracle, sign), lam, backend=backend)
    return _strip(res, oracle, lam)


def min_st_partition_extremal(
    oracle: SubmodularOracle, lam: object, s: int, t: int, which: str, backend: str = "auto"
) -> MinimizationResult:
    """Attainer of ``g^{s,t}(λ)`` with the fewest (``min_card``) or most (``max_card``) blocks."""
    sign = _sign(which)
    lam = Value.of(lam)
    res = min_st_partition(perturb_cardinality(oracle, sign), lam, s, t, backend)
    return _strip(res, oracle, lam)


def _sign(which: str) -> int:
    if which == "min_card":
        return 1
    if which == "max_card":
        return -1
    raise InvalidInput(f"which must be min_card or max_card, got {which!r}")


def partition_minimum(
    oracle: SubmodularOracle, lam: object, st: Optional[tuple[int, int]] = None
) -> MinimizationResult:
    """Dispatch to the plain or {s,t}-separating minimization."""
    if st is None:
        return min_partition(oracle, lam)
    return min_st_partition(oracle, lam, st[0], st[1])
