"""{s,t}-separating k-partition: sequence-based approximation and exhaustive optimum."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .core import InvalidInput, Partition, SubmodularOracle, members
from .pps import compute_st_pps
from .reference import DEFAULT_BUDGET, EnumerationBudget, brute_best_k_partition
from .types import KPartitionResult, PartitionSequence

CANDIDATE_ORDER = ("sigma1", "sigma2", "pi")


def _check_k(oracle: SubmodularOracle, k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or not 2 <= k <= oracle.n:
        raise InvalidInput(f"k must be an integer in [2, {oracle.n}], got {k!r}")


def _fval(oracle: SubmodularOracle, p: Partition) -> Fraction:
    return oracle.evaluate_partition(p).rational()


def _union(blocks) -> int:
    out = 0
    for b in blocks:
        out |= b
    return out


def _check_sequence(seq: PartitionSequence, s: int, t: int, n: int) -> None:
    if seq.kind != "st" or (seq.s, seq.t) != (s, t):
        raise InvalidInput("the sequence must be {s,t}-separating for the same terminals")
    sizes = seq.sizes
    if any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise InvalidInput("sequence sizes must strictly increase")
    if seq.partitions[-1] != Partition.singletons(n):
        raise InvalidInput("the sequence must end with the singleton partition")


def approx_st_k_partition(
    oracle: SubmodularOracle,
    s: int,
    t: int,
    k: int,
    sequence: Optional[PartitionSequence] = None,
) -> KPartitionResult:
    """An {s,t}-separating k-partition built from the separating sequence.

    A member with exactly k blocks is returned as is.  Otherwise the two
    members bracketing k are combined: the refined block of the coarser one
    is replaced by its cheapest sub-blocks plus one block for the rest, and
    in the crossing case two further candidates are compared.
    """
    _check_k(oracle, k)
    seq = sequence if sequence is not None else compute_st_pps(oracle, s, t)
    _check_sequence(seq, s, t, oracle.n)

    for p in seq.partitions:
        if len(p) == k:
            return KPartitionResult(p, oracle.evaluate_partition(p), "exact_from_sequence")

    i = next(j for j, p in enumerate(seq.partitions) if len(p) > k)
    if i == 0:
        raise InvalidInput("k is below the size of the first sequence member")
    prev, nxt = seq.partitions[i - 1], seq.partitions[i]
    step = seq.steps[i - 1]
    region = step.x
    cheap = sorted(
        (b for b in nxt if b & ~region == 0),
        key=lambda b: (oracle(b), tuple(members(b))),
    )
    a = k - len(prev)
    kept = [blk for blk in prev if blk != region]
    n = oracle.n

    bounds = _bounds(oracle, prev, nxt, k)
    if step.kind == "refinement":
        p = Partition(n, tuple(kept + cheap[:a] + [_union(cheap[a:])]))
        return KPartitionResult(
            p, oracle.evaluate_partition(p), "interpolated", "refinement", {}, bounds
        )
    if step.kind != "st_refinement" or step.y is None:
        raise InvalidInput(f"unusable step kind {step.kind!r}")

    core = region & step.y
    # π merges the |P_i| − k + 1 most expensive sub-blocks so that exactly k remain
    cut = len(cheap) - (len(nxt) - k + 1)
    cands = {
        "sigma1": Partition(n, tuple(kept + cheap[:a] + [core | _union(cheap[a:])])),
        "sigma2": Partition(n, tuple(kept + cheap[: a - 1] + [core, _union(cheap[a - 1 :])])),
        "pi": Partition(
            n, tuple([b for b in nxt if b not in cheap[cut:]] + [_union(cheap[cut:])])
        ),
    }
    values = {name: _fval(oracle, p) for name, p in cands.items()}
    branch = min(CANDIDATE_ORDER, key=lambda name: (values[name], CANDIDATE_ORDER.index(name)))
    p = cands[branch]
    return KPartitionResult(p, oracle.evaluate_partition(p), "interpolated", branch, values, bounds)


def _bounds(oracle: SubmodularOracle, prev: Partition, nxt: Partition, k: int) -> dict:
    """Lower bounds on the optimum and upper bounds on the output for the bracketing pair."""
    f_prev, f_next = _fval(oracle, prev), _fval(oracle, nxt)
    lo, hi = len(prev), len(nxt)
    share = Fraction(k - lo, hi - lo + 1)
    return {
        "f_prev": f_prev,
        "f_next": f_next,
        "opt_lower_interpolated": Fraction(hi - k, hi - lo) * f_prev + Fraction(k - lo, hi - lo) * f_next,
        "opt_lower_prev": f_prev,
        "upper_next": f_next,
        "upper_posimodular": f_prev + 2 * share * f_next,
        "upper_monotone": f_prev + share * f_next,
    }


def exact_st_k_partition(
    oracle: SubmodularOracle,
    s: int,
    t: int,
    k: int,
    budget: EnumerationBudget = DEFAULT_BUDGET,
) -> KPartitionResult:
    """True optimum by enumerating every {s,t}-separating k-partition."""
    _check_k(oracle, k)
    if s == t:
        raise InvalidInput("terminals must differ")
    return brute_best_k_partition(oracle, s, t, k, budget)
