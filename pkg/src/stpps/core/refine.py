"""Refinement predicates between partitions.

All sets are bitmasks.  ``q`` is the candidate finer partition and ``p`` the
coarser one throughout.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import InvalidInput
from .partition import Partition


def _distinct(q: Partition, p: Partition) -> None:
    if q.n != p.n:
        raise InvalidInput("partitions live on different ground sets")
    if q == p:
        raise InvalidInput("refinement predicates need distinct partitions")


def is_intersecting(x: int, y: int) -> bool:
    return bool(x & y) and bool(x & ~y) and bool(y & ~x)


def intersecting_pairs(family: Sequence[int]) -> list[tuple[int, int]]:
    """All pairs ``(family[i], family[j])`` with ``i < j`` that are intersecting."""
    out = []
    for i, x in enumerate(family):
        for y in family[i + 1 :]:
            if is_intersecting(x, y):
                out.append((x, y))
    return out


def is_st_uncrossable(x: int, y: int, s: int, t: int) -> bool:
    """True unless ``x∖y`` and ``y∖x`` each hold exactly one terminal."""
    st = (1 << s) | (1 << t)
    return (x & ~y & st).bit_count() != 1 or (y & ~x & st).bit_count() != 1


def is_refinement(q: Partition, p: Partition) -> bool:
    _distinct(q, p)
    return all(any(b & ~a == 0 for a in p) for b in q)


def is_refinement_up_to_one_set(q: Partition, p: Partition) -> Optional[int]:
    """Return the refined block of ``p`` when the predicate holds, else None."""
    if not is_refinement(q, p):
        return None
    new = [b for b in q if b not in p]
    # q ≠ p and q refines p, so at least one block of q is new
    x = p.block_of((new[0] & -new[0]).bit_length() - 1)
    if all(b & ~x == 0 and b != x for b in new):
        return x
    return None


def _check_st(q: Partition, p: Partition, s: int, t: int) -> None:
    _distinct(q, p)
    if s == t:
        raise InvalidInput("terminals must differ")
    if not (q.is_st_separating(s, t) and p.is_st_separating(s, t)):
        raise InvalidInput("{s,t}-refinement needs {s,t}-separating partitions")


def is_st_refinement_along(
    q: Partition, p: Partition, x: int, y: int, s: int, t: int
) -> bool:
    _check_st(q, p, s, t)
    if x not in p or x in q or y not in q or y in p:
        raise InvalidInput("need x ∈ p∖q and y ∈ q∖p")
    return _along(q, p, x, y, s, t)


def _along(q: Partition, p: Partition, x: int, y: int, s: int, t: int) -> bool:
    if not is_intersecting(x, y) or is_st_uncrossable(x, y, s, t):
        return False
    if not all(any(b & ~a == 0 for a in p) for b in q if b != y):
        return False
    if not all(a & y == 0 or a & ~y == 0 for a in p if a != x):
        return False
    inside_y = sum(1 for a in p if a & ~y == 0)
    inside_x = sum(1 for b in q if b & ~x == 0)
    return inside_y <= inside_x


def st_refinement_pair(
    q: Partition, p: Partition, s: int, t: int, up_to_two_sets: bool = False
) -> Optional[tuple[int, int]]:
    """Find ``(X, Y)`` witnessing an {s,t}-refinement, or None."""
    _check_st(q, p, s, t)
    for x in p:
        if x in q:
            continue
        for y in q:
            if y in p or not _along(q, p, x, y, s, t):
                continue
            if up_to_two_sets:
                if not all(a in q for a in p if a & (x | y) == 0):
                    continue
            return (x, y)
    return None


def is_st_refinement(q: Partition, p: Partition, s: int, t: int) -> bool:
    return st_refinement_pair(q, p, s, t) is not None


def is_st_refinement_up_to_two_sets(q: Partition, p: Partition, s: int, t: int) -> bool:
    return st_refinement_pair(q, p, s, t, up_to_two_sets=True) is not None
