"""Enumeration-side helpers shared by the orientation and acceptance tests."""

from __future__ import annotations

from stpps.corpus import generate, orientation_count
from stpps.instances import parse_instance
from stpps.reference import brute_orientations, orientation_profile


def hypergraph_corpus(seed: int, count: int, n_min: int = 2, n_max: int = 6, limit: int = 3000):
    """``(hypergraph, s, t, profiles)`` for corpus hypergraphs with at most ``limit`` orientations."""
    out = []
    for doc in generate(seed, count, "hypergraph", n_min, n_max):
        if orientation_count(doc) > limit:
            continue
        inst = parse_instance(doc)
        s, t = inst.require_terminals()
        g = inst.hypergraph
        out.append((g, s, t, [orientation_profile(o) for o in brute_orientations(g)]))
    return out


def brute_feasible(profiles, k: int, l: int) -> bool:
    return any(c >= k and st >= l for c, st in profiles)


def brute_max_ell(profiles, k: int):
    ok = [st for c, st in profiles if c >= k]
    return max(ok) if ok else None


def brute_max_k(profiles, l: int):
    ok = [c for c, st in profiles if st >= l]
    return max(ok) if ok else None
