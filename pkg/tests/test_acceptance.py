"""The eight acceptance criteria, one test each, each printing a PASS/FAIL line."""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from functools import lru_cache

from brute import brute_feasible, brute_max_ell, brute_max_k, hypergraph_corpus
from conftest import ACCEPTANCE_LINES

from stpps.core import (
    GroundSet,
    Infeasible,
    check_submodular,
    intersecting_pairs,
    is_st_uncrossable,
    perturb_strict,
)
from stpps.corpus import generate
from stpps.instances import bundled, parse_instance
from stpps.kpartition import approx_st_k_partition, exact_st_k_partition
from stpps.orientation import (
    Hypergraph,
    Orientation,
    check_feasibility,
    find_orientation,
    indegree_oracle,
    max_ell_given_k,
    max_k_given_ell,
    orientation_indegrees,
    p_stkl,
    partition_deficit,
    reorient_k1_k2,
    verify_orientation,
    verify_reorientation,
)
from stpps.pps import compute_pps, compute_st_pps, curve, validate_sequence
from stpps.reference import enumerate_partitions
from stpps.solver import min_partition, min_st_partition

F = Fraction
SET_KINDS = ("graph_cut", "hypergraph_cut", "coverage")


def _record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _oracles(seed: int, count: int, kinds=SET_KINDS, n_min: int = 3, n_max: int = 7):
    out = []
    for i, kind in enumerate(kinds):
        out += [parse_instance(d).oracle for d in generate(seed + i, count, kind, n_min, n_max)]
    return out


@lru_cache(maxsize=1)
def _hypergraphs():
    return hypergraph_corpus(301, 150, 2, 6, 3000)


def test_criterion_1_crossing_regression():
    start = time.perf_counter()
    f = bundled("crossing").oracle
    labels = list(f.ground.labels)
    c = curve(f, "st", f.ground.s_index, f.ground.t_index)
    got = [p.to_text(labels) for p in c.attainers]
    want = ["s,a,b|c,d,e,t", "s|a|b,c,d,e,t", "s,a,b,c|d|e|t", "s|a|b,c|d|e|t", "s|a|b|c|d|e|t"]
    seconds = time.perf_counter() - start
    ok = got == want and len(c.breakpoints) == 4 and seconds < 5
    _record(1, ok, f"attainers {'match' if got == want else got}, {len(c.breakpoints)} breakpoints, {seconds:.2f}s")
    assert ok


def _envelope(f, st):
    """Per block count, the least partition value found by enumeration."""
    best: dict[int, Fraction] = {}
    for p in enumerate_partitions(f.n, st=st):
        v = f.evaluate_partition(p).rational()
        c = len(p)
        if c not in best or v < best[c]:
            best[c] = v
    return best


def test_criterion_2_oracle_equivalence():
    start = time.perf_counter()
    rng = random.Random(2024)
    oracles = _oracles(200, 70)
    checks = mismatches = 0
    for f in oracles:
        s, t = f.ground.s_index, f.ground.t_index
        plain, sep = _envelope(f, None), _envelope(f, (s, t))
        for _ in range(20):
            lam = F(rng.randint(-10, 60), rng.randint(1, 6))
            want_plain = min(v - lam * c for c, v in plain.items())
            want_sep = min(v - lam * c for c, v in sep.items())
            checks += 2
            mismatches += min_partition(f, lam).value != want_plain
            mismatches += min_st_partition(f, lam, s, t).value != want_sep
    seconds = time.perf_counter() - start
    ok = len(oracles) >= 200 and mismatches == 0 and seconds < 120
    _record(2, ok, f"{len(oracles)} instances, {checks} minimizations, {mismatches} mismatches, {seconds:.1f}s")
    assert ok


def test_criterion_3_sequence_validity():
    oracles = _oracles(300, 40)
    sequences = violations = over_bound = 0
    for f in oracles:
        s, t = f.ground.s_index, f.ground.t_index
        for seq in (compute_pps(f), compute_st_pps(f, s, t)):
            sequences += 1
            violations += len(validate_sequence(seq, f).violations)
        # plain sizes range over 1..n, separating ones over 2..n
        over_bound += len(curve(f, "all").breakpoints) > f.n - 1
        over_bound += len(curve(f, "st", s, t).breakpoints) > f.n - 2
    ok = violations == 0 and over_bound == 0
    _record(3, ok, f"{sequences} sequences, {violations} violations, {over_bound} curves over their breakpoint bound (n-1 plain, n-2 separating)")
    assert ok


def _worst_ratio(oracles, bound):
    worst, runs, failures = F(0), 0, 0
    for f in oracles:
        s, t = f.ground.s_index, f.ground.t_index
        for k in range(2, f.n + 1):
            alg = approx_st_k_partition(f, s, t, k)
            opt = exact_st_k_partition(f, s, t, k).value.rational()
            val = alg.value.rational()
            runs += 1
            feasible = len(alg.partition) == k and alg.partition.is_st_separating(s, t)
            if not feasible or val > bound(f.n) * opt:
                failures += 1
            if opt > 0:
                worst = max(worst, val / opt / bound(f.n))
    return runs, failures, worst


def test_criterion_4_approximation_ratios():
    start = time.perf_counter()
    posi = _oracles(400, 55, ("graph_cut", "hypergraph_cut"), 3, 8)
    mono = _oracles(410, 110, ("coverage",), 3, 8)
    assert all(f.flags.posimodular for f in posi) and all(f.flags.monotone for f in mono)
    p_runs, p_fail, p_worst = _worst_ratio(posi, lambda n: 2 * (1 - F(1, n)))
    m_runs, m_fail, m_worst = _worst_ratio(mono, lambda n: F(4, 3) * (1 - F(1, 3 * n - 2)))
    seconds = time.perf_counter() - start
    ok = len(posi) >= 100 and len(mono) >= 100 and p_fail == m_fail == 0 and seconds < 600
    _record(
        4,
        ok,
        f"posimodular {len(posi)} instances/{p_runs} runs, worst ratio/bound {float(p_worst):.3f}; "
        f"monotone {len(mono)} instances/{m_runs} runs, worst ratio/bound {float(m_worst):.3f}; {seconds:.1f}s",
    )
    assert ok


def test_criterion_5_orientation_soundness_and_completeness():
    corpus = _hypergraphs()
    decided = disagreements = bad_orientations = bad_witnesses = 0
    for g, s, t, profiles in corpus:
        for k, l in itertools.product(range(3), range(3)):
            decided += 1
            verdict = check_feasibility(g, s, t, k, l)
            if verdict.feasible != brute_feasible(profiles, k, l):
                disagreements += 1
                continue
            if verdict.feasible:
                cert = find_orientation(g, s, t, k, l)
                o = cert.orientation
                heads_ok = all(h in [v for v in range(g.n) if e >> v & 1] for e, hs in zip(g.edges, o.heads) for h in hs)
                if not (heads_ok and sum(o.indegree_vector()) == g.copies and verify_orientation(o, s, t, k, l)):
                    bad_orientations += 1
            elif partition_deficit(g, verdict.witness, s, t, k, l) >= 0:
                bad_witnesses += 1
    ok = len(corpus) >= 100 and disagreements == bad_orientations == bad_witnesses == 0
    _record(
        5,
        ok,
        f"{len(corpus)} hypergraphs, {decided} decisions, {disagreements} disagreements, "
        f"{bad_orientations} bad orientations, {bad_witnesses} bad witnesses",
    )
    assert ok


def test_criterion_6_min_max_equalities():
    corpus = _hypergraphs()
    compared = wrong = 0
    for g, s, t, profiles in corpus:
        for k in range(3):
            want = brute_max_ell(profiles, k)
            try:
                got = max_ell_given_k(g, s, t, k)[0]
            except Infeasible:
                got = None
            compared += 1
            wrong += got != want
        for l in range(3):
            want = brute_max_k(profiles, l)
            try:
                got = max_k_given_ell(g, s, t, l)[0]
            except Infeasible:
                got = None
            compared += 1
            wrong += got != want
    ok = len(corpus) >= 100 and wrong == 0
    _record(6, ok, f"{len(corpus)} hypergraphs, {compared} optima compared, {wrong} differ")
    assert ok


def test_criterion_7_reorientation():
    corpus = _hypergraphs()
    runs = failures = 0
    for g, s, t, profiles in corpus:
        for k, l in itertools.product(range(3), range(3)):
            if not brute_feasible(profiles, k, l):
                continue
            for k1 in range(k, l + 1):
                k2 = l + k - k1
                runs += 1
                o = reorient_k1_k2(g, s, t, k, l, k1, k2)
                failures += not verify_reorientation(o, s, t, k, k1, k2)
    ok = runs > 0 and failures == 0
    _record(7, ok, f"{len(corpus)} hypergraphs, {runs} reorientations, {failures} fail the cut checks")
    assert ok


def _strictness_holds() -> bool:
    for f in _oracles(500, 4, SET_KINDS, 3, 8):
        h = perturb_strict(f)
        if not check_submodular(h, strict=True)[0]:
            return False
    return True


def _indegree_submodular() -> bool:
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(2, 8)
        edges = [rng.sample(range(n), rng.randint(2, min(3, n))) for _ in range(rng.randint(1, 8))]
        mult = [rng.randint(1, 2) for _ in edges]
        g = Hypergraph.build(GroundSet.indexed(n), edges, mult)
        heads = tuple(tuple(rng.choice(e) for _ in range(c)) for e, c in zip(edges, mult))
        if not check_submodular(indegree_oracle(Orientation(g, heads)))[0]:
            return False
    return True


def _curves_concave() -> bool:
    for f in _oracles(510, 15, SET_KINDS, 3, 7):
        s, t = f.ground.s_index, f.ground.t_index
        for c in (curve(f, "all"), curve(f, "st", s, t)):
            slopes = [seg.slope for seg in c.segments]
            if slopes != sorted(slopes, reverse=True) or len(set(slopes)) != len(slopes):
                return False
            if any(a >= b for a, b in zip(c.breakpoints, c.breakpoints[1:])):
                return False
    return True


def _no_uncrossable_attainer_pairs() -> bool:
    for f in _oracles(520, 6, SET_KINDS, 3, 6):
        s, t = f.ground.s_index, f.ground.t_index
        h = perturb_strict(f)
        parts = list(enumerate_partitions(f.n, st=(s, t)))
        for lam in curve(h, "st", s, t).breakpoints:
            vals = {p: h.evaluate_partition(p).rational() - lam * len(p) for p in parts}
            best = min(vals.values())
            tied = [p for p, v in vals.items() if v == best]
            for p, q in itertools.combinations(tied, 2):
                family = sorted(set(p.blocks) | set(q.blocks))
                if any(is_st_uncrossable(x, y, s, t) for x, y in intersecting_pairs(family)):
                    return False
    return True


def _indegrees_dominate_requirement() -> bool:
    for g, s, t, profiles in _hypergraphs()[:60]:
        for k, l in itertools.product(range(3), range(3)):
            if not brute_feasible(profiles, k, l):
                continue
            x = orientation_indegrees(g, s, t, k, l)
            if min(x) < 0 or sum(x) != g.copies:
                return False
            for y in range(1, 1 << g.n):
                inside = sum(x[v] for v in range(g.n) if y >> v & 1)
                if inside < g.induced_count(y) + p_stkl(y, s, t, k, l, g.n):
                    return False
    return True


def test_criterion_8_property_suites():
    results = {
        "strictness": _strictness_holds(),
        "d_in submodular": _indegree_submodular(),
        "curve concavity": _curves_concave(),
        "no uncrossable attainer pair": _no_uncrossable_attainer_pairs(),
        "x(Y) >= i(Y) + p(Y)": _indegrees_dominate_requirement(),
    }
    ok = all(results.values())
    failed = [name for name, good in results.items() if not good]
    _record(8, ok, f"{len(results)} property suites, failing: {', '.join(failed) or 'none'}")
    assert ok
