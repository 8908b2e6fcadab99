"""Breakpoints of the partition envelopes and principal partition sequences."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    InternalInconsistency,
    InvalidInput,
    Partition,
    SubmodularOracle,
    Value,
    intersecting_pairs,
    is_refinement,
    is_refinement_up_to_one_set,
    is_st_refinement_along,
    perturb_strict,
    st_refinement_pair,
)
from .solver import (
    min_partition,
    min_partition_extremal,
    min_st_partition,
    min_st_partition_extremal,
    sfm_constrained,
)
from .types import PartitionSequence, PiecewiseLinearCurve, Segment, Step


def _terminals(mode: str, s: Optional[int], t: Optional[int]) -> Optional[tuple[int, int]]:
    if mode == "all":
        return None
    if mode != "st":
        raise InvalidInput(f"unknown mode {mode!r}")
    if s is None or t is None:
        raise InvalidInput("mode st needs both terminals")
    if s == t:
        raise InvalidInput("terminals must differ")
    return (s, t)


def _g(oracle: SubmodularOracle, lam: Fraction, st: Optional[tuple[int, int]]) -> tuple[Fraction, Partition]:
    res = min_partition(oracle, lam) if st is None else min_st_partition(oracle, lam, *st)
    return res.value.rational(), res.minimizer


def _f(oracle: SubmodularOracle, p: Partition) -> Fraction:
    return oracle.evaluate_partition(p).rational()


def _leftmost(oracle: SubmodularOracle, st: Optional[tuple[int, int]]) -> Partition:
    """Attainer left of every breakpoint: ``{V}`` or a minimum 2-partition."""
    if st is None:
        return Partition.whole(oracle.n)
    full = oracle.ground.full
    spread = sum((abs(oracle(1 << v).base) for v in range(oracle.n)), Fraction(0))
    lam = -(1 + spread + abs(oracle(full).base) + abs(oracle(0).base) * oracle.n)
    while True:
        res = min_st_partition_extremal(oracle, lam, st[0], st[1], "min_card")
        if len(res.minimizer) == 2:
            return res.minimizer
        lam *= 2


def curve(
    oracle: SubmodularOracle, mode: str = "all", s: Optional[int] = None, t: Optional[int] = None
) -> PiecewiseLinearCurve:
    """Exact lower envelope of ``λ ↦ f(𝒫) − λ|𝒫|``.

    Starting from the two extreme lines, the intersection of two envelope
    lines is tested with one minimization; a strictly lower value exposes a
    line of intermediate slope and the interval is split.
    """
    st = _terminals(mode, s, t)
    if oracle.tiered:
        raise InvalidInput("curves are computed on untiered oracles")
    left = _leftmost(oracle, st)
    right = Partition.singletons(oracle.n)
    if left == right:
        return PiecewiseLinearCurve(mode, (), (Segment(left, _f(oracle, left)),))

    breakpoints: list[Fraction] = []
    segments: list[Segment] = [Segment(left, _f(oracle, left))]

    def explore(p: Segment, q: Segment) -> None:
        lam = (q.value - p.value) / (len(q.partition) - len(p.partition))
        val, r = _g(oracle, lam, st)
        if val == p.at(lam):
            breakpoints.append(lam)
            segments.append(q)
            return
        mid = Segment(r, _f(oracle, r))
        if not len(p.partition) < len(r) < len(q.partition):
            raise InternalInconsistency("envelope search produced an out-of-range slope")
        explore(p, mid)
        explore(mid, q)

    explore(segments[0], Segment(right, _f(oracle, right)))
    return PiecewiseLinearCurve(mode, tuple(breakpoints), tuple(segments))


# -- chain construction at one breakpoint --------------------------------------


def _inside(block: int, region: int) -> bool:
    return block & ~region == 0


def refinement_chain(
    p: Partition,
    q: Partition,
    lam: object,
    oracle: SubmodularOracle,
    s: Optional[int] = None,
    t: Optional[int] = None,
) -> list[Partition]:
    """Chain from the fewest-block attainer ``p`` to a most-block attainer.

    Each step is a refinement up to one set, except possibly the first which
    may be an {s,t}-refinement up to two sets.  The last member equals ``q``
    or another attainer with ``|q|`` blocks.
    """
    st = None if s is None and t is None else _terminals("st", s, t)
    lam = Fraction(lam)
    g, _ = _g(oracle, lam, st)
    for name, part in (("p", p), ("q", q)):
        if _f(oracle, part) - lam * len(part) != g:
            raise InvalidInput(f"{name} does not attain the envelope at λ={lam}")
        if st is not None and not part.is_st_separating(*st):
            raise InvalidInput(f"{name} is not {{s,t}}-separating")
    if p == q:
        return [p]

    pairs = [(x, y) for x in p for y in q if (x & y) and (x & ~y) and (y & ~x)]
    if not pairs:
        if not is_refinement(q, p):
            raise InternalInconsistency("attainers are neither nested nor crossing once")
        u = 0
    elif len(pairs) == 1 and st is not None and is_st_refinement_along(q, p, *pairs[0], *st):
        u = pairs[0][0] | pairs[0][1]
    else:
        raise InternalInconsistency(
            "attainers cross in more than one way; the oracle is not strictly submodular"
        )

    rest = oracle.ground.full & ~u
    p_out = [a for a in p if _inside(a, rest)]
    q_out = [b for b in q if _inside(b, rest)]
    split = [a for a in p_out if sum(1 for b in q_out if _inside(b, a)) >= 2]

    if len(p_out) == len(q_out):
        chain = [p, q]
    else:
        q_u = [b for b in q if _inside(b, u)] if u else []
        p_u = [a for a in p if _inside(a, u)] if u else []

        def r_i(i: int) -> Partition:
            done = 0
            for a in split[:i]:
                done |= a
            blocks = q_u + [b for b in q_out if _inside(b, done)]
            blocks += [a for a in p_out if _inside(a, rest & ~done)]
            return Partition(p.n, tuple(blocks))

        def s_i(i: int) -> Partition:
            done = 0
            for a in split[:i]:
                done |= a
            blocks = p_u + [a for a in p_out if _inside(a, done)]
            blocks += [b for b in q_out if _inside(b, rest & ~done)]
            return Partition(p.n, tuple(blocks))

        r = len(split)
        if u == 0:
            chain = [r_i(i) for i in range(r + 1)]
        elif len(p_u) < len(q_u):
            chain = [p] + [r_i(i) for i in range(r + 1)]
        else:
            chain = [s_i(i) for i in range(r, -1, -1)]

    for member in chain:
        if _f(oracle, member) - lam * len(member) != g:
            raise InternalInconsistency("chain member leaves the envelope")
    if len(chain[-1]) != len(q):
        raise InternalInconsistency("chain does not end at a most-block attainer")
    return chain


def _step(a: Partition, b: Partition, st: Optional[tuple[int, int]]) -> Optional[Step]:
    if len(b) <= len(a):
        return None
    x = is_refinement_up_to_one_set(b, a)
    if x is not None:
        return Step("refinement", x)
    if st is not None:
        pair = st_refinement_pair(b, a, *st, up_to_two_sets=True)
        if pair is not None:
            return Step("st_refinement", *pair)
    return None


def _needs_perturbation(oracle: SubmodularOracle) -> bool:
    return not oracle.flags.strict and oracle.granularity is not None and oracle.n >= 3


def _sequence(oracle: SubmodularOracle, st: Optional[tuple[int, int]], strict: str) -> PartitionSequence:
    if oracle.tiered:
        raise InvalidInput("sequences are computed on untiered oracles")
    if strict not in ("auto", "never"):
        raise InvalidInput("strict must be 'auto' or 'never'")
    work = perturb_strict(oracle) if strict == "auto" and _needs_perturbation(oracle) else oracle
    c = curve(work, "all" if st is None else "st", *(st or (None, None)))
    current = c.segments[0].partition
    parts = [current]
    for i, lam in enumerate(c.breakpoints):
        chain = refinement_chain(current, c.segments[i + 1].partition, lam, work, *(st or (None, None)))
        parts.extend(chain[1:])
        current = chain[-1]
    # critical values are slopes between consecutive members under the
    # caller's oracle; with no perturbation they coincide with the breakpoints
    crit = []
    steps = []
    for a, b in zip(parts, parts[1:]):
        crit.append((_f(oracle, b) - _f(oracle, a)) / (len(b) - len(a)))
        step = _step(a, b, st)
        if step is None:
            raise InternalInconsistency(f"step {a} -> {b} is not a valid refinement")
        steps.append(step)
    kind = "plain" if st is None else "st"
    s, t = st if st is not None else (None, None)
    return PartitionSequence(kind, tuple(parts), tuple(crit), tuple(steps), s, t)


def compute_pps(oracle: SubmodularOracle, strict: str = "auto") -> PartitionSequence:
    """Principal partition sequence from ``{V}`` down to singletons.

    Unless the oracle is flagged strict, a small strictly submodular
    perturbation picks the attainers; the reported critical values are those
    of the unperturbed function.
    """
    return _sequence(oracle, None, strict)


def compute_st_pps(oracle: SubmodularOracle, s: int, t: int, strict: str = "auto") -> PartitionSequence:
    """{s,t}-separating principal partition sequence."""
    st = _terminals("st", s, t)
    return _sequence(oracle, st, strict)


# -- validation ----------------------------------------------------------------


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, detail: str) -> None:
        self.violations.append(f"{rule}: {detail}")


def validate_sequence(seq: PartitionSequence, oracle: SubmodularOracle) -> ValidationReport:
    """Check the four defining properties literally and report every violation."""
    rep = ValidationReport()
    st = (seq.s, seq.t) if seq.kind == "st" else None
    if seq.kind not in ("plain", "st"):
        rep.add("kind", f"unknown sequence kind {seq.kind!r}")
        return rep
    if st is not None and (st[0] is None or st[1] is None):
        rep.add("kind", "an st sequence needs terminals")
        return rep
    parts = list(seq.partitions)
    lams = [Fraction(x) for x in seq.critical_values]
    n = oracle.n
    if not parts:
        rep.add("(3)", "empty sequence")
        return rep
    if len(lams) != len(parts) - 1:
        rep.add("(1)", "need exactly one critical value per step")
        return rep
    if any(p.n != n for p in parts):
        rep.add("(3)", "partition on the wrong ground set")
        return rep
    if st is not None:
        for j, p in enumerate(parts):
            if not p.is_st_separating(*st):
                rep.add("(3)", f"member {j + 1} is not {{s,t}}-separating")
        if rep.violations:
            return rep

    # (1) monotone critical values
    for j in range(len(lams) - 1):
        if lams[j] > lams[j + 1]:
            rep.add("(1)", f"critical values {lams[j]} > {lams[j + 1]}")

    # (3) boundary members
    if parts[-1] != Partition.singletons(n):
        rep.add("(3)", "last member is not the singleton partition")
    if st is None:
        if parts[0] != Partition.whole(n):
            rep.add("(3)", "first member is not {V}")
    else:
        first = parts[0]
        if len(first) != 2:
            rep.add("(3)", "first member does not have two blocks")
        else:
            s, t = st
            full = oracle.ground.full

            def two(a: int) -> Value:
                return oracle(a) + oracle(full & ~a)

            best = sfm_constrained(_lift(oracle, two), 1 << s, 1 << t).value
            if oracle.evaluate_partition(first) > best:
                rep.add("(3)", "first member is not a minimum {s,t}-separating 2-partition")

    # (4) step predicates and strict size increase
    for j, (a, b) in enumerate(zip(parts, parts[1:])):
        if len(b) <= len(a):
            rep.add("(4)", f"sizes do not increase at step {j + 1}")
            continue
        if a == b or _step(a, b, st) is None:
            rep.add("(4)", f"step {j + 1} is not an allowed refinement")

    # (2) curve coverage: each member's line equals the envelope on its interval
    probes: list[tuple[int, Fraction]] = []
    if lams:
        probes.append((0, lams[0] - 1))
        probes.append((len(parts) - 1, lams[-1] + 1))
        for j in range(len(parts)):
            lo = lams[j - 1] if j > 0 else None
            hi = lams[j] if j < len(lams) else None
            for lam in (lo, hi):
                if lam is not None:
                    probes.append((j, lam))
            if lo is not None and hi is not None:
                probes.append((j, (lo + hi) / 2))
    else:
        probes = [(0, Fraction(-1)), (0, Fraction(0)), (0, Fraction(1))]
    env: dict[Fraction, Fraction] = {}
    for j, lam in probes:
        if lam not in env:
            env[lam] = _g(oracle, lam, st)[0]
        line = _f(oracle, parts[j]) - lam * len(parts[j])
        if line != env[lam]:
            rep.add("(2)", f"member {j + 1} misses the envelope at λ={lam}")
    if not lams:
        # a lone member must be the only possible line
        if st is None and n != 1 or st is not None and n != 2:
            rep.add("(2)", "a single member cannot cover the envelope")
    return rep


def _lift(oracle: SubmodularOracle, fn) -> SubmodularOracle:
    return SubmodularOracle(oracle.ground, fn, kind="derived", tiered=oracle.tiered)


# -- export ----------------------------------------------------------------------


def sequence_to_json(seq: PartitionSequence, labels: Optional[list[str]] = None) -> dict:
    def name(mask: Optional[int]) -> Optional[list[str]]:
        if mask is None:
            return None
        lab = labels or [str(i) for i in range(seq.partitions[0].n)]
        return [lab[i] for i in range(len(lab)) if mask >> i & 1]

    return {
        "kind": seq.kind,
        "s": None if seq.s is None else (labels[seq.s] if labels else seq.s),
        "t": None if seq.t is None else (labels[seq.t] if labels else seq.t),
        "partitions": [p.to_text(labels) for p in seq.partitions],
        "critical_values": [str(x) for x in seq.critical_values],
        "steps": [{"kind": st.kind, "x": name(st.x), "y": name(st.y)} for st in seq.steps],
    }


def sequence_from_json(data: dict, ground) -> PartitionSequence:
    """Inverse of ``sequence_to_json``; step records are recomputed by validation."""
    try:
        kind = data["kind"]
        parts = tuple(Partition.from_text(x, ground) for x in data["partitions"])
        crit = tuple(Fraction(str(x)) for x in data["critical_values"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"malformed sequence document: {exc}") from None
    s = data.get("s")
    t = data.get("t")
    s_i = ground.index(s) if isinstance(s, str) else s
    t_i = ground.index(t) if isinstance(t, str) else t
    steps = []
    for a, b in zip(parts, parts[1:]):
        st = _step(a, b, (s_i, t_i) if kind == "st" else None) if a != b else None
        steps.append(st or Step("invalid", 0))
    return PartitionSequence(kind, parts, crit, tuple(steps), s_i, t_i)


def curve_to_csv(c: PiecewiseLinearCurve, labels: Optional[list[str]] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda_breakpoint", "value", "left_slope", "right_slope", "left_partition", "right_partition"])
    for i, (lam, val, ls, rs) in enumerate(c.rows()):
        w.writerow([lam, val, ls, rs, c.segments[i].partition.to_text(labels), c.segments[i + 1].partition.to_text(labels)])
    return buf.getvalue()


def curve_to_json(c: PiecewiseLinearCurve, labels: Optional[list[str]] = None) -> dict:
    return {
        "mode": c.mode,
        "breakpoints": [str(x) for x in c.breakpoints],
        "segments": [
            {"partition": seg.partition.to_text(labels), "value": str(seg.value), "slope": seg.slope}
            for seg in c.segments
        ],
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
