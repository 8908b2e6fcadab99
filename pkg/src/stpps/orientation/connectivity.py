"""(k, (s,t), ℓ)-hyperarc-connected orientations: decision, synthesis and min-max values."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Optional

from ..core import (
    GroundSet,
    Infeasible,
    InternalInconsistency,
    InvalidInput,
    Partition,
    SubmodularOracle,
    Value,
    make_function,
    make_indegree,
    members,
)
from ..pps import curve
from ..solver import min_partition, min_st_partition, min_st_partition_extremal
from . import flows
from .model import Hypergraph, Orientation, delta_partition


@dataclass(frozen=True)
class OrientationCertificate:
    """``feasible`` with an orientation, or not with a violating partition."""

    feasible: bool
    orientation: Optional[Orientation] = None
    witness: Optional[Partition] = None
    checked: tuple[str, ...] = ()
    indegrees: Optional[tuple[int, ...]] = None

    @property
    def verdict(self) -> str:
        return "feasible" if self.feasible else "infeasible"


@dataclass(frozen=True)
class Verification:
    ok: bool
    witness: Optional[int] = None
    rule: Optional[str] = None
    checked: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _check_params(g: Hypergraph, s: int, t: int, *levels: int) -> None:
    for v in (s, t):
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise InvalidInput(f"vertex {v!r} is outside the hypergraph")
    if s == t:
        raise InvalidInput("terminals must differ")
    for x in levels:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise InvalidInput("connectivity levels must be nonnegative integers")


def p_stkl(x: int, s: int, t: int, k: int, l: int, n: int) -> int:
    """Requirement of set ``x``: 0 on ∅ and V, max(k, ℓ) if t ∈ x ⊆ V−s, else k."""
    full = (1 << n) - 1
    if x == 0 or x == full:
        return 0
    if x >> t & 1 and not x >> s & 1:
        return max(k, l)
    return k


def requirement(p: Partition, s: int, t: int, k: int, l: int) -> int:
    return sum(p_stkl(b, s, t, k, l, p.n) for b in p)


def reference_orientation(g: Hypergraph) -> Orientation:
    """Every copy headed at its lowest vertex; any fixed orientation works."""
    return Orientation(g, tuple((min(members(e)),) * c for e, c in zip(g.edges, g.multiplicity)))


def indegree_oracle(o: Orientation) -> SubmodularOracle:
    arcs = [(list(members(e)), h, c) for e, h, c in o.arcs()]
    return make_indegree(o.base.ground, arcs)


def _cut_oracle(g: Hypergraph) -> SubmodularOracle:
    """``d^in`` of a fixed orientation: its partition value is the number of crossing copies."""
    return indegree_oracle(reference_orientation(g))


def _min_multiway(oracle: SubmodularOracle, lam: int, anchor: int) -> tuple[Value, Partition]:
    """Minimum of ``f(𝒫) − λ|𝒫|`` over partitions with at least two blocks.

    Among minimizers one with the fewest blocks is returned.
    """
    best: Optional[tuple[Value, Partition]] = None
    for u in range(oracle.n):
        if u == anchor:
            continue
        res = min_st_partition_extremal(oracle, lam, anchor, u, "min_card")
        if best is None or (res.value, len(res.minimizer)) < (best[0], len(best[1])):
            best = (res.value, res.minimizer)
    assert best is not None
    return best


def check_feasibility(g: Hypergraph, s: int, t: int, k: int, l: int) -> OrientationCertificate:
    """Decide whether a (k,(s,t),ℓ)-hyperarc-connected orientation exists.

    Both reductions are partition minimizations at λ = k of the in-degree of
    a fixed orientation, whose partition value counts crossing copies.
    """
    _check_params(g, s, t, k, l)
    d = _cut_oracle(g)
    top = max(k, l)
    checked = []
    val, p = _min_multiway(d, k, s)
    checked.append(f"min over partitions with >=2 blocks of crossing - k|P| = {val}")
    if val < 0:
        return OrientationCertificate(False, witness=p, checked=tuple(checked))
    res = min_st_partition_extremal(d, k, s, t, "min_card")
    gap = res.value + k - top
    checked.append(f"min over st-separating partitions of crossing - k(|P|-1) - max(k,l) = {gap}")
    if gap < 0:
        return OrientationCertificate(False, witness=res.minimizer, checked=tuple(checked))
    return OrientationCertificate(True, checked=tuple(checked))


def _without(g: Hypergraph, v: int, s: int, t: int, bonus: dict[int, int]) -> tuple[SubmodularOracle, dict[int, int]]:
    """In-degree oracle of the fixed orientation of ``G − v`` minus per-singleton bonuses."""
    keep = [u for u in range(g.n) if u != v]
    pos = {u: i for i, u in enumerate(keep)}
    ground = GroundSet(len(keep), tuple(g.ground.labels[u] for u in keep))
    arcs = []
    for e, c in zip(g.edges, g.multiplicity):
        if e >> v & 1:
            continue
        verts = [pos[u] for u in members(e)]
        arcs.append((verts, min(verts), c))
    base = make_indegree(ground, arcs)
    local_bonus = {1 << pos[u]: b for u, b in bonus.items() if u != v}

    def fn(mask: int) -> Fraction:
        return base(mask).rational() - local_bonus.get(mask, 0)

    return make_function(ground, fn, granularity=1), pos


def _max_indegree(g: Hypergraph, v: int, s: int, t: int, k: int, l: int, bonus: dict[int, int]) -> int:
    """Largest in-degree ``v`` can take given the already fixed vertices.

    This is ``|δ(v)| + min{δ(𝒫) − p(𝒫)}`` over partitions ``𝒫`` of ``V − v``,
    where fixed vertices require their fixed in-degree as singletons.
    """
    deg = g.degree(v)
    if g.n == 1:
        return deg
    f, pos = _without(g, v, s, t, bonus)
    extra = max(k, l) - k
    if v == s:
        y = min_partition(f, k).value.rational() - extra
    elif v == t:
        y = min_partition(f, k).value.rational()
    else:
        y = min(
            min_partition(f, k).value.rational(),
            min_st_partition(f, k, pos[s], pos[t]).value.rational() - extra,
        )
    return int(deg + y)


def orientation_indegrees(g: Hypergraph, s: int, t: int, k: int, l: int) -> list[int]:
    """An in-degree vector of some (k,(s,t),ℓ)-connected orientation.

    Vertices are fixed one at a time at their largest admissible in-degree;
    a fixed vertex then acts as a singleton whose requirement equals its
    in-degree.
    """
    x: list[int] = []
    bonus: dict[int, int] = {}
    for v in range(g.n):
        xv = _max_indegree(g, v, s, t, k, l, bonus)
        x.append(xv)
        bonus[v] = xv - p_stkl(1 << v, s, t, k, l, g.n)
    return x


def find_orientation(g: Hypergraph, s: int, t: int, k: int, l: int) -> OrientationCertificate:
    cert = check_feasibility(g, s, t, k, l)
    if not cert.feasible:
        return cert
    x = orientation_indegrees(g, s, t, k, l)
    try:
        o = realize_indegree(g, x)
    except (Infeasible, InvalidInput) as exc:
        raise InternalInconsistency(f"computed in-degrees {x} are not realizable: {exc}") from None
    ver = verify_orientation(o, s, t, k, l)
    if not ver.ok:
        raise InternalInconsistency(f"synthesized orientation fails {ver.rule} on {ver.witness:#b}")
    return OrientationCertificate(True, o, None, cert.checked + tuple(ver.checked), tuple(x))


def realize_indegree(g: Hypergraph, x: list[int]) -> Orientation:
    """Orientation in which vertex ``v`` is the head of exactly ``x[v]`` copies."""
    x = list(x)
    if len(x) != g.n:
        raise InvalidInput(f"need {g.n} in-degrees, got {len(x)}")
    if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in x):
        raise InvalidInput("in-degrees must be nonnegative integers")
    if sum(x) != g.copies:
        raise InvalidInput(f"in-degrees sum to {sum(x)} but there are {g.copies} hyperedge copies")
    heads, deficient = flows.assign_heads(g, x)
    if heads is None:
        inside = g.induced_count(deficient)
        have = sum(x[v] for v in members(deficient))
        raise Infeasible(f"set {deficient:#b} spans {inside} copies but may receive only {have}", deficient)
    return Orientation(g, tuple(tuple(h) for h in heads))


def _indegree_check(o: Orientation, u: int, need: int) -> None:
    if o.indegree(u) >= need:
        raise InternalInconsistency("min-cut witness does not violate its threshold")


def verify_orientation(o: Orientation, s: int, t: int, k: int, l: int) -> Verification:
    """Check ``d^in(U) ≥ k`` for ∅≠U⊊V and ``d^in(U) ≥ ℓ`` for t∈U⊆V−s by max flows.

    Strong k-connectivity is tested through the root ``s`` in both
    directions.  A failing check returns the violating set from the cut.
    """
    g = o.base
    _check_params(g, s, t, k, l)
    net = flows.directed_network(o)
    checked = []
    if k > 0:
        for v in range(g.n):
            if v == s:
                continue
            for a, b in ((s, v), (v, s)):
                val, side = flows.min_cut_sink_side(net, a, b, g.n)
                if val < k:
                    _indegree_check(o, side, k)
                    return Verification(False, side, "k-connectivity", checked)
        checked.append(f"root flows >= {k}")
    if l > 0:
        val, side = flows.min_cut_sink_side(net, s, t, g.n)
        if val < l:
            _indegree_check(o, side, l)
            return Verification(False, side, "st-connectivity", checked)
        checked.append(f"s->t flow >= {l}")
    return Verification(True, None, None, checked)


def st_path_packing(o: Orientation, s: int, t: int) -> tuple[int, list[list[tuple[int, int, int]]]]:
    paths = flows.decompose_paths(o, s, t)
    return len(paths), paths


def _precondition_k(g: Hypergraph, s: int, k: int, d: SubmodularOracle) -> None:
    val, p = _min_multiway(d, k, s)
    if val < 0:
        raise Infeasible(f"no {k}-hyperarc-connected orientation exists", p)


def max_ell_given_k(g: Hypergraph, s: int, t: int, k: int) -> tuple[int, Partition]:
    """Largest ℓ admitting a (k,(s,t),ℓ)-connected orientation, with a tight partition."""
    _check_params(g, s, t, k)
    d = _cut_oracle(g)
    _precondition_k(g, s, k, d)
    res = min_st_partition(d, k, s, t)
    return int(res.value.rational()) + k, res.minimizer


def max_k_given_ell(g: Hypergraph, s: int, t: int, l: int) -> tuple[int, dict[str, object]]:
    """Largest k admitting a (k,(s,t),ℓ)-connected orientation.

    ``α`` bounds k through all partitions with at least two blocks and ``β``
    through {s,t}-separating ones; both are floors of roots read off exact
    envelopes segment by segment.
    """
    _check_params(g, s, t, l)
    if g.n < 2:
        raise InvalidInput("need at least two vertices")
    have = flows.undirected_connectivity(g, s, t)
    if have < l:
        raise Infeasible(f"only {have} hyperedge-disjoint s-t paths exist, {l} requested")
    d = _cut_oracle(g)
    # a line value − size·λ vanishes at value/size; the envelope root is the least of them
    alpha_root, alpha_p = None, None
    for u in range(g.n):
        if u == s:
            continue
        for seg in curve(d, "st", s, u).segments:
            root = seg.value / len(seg.partition)
            if alpha_root is None or root < alpha_root:
                alpha_root, alpha_p = root, seg.partition
    beta_root, beta_p = None, None
    for seg in curve(d, "st", s, t).segments:
        root = (seg.value - l) / (len(seg.partition) - 1)
        if beta_root is None or root < beta_root:
            beta_root, beta_p = root, seg.partition
    assert alpha_root is not None and beta_root is not None
    alpha, beta = floor(alpha_root), floor(beta_root)
    return min(alpha, beta), {
        "alpha": alpha,
        "beta": beta,
        "alpha_partition": alpha_p,
        "beta_partition": beta_p,
    }


def reorient_k1_k2(g: Hypergraph, s: int, t: int, k: int, l: int, k1: int, k2: int) -> Orientation:
    """Orientation that is k-connected with k1 s→t and k2 t→s hyperedge-disjoint paths.

    Starting from a (k,(s,t),ℓ)-connected orientation, ``k2 − k`` of its
    s→t paths are reversed: the first hyperarc gets head ``s`` and every
    later one takes the head of its predecessor.
    """
    _check_params(g, s, t, k, l, k1, k2)
    if k1 < k or k2 < k or k1 + k2 != l + k:
        raise InvalidInput("need k1, k2 >= k and k1 + k2 = l + k")
    cert = find_orientation(g, s, t, k, l)
    if not cert.feasible:
        raise Infeasible("no (k,(s,t),l)-connected orientation exists", cert.witness)
    o = cert.orientation
    assert o is not None
    if k2 > k:
        count, paths = st_path_packing(o, s, t)
        if count < k2 - k:
            raise InternalInconsistency("fewer s-t paths than the verified connectivity")
        counts = [{h: hs.count(h) for h in set(hs)} for hs in o.heads]
        for path in paths[: k2 - k]:
            for tail, edge, head in path:
                counts[edge][head] -= 1
        for path in paths[: k2 - k]:
            for tail, edge, head in path:
                counts[edge][tail] = counts[edge].get(tail, 0) + 1
        o = Orientation(g, tuple(tuple(h for h in sorted(c) for _ in range(c[h])) for c in counts))
    ver = verify_reorientation(o, s, t, k, k1, k2)
    if not ver.ok:
        raise InternalInconsistency(f"reoriented hypergraph fails {ver.rule}")
    return o


def verify_reorientation(o: Orientation, s: int, t: int, k: int, k1: int, k2: int) -> Verification:
    """k-connectivity, ``k1`` s→t paths and ``k2`` t→s paths."""
    base = verify_orientation(o, s, t, k, k1)
    if not base.ok:
        return base
    net = flows.directed_network(o)
    val, side = flows.min_cut_sink_side(net, t, s, o.base.n)
    if val < k2:
        _indegree_check(o, side, k2)
        return Verification(False, side, "ts-connectivity", base.checked)
    return Verification(True, None, None, base.checked + [f"t->s flow >= {k2}"])


def partition_deficit(g: Hypergraph, p: Partition, s: int, t: int, k: int, l: int) -> int:
    """``|δ(𝒫)| − Σ p(X)``; negative exactly when ``p`` violates the partition condition."""
    return delta_partition(g, p) - requirement(p, s, t, k, l)
