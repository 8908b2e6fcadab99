"""Instance documents: JSON for set functions, JSON or text for hypergraphs."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from .core import (
    Flags,
    GroundSet,
    InvalidInput,
    SubmodularOracle,
    as_fraction,
    make_coverage,
    make_graph_cut,
    make_hypergraph_cut,
    make_table,
)
from .orientation.model import Hypergraph, Orientation

BUNDLED = ("crossing", "path", "cycle4", "k4", "coverage", "hyper")


@dataclass(frozen=True)
class Instance:
    ground: GroundSet
    oracle: Optional[SubmodularOracle]
    hypergraph: Optional[Hypergraph]
    digest: str

    def require_oracle(self) -> SubmodularOracle:
        if self.oracle is None:
            raise InvalidInput("the instance has no set function")
        return self.oracle

    def require_hypergraph(self) -> Hypergraph:
        if self.hypergraph is None:
            raise InvalidInput("the instance has no hypergraph and its function has no integer edge weights")
        return self.hypergraph

    def require_terminals(self) -> tuple[int, int]:
        if not self.ground.has_terminals:
            raise InvalidInput("the instance does not name terminals s and t")
        return self.ground.s_index, self.ground.t_index  # type: ignore[return-value]


def digest_of(data: Any) -> str:
    canon = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _labels(ground: GroundSet, xs: Any, what: str) -> list[int]:
    if not isinstance(xs, list):
        raise InvalidInput(f"{what} must be a list of element labels")
    return [ground.index(str(x)) for x in xs]


def _ground(data: dict) -> GroundSet:
    if "labels" in data:
        labels = [str(x) for x in data["labels"]]
    elif "n" in data:
        labels = [str(i) for i in range(int(data["n"]))]
    else:
        raise InvalidInput("an instance needs 'labels' or 'n'")
    if "n" in data and int(data["n"]) != len(labels):
        raise InvalidInput(f"n={data['n']} disagrees with {len(labels)} labels")
    s, t = data.get("s"), data.get("t")
    return GroundSet.from_labels(labels, None if s is None else str(s), None if t is None else str(t))


def _function(ground: GroundSet, spec: dict) -> tuple[SubmodularOracle, list[tuple[list[int], Fraction]]]:
    kind = spec.get("kind")
    edges: list[tuple[list[int], Fraction]] = []
    if kind == "graph_cut":
        triples = []
        for e in spec.get("edges", []):
            if not isinstance(e, list) or len(e) != 3:
                raise InvalidInput("graph_cut edges are [u, v, weight]")
            u, v = _labels(ground, e[:2], "edge")
            triples.append((u, v, e[2]))
            edges.append(([u, v], as_fraction(e[2])))
        return make_graph_cut(ground, triples), edges
    if kind == "hypergraph_cut":
        pairs = []
        for e in spec.get("edges", []):
            if not isinstance(e, list) or len(e) != 2:
                raise InvalidInput("hypergraph_cut edges are [[members...], weight]")
            ms = _labels(ground, e[0], "hyperedge")
            pairs.append((ms, e[1]))
            edges.append((ms, as_fraction(e[1])))
        return make_hypergraph_cut(ground, pairs), edges
    if kind == "coverage":
        covers = spec.get("covers")
        if not isinstance(covers, dict):
            raise InvalidInput("coverage needs a 'covers' map from element to items")
        rows = [covers.get(x, []) for x in ground.labels]
        unknown = set(covers) - set(ground.labels)
        if unknown:
            raise InvalidInput(f"covers names unknown elements {sorted(unknown)}")
        return make_coverage(ground, rows, spec.get("item_weights")), edges
    if kind == "table":
        flags = Flags(**{k: bool(v) for k, v in spec.get("flags", {}).items()})
        return make_table(ground, spec.get("values", []), flags), edges
    raise InvalidInput(f"unknown function kind {kind!r}")


def _hypergraph(ground: GroundSet, spec: dict) -> Hypergraph:
    raw = spec.get("edges", [])
    mult = spec.get("multiplicity")
    es = [_labels(ground, e, "hyperedge") for e in raw]
    if mult is not None and not all(isinstance(c, int) and not isinstance(c, bool) for c in mult):
        raise InvalidInput("multiplicities must be integers")
    return Hypergraph.build(ground, es, mult)


def _from_cut_edges(ground: GroundSet, edges: list[tuple[list[int], Fraction]]) -> Optional[Hypergraph]:
    kept = [(e, w) for e, w in edges if w != 0]
    if not kept or any(w.denominator != 1 or len(set(e)) < 2 for e, w in kept):
        return None
    return Hypergraph.build(ground, [e for e, _ in kept], [int(w) for _, w in kept])


def parse_instance(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise InvalidInput("an instance document must be a JSON object")
    try:
        ground = _ground(data)
        oracle, edges = (None, [])
        if "function" in data:
            if not isinstance(data["function"], dict):
                raise InvalidInput("'function' must be an object")
            oracle, edges = _function(ground, data["function"])
        if "hypergraph" in data:
            g = _hypergraph(ground, data["hypergraph"])
        else:
            g = _from_cut_edges(ground, edges)
    except (TypeError, ValueError, KeyError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed instance: {exc}") from None
    if oracle is None and g is None:
        raise InvalidInput("an instance needs a 'function' or a 'hypergraph'")
    return Instance(ground, oracle, g, digest_of(data))


def loads_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_instance(data)


def load_instance(path: str | Path) -> Instance:
    """Read a JSON instance, or a hypergraph in text form when the file is not JSON."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {p}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        return loads_instance(text)
    g = parse_hypergraph_text(text)
    return Instance(g.ground, None, g, digest_of({"text": text}))


def bundled(name: str) -> Instance:
    if name not in BUNDLED:
        raise InvalidInput(f"unknown bundled instance {name!r}; choose from {', '.join(BUNDLED)}")
    return loads_instance(resources.files("stpps").joinpath("data", f"{name}.json").read_text())


def bundled_document(name: str) -> dict:
    bundled(name)
    return json.loads(resources.files("stpps").joinpath("data", f"{name}.json").read_text())


# -- hypergraph text form ------------------------------------------------------


def parse_hypergraph_text(text: str, s: Optional[str] = None, t: Optional[str] = None) -> Hypergraph:
    """Header ``n m``, then one line ``mult v1 v2 ...`` per hyperedge.

    Vertices are the indices ``0..n-1``.  Blank lines and lines starting
    with ``#`` are skipped.
    """
    rows = [
        (no, line.split())
        for no, line in enumerate(text.splitlines(), 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise InvalidInput("line 1: missing header 'n m'")
    no, head = rows[0]
    if len(head) != 2:
        raise InvalidInput(f"line {no}: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise InvalidInput(f"line {no}: header must hold two integers") from None
    if len(rows) - 1 != m:
        raise InvalidInput(f"line {no}: header announces {m} hyperedges, found {len(rows) - 1}")
    ground = GroundSet.from_labels([str(i) for i in range(n)], s, t)
    edges, mult = [], []
    for no, toks in rows[1:]:
        try:
            vals = [int(x) for x in toks]
        except ValueError:
            raise InvalidInput(f"line {no}: expected integers") from None
        if len(vals) < 3:
            raise InvalidInput(f"line {no}: a hyperedge needs a multiplicity and two vertices")
        bad = [v for v in vals[1:] if not 0 <= v < n]
        if bad:
            raise InvalidInput(f"line {no}: vertex {bad[0]} outside 0..{n - 1}")
        mult.append(vals[0])
        edges.append(vals[1:])
    try:
        return Hypergraph.build(ground, edges, mult)
    except InvalidInput as exc:
        raise InvalidInput(f"hyperedge list: {exc}") from None


def format_hypergraph_text(g: Hypergraph) -> str:
    lines = [f"{g.n} {len(g.edges)}"]
    for e, c in zip(g.edges, g.multiplicity):
        lines.append(" ".join([str(c)] + [str(v) for v in range(g.n) if e >> v & 1]))
    return "\n".join(lines) + "\n"


def format_orientation_text(o: Orientation) -> str:
    """One line per hyperedge copy: its vertices, then ``head=v``."""
    g = o.base
    lines = [f"{g.n} {g.copies}"]
    for e, hs in zip(g.edges, o.heads):
        verts = " ".join(str(v) for v in range(g.n) if e >> v & 1)
        for h in hs:
            lines.append(f"{verts} head={h}")
    return "\n".join(lines) + "\n"


def hypergraph_to_json(g: Hypergraph) -> dict:
    return {
        "labels": list(g.ground.labels),
        "s": None if g.ground.s_index is None else g.ground.labels[g.ground.s_index],
        "t": None if g.ground.t_index is None else g.ground.labels[g.ground.t_index],
        "hypergraph": {
            "edges": [g.ground.names(e) for e in g.edges],
            "multiplicity": list(g.multiplicity),
        },
    }


def orientation_to_json(o: Orientation) -> dict:
    names = o.base.ground.labels
    return {
        "edges": [o.base.ground.names(e) for e in o.base.edges],
        "heads": [[names[h] for h in hs] for hs in o.heads],
    }


def orientation_from_json(data: Any, g: Hypergraph) -> Orientation:
    try:
        heads = [[g.ground.index(str(h)) for h in hs] for hs in data["heads"]]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed orientation document: {exc}") from None
    return Orientation(g, tuple(tuple(h) for h in heads))
