"""Seeded random instances for tests and the ``corpus`` subcommand."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import GroundSet, InvalidInput

KINDS = ("graph_cut", "hypergraph_cut", "coverage", "hypergraph")


def _labels(n: int) -> list[str]:
    inner = [f"v{i}" for i in range(1, n - 1)]
    return ["s"] + inner + ["t"]


def _weight(rng: random.Random) -> str:
    return str(Fraction(rng.randint(1, 6), rng.choice((1, 1, 2, 3))))


def random_instance(rng: random.Random, kind: str, n: int) -> dict:
    """A JSON instance document with terminals ``s`` (first) and ``t`` (last)."""
    if n < 2:
        raise InvalidInput("random instances need at least two elements")
    labels = _labels(n)
    doc: dict = {"n": n, "labels": labels, "s": "s", "t": "t"}
    if kind == "graph_cut":
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.55:
                    edges.append([labels[i], labels[j], _weight(rng)])
        doc["function"] = {"kind": kind, "edges": edges}
    elif kind == "hypergraph_cut":
        edges = []
        for _ in range(rng.randint(2, n + 2)):
            size = rng.randint(2, min(4, n))
            edges.append([rng.sample(labels, size), _weight(rng)])
        doc["function"] = {"kind": kind, "edges": edges}
    elif kind == "coverage":
        items = [f"x{i}" for i in range(rng.randint(2, n + 2))]
        covers = {x: rng.sample(items, rng.randint(1, min(3, len(items)))) for x in labels}
        weights = {x: str(rng.randint(1, 4)) for x in items}
        doc["function"] = {"kind": kind, "covers": covers, "item_weights": weights}
    elif kind == "hypergraph":
        edges, mult = [], []
        for _ in range(rng.randint(1, n + 1)):
            size = rng.choice((2, 2, 3)) if n >= 3 else 2
            edges.append(sorted(rng.sample(labels, size), key=labels.index))
            mult.append(rng.choice((1, 1, 1, 2)))
        doc["hypergraph"] = {"edges": edges, "multiplicity": mult}
    else:
        raise InvalidInput(f"unknown corpus kind {kind!r}")
    return doc


def orientation_count(doc: dict) -> int:
    """Number of head assignments of a hypergraph document."""
    total = 1
    for e, c in zip(doc["hypergraph"]["edges"], doc["hypergraph"]["multiplicity"]):
        total *= len(e) ** c
    return total


def generate(seed: int, count: int, kind: str, n_min: int = 3, n_max: int = 7) -> list[dict]:
    if count < 0 or not 2 <= n_min <= n_max:
        raise InvalidInput("need count >= 0 and 2 <= n_min <= n_max")
    rng = random.Random(seed)
    return [random_instance(rng, kind, rng.randint(n_min, n_max)) for _ in range(count)]


def indexed_ground(n: int) -> GroundSet:
    """Ground set ``s, v1, ..., t`` used by the generators."""
    return GroundSet.from_labels(_labels(n), "s", "t")
