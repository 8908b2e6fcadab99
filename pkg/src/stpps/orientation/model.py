"""Hypergraphs with integer multiplicities and head assignments."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ..core import GroundSet, InvalidInput, Partition, mask_of, members


@dataclass(frozen=True)
class Hypergraph:
    ground: GroundSet
    edges: tuple[int, ...]
    multiplicity: tuple[int, ...]

    def __post_init__(self) -> None:
        edges = tuple(self.edges)
        mult = tuple(self.multiplicity)
        if len(edges) != len(mult):
            raise InvalidInput("one multiplicity per hyperedge is required")
        for e, c in zip(edges, mult):
            self.ground.check_mask(e)
            if e.bit_count() < 2:
                raise InvalidInput("hyperedges need at least two vertices")
            if not isinstance(c, int) or c < 1:
                raise InvalidInput("multiplicities must be positive integers")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "multiplicity", mult)

    @classmethod
    def build(
        cls, ground: GroundSet, edges: Iterable[Iterable[int]], multiplicity: Sequence[int] | None = None
    ) -> Hypergraph:
        es = tuple(mask_of(e) for e in edges)
        mult = tuple(multiplicity) if multiplicity is not None else (1,) * len(es)
        return cls(ground, es, mult)

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def copies(self) -> int:
        return sum(self.multiplicity)

    def copy_list(self) -> list[tuple[int, int]]:
        """``(edge index, edge mask)`` once per copy."""
        return [(i, e) for i, (e, c) in enumerate(zip(self.edges, self.multiplicity)) for _ in range(c)]

    def degree(self, v: int) -> int:
        return sum(c for e, c in zip(self.edges, self.multiplicity) if e >> v & 1)

    def induced_count(self, y: int) -> int:
        """``i_G(Y)``: copies with every vertex inside ``y``."""
        return sum(c for e, c in zip(self.edges, self.multiplicity) if e & ~y == 0)

    def delete_vertex(self, v: int) -> list[tuple[int, int]]:
        """``(edge index, mask)`` of edges avoiding ``v``."""
        return [(i, e) for i, e in enumerate(self.edges) if not e >> v & 1]


def delta_partition(g: Hypergraph, p: Partition) -> int:
    """Copies of hyperedges meeting at least two blocks of ``p``."""
    if p.n != g.n:
        raise InvalidInput("partition does not match the hypergraph")
    return sum(c for e, c in zip(g.edges, g.multiplicity) if all(e & ~b for b in p))


@dataclass(frozen=True)
class Orientation:
    """``heads[i]`` lists one head vertex per copy of ``base.edges[i]``."""

    base: Hypergraph
    heads: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        heads = tuple(tuple(h) for h in self.heads)
        if len(heads) != len(self.base.edges):
            raise InvalidInput("one head list per hyperedge is required")
        for e, c, hs in zip(self.base.edges, self.base.multiplicity, heads):
            if len(hs) != c:
                raise InvalidInput("one head per hyperedge copy is required")
            for h in hs:
                if not e >> h & 1:
                    raise InvalidInput(f"head {h} is not a vertex of its hyperedge")
        object.__setattr__(self, "heads", heads)

    def arcs(self) -> Iterator[tuple[int, int, int]]:
        """``(edge mask, head, count)`` grouped by distinct head."""
        for e, hs in zip(self.base.edges, self.heads):
            for h in sorted(set(hs)):
                yield e, h, hs.count(h)

    def indegree(self, u: int) -> int:
        return sum(c for e, h, c in self.arcs() if u >> h & 1 and e & ~u)

    def indegree_vector(self) -> list[int]:
        x = [0] * self.base.n
        for hs in self.heads:
            for h in hs:
                x[h] += 1
        return x


def vertex_names(g: Hypergraph, mask: int) -> list[str]:
    return [g.ground.labels[i] for i in members(mask)]
