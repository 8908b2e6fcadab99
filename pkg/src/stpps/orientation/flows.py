"""Flow networks over (directed) hypergraphs, solved with networkx.

Capacities are integers, so the max-flow values and cuts are exact.  Arcs
without a ``capacity`` attribute are uncapacitated.
"""

from __future__ import annotations

from typing import Optional

import networkx as nx

from ..core import InvalidInput
from .model import Hypergraph, Orientation

SOURCE, SINK = "source", "sink"


def _vertex(v: int) -> tuple[str, int]:
    return ("v", v)


def _vertices(side: set, n: int) -> int:
    """Bitmask of the vertices among ``side``."""
    mask = 0
    for v in range(n):
        if _vertex(v) in side:
            mask |= 1 << v
    return mask


def directed_network(o: Orientation) -> nx.DiGraph:
    """Vertex nodes plus one gadget per ``(hyperedge, head)`` group.

    The gadget ``in → out`` carries as many units as the group has copies;
    every other vertex of the hyperedge feeds ``in`` and ``out`` feeds the head.
    """
    net = nx.DiGraph()
    net.add_nodes_from(_vertex(v) for v in range(o.base.n))
    for i, (e, hs) in enumerate(zip(o.base.edges, o.heads)):
        for h in sorted(set(hs)):
            a, b = ("in", i, h), ("out", i, h)
            net.add_edge(a, b, capacity=hs.count(h))
            net.add_edge(b, _vertex(h))
            for v in range(o.base.n):
                if e >> v & 1 and v != h:
                    net.add_edge(_vertex(v), a)
    return net


def undirected_network(g: Hypergraph) -> nx.DiGraph:
    """Each hyperedge becomes a gadget any member may enter and leave."""
    net = nx.DiGraph()
    net.add_nodes_from(_vertex(v) for v in range(g.n))
    for i, (e, c) in enumerate(zip(g.edges, g.multiplicity)):
        a, b = ("in", i), ("out", i)
        net.add_edge(a, b, capacity=c)
        for v in range(g.n):
            if e >> v & 1:
                net.add_edge(_vertex(v), a)
                net.add_edge(b, _vertex(v))
    return net


def max_flow(net: nx.DiGraph, a: int, b: int) -> tuple[int, dict]:
    value, flow = nx.maximum_flow(net, _vertex(a), _vertex(b))
    return int(value), flow


def min_cut_sink_side(net: nx.DiGraph, a: int, b: int, n: int) -> tuple[int, int]:
    """``(cut value, vertices on the sink side)`` of a minimum ``a→b`` cut."""
    value, (_, sink_side) = nx.minimum_cut(net, _vertex(a), _vertex(b))
    return int(value), _vertices(sink_side, n)


def connectivity(o: Orientation, a: int, b: int) -> int:
    """Maximum number of hyperedge-disjoint directed paths from ``a`` to ``b``."""
    if a == b:
        raise InvalidInput("connectivity needs two distinct vertices")
    return max_flow(directed_network(o), a, b)[0]


def undirected_connectivity(g: Hypergraph, a: int, b: int) -> int:
    if a == b:
        raise InvalidInput("connectivity needs two distinct vertices")
    return max_flow(undirected_network(g), a, b)[0]


def assignment_network(g: Hypergraph, x: list[int]) -> nx.DiGraph:
    """Source → hyperedge (multiplicity) → member vertex → sink (``x_v``)."""
    net = nx.DiGraph()
    net.add_node(SOURCE)
    net.add_node(SINK)
    for i, (e, c) in enumerate(zip(g.edges, g.multiplicity)):
        net.add_edge(SOURCE, ("e", i), capacity=c)
        for v in range(g.n):
            if e >> v & 1:
                net.add_edge(("e", i), _vertex(v))
    for v in range(g.n):
        net.add_edge(_vertex(v), SINK, capacity=x[v])
    return net


def assign_heads(g: Hypergraph, x: list[int]) -> tuple[Optional[list[list[int]]], int]:
    """Heads realizing in-degree ``x``, or ``(None, Y)`` with a deficient set ``Y``.

    A deficient set has fewer units of capacity than hyperedges inside it.
    """
    net = assignment_network(g, x)
    value, flow = nx.maximum_flow(net, SOURCE, SINK)
    if value < g.copies:
        _, (source_side, _) = nx.minimum_cut(net, SOURCE, SINK)
        return None, _vertices(source_side, g.n)
    heads = []
    for i in range(len(g.edges)):
        hs: list[int] = []
        for node, amount in sorted(flow[("e", i)].items()):
            hs.extend([node[1]] * int(amount))
        heads.append(hs)
    return heads, 0


def decompose_paths(o: Orientation, a: int, b: int) -> list[list[tuple[int, int, int]]]:
    """Maximum family of hyperedge-disjoint ``a→b`` paths.

    Each path is a list of hyperarcs ``(tail, edge index, head)``; the tail
    of the first is ``a``, the head of the last is ``b``, and no vertex
    repeats.
    """
    net = directed_network(o)
    value, flow = max_flow(net, a, b)
    left = {u: {w: int(f) for w, f in nbrs.items() if f > 0} for u, nbrs in flow.items()}

    def take(u, w) -> None:
        left[u][w] -= 1
        if left[u][w] == 0:
            del left[u][w]

    paths = []
    for _ in range(value):
        node = _vertex(a)
        trail: list[tuple] = [node]
        while node != _vertex(b):
            nxt = min(left[node])
            take(node, nxt)
            if nxt in trail:
                # drop the loop that just closed
                trail = trail[: trail.index(nxt) + 1]
            else:
                trail.append(nxt)
            node = nxt
        path = []
        for j in range(0, len(trail) - 1, 3):
            tail, gadget, head = trail[j], trail[j + 1], trail[j + 3]
            path.append((tail[1], gadget[1], head[1]))
        paths.append(path)
    return paths
