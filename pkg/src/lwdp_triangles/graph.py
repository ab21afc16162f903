"""Weighted-graph container, triangle enumeration, and the exact below-threshold count.

The graph topology is public and immutable after construction.  Edge weights
are 64-bit signed integers; negative weights are first-class.  Node ids are
dense integers in [0, n); ingestion-side relabeling for sparse external ids
lives in :mod:`lwdp_triangles.experiments`.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Sequence


class GraphStructureError(ValueError):
    """Raised for self-loops, duplicate edges, or references to missing edges."""


def canonical_edge(u: int, v: int) -> tuple[int, int]:
    """Undirected edge key with endpoints in ascending order."""
    return (u, v) if u < v else (v, u)


class Triangle(NamedTuple):
    """Three distinct node ids in ascending order."""

    a: int
    b: int
    c: int

    @property
    def nodes(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def edges(self) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        """The three edges in canonical (sorted-pair) order."""
        return ((self.a, self.b), (self.a, self.c), (self.b, self.c))

    def opposite_edge(self, node: int) -> tuple[int, int]:
        """The edge not incident to ``node``."""
        if node == self.a:
            return (self.b, self.c)
        if node == self.b:
            return (self.a, self.c)
        if node == self.c:
            return (self.a, self.b)
        raise ValueError(f"node {node} is not a vertex of {self}")

    def opposite_node(self, edge: tuple[int, int]) -> int:
        """The node not covered by ``edge``."""
        u, v = edge
        for w in self.nodes:
            if w != u and w != v:
                return w
        raise ValueError(f"edge {edge} does not belong to {self}")


def make_triangle(u: int, v: int, x: int) -> Triangle:
    a, b, c = sorted((u, v, x))
    if a == b or b == c:
        raise GraphStructureError(f"triangle nodes must be distinct: {(u, v, x)}")
    return Triangle(a, b, c)


class WeightedGraph:
    """Undirected graph with symmetric integer edge weights.

    Construction validates the structural invariants (no self-loops, no
    duplicate edges, node ids inside [0, n)).  Instances are immutable and
    safe to share across threads.
    """

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int, int]]):
        if node_count < 0:
            raise GraphStructureError("node_count must be nonnegative")
        self._n = node_count
        weights: dict[tuple[int, int], int] = {}
        adj: list[list[int]] = [[] for _ in range(node_count)]
        for u, v, w in edges:
            if u == v:
                raise GraphStructureError(f"self-loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphStructureError(f"edge ({u},{v}) outside [0,{node_count})")
            key = canonical_edge(u, v)
            if key in weights:
                raise GraphStructureError(f"duplicate edge {key}")
            weights[key] = int(w)
            adj[u].append(v)
            adj[v].append(u)
        self._weights = weights
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)

    # -- basic accessors ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._weights)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self._weights

    def weight(self, u: int, v: int) -> int:
        try:
            return self._weights[canonical_edge(u, v)]
        except KeyError:
            raise GraphStructureError(f"no edge ({u},{v})") from None

    def edges(self) -> Iterator[tuple[int, int]]:
        """Canonical edges in sorted order (deterministic)."""
        return iter(sorted(self._weights))

    def edge_weights(self) -> dict[tuple[int, int], int]:
        """Copy of the weight map, keyed by canonical edge."""
        return dict(self._weights)

    def incident_weight_vector(self, v: int) -> list[int]:
        """Weights of v's incident edges, ordered by neighbor id (the node's private data)."""
        return [self._weights[canonical_edge(v, u)] for u in self._adj[v]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._n == other._n and self._weights == other._weights

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self._n}, m={self.edge_count})"


def enumerate_triangles(graph: WeightedGraph) -> list[Triangle]:
    """All triangles exactly once, in canonical (sorted-triple) order.

    Uses the degree-ordered orientation: each undirected edge is directed
    from lower to higher (degree, id) rank and triangles are closed by
    intersecting out-neighborhoods, so the work is O(m^{3/2}).
    """
    n = graph.node_count
    rank = sorted(range(n), key=lambda v: (graph.degree(v), v))
    pos = [0] * n
    for i, v in enumerate(rank):
        pos[v] = i
    out: list[list[int]] = [[] for _ in range(n)]
    for u, v in graph.edges():
        if pos[u] < pos[v]:
            out[u].append(v)
        else:
            out[v].append(u)
    out_sets = [set(o) for o in out]
    triangles: list[Triangle] = []
    for u in range(n):
        for v in out[u]:
            hi, lo = (u, v) if len(out[u]) > len(out[v]) else (v, u)
            members = out_sets[hi]
            for w in out[lo]:
                if w in members:
                    triangles.append(make_triangle(u, v, w))
    triangles.sort()
    return triangles


def triangle_weight(graph: WeightedGraph, t: Triangle) -> int:
    """Sum of the three edge weights of ``t``; raises if an edge is missing."""
    return (
        graph.weight(t.a, t.b)
        + graph.weight(t.a, t.c)
        + graph.weight(t.b, t.c)
    )


def exact_below_threshold_count(
    graph: WeightedGraph,
    lam: int,
    triangles: Sequence[Triangle] | None = None,
) -> int:
    """Number of triangles with total weight strictly below ``lam`` (the ground truth)."""
    if triangles is None:
        triangles = enumerate_triangles(graph)
    return sum(1 for t in triangles if triangle_weight(graph, t) < lam)
