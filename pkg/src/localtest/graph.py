"""Bounded-degree graphs and the neighbor-query oracle."""

from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Sequence

from .exceptions import DegreeExceeded, InvalidEdge, OutOfRange


class BoundedDegreeGraph:
    """Immutable simple undirected graph with a degree cap ``d``.

    Vertices are ``0..n-1``; every adjacency list is sorted ascending.
    """

    __slots__ = ("n", "d", "_adj", "_edges", "_edge_index", "__weakref__")

    def __init__(self, n: int, d: int, adjacency: Sequence[Sequence[int]]):
        self.n = int(n)
        self.d = int(d)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        self._edges = None
        self._edge_index = None

    def __repr__(self):
        return f"BoundedDegreeGraph(n={self.n}, d={self.d}, m={self.num_edges})"

    def __eq__(self, other):
        if not isinstance(other, BoundedDegreeGraph):
            return NotImplemented
        return self.n == other.n and self.d == other.d and self._adj == other._adj

    def __hash__(self):
        return hash((self.n, self.d, self._adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]
        return self._edges

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def edge_id(self, u: int, v: int) -> int:
        if self._edge_index is None:
            self._edge_index = {e: i for i, e in enumerate(self.edges)}
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def with_degree_bound(self, d: int) -> "BoundedDegreeGraph":
        """Same graph declared under another degree cap."""
        if self.max_degree > d:
            v = max(range(self.n), key=self.degree)
            raise DegreeExceeded(v, self.degree(v), d)
        return BoundedDegreeGraph(self.n, d, self._adj)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "BoundedDegreeGraph":
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        return build_graph(self.n, self.d, [e for e in self.edges if e not in drop])

    def relabel(self, perm: Sequence[int]) -> "BoundedDegreeGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return build_graph(self.n, self.d, [(perm[u], perm[v]) for u, v in self.edges])

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["BoundedDegreeGraph", list[int]]:
        """Induced subgraph on ``vertices`` relabelled ``0..len-1``; also returns the id map."""
        verts = sorted(set(vertices))
        local = {v: i for i, v in enumerate(verts)}
        adj = [[local[u] for u in self._adj[v] if u in local] for v in verts]
        return BoundedDegreeGraph(len(verts), self.d, adj), verts

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            out.append(sorted(comp))
        return out

    def bfs_distances(self, sources: Iterable[int], limit: int | None = None) -> dict[int, int]:
        dist = {}
        queue = deque()
        for s in sources:
            if s not in dist:
                dist[s] = 0
                queue.append(s)
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if limit is not None and dx >= limit:
                continue
            for y in self._adj[x]:
                if y not in dist:
                    dist[y] = dx + 1
                    queue.append(y)
        return dist

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def build_graph(n: int, d: int, edges: Iterable[tuple[int, int]]) -> BoundedDegreeGraph:
    """Validate an edge list and build the graph.

    Raises InvalidEdge for self-loops, out-of-range endpoints and repeated
    edges, and DegreeExceeded when a vertex would exceed ``d``.
    """
    if n < 0 or d < 0:
        raise ValueError("n and d must be non-negative")
    adj: list[list[int]] = [[] for _ in range(n)]
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(u, v, "endpoint out of range")
        if u == v:
            raise InvalidEdge(u, v, "self-loop")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InvalidEdge(u, v, "duplicate edge")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
        if len(adj[u]) > d:
            raise DegreeExceeded(u, len(adj[u]), d)
        if len(adj[v]) > d:
            raise DegreeExceeded(v, len(adj[v]), d)
    return BoundedDegreeGraph(n, d, adj)


def validate_graph(g: BoundedDegreeGraph) -> None:
    """Re-check every structural invariant; raises on the first violation."""
    for v in range(g.n):
        nbrs = g.neighbors(v)
        if len(nbrs) > g.d:
            raise DegreeExceeded(v, len(nbrs), g.d)
        if len(set(nbrs)) != len(nbrs):
            raise InvalidEdge(v, v, "duplicate neighbor entry")
        for u in nbrs:
            if not 0 <= u < g.n:
                raise InvalidEdge(v, u, "endpoint out of range")
            if u == v:
                raise InvalidEdge(v, u, "self-loop")
            if v not in g.neighbors(u):
                raise InvalidEdge(v, u, "asymmetric adjacency")


class QueryOracle:
    """Black-box access to a graph through ``neighbor_query`` only.

    ``port_seed`` permutes every neighbor list; the algorithms in this
    package are oblivious to port order, which the tests exercise.
    """

    __slots__ = ("_ports", "n", "d", "queries_used")

    def __init__(self, graph: BoundedDegreeGraph, port_seed: int | None = None):
        self.n = graph.n
        self.d = graph.d
        self.queries_used = 0
        if port_seed is None:
            self._ports = graph.adjacency
        else:
            rng = random.Random(port_seed)
            ports = []
            for nbrs in graph.adjacency:
                nbrs = list(nbrs)
                rng.shuffle(nbrs)
                ports.append(tuple(nbrs))
            self._ports = tuple(ports)

    def __repr__(self):
        return f"QueryOracle(n={self.n}, d={self.d}, queries_used={self.queries_used})"

    def neighbor_query(self, v: int, i: int) -> int | None:
        """The ``i``-th neighbor of ``v`` (1-based), or None when deg(v) < i."""
        if not 0 <= v < self.n:
            raise OutOfRange(f"vertex {v} not in [0, {self.n})")
        if not 1 <= i <= self.d:
            raise OutOfRange(f"index {i} not in [1, {self.d}]")
        self.queries_used += 1
        nbrs = self._ports[v]
        return nbrs[i - 1] if i <= len(nbrs) else None


def neighbor_query(oracle: QueryOracle, v: int, i: int) -> int | None:
    return oracle.neighbor_query(v, i)
