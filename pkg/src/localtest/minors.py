"""Exact minor containment for small hosts, planarity, and edit distance.

``has_minor`` searches for branch sets directly. In a connected host every
vertex left outside a minor model can be absorbed into an adjacent branch
set without breaking the model, so it suffices to enumerate partitions of
the whole host component into exactly ``|V(H)|`` connected parts and test
whether the quotient graph contains ``H`` as a spanning subgraph.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache
from typing import Iterable, Sequence

from .exceptions import AboveCap, SearchBudgetExceeded
from .graph import BoundedDegreeGraph, build_graph

DEFAULT_MAX_HOST = 64
DEFAULT_MAX_PATTERN = 6


def named_pattern(name: str) -> BoundedDegreeGraph:
    """Built-in patterns: K<n>, K<a><b> (bipartite), C<n>, P<n>, petersen."""
    from . import generators as gen

    key = name.strip()
    low = key.lower()
    if low == "petersen":
        return gen.petersen(0)
    if low.startswith("k") and low[1:].isdigit():
        digits = low[1:]
        if len(digits) == 2:
            return gen.complete_bipartite(0, int(digits[0]), int(digits[1]))
        return gen.complete(0, int(digits))
    if low.startswith("k") and "," in low:
        a, b = low[1:].split(",")
        return gen.complete_bipartite(0, int(a), int(b))
    if low.startswith("c") and low[1:].isdigit():
        return gen.cycle(0, int(low[1:]))
    if low.startswith("p") and low[1:].isdigit():
        return gen.path(0, int(low[1:]))
    raise KeyError(f"unknown pattern {name!r}")


def resolve_patterns(patterns) -> list[BoundedDegreeGraph]:
    out = []
    for p in patterns:
        out.append(named_pattern(p) if isinstance(p, str) else p)
    return out


def _adj_sets(g) -> list[set[int]]:
    if isinstance(g, BoundedDegreeGraph):
        return [set(g.neighbors(v)) for v in range(g.n)]
    return [set(x) for x in g]


def _components(adj: Sequence[set[int]], vertices: Iterable[int]) -> list[list[int]]:
    vs = set(vertices)
    out = []
    while vs:
        s = vs.pop()
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in vs:
                    vs.discard(y)
                    comp.append(y)
                    queue.append(y)
        out.append(comp)
    return out


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchBudgetExceeded(f"minor search exceeded {self.limit} nodes")


def has_minor(
    host,
    pattern,
    *,
    max_host_vertices: int = DEFAULT_MAX_HOST,
    max_pattern_vertices: int = DEFAULT_MAX_PATTERN,
    node_budget: int | None = None,
    planar_shortcut: bool = False,
) -> bool:
    """Decide whether ``pattern`` is a minor of ``host``.

    ``planar_shortcut`` answers False immediately when the host is planar and
    the pattern is not; this relies on planarity being minor-closed and is
    off by default so that the branch-set search is exercised on its own.
    """
    if isinstance(pattern, str):
        pattern = named_pattern(pattern)
    hadj = _adj_sets(host)
    padj = _adj_sets(pattern)
    n, p = len(hadj), len(padj)
    if p == 0:
        return True
    if n < p or sum(map(len, hadj)) < sum(map(len, padj)):
        return False
    if planar_shortcut and not _is_planar_adj(tuple(map(frozenset, padj))) and _is_planar_adj(
        tuple(map(frozenset, hadj))
    ):
        return False
    if p > max_pattern_vertices:
        raise SearchBudgetExceeded(f"pattern has {p} > {max_pattern_vertices} vertices")
    budget = _Budget(node_budget)

    host_comps = [c for c in _components(hadj, range(n))]
    pat_comps = _components(padj, range(p))
    big = [c for c in host_comps if len(c) > max_host_vertices]
    if big:
        raise SearchBudgetExceeded(f"host component with {len(big[0])} > {max_host_vertices} vertices")

    memo: dict = {}

    def fits(ci: int, pset: frozenset) -> bool:
        key = (ci, pset)
        if key not in memo:
            verts = sorted(v for j in pset for v in pat_comps[j])
            memo[key] = _minor_connected_host(hadj, host_comps[ci], padj, verts, budget)
        return memo[key]

    order = sorted(range(len(pat_comps)), key=lambda j: -len(pat_comps[j]))

    def assign(i: int, bins: list[frozenset]) -> bool:
        if i == len(order):
            return all(not b or fits(ci, b) for ci, b in enumerate(bins))
        j = order[i]
        for ci in range(len(host_comps)):
            trial = bins[ci] | {j}
            if sum(len(pat_comps[x]) for x in trial) > len(host_comps[ci]):
                continue
            if not fits(ci, trial):
                continue
            bins[ci] = trial
            if assign(i + 1, bins):
                return True
            bins[ci] = trial - {j}
        return False

    return assign(0, [frozenset() for _ in host_comps])


def _minor_connected_host(hadj, comp, padj, pverts, budget) -> bool:
    """Pattern induced on ``pverts`` as a minor of the connected host ``comp``."""
    plocal = {v: i for i, v in enumerate(pverts)}
    P = [sorted(plocal[u] for u in padj[v] if u in plocal) for v in pverts]
    p = len(P)
    if len(comp) < p:
        return False
    pdeg_min = min(len(x) for x in P)
    adj = _reduce(hadj, comp, pdeg_min)
    verts = sorted(adj)
    if len(verts) < p or sum(len(adj[v]) for v in verts) < sum(map(len, P)):
        return False
    if p == 1:
        return True
    return _partition_search(adj, verts, P, budget)


def _reduce(hadj, comp, pdeg_min) -> dict[int, set[int]]:
    """Drop leaves when the pattern has min degree >= 2 and suppress degree-2
    vertices when it has min degree >= 3; both preserve minor containment."""
    adj = {v: set(hadj[v]) & set(comp) for v in comp}
    if pdeg_min < 2:
        return adj
    queue = deque(v for v in adj if len(adj[v]) <= 2)
    while queue:
        v = queue.popleft()
        if v not in adj:
            continue
        nb = adj[v]
        if len(nb) <= 1 and len(adj) > 1:
            for u in nb:
                adj[u].discard(v)
                queue.append(u)
            del adj[v]
        elif len(nb) == 2 and pdeg_min >= 3:
            a, b = tuple(nb)
            adj[a].discard(v)
            adj[b].discard(v)
            del adj[v]
            if b not in adj[a]:
                adj[a].add(b)
                adj[b].add(a)
            queue.append(a)
            queue.append(b)
    return adj


def _partition_search(adj, verts, P, budget) -> bool:
    p = len(P)
    pdeg = sorted((len(x) for x in P), reverse=True)
    pdeg_min = pdeg[-1]
    complete = all(len(x) == p - 1 for x in P)
    start = min(verts, key=lambda v: (len(adj[v]), v))
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        x = order[i]
        for y in sorted(adj[x], key=lambda y: (len(adj[y]), y)):
            if y not in seen:
                seen.add(y)
                order.append(y)
        i += 1
    N = len(order)
    index = {v: i for i, v in enumerate(order)}
    nbrs = [[index[u] for u in adj[v]] for v in order]
    part = [-1] * N
    members: list[list[int]] = []

    def open_neighbors(vs) -> bool:
        return any(part[u] < 0 for x in vs for u in nbrs[x])

    def part_ok(c: int) -> bool:
        vs = members[c]
        if len(vs) > 1:
            pieces = _components_idx(nbrs, vs, part, c)
            if len(pieces) > 1 and any(not open_neighbors(piece) for piece in pieces):
                return False
        if not open_neighbors(vs):
            touching = {part[u] for x in vs for u in nbrs[x] if part[u] >= 0 and part[u] != c}
            if len(touching) < pdeg_min:
                return False
            if complete and len(touching) < p - 1:
                return False
        return True

    def quotient_ok() -> bool:
        q = [set() for _ in range(p)]
        for x in range(N):
            for u in nbrs[x]:
                if part[u] != part[x]:
                    q[part[x]].add(part[u])
        return _spanning_subgraph(P, q)

    def rec(i: int) -> bool:
        budget.tick()
        if i == N:
            return len(members) == p and quotient_ok()
        if p - len(members) > N - i:
            return False
        touched = {part[u] for u in nbrs[i] if part[u] >= 0}
        choices = sorted(touched) + [c for c in range(len(members)) if c not in touched]
        if len(members) < p:
            choices.append(len(members))
        for c in choices:
            new = c == len(members)
            if new:
                members.append([i])
            else:
                members[c].append(i)
            part[i] = c
            ok = all(part_ok(x) for x in {c} | touched)
            if ok and rec(i + 1):
                return True
            part[i] = -1
            if new:
                members.pop()
            else:
                members[c].pop()
        return False

    return rec(0)


def _components_idx(nbrs, vs, part, c):
    left = set(vs)
    out = []
    while left:
        s = left.pop()
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y in left:
                    left.discard(y)
                    comp.append(y)
                    stack.append(y)
        out.append(comp)
    return out


def _spanning_subgraph(P, Q) -> bool:
    """Is there a bijection mapping every edge of ``P`` onto an edge of ``Q``?"""
    p = len(P)
    order = sorted(range(p), key=lambda v: -len(P[v]))
    image = [-1] * p
    used = [False] * p

    def rec(i):
        if i == p:
            return True
        v = order[i]
        for w in range(p):
            if used[w] or len(Q[w]) < len(P[v]):
                continue
            if all(image[u] < 0 or image[u] in Q[w] for u in P[v]):
                image[v] = w
                used[w] = True
                if rec(i + 1):
                    return True
                used[w] = False
                image[v] = -1
        return False

    return rec(0)


@lru_cache(maxsize=4096)
def _is_planar_adj(adj: tuple) -> bool:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(len(adj)))
    g.add_edges_from((u, v) for u in range(len(adj)) for v in adj[u] if u < v)
    return nx.check_planarity(g)[0]


def is_planar(g: BoundedDegreeGraph) -> bool:
    """Linear-time planarity test for graphs of any size (networkx LR test)."""
    import networkx as nx

    return nx.check_planarity(g.to_networkx())[0]


def is_planar_small(g, **kwargs) -> bool:
    """Planarity as the absence of K5 and K3,3 minors, by exact search."""
    return not has_minor(g, named_pattern("K5"), **kwargs) and not has_minor(
        g, named_pattern("K33"), **kwargs
    )


def is_minor_free(g, patterns, **kwargs) -> bool:
    return not any(has_minor(g, h, **kwargs) for h in resolve_patterns(patterns))


def edit_distance_to_minor_free(
    g: BoundedDegreeGraph,
    patterns,
    cap: int,
    max_subsets: int = 2_000_000,
    **kwargs,
) -> int:
    """Fewest edge deletions after which ``g`` has none of ``patterns`` as a minor.

    Deletion sets are enumerated by increasing size; adding edges never helps
    a minor-closed property. Raises AboveCap past ``cap`` deletions.
    """
    pats = resolve_patterns(patterns)
    edges = g.edges
    total = sum(_comb(len(edges), s) for s in range(cap + 1))
    if total > max_subsets:
        raise SearchBudgetExceeded(f"{total} deletion sets exceed the guard of {max_subsets}")
    for size in range(cap + 1):
        for drop in itertools.combinations(edges, size):
            h = g.remove_edges(drop) if drop else g
            if is_minor_free(h, pats, **kwargs):
                return size
    raise AboveCap(cap)


def _comb(n, k):
    from math import comb

    return comb(n, k)


def small_graph(n: int, edges) -> BoundedDegreeGraph:
    """Convenience builder with the degree bound set to the maximum degree."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return build_graph(n, max(deg, default=0), edges)
