"""Canonical labelling of small vertex-coloured graphs.

The labeller is a plain individualisation-refinement search: colour
refinement to an equitable partition, branch on the first non-singleton
cell, and keep the lexicographically smallest relabelled graph. Automorphisms
discovered at equal leaves prune sibling branches that lie in the same orbit
of the pointwise stabiliser of the current path.

``rooted_isomorphic`` is a separate backtracking matcher that never calls the
labeller; the test-suite uses it as the oracle for ``canonical_code``.
"""

from __future__ import annotations

import struct
from typing import Sequence


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Colour refinement; colours are consecutive ranks and only ever split."""
    n = len(colors)
    num = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted([colors[u] for u in adj[v]]))) for v in range(n)]
        uniq = sorted(set(sigs))
        if len(uniq) == num:
            return colors
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        num = len(uniq)


def _initial_ranks(values: Sequence) -> list[int]:
    rank = {c: i for i, c in enumerate(sorted(set(values)))}
    return [rank[c] for c in values]


class _Search:
    def __init__(self, adj, init_colors, edges):
        self.adj = adj
        self.n = len(adj)
        self.init = init_colors
        self.edges = edges
        self.best_cert = None
        self.best_pos = None
        self.first_cert = None
        self.first_pos = None
        self.autos: list[list[int]] = []

    def _cert(self, pos):
        order = [0] * self.n
        for v, p in enumerate(pos):
            order[p] = v
        labels = tuple(self.init[v] for v in order)
        es = sorted((pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]) for u, v in self.edges)
        return labels, tuple(es)

    def _leaf(self, pos):
        cert = self._cert(pos)
        if self.first_cert is None:
            self.first_cert, self.first_pos = cert, pos
            self.best_cert, self.best_pos = cert, pos
            return
        for ref_cert, ref_pos in ((self.first_cert, self.first_pos), (self.best_cert, self.best_pos)):
            if cert == ref_cert:
                inv = [0] * self.n
                for v, p in enumerate(ref_pos):
                    inv[p] = v
                self.autos.append([inv[pos[v]] for v in range(self.n)])
                return
        if cert < self.best_cert:
            self.best_cert, self.best_pos = cert, pos

    def _orbit_rep(self, path):
        stab = [a for a in self.autos if all(a[v] == v for v in path)]
        if not stab:
            return None
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in stab:
            for v in range(self.n):
                ra, rb = find(v), find(a[v])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return find

    def run(self, colors, path):
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = None
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target is None:
            self._leaf(colors)
            return
        cell = [v for v in range(self.n) if colors[v] == target]
        done: list[int] = []
        for w in cell:
            if done:
                find = self._orbit_rep(path)
                if find is not None and any(find(w) == find(x) for x in done):
                    continue
            new = [c if c < target else c + 1 for c in colors]
            new[w] = target
            self.run(_refine(self.adj, new), path + [w])
            done.append(w)


def canonical_labeling(adj: Sequence[Sequence[int]], colors: Sequence) -> tuple[list[int], tuple]:
    """Return ``(pos, certificate)``; ``pos[v]`` is the canonical index of ``v``.

    ``colors`` may be any sortable values; vertices of different colour are
    never mapped onto each other. Two coloured graphs receive equal
    certificates exactly when they are isomorphic.
    """
    n = len(adj)
    init = list(colors)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    search = _Search(adj, init, edges)
    search.run(_refine(adj, _initial_ranks(init)), [])
    return search.best_pos, search.best_cert


def encode_certificate(header: Sequence[int], cert: tuple) -> bytes:
    """Platform-independent byte encoding of a certificate with integer labels."""
    labels, edges = cert
    flat = [len(labels), len(edges), *labels]
    for u, v in edges:
        flat.append(u)
        flat.append(v)
    return struct.pack(f"<{len(header)}I", *header) + struct.pack(f"<{len(flat)}I", *flat)


def canonical_code(adj: Sequence[Sequence[int]], colors: Sequence[int], header: Sequence[int] = ()) -> bytes:
    return encode_certificate(header, canonical_labeling(adj, colors)[1])


def rooted_isomorphic(adj_a, root_a: int, adj_b, root_b: int) -> bool:
    """Is there a graph isomorphism mapping ``root_a`` to ``root_b``?

    Backtracking over a BFS order of ``a``; candidates are constrained by
    degree, distance from the root and adjacency to already-mapped vertices.
    """
    n = len(adj_a)
    if n != len(adj_b):
        return False
    if sum(map(len, adj_a)) != sum(map(len, adj_b)):
        return False
    dist_a = _bfs(adj_a, root_a)
    dist_b = _bfs(adj_b, root_b)
    if len(dist_a) != len(dist_b):
        return False
    prof_a = sorted((dist_a.get(v, -1), len(adj_a[v])) for v in range(n))
    prof_b = sorted((dist_b.get(v, -1), len(adj_b[v])) for v in range(n))
    if prof_a != prof_b:
        return False
    set_b = [set(x) for x in adj_b]

    order = sorted(dist_a, key=dist_a.get)
    # vertices unreachable from the root are matched after the reachable part
    rest = [v for v in range(n) if v not in dist_a]
    order += rest
    rest_b = [v for v in range(n) if v not in dist_b]
    mapping = {root_a: root_b}
    used = {root_b}
    placed = [root_a]

    def candidates(x):
        if x in dist_a:
            anchor = next((y for y in adj_a[x] if y in mapping), None)
            pool = adj_b[mapping[anchor]] if anchor is not None else range(n)
            return [y for y in pool if y not in used and dist_b.get(y) == dist_a[x]]
        return [y for y in rest_b if y not in used]

    def consistent(x, y):
        if len(adj_a[x]) != len(adj_b[y]):
            return False
        for z in placed:
            if (z in adj_a[x]) != (mapping[z] in set_b[y]):
                return False
        return True

    def rec(i):
        if i == len(order):
            return True
        x = order[i]
        for y in candidates(x):
            if consistent(x, y):
                mapping[x] = y
                used.add(y)
                placed.append(x)
                if rec(i + 1):
                    return True
                placed.pop()
                used.discard(y)
                del mapping[x]
        return False

    if len(adj_a[root_a]) != len(adj_b[root_b]):
        return False
    return rec(1)


def _bfs(adj, root):
    dist = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist
