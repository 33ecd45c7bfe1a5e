"""Planarity by exhaustive search over combinatorial embeddings.

Edges are inserted one at a time into a rotation system, keeping the
embedded subgraph connected. A new pendant vertex may go into any angle of
its anchor; an edge between two embedded vertices must be drawn inside a
face containing both, and every such choice is tried. Every insertion keeps
the embedding planar, so reaching the last edge proves planarity, and
exhausting all choices proves the opposite. Exponential; meant for graphs
with a handful of vertices, as an oracle independent of the minor search.
"""

from __future__ import annotations

from typing import Sequence


def is_planar_by_embedding(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        cedges = [(u, v) for u in comp for v in adj[u] if u < v]
        if not _component_planar(comp, cedges, adj):
            return False
    return True


def _component_planar(comp, cedges, adj) -> bool:
    nv, ne = len(comp), len(cedges)
    if nv >= 3 and ne > 3 * nv - 6:
        return False
    if ne <= 2:
        return True
    order = _edge_order(comp, cedges, adj)
    a, b = order[0]
    rot = {a: [b], b: [a]}
    return _extend(rot, order, 1)


def _edge_order(comp, cedges, adj):
    """Connected insertion order; edges closing a cycle are placed as early as possible."""
    remaining = set(cedges)
    start = max(comp, key=lambda v: (len(adj[v]), -v))
    present = {start}
    order = []
    while remaining:
        closing = [e for e in remaining if e[0] in present and e[1] in present]
        if closing:
            e = min(closing)
        else:
            e = min(e for e in remaining if e[0] in present or e[1] in present)
        remaining.discard(e)
        order.append(e)
        present.update(e)
    return order


def _faces(rot):
    """Face boundaries as lists of angles ``(w, x)``: at ``w``, right after neighbor ``x``."""
    succ = {}
    for w, nbrs in rot.items():
        k = len(nbrs)
        for i, x in enumerate(nbrs):
            succ[(w, x)] = nbrs[(i + 1) % k]
    seen = set()
    faces = []
    for u, nbrs in rot.items():
        for v in nbrs:
            if (u, v) in seen:
                continue
            face = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                x, w = dart
                face.append((w, x))
                dart = (w, succ[(w, x)])
            faces.append(face)
    return faces


def _insert_after(rot, w, x, new):
    nbrs = rot[w]
    i = nbrs.index(x)
    nbrs.insert(i + 1, new)


def _extend(rot, order, i) -> bool:
    if i == len(order):
        return True
    u, v = order[i]
    if u not in rot or v not in rot:
        anchor, leaf = (u, v) if u in rot else (v, u)
        for x in list(rot[anchor]):
            _insert_after(rot, anchor, x, leaf)
            rot[leaf] = [anchor]
            if _extend(rot, order, i + 1):
                return True
            del rot[leaf]
            rot[anchor].remove(leaf)
        return False
    tried = set()
    for face in _faces(rot):
        at_u = [x for (w, x) in face if w == u]
        at_v = [x for (w, x) in face if w == v]
        for xu in at_u:
            for xv in at_v:
                if (xu, xv) in tried:
                    continue
                tried.add((xu, xv))
                _insert_after(rot, u, xu, v)
                _insert_after(rot, v, xv, u)
                if _extend(rot, order, i + 1):
                    return True
                rot[u].remove(v)
                rot[v].remove(u)
    return False
