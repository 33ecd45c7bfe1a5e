"""Deterministic graph generators and the textual generator-spec syntax.

Spec strings look like ``grid(10,10)``, ``random_regular(2000,3)`` or
``union_copies(complete(5),40)``; ``parse_spec`` turns them into
``GeneratorSpec`` values and ``generate`` builds the graph for a seed.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass

from .exceptions import InfeasibleSpec
from .graph import BoundedDegreeGraph, build_graph, validate_graph

KINDS = {
    "grid": 2,
    "cycle": 1,
    "path": 1,
    "random_regular": 2,
    "random_planar": 2,
    "union_copies": 2,
    "tree": 2,
    "complete": 1,
    "complete_bipartite": 2,
    "petersen": 0,
}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    args: tuple

    def __str__(self):
        return f"{self.kind}({','.join(str(a) for a in self.args)})"


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[(),])")


def parse_spec(text: str) -> GeneratorSpec:
    """Parse ``kind(arg, ...)``; arguments are integers or nested specs."""
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise InfeasibleSpec(f"cannot parse generator spec {text!r}")
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise InfeasibleSpec(f"truncated spec {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok.isdigit():
            return int(tok)
        name = tok
        args = []
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            if tokens[pos] != ")":
                while True:
                    args.append(parse())
                    if tokens[pos] == ",":
                        pos += 1
                        continue
                    if tokens[pos] == ")":
                        break
                    raise InfeasibleSpec(f"unexpected {tokens[pos]!r} in {text!r}")
            pos += 1
        alias = {"K5": ("complete", [5]), "K4": ("complete", [4]), "K33": ("complete_bipartite", [3, 3])}
        if name in alias and not args:
            name, args = alias[name]
        if name not in KINDS:
            raise InfeasibleSpec(f"unknown generator {name!r}")
        if len(args) != KINDS[name]:
            raise InfeasibleSpec(f"{name} takes {KINDS[name]} arguments, got {len(args)}")
        return GeneratorSpec(name, tuple(args))

    try:
        spec = parse()
    except IndexError:
        raise InfeasibleSpec(f"truncated spec {text!r}") from None
    if pos != len(tokens) or not isinstance(spec, GeneratorSpec):
        raise InfeasibleSpec(f"cannot parse generator spec {text!r}")
    return spec


def generate(spec: GeneratorSpec | str, seed: int = 0, d: int | None = None) -> BoundedDegreeGraph:
    """Build the graph described by ``spec``; a pure function of ``(spec, seed)``.

    ``d`` overrides the declared degree bound (it must be at least the
    maximum degree).
    """
    if isinstance(spec, str):
        spec = parse_spec(spec)
    g = _BUILDERS[spec.kind](seed, *spec.args)
    if d is not None:
        g = g.with_degree_bound(d)
    validate_graph(g)
    return g


def _positive(*vals):
    for v in vals:
        if not isinstance(v, int) or v < 1:
            raise InfeasibleSpec(f"expected positive integer, got {v!r}")


def grid(seed, w, h):
    _positive(w, h)
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return build_graph(w * h, 4, edges)


def cycle(seed, n):
    if n < 3:
        raise InfeasibleSpec("a cycle needs at least 3 vertices")
    return build_graph(n, 2, [(i, (i + 1) % n) for i in range(n)])


def path(seed, n):
    _positive(n)
    return build_graph(n, 2, [(i, i + 1) for i in range(n - 1)])


def complete(seed, n):
    _positive(n)
    return build_graph(n, max(n - 1, 0), itertools.combinations(range(n), 2))


def complete_bipartite(seed, a, b):
    _positive(a, b)
    return build_graph(a + b, max(a, b), [(i, a + j) for i in range(a) for j in range(b)])


def petersen(seed):
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, 3, outer + spokes + inner)


def random_regular(seed, n, d, max_tries=10_000):
    """Uniform simple ``d``-regular graph by the pairing model with restarts."""
    _positive(n, d)
    if (n * d) % 2 or d >= n:
        raise InfeasibleSpec(f"no simple {d}-regular graph on {n} vertices")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            key = (u, v) if u < v else (v, u)
            if u == v or key in edges:
                ok = False
                break
            edges.add(key)
        if ok:
            return build_graph(n, d, sorted(edges))
    raise InfeasibleSpec(f"pairing model did not produce a simple graph in {max_tries} tries")


def random_planar(seed, n, d):
    """Random stacked triangulation with random flips, thinned to max degree ``d``."""
    _positive(n, d)
    rng = random.Random(seed)
    if n < 3:
        return build_graph(n, d, [(0, 1)] if n == 2 and d >= 1 else [])
    faces = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        faces[i] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
    faces = _flip_edges(faces, rng, rounds=3 * n)
    adj = [set() for _ in range(n)]
    for a, b, c in faces:
        for u, v in ((a, b), (b, c), (c, a)):
            adj[u].add(v)
            adj[v].add(u)
    edges = sorted({(min(u, v), max(u, v)) for u in range(n) for v in adj[u]})
    rng.shuffle(edges)
    keep = []
    deg = [0] * n
    for u, v in edges:
        if deg[u] < d and deg[v] < d:
            keep.append((u, v))
            deg[u] += 1
            deg[v] += 1
    g = build_graph(n, d, keep)
    from .minors import is_planar

    if not is_planar(g):
        raise AssertionError("random_planar produced a non-planar graph")
    return g


def _flip_edges(faces, rng, rounds):
    """Random Lawson-style flips on an oriented triangulation of the sphere."""
    faces = [tuple(f) for f in faces]
    # directed edge (u, v) -> index of the face containing it in that orientation
    where = {}
    for i, (a, b, c) in enumerate(faces):
        where[(a, b)] = i
        where[(b, c)] = i
        where[(c, a)] = i
    edge_set = {(min(u, v), max(u, v)) for (u, v) in where}
    edge_list = sorted(edge_set)
    deg = {}
    for u, v in edge_set:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    for _ in range(rounds):
        u, v = edge_list[rng.randrange(len(edge_list))]
        if (u, v) not in edge_set:
            continue
        f1, f2 = where[(u, v)], where[(v, u)]
        x = _third(faces[f1], u, v)
        y = _third(faces[f2], v, u)
        if x == y or (min(x, y), max(x, y)) in edge_set:
            continue
        if deg[u] <= 3 or deg[v] <= 3:
            continue
        deg[u] -= 1
        deg[v] -= 1
        deg[x] += 1
        deg[y] += 1
        for e in ((u, v), (v, x), (x, u), (v, u), (u, y), (y, v)):
            del where[e]
        faces[f1] = (x, y, v)
        faces[f2] = (y, x, u)
        for i in (f1, f2):
            a, b, c = faces[i]
            where[(a, b)] = i
            where[(b, c)] = i
            where[(c, a)] = i
        edge_set.discard((u, v))
        edge_set.add((min(x, y), max(x, y)))
        edge_list.append((min(x, y), max(x, y)))
    return faces


def _third(face, u, v):
    a, b, c = face
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        if p == u and q == v:
            return r
    raise KeyError((face, u, v))


def tree(seed, n, d):
    """Random recursive tree where each vertex attaches to a uniform vertex of spare degree."""
    _positive(n)
    if n > 1 and d < 1 or n > 2 and d < 2:
        raise InfeasibleSpec(f"no tree on {n} vertices with max degree {d}")
    rng = random.Random(seed)
    open_ = [0]
    deg = [0] * n
    edges = []
    for v in range(1, n):
        i = rng.randrange(len(open_))
        u = open_[i]
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
        if deg[u] == d:
            open_[i] = open_[-1]
            open_.pop()
        if deg[v] < d:
            open_.append(v)
    return build_graph(n, d, edges)


def union_copies(seed, proto, copies):
    _positive(copies)
    if not isinstance(proto, GeneratorSpec):
        raise InfeasibleSpec("union_copies needs a generator spec as prototype")
    edges = []
    total = 0
    d = 0
    for c in range(copies):
        g = _BUILDERS[proto.kind](seed + c, *proto.args)
        edges.extend((u + total, v + total) for u, v in g.edges)
        total += g.n
        d = max(d, g.d)
    return build_graph(total, d, edges)


_BUILDERS = {
    "grid": grid,
    "cycle": cycle,
    "path": path,
    "random_regular": random_regular,
    "random_planar": random_planar,
    "union_copies": union_copies,
    "tree": tree,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "petersen": petersen,
}
