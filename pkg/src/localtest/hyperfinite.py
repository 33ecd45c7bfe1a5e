"""Small-component partitions, local probability tables and randomized local cuts.

Vocabulary used throughout:

* a *connected set* is a vertex set of size at most ``k`` spanning a
  connected subgraph;
* the *pair type* of a connected set ``K`` at radius ``R`` is the
  isomorphism class of ``K`` sitting inside the induced subgraph on all
  vertices within distance ``R`` of ``K``;
* for a cut ``S`` the table value of a pair type is the fraction of its
  realizations in the graph that are exactly a component of ``G - S``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .canon import canonical_code
from .exceptions import NoAdmissibleR, SearchBudgetExceeded
from .graph import BoundedDegreeGraph

# --------------------------------------------------------------------------
# connected sets


def _grow(adj, start: int, k: int, allowed) -> Iterator[frozenset]:
    """Every connected set of size <= k containing ``start`` exactly once.

    Include/exclude branching on boundary vertices; a vertex excluded in one
    branch stays excluded below it, so no set is produced twice.
    """

    def rec(members: frozenset, cand: list, forbid: set):
        yield members
        if len(members) == k:
            return
        cand = list(cand)
        forbid = set(forbid)
        while cand:
            w = cand.pop()
            inner = cand + [
                x for x in adj[w] if x not in members and x not in forbid and x not in cand and x != w and allowed(x)
            ]
            yield from rec(members | {w}, inner, forbid)
            forbid.add(w)

    first = [x for x in adj[start] if allowed(x)]
    yield from rec(frozenset([start]), first, set())


def enumerate_connected_sets(g: BoundedDegreeGraph, v: int, k: int) -> list[frozenset]:
    """All connected vertex sets of size at most ``k`` that contain ``v``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return list(_grow(g.adjacency, v, k, lambda x: True))


def iter_all_connected_sets(g: BoundedDegreeGraph, k: int) -> Iterator[frozenset]:
    """Every connected set of size <= k in ``g``, each once (rooted at its minimum)."""
    adj = g.adjacency
    for v in range(g.n):
        yield from _grow(adj, v, k, lambda x, v=v: x > v)


def count_connected_sets(g: BoundedDegreeGraph, k: int, limit: int | None = None) -> int:
    total = 0
    for _ in iter_all_connected_sets(g, k):
        total += 1
        if limit is not None and total > limit:
            return total
    return total


# --------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class PartitionCut:
    """An edge set whose removal leaves components of at most ``k`` vertices."""

    cut_edges: frozenset
    components: tuple
    k: int
    n: int

    @property
    def delta(self) -> float:
        return len(self.cut_edges) / self.n if self.n else 0.0

    @property
    def size(self) -> int:
        return len(self.cut_edges)

    def size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for c in self.components:
            hist[len(c)] = hist.get(len(c), 0) + 1
        return dict(sorted(hist.items()))

    @classmethod
    def from_edges(cls, g: BoundedDegreeGraph, edges: Iterable[tuple[int, int]], k: int) -> "PartitionCut":
        """Components of ``g - edges``; edges that end up inside one component are dropped."""
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        comps = _components_without(g, drop)
        label = {}
        for i, c in enumerate(comps):
            for x in c:
                label[x] = i
        kept = frozenset(e for e in drop if label[e[0]] != label[e[1]])
        cut = cls(kept, tuple(comps), k, g.n)
        cut.validate(g)
        return cut

    @classmethod
    def from_parts(cls, g: BoundedDegreeGraph, parts: Iterable[Iterable[int]], k: int) -> "PartitionCut":
        """Cut every edge between different parts (each part must be connected)."""
        label = [-1] * g.n
        for i, p in enumerate(parts):
            for x in p:
                label[x] = i
        if min(label, default=0) < 0:
            raise ValueError("parts do not cover every vertex")
        edges = [(u, v) for u, v in g.edges if label[u] != label[v]]
        return cls.from_edges(g, edges, k)

    def validate(self, g: BoundedDegreeGraph) -> None:
        seen = set()
        for c in self.components:
            if len(c) > self.k:
                raise ValueError(f"component of size {len(c)} exceeds k={self.k}")
            seen.update(c)
        if len(seen) != g.n:
            raise ValueError("components do not partition the vertex set")
        label = {x: i for i, c in enumerate(self.components) for x in c}
        for u, v in self.cut_edges:
            if label[u] == label[v]:
                raise ValueError(f"cut edge {(u, v)} lies inside a component")


def _components_without(g: BoundedDegreeGraph, drop: set) -> list[tuple[int, ...]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if not seen[y] and (min(x, y), max(x, y)) not in drop:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def find_partition_exact(g: BoundedDegreeGraph, k: int, max_vertices: int = 16) -> PartitionCut:
    """Minimum-size cut leaving components of size <= k (exponential DP over vertex subsets)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if g.n > max_vertices:
        raise SearchBudgetExceeded(f"exact partition limited to {max_vertices} vertices, got {g.n}")
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    def connected_subsets(U: int, v: int) -> Iterator[int]:
        def rec(members, size, cand, forbid):
            yield members
            if size == k:
                return
            while cand:
                low = cand & -cand
                cand ^= low
                w = low.bit_length() - 1
                extra = nbr[w] & U & ~members & ~forbid & ~cand & ~low
                yield from rec(members | low, size + 1, cand | extra, forbid)
                forbid |= low

        yield from rec(1 << v, 1, nbr[v] & U, 0)

    @lru_cache(maxsize=None)
    def best(U: int) -> tuple[int, int]:
        if U == 0:
            return 0, 0
        v = (U & -U).bit_length() - 1
        top = None
        for C in connected_subsets(U, v):
            rest = U & ~C
            cost = 0
            m = C
            while m:
                low = m & -m
                m ^= low
                cost += bin(nbr[low.bit_length() - 1] & rest).count("1")
            total = cost + best(rest)[0]
            if top is None or total < top[0]:
                top = (total, C)
        return top

    parts = []
    U = (1 << g.n) - 1
    while U:
        C = best(U)[1]
        parts.append([i for i in range(g.n) if C >> i & 1])
        U &= ~C
    best.cache_clear()
    return PartitionCut.from_parts(g, parts, k)


def _bfs(g: BoundedDegreeGraph, src: int, within: set | None = None) -> dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if y not in dist and (within is None or y in within):
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def _split_connected(g: BoundedDegreeGraph, verts: Iterable[int]) -> list[list[int]]:
    pool = set(verts)
    out = []
    for s in sorted(pool):
        if s not in pool:
            continue
        comp = list(_bfs(g, s, pool))
        pool.difference_update(comp)
        out.append(sorted(comp))
    return out


def _chop(g: BoundedDegreeGraph, piece: list[int], k: int) -> list[list[int]]:
    """Break a connected vertex set into connected chunks of size <= k."""
    out = []
    stack = [piece]
    while stack:
        cur = stack.pop()
        if len(cur) <= k:
            out.append(sorted(cur))
            continue
        pool = set(cur)
        start = min(cur, key=lambda x: (sum(1 for y in g.neighbors(x) if y in pool), x))
        order = [start]
        taken = {start}
        i = 0
        while i < len(order) and i < k:
            x = order[i]
            i += 1
            for y in g.neighbors(x):
                if y in pool and y not in taken:
                    taken.add(y)
                    order.append(y)
        chunk = order[:k]
        out.append(sorted(chunk))
        stack.extend(_split_connected(g, pool.difference(chunk)))
    return out


def _cut_size(g: BoundedDegreeGraph, parts: list[list[int]]) -> int:
    label = {}
    for i, p in enumerate(parts):
        for x in p:
            label[x] = i
    return sum(1 for x in label for y in g.neighbors(x) if x < y and label[y] != label[x])


def _landmark_parts(g: BoundedDegreeGraph, comp: list[int], k: int) -> list[list[int]]:
    """Tile by boxes in the coordinates (d_a - d_c, d_a + d_c) for two far-apart landmarks."""
    within = set(comp)
    a = min(comp, key=lambda x: (g.degree(x), x))
    da = _bfs(g, a, within)
    ecc = max(da.values())
    dmin = min(g.degree(x) for x in comp)
    cands = [x for x in comp if x != a and g.degree(x) == dmin and 2 * da[x] >= ecc]
    c = min(cands, key=lambda x: (da[x], x)) if cands else max(comp, key=lambda x: (da[x], -x))
    dc = _bfs(g, c, within)
    side = max(1, math.isqrt(k))
    best = None
    for ou in range(2 * side):
        for ow in range(2 * side):
            boxes: dict[tuple[int, int], list[int]] = {}
            for x in comp:
                key = ((da[x] - dc[x] + ou) // (2 * side), (da[x] + dc[x] + ow) // (2 * side))
                boxes.setdefault(key, []).append(x)
            parts = []
            for key in sorted(boxes):
                for piece in _split_connected(g, boxes[key]):
                    parts.extend(_chop(g, piece, k))
            size = _cut_size(g, parts)
            if best is None or size < best[0]:
                best = (size, parts)
    return best[1]


def _region_parts(g: BoundedDegreeGraph, comp: list[int], k: int) -> list[list[int]]:
    """Grow BFS regions of up to k vertices, then merge neighbouring small regions."""
    label = {}
    parts: list[list[int]] = []
    a = min(comp, key=lambda x: (g.degree(x), x))
    order = list(_bfs(g, a, set(comp)))
    for s in order:
        if s in label:
            continue
        region = [s]
        label[s] = len(parts)
        frontier = [s]
        while frontier and len(region) < k:
            nxt = []
            for x in frontier:
                for y in g.neighbors(x):
                    if y not in label and len(region) < k:
                        label[y] = len(parts)
                        region.append(y)
                        nxt.append(y)
            frontier = nxt
        parts.append(region)
    merged = True
    while merged:
        merged = False
        for i, p in enumerate(parts):
            if not p:
                continue
            links: dict[int, int] = {}
            for x in p:
                for y in g.neighbors(x):
                    j = label[y]
                    if j != i:
                        links[j] = links.get(j, 0) + 1
            for j, _ in sorted(links.items(), key=lambda t: (-t[1], t[0])):
                if len(p) + len(parts[j]) <= k:
                    for y in parts[j]:
                        label[y] = i
                    p.extend(parts[j])
                    parts[j] = []
                    merged = True
                    break
    return [sorted(p) for p in parts if p]


def find_partition_greedy(g: BoundedDegreeGraph, k: int, seed: int = 0) -> PartitionCut:
    """A valid (not necessarily optimal) cut; the better of two deterministic heuristics.

    ``seed`` only breaks ties between the two heuristics' results and is
    kept for interface symmetry; the output is a pure function of the input.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    parts: list[list[int]] = []
    for comp in g.components():
        comp = sorted(comp)
        if len(comp) <= k:
            parts.append(comp)
            continue
        options = [_landmark_parts(g, comp, k), _region_parts(g, comp, k)]
        options.sort(key=lambda p: _cut_size(g, p))
        parts.extend(options[0])
    return PartitionCut.from_parts(g, parts, k)


# --------------------------------------------------------------------------
# pair types and the local probability table

_PAIR_CACHE: dict = {}
_PAIR_CACHE_LIMIT = 100_000


def pair_code(g: BoundedDegreeGraph, members: Iterable[int], R: int) -> bytes:
    """Canonical code of ``(K, N_R(K))``: vertices coloured by distance to ``K``."""
    src = sorted(members)
    local = {x: i for i, x in enumerate(src)}
    order = list(src)
    depth = [0] * len(src)
    i = 0
    while i < len(order):
        x = order[i]
        if depth[i] < R:
            for y in g.neighbors(x):
                if y not in local:
                    local[y] = len(order)
                    order.append(y)
                    depth.append(depth[i] + 1)
        i += 1
    edges = []
    for i, x in enumerate(order):
        for y in g.neighbors(x):
            j = local.get(y)
            if j is not None and i < j:
                edges.append((i, j))
    edges.sort()
    key = (R, len(src), tuple(depth), tuple(edges))
    code = _PAIR_CACHE.get(key)
    if code is None:
        adj: list[list[int]] = [[] for _ in order]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        code = canonical_code(adj, depth, header=(R, len(src)))
        if len(_PAIR_CACHE) >= _PAIR_CACHE_LIMIT:
            _PAIR_CACHE.clear()
        _PAIR_CACHE[key] = code
    return code


@dataclass
class LocalCutTable:
    """Pair type -> fraction of its realizations that are components of the source cut.

    ``complete`` tables list every pair type of the source graph; the others
    only list types whose shape occurs as a component, and are usable on
    the source graph alone. Looking up a type not present gives 1.
    """

    R: int
    k: int
    d: int
    rows: dict = field(default_factory=dict)
    complete: bool = True
    class_sizes: dict = field(default_factory=dict)
    component_counts: dict = field(default_factory=dict)
    boundary_sizes: dict = field(default_factory=dict)
    _members: dict = field(default_factory=dict, repr=False, compare=False)
    _source: object = field(default=None, repr=False, compare=False)

    def p(self, code: bytes) -> float:
        return self.rows.get(code, 1.0)

    def __len__(self):
        return len(self.rows)

    def boundary_identity(self) -> float:
        """Sum over types of value x class size x boundary size (equals twice the cut size)."""
        return math.fsum(self.rows[c] * self.class_sizes[c] * self.boundary_sizes[c] for c in self.rows)

    def with_rows(self, value: float) -> "LocalCutTable":
        """Copy with every row set to ``value``; handy for degenerate checks."""
        t = LocalCutTable(
            self.R, self.k, self.d, {c: value for c in self.rows}, self.complete,
            dict(self.class_sizes), dict(self.component_counts), dict(self.boundary_sizes),
        )
        t._members = self._members
        t._source = self._source
        return t

    def to_dict(self) -> dict:
        return {
            "R": self.R,
            "k": self.k,
            "d": self.d,
            "complete": self.complete,
            "rows": {c.hex(): v for c, v in sorted(self.rows.items())},
            "class_sizes": {c.hex(): v for c, v in sorted(self.class_sizes.items())},
            "component_counts": {c.hex(): v for c, v in sorted(self.component_counts.items())},
            "boundary_sizes": {c.hex(): v for c, v in sorted(self.boundary_sizes.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "LocalCutTable":
        def unhex(m):
            return {bytes.fromhex(k): v for k, v in m.items()}

        return cls(
            int(data["R"]), int(data["k"]), int(data["d"]),
            {c: float(v) for c, v in unhex(data["rows"]).items()},
            bool(data.get("complete", True)),
            unhex(data.get("class_sizes", {})),
            unhex(data.get("component_counts", {})),
            unhex(data.get("boundary_sizes", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "LocalCutTable":
        return cls.from_dict(json.loads(text))


def _boundary_size(g: BoundedDegreeGraph, members: frozenset) -> int:
    return sum(1 for x in members for y in g.neighbors(x) if y not in members)


def _shape_code(g: BoundedDegreeGraph, members) -> bytes:
    vs = sorted(members)
    idx = {x: i for i, x in enumerate(vs)}
    adj = [[idx[y] for y in g.neighbors(x) if y in idx] for x in vs]
    return canonical_code(adj, [g.degree(x) for x in vs], header=(len(vs),))


def _induced_copies(g: BoundedDegreeGraph, shape: list[int]) -> set[frozenset]:
    """Vertex sets of ``g`` inducing a copy of ``g[shape]`` with matching degrees."""
    inside = set(shape)
    start = min(shape, key=lambda x: (sum(1 for v in range(g.n) if g.degree(v) == g.degree(x)), x))
    order = [start]
    parent = {start: None}
    for x in order:
        for y in g.neighbors(x):
            if y in inside and y not in parent:
                parent[y] = x
                order.append(y)
    pos = {x: i for i, x in enumerate(order)}
    need = [[g.has_edge(order[i], order[j]) for j in range(i)] for i in range(len(order))]
    found: set[frozenset] = set()
    image = [0] * len(order)
    used: set[int] = set()

    def rec(i):
        if i == len(order):
            found.add(frozenset(image))
            return
        x = order[i]
        want = g.degree(x)
        for y in g.neighbors(image[pos[parent[x]]]):
            if y in used or g.degree(y) != want:
                continue
            if all(need[i][j] == g.has_edge(y, image[j]) for j in range(i)):
                image[i] = y
                used.add(y)
                rec(i + 1)
                used.discard(y)

    want0 = g.degree(start)
    for v in range(g.n):
        if g.degree(v) == want0:
            image[0] = v
            used.add(v)
            rec(1)
            used.discard(v)
    return found


def build_local_cut_table(
    g: BoundedDegreeGraph,
    cut: PartitionCut,
    R: int,
    k: int | None = None,
    mode: str = "auto",
    complete_limit: int = 20_000,
) -> LocalCutTable:
    """Tabulate, per pair type at radius ``R``, how often it is a component of ``g - cut``.

    ``mode`` is ``"complete"`` (every connected set of ``g``), ``"positive"``
    (only sets shaped like some component) or ``"auto"`` (complete when
    the number of connected sets is at most ``complete_limit``).
    """
    k = cut.k if k is None else k
    if R < 0:
        raise ValueError("R must be non-negative")
    if any(len(c) > k for c in cut.components):
        raise ValueError("cut has a component larger than k")
    if mode == "auto":
        mode = "complete" if count_connected_sets(g, k, complete_limit) <= complete_limit else "positive"
    if mode == "complete":
        candidates: Iterable[frozenset] = iter_all_connected_sets(g, k)
    elif mode == "positive":
        shapes: dict[bytes, tuple] = {}
        for c in cut.components:
            shapes.setdefault(_shape_code(g, c), c)
        found: set[frozenset] = set()
        for rep in shapes.values():
            found |= _induced_copies(g, list(rep))
        candidates = sorted(found, key=sorted)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    comps = {frozenset(c) for c in cut.components}
    members: dict[bytes, list[frozenset]] = {}
    hits: dict[bytes, int] = {}
    bsize: dict[bytes, int] = {}
    for K in candidates:
        code = pair_code(g, K, R)
        bucket = members.get(code)
        if bucket is None:
            members[code] = bucket = []
            hits[code] = 0
            bsize[code] = _boundary_size(g, K)
        bucket.append(K)
        if K in comps:
            hits[code] += 1
    table = LocalCutTable(
        R=R,
        k=k,
        d=g.d,
        rows={c: hits[c] / len(m) for c, m in members.items()},
        complete=(mode == "complete"),
        class_sizes={c: len(m) for c, m in members.items()},
        component_counts=hits,
        boundary_sizes=bsize,
    )
    table._members = members
    table._source = g
    return table


# --------------------------------------------------------------------------
# q statistic and the radius search


@dataclass
class QProfile:
    R: int
    values: np.ndarray
    low_count: int

    @classmethod
    def from_values(cls, R: int, values) -> "QProfile":
        values = np.asarray(values, dtype=float)
        return cls(R, values, int(np.count_nonzero(values < 0.5)))


def _typed_sets(g: BoundedDegreeGraph, table: LocalCutTable) -> list[tuple[frozenset, float]]:
    """(set, table value) for every connected set of ``g`` that can have nonzero value."""
    if table._source is g and table._members:
        return [(K, table.rows[c]) for c, ms in table._members.items() for K in ms]
    if not table.complete:
        raise ValueError("a table without every source pair type can only be applied to its source graph")
    return [(K, table.p(pair_code(g, K, table.R))) for K in iter_all_connected_sets(g, table.k)]


def q_profile(g: BoundedDegreeGraph, table: LocalCutTable, k: int | None = None) -> QProfile:
    """Per-vertex sum of table values over the connected sets containing the vertex."""
    if k is not None and k != table.k:
        raise ValueError(f"table was built for k={table.k}, not {k}")
    values = np.zeros(g.n)
    for K, p in _typed_sets(g, table):
        if p:
            for v in K:
                values[v] += p
    return QProfile.from_values(table.R, values)


def radius_cap(k: int, d: int, eps: float, budget: int = 12) -> int:
    """The lemma's radius bound 10 k d^(2k+1) / eps, clipped to ``budget``."""
    theoretical = 10 * k * d ** (2 * k + 1) / eps
    return int(min(theoretical, budget))


@dataclass
class RadiusChoice:
    R: int
    table: LocalCutTable
    profile: QProfile
    threshold: float
    tried: list


def choose_R(
    g: BoundedDegreeGraph,
    cut: PartitionCut,
    k: int,
    eps: float,
    max_radius: int = 12,
    mode: str = "auto",
) -> RadiusChoice:
    """Smallest multiple of ``k`` whose q-profile has few vertices below one half."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    threshold = eps * g.n / (2 * g.d) if g.d else 0.0
    cap = radius_cap(k, max(g.d, 1), eps, max_radius)
    tried = []
    best = None
    for R in range(k, cap + 1, k):
        table = build_local_cut_table(g, cut, R, k, mode=mode)
        prof = q_profile(g, table)
        tried.append((R, prof.low_count))
        if prof.low_count <= threshold:
            return RadiusChoice(R, table, prof, threshold, tried)
        if best is None or prof.low_count < best.low_count:
            best = prof
    raise NoAdmissibleR(
        f"no R in multiples of {k} up to {cap} has low_count <= {threshold:.3g}; tried {tried}", best
    )


# --------------------------------------------------------------------------
# randomized local cuts


@dataclass
class CutSample:
    cut: np.ndarray  # boolean mask over g.edges
    selected: int
    covered: int
    first_part: int
    leftover: int
    max_component: int

    @property
    def size(self) -> int:
        return int(self.cut.sum())

    def edges(self, g: BoundedDegreeGraph) -> list[tuple[int, int]]:
        return [g.edges[i] for i in np.flatnonzero(self.cut)]


def selection_probability(p, eps: float, d: int):
    """min(2 log(2d/eps) p, 1), vectorised; eps = 0 selects every set with p > 0."""
    p = np.asarray(p, dtype=float)
    if eps == 0:
        return (p > 0).astype(float)
    return np.minimum(2.0 * math.log(2 * d / eps) * p, 1.0)


class LocalCutProcess:
    """Precomputed arrays for repeatedly drawing the randomized cut on one graph."""

    def __init__(self, g: BoundedDegreeGraph, typed: list[tuple[frozenset, float]], eps: float, d: int, k: int):
        if eps < 0:
            raise ValueError("eps must be non-negative")
        self.g = g
        self.k = k
        typed = [(K, p) for K, p in typed if p > 0]
        self.m = len(typed)
        self.prob = selection_probability([p for _, p in typed], eps, d) if typed else np.zeros(0)
        mem, mem_own, bnd, bnd_own = [], [], [], []
        for i, (K, _) in enumerate(typed):
            for x in K:
                mem.append(x)
                mem_own.append(i)
                for y in g.neighbors(x):
                    if y not in K:
                        bnd.append(g.edge_id(x, y))
                        bnd_own.append(i)
        self.mem = np.asarray(mem, dtype=np.int64)
        self.mem_own = np.asarray(mem_own, dtype=np.int64)
        self.bnd = np.asarray(bnd, dtype=np.int64)
        self.bnd_own = np.asarray(bnd_own, dtype=np.int64)
        e = np.asarray(g.edges, dtype=np.int64).reshape(-1, 2)
        self.eu, self.ev = e[:, 0], e[:, 1]

    def expected_first_part_bound(self) -> float:
        """Sum of selection probability times boundary size (>= E|S'|)."""
        if not self.m:
            return 0.0
        sizes = np.bincount(self.bnd_own, minlength=self.m)
        return float(np.dot(self.prob, sizes))

    def draw(self, rng: np.random.Generator) -> CutSample:
        n = self.g.n
        chosen = rng.random(self.m) < self.prob
        covered = np.zeros(n, dtype=bool)
        covered[self.mem[chosen[self.mem_own]]] = True
        first = np.zeros(len(self.eu), dtype=bool)
        first[self.bnd[chosen[self.bnd_own]]] = True
        leftover = ~covered[self.eu] & ~covered[self.ev]
        cut = first | leftover
        keep = ~cut
        biggest = _largest_component(n, self.eu[keep], self.ev[keep])
        if biggest > self.k:
            raise AssertionError(f"randomized cut left a component of size {biggest} > k={self.k}")
        return CutSample(cut, int(chosen.sum()), int(covered.sum()), int(first.sum()), int(leftover.sum()), biggest)


def _largest_component(n: int, u: np.ndarray, v: np.ndarray) -> int:
    if n == 0:
        return 0
    if len(u) == 0:
        return 1
    mat = coo_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(n, n))
    _, labels = connected_components(mat, directed=False)
    return int(np.bincount(labels).max())


def prepare_local_cut(g: BoundedDegreeGraph, table: LocalCutTable, eps: float, d: int | None = None) -> LocalCutProcess:
    d = g.d if d is None else d
    return LocalCutProcess(g, _typed_sets(g, table), eps, d, table.k)


def sample_local_cut(g: BoundedDegreeGraph, table: LocalCutTable, eps: float, d: int | None = None, seed=None) -> CutSample:
    """One draw of the randomized cut on the table's own source graph."""
    return prepare_local_cut(g, table, eps, d).draw(np.random.default_rng(seed))


def transfer_cut(g0: BoundedDegreeGraph, table: LocalCutTable, eps: float, d: int | None = None, seed=None) -> CutSample:
    """Draw the cut on another graph, looking its pair types up in a source table."""
    if not table.complete and table._source is not g0:
        raise ValueError("transfer needs a complete table (build it with mode='complete')")
    return prepare_local_cut(g0, table, eps, d).draw(np.random.default_rng(seed))


def cut_bound(delta: float, d: int, n: int) -> float:
    """4 delta log(3d/delta) n, the expected-size bound for the randomized cut."""
    if delta <= 0:
        return 0.0
    return 4.0 * delta * math.log(3 * d / delta) * n
