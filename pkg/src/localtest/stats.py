"""Rooted balls, their isomorphism types, and neighborhood frequency vectors."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .canon import canonical_code, rooted_isomorphic as _rooted_iso
from .exceptions import OutOfRange, RadiusMismatch
from .graph import BoundedDegreeGraph, QueryOracle

GraphSource = Union[BoundedDegreeGraph, QueryOracle]


@dataclass(frozen=True)
class RootedBall:
    """Induced ball ``B(v, r)`` with local ids; local vertex 0 is the root.

    ``nodes[i]`` is the source id of local vertex ``i`` and ``depth[i]`` its
    distance from the root.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    radius: int
    depth: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.nodes)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def relabeled(self, perm) -> "RootedBall":
        """Same rooted graph with local ids permuted; ``perm[0]`` must be 0."""
        if perm[0] != 0:
            raise ValueError("the root must keep local id 0")
        inv = [0] * len(perm)
        for i, p in enumerate(perm):
            inv[p] = i
        edges = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in self.edges))
        return RootedBall(
            tuple(self.nodes[inv[i]] for i in range(len(perm))),
            edges,
            self.radius,
            tuple(self.depth[inv[i]] for i in range(len(perm))),
        )


@dataclass(frozen=True)
class BallType:
    code: bytes
    radius: int
    degree_bound: int

    def hex(self) -> str:
        return self.code.hex()


def max_ball_size(d: int, r: int) -> int:
    """Largest possible ``|B(v, r)|`` when degrees are at most ``d``."""
    if r <= 0 or d == 0:
        return 1
    if d == 1:
        return 2
    return 1 + d * sum((d - 1) ** i for i in range(r))


def exploration_budget(d: int, r: int) -> int:
    """Worst-case number of oracle queries spent by ``extract_ball``."""
    return 0 if r <= 0 else d * max_ball_size(d, r)


def extract_ball(source: GraphSource, v: int, r: int, pad_to: int | None = None) -> RootedBall:
    """Breadth-first extraction of the induced ball of radius ``r`` around ``v``.

    With a QueryOracle only ``neighbor_query`` is used: each ball vertex is
    probed port by port until the first absent answer. ``pad_to`` tops the
    oracle's counter up to a fixed per-call budget with dummy probes of the
    root, which makes the cost independent of the input graph.
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    if not 0 <= v < source.n:
        raise OutOfRange(f"vertex {v} not in [0, {source.n})")
    if isinstance(source, QueryOracle):
        start = source.queries_used
        ball = _explore(lambda x: _probe(source, x), v, r)
        if pad_to is not None:
            spent = source.queries_used - start
            if spent > pad_to:
                raise RuntimeError(f"exploration used {spent} queries, budget {pad_to}")
            for _ in range(pad_to - spent):
                source.neighbor_query(v, 1)
        return ball
    return _explore(source.neighbors, v, r)


def _probe(oracle: QueryOracle, x: int) -> list[int]:
    out = []
    for i in range(1, oracle.d + 1):
        y = oracle.neighbor_query(x, i)
        if y is None:
            break
        out.append(y)
    return out


def _explore(nbrs_of, v, r) -> RootedBall:
    local = {v: 0}
    nodes = [v]
    depth = [0]
    if r == 0:
        return RootedBall((v,), (), 0, (0,))
    edges = set()
    i = 0
    while i < len(nodes):
        x = nodes[i]
        dx = depth[i]
        for y in nbrs_of(x):
            j = local.get(y)
            if j is None:
                if dx == r:
                    continue
                j = len(nodes)
                local[y] = j
                nodes.append(y)
                depth.append(dx + 1)
            if i < j:
                edges.add((i, j))
            elif j < i:
                edges.add((j, i))
        i += 1
    return RootedBall(tuple(nodes), tuple(sorted(edges)), r, tuple(depth))


_CODE_CACHE: dict = {}
_CODE_CACHE_LIMIT = 200_000


def _ball_code(ball: RootedBall) -> bytes:
    # the exploration radius is not part of the shape; BallType carries it separately
    key = (ball.depth, ball.edges)
    code = _CODE_CACHE.get(key)
    if code is None:
        code = canonical_code(ball.adjacency(), ball.depth)
        if len(_CODE_CACHE) >= _CODE_CACHE_LIMIT:
            _CODE_CACHE.clear()
        _CODE_CACHE[key] = code
    return code


def canonical_form(ball: RootedBall, d: int = 0) -> BallType:
    """Isomorphism type of a rooted ball.

    Equal codes exactly when the balls are rooted-isomorphic. The root is
    the unique vertex of depth 0, so colouring by depth pins it.
    """
    return BallType(_ball_code(ball), ball.radius, d)


def rooted_isomorphic(a: RootedBall, b: RootedBall) -> bool:
    """Root-preserving isomorphism test by explicit search (no canonical codes)."""
    return _rooted_iso(a.adjacency(), 0, b.adjacency(), 0)


@dataclass
class FrequencyVector:
    """Distribution of ball types of radius ``radius``.

    Keys are canonical codes; ``sample_count`` is the number of vertices
    inspected (``n`` for exact vectors).
    """

    radius: int
    entries: dict[bytes, float] = field(default_factory=dict)
    sample_count: int = 0

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def total(self) -> float:
        return math.fsum(self.entries.values())

    def entropy(self) -> float:
        return -math.fsum(p * math.log(p) for p in self.entries.values() if p > 0)

    def get(self, code: bytes) -> float:
        return self.entries.get(code, 0.0)

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "sample_count": self.sample_count,
            "entries": {k.hex(): v for k, v in sorted(self.entries.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FrequencyVector":
        return cls(
            radius=int(data["radius"]),
            entries={bytes.fromhex(k): float(v) for k, v in data["entries"].items()},
            sample_count=int(data.get("sample_count", 0)),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FrequencyVector":
        return cls.from_dict(json.loads(text))


def _from_counts(radius: int, counts: dict[bytes, int], total: int) -> FrequencyVector:
    return FrequencyVector(radius, {c: k / total for c, k in counts.items()}, total)


def ball_type_counts(g: BoundedDegreeGraph, r: int) -> dict[bytes, int]:
    counts: dict[bytes, int] = {}
    for v in range(g.n):
        code = _ball_code(_explore(g.neighbors, v, r))
        counts[code] = counts.get(code, 0) + 1
    return counts


def exact_frequency(g: BoundedDegreeGraph, r: int) -> FrequencyVector:
    if r < 0:
        raise ValueError("radius must be non-negative")
    if g.n == 0:
        return FrequencyVector(r, {}, 0)
    return _from_counts(r, ball_type_counts(g, r), g.n)


def sampled_frequency(
    oracle: QueryOracle,
    r: int,
    s: int,
    seed=None,
    pad: bool = False,
) -> FrequencyVector:
    """Empirical type frequencies of ``s`` vertices drawn uniformly with replacement."""
    if s < 1:
        raise ValueError("sample count must be at least 1")
    rng = np.random.default_rng(seed)
    roots = rng.integers(0, oracle.n, size=s)
    budget = exploration_budget(oracle.d, r) if pad else None
    counts: dict[bytes, int] = {}
    for v in roots.tolist():
        code = _ball_code(extract_ball(oracle, v, r, pad_to=budget))
        counts[code] = counts.get(code, 0) + 1
    return _from_counts(r, counts, s)


def rho_distance(a: FrequencyVector, b: FrequencyVector) -> float:
    """L1 distance between two frequency vectors of the same radius."""
    if a.radius != b.radius:
        raise RadiusMismatch(f"radius {a.radius} != {b.radius}")
    keys = set(a.entries) | set(b.entries)
    return math.fsum(abs(a.entries.get(k, 0.0) - b.entries.get(k, 0.0)) for k in keys)


def rho(g: BoundedDegreeGraph, h: BoundedDegreeGraph, r: int) -> float:
    return rho_distance(exact_frequency(g, r), exact_frequency(h, r))


def rho_breakdown(a: FrequencyVector, b: FrequencyVector) -> list[tuple[bytes, float, float]]:
    """Per-type ``(code, a, b)`` rows sorted by decreasing contribution."""
    if a.radius != b.radius:
        raise RadiusMismatch(f"radius {a.radius} != {b.radius}")
    keys = set(a.entries) | set(b.entries)
    rows = [(k, a.get(k), b.get(k)) for k in keys]
    rows.sort(key=lambda t: (-abs(t[1] - t[2]), t[0]))
    return rows
