"""Constant-query testers driven only through a QueryOracle.

The distinguisher samples rooted balls, forms their empirical type
frequencies and compares them with a stored net of frequency vectors.
The minor-freeness tester runs it as a first phase and then looks for a
forbidden minor inside a few sampled balls.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .graph import BoundedDegreeGraph, QueryOracle, build_graph
from .minors import has_minor, named_pattern
from .stats import (
    FrequencyVector,
    exact_frequency,
    exploration_budget,
    extract_ball,
    rho_distance,
    sampled_frequency,
)

PROFILE_VERSION = 1
PLANARITY_PATTERNS = ("K5", "K33")


@dataclass
class ReferenceNet:
    """Frequency vectors of admissible graphs at one radius, thinned to a delta/4 net."""

    radius: int
    delta: float
    points: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def support(self) -> set:
        out: set = set()
        for p in self.points:
            out.update(p.entries)
        return out

    def nearest(self, f: FrequencyVector) -> tuple[int, float]:
        dists = [rho_distance(f, p) for p in self.points]
        i = int(np.argmin(dists))
        return i, dists[i]

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "delta": self.delta,
            "points": [p.to_dict() for p in self.points],
            "provenance": list(self.provenance),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ReferenceNet":
        return cls(
            int(data["radius"]),
            float(data["delta"]),
            [FrequencyVector.from_dict(p) for p in data["points"]],
            list(data.get("provenance", [])),
        )

    @classmethod
    def from_json(cls, text: str) -> "ReferenceNet":
        return cls.from_dict(json.loads(text))


def thin_points(points: Sequence[FrequencyVector], radius: float) -> list[int]:
    """Greedy farthest-point selection until every point is within ``radius`` of a chosen one."""
    if not points:
        return []
    chosen = [0]
    gap = [rho_distance(p, points[0]) for p in points]
    while True:
        far = int(np.argmax(gap))
        if gap[far] <= radius:
            return chosen
        chosen.append(far)
        gap = [min(g, rho_distance(p, points[far])) for g, p in zip(gap, points)]


def build_reference_net(
    corpus: Iterable,
    R: int,
    delta: float,
    labels: Sequence[str] | None = None,
    thin: bool = True,
) -> ReferenceNet:
    """Exact frequency vectors of ``corpus`` at radius ``R``, optionally thinned to a delta/4 net.

    ``corpus`` holds graphs or precomputed FrequencyVectors. A kept point's
    provenance lists every corpus label it stands for.
    """
    items = list(corpus)
    labels = list(labels) if labels is not None else [f"graph{i}" for i in range(len(items))]
    if len(labels) != len(items):
        raise ValueError("one label per corpus graph is required")
    vecs = [x if isinstance(x, FrequencyVector) else exact_frequency(x, R) for x in items]
    if any(v.radius != R for v in vecs):
        raise ValueError("all frequency vectors must have radius R")
    keep = thin_points(vecs, delta / 4) if thin else list(range(len(vecs)))
    cover: dict[int, list[str]] = {i: [] for i in keep}
    for j, v in enumerate(vecs):
        owner = min(keep, key=lambda i: (rho_distance(v, vecs[i]), i))
        cover[owner].append(labels[j])
    return ReferenceNet(R, delta, [vecs[i] for i in keep], ["+".join(cover[i]) for i in keep])


@dataclass
class TesterVerdict:
    decision: str
    phase: str
    queries_used: int
    evidence: dict = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.decision == "accept"

    def to_dict(self) -> dict:
        return {"decision": self.decision, "phase": self.phase, "queries_used": self.queries_used, "evidence": self.evidence}


def sample_count(support_size: int, delta: float, constant: float) -> int:
    """c * h^2 / delta^2 * log(max(h, 2)), rounded up, at least 1."""
    h = max(support_size, 1)
    return max(1, math.ceil(constant * h * h / (delta * delta) * math.log(max(h, 2))))


def distinguish(
    o: QueryOracle,
    net: ReferenceNet,
    delta: float | None = None,
    seed=None,
    sample_constant: float = 1.0,
) -> TesterVerdict:
    """Accept iff the sampled frequencies are within delta/2 of some net point.

    Every ball exploration is padded to the worst-case query budget, so the
    number of queries depends only on the net, delta and the constant.
    """
    delta = net.delta if delta is None else delta
    start = o.queries_used
    if not net.points:
        return TesterVerdict("reject", "distinguish", 0, {"reason": "empty net"})
    s = sample_count(len(net.support()), delta, sample_constant)
    est = sampled_frequency(o, net.radius, s, seed=seed, pad=True)
    i, dist = net.nearest(est)
    decision = "accept" if dist <= delta / 2 else "reject"
    ev = {"nearest": net.provenance[i] if i < len(net.provenance) else i, "distance": dist, "samples": s}
    return TesterVerdict(decision, "distinguish", o.queries_used - start, ev)


def theoretical_delta(eps: float, d: int) -> float:
    """(8/d) eps log(4/3): the closeness below which cuts transfer between graphs."""
    return 8.0 / d * eps * math.log(4.0 / 3.0)


def resolve_eps0(eps: float, d: int, start_divisor: int = 8) -> float:
    """Largest eps/(start_divisor * 2^j) with 4 eps0 log(4 d / eps0) < eps / 2."""
    eps0 = eps / start_divisor
    while 4 * eps0 * math.log(4 * d / eps0) >= eps / 2:
        eps0 /= 2
    return eps0


def test_hyperfinite(
    o: QueryOracle,
    eps: float,
    k: int,
    net: ReferenceNet,
    seed=None,
    safety: float = 1.0,
    sample_constant: float = 1.0,
) -> TesterVerdict:
    """Frequency test against a net of hyper-finite graphs at resolution safety * (8/d) eps log(4/3)."""
    delta = theoretical_delta(eps, o.d) * safety
    v = distinguish(o, net, delta, seed, sample_constant)
    v.phase = "hyperfinite"
    v.evidence.update({"k": k, "delta": delta})
    return v


@dataclass
class CalibrationProfile:
    """Resolved tester constants for one (eps, d) pair together with the reference net."""

    eps: float
    d: int
    eps0: float
    k: int
    R: int
    safety: float
    sample_constant: float
    phase2_samples: int
    net: ReferenceNet
    patterns: tuple = PLANARITY_PATTERNS
    version: int = PROFILE_VERSION
    notes: dict = field(default_factory=dict)

    @property
    def delta(self) -> float:
        return theoretical_delta(self.eps0, self.d) * self.safety

    def phase1_samples(self) -> int:
        if not self.net.points:
            return 0
        return sample_count(len(self.net.support()), self.delta, self.sample_constant)

    def query_budget(self) -> int:
        """Queries spent when both phases run (phase 1 alone when it rejects)."""
        return self.phase1_samples() * exploration_budget(self.d, self.R) + self.phase2_samples * exploration_budget(
            self.d, self.k
        )

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "eps": self.eps,
            "d": self.d,
            "eps0": self.eps0,
            "k": self.k,
            "R": self.R,
            "safety": self.safety,
            "sample_constant": self.sample_constant,
            "phase2_samples": self.phase2_samples,
            "patterns": list(self.patterns),
            "net": self.net.to_dict(),
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, data: dict) -> "CalibrationProfile":
        if int(data.get("version", 0)) != PROFILE_VERSION:
            raise ValueError(f"unsupported profile version {data.get('version')}")
        return cls(
            eps=float(data["eps"]),
            d=int(data["d"]),
            eps0=float(data["eps0"]),
            k=int(data["k"]),
            R=int(data["R"]),
            safety=float(data["safety"]),
            sample_constant=float(data["sample_constant"]),
            phase2_samples=int(data["phase2_samples"]),
            net=ReferenceNet.from_dict(data["net"]),
            patterns=tuple(data.get("patterns", PLANARITY_PATTERNS)),
            notes=dict(data.get("notes", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "CalibrationProfile":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "CalibrationProfile":
        with open(path) as fh:
            return cls.from_json(fh.read())

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())


def _ball_graph(ball, d: int) -> BoundedDegreeGraph:
    return build_graph(ball.size, d, ball.edges)


def _split_seed(seed) -> tuple[np.random.SeedSequence, np.random.SeedSequence]:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    first, second = ss.spawn(2)
    return first, second


def test_minor_free(
    o: QueryOracle,
    patterns: Sequence,
    eps: float,
    seed=None,
    profile: CalibrationProfile | None = None,
    phase2_only: bool = False,
) -> TesterVerdict:
    """Two phases: frequency test for hyper-finiteness, then forbidden-minor search in radius-k balls."""
    if not patterns:
        raise ValueError("at least one forbidden pattern is required")
    if profile is None:
        raise ValueError("a calibration profile is required")
    if not math.isclose(profile.eps, eps):
        raise ValueError(f"profile calibrated for eps={profile.eps}, not {eps}")
    pats = [(p, named_pattern(p)) if isinstance(p, str) else (f"graph{i}", p) for i, p in enumerate(patterns)]
    start = o.queries_used
    first, second = _split_seed(seed)
    evidence: dict = {}
    if not phase2_only:
        v1 = test_hyperfinite(o, profile.eps0, profile.k, profile.net, first, profile.safety, profile.sample_constant)
        evidence["phase1"] = v1.evidence
        if not v1.accepted:
            return TesterVerdict("reject", "phase1", o.queries_used - start, evidence)
    rng = np.random.default_rng(second)
    roots = rng.integers(0, o.n, size=profile.phase2_samples).tolist()
    budget = exploration_budget(o.d, profile.k)
    for v in roots:
        ball = extract_ball(o, v, profile.k, pad_to=budget)
        host = _ball_graph(ball, o.d)
        for name, pat in pats:
            if has_minor(host, pat, planar_shortcut=True):
                evidence["phase2"] = {"root": v, "pattern": name, "ball_size": ball.size}
                return TesterVerdict("reject", "phase2", o.queries_used - start, evidence)
    evidence["phase2"] = {"balls": len(roots)}
    return TesterVerdict("accept", "phase2", o.queries_used - start, evidence)


def test_planarity(o: QueryOracle, eps: float, seed=None, profile: CalibrationProfile | None = None) -> TesterVerdict:
    return test_minor_free(o, list(PLANARITY_PATTERNS), eps, seed, profile)


def sweep_phase2(g: BoundedDegreeGraph, patterns: Sequence, k: int) -> list[tuple[int, str]]:
    """Every (root, pattern) whose radius-k ball contains the pattern as a minor."""
    pats = [(p, named_pattern(p)) if isinstance(p, str) else (f"graph{i}", p) for i, p in enumerate(patterns)]
    found = []
    for v in range(g.n):
        host = _ball_graph(extract_ball(g, v, k), g.d)
        for name, pat in pats:
            if has_minor(host, pat, planar_shortcut=True):
                found.append((v, name))
    return found


# these are algorithms, not pytest tests
for _fn in (test_hyperfinite, test_minor_free, test_planarity):
    _fn.__test__ = False


def default_profile() -> CalibrationProfile:
    """Shipped planarity profile for eps = 0.1, d = 4 (output of ``localtest calibrate``)."""
    from importlib.resources import files

    return CalibrationProfile.from_json(files("localtest.profiles").joinpath("planarity_eps0.1_d4.json").read_text())
