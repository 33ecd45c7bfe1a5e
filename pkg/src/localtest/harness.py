"""Seeded experiments: randomized-cut size, cut transfer, tester acceptance, calibration.

Every trial ``t`` of a run with seed ``s`` draws from ``SeedSequence([s, t])``,
so results do not depend on how trials are spread over worker processes.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from .exceptions import CalibrationFailed
from .generators import generate
from .graph import BoundedDegreeGraph, QueryOracle
from .hyperfinite import (
    PartitionCut,
    choose_R,
    cut_bound,
    find_partition_greedy,
    prepare_local_cut,
)
from .io import load_edge_list
from .stats import exact_frequency, rho_distance
from .testers import (
    PLANARITY_PATTERNS,
    CalibrationProfile,
    build_reference_net,
    distinguish,
    resolve_eps0,
    test_minor_free,
    theoretical_delta,
)

# corpora behind the shipped planarity profile (eps = 0.1, d = 4)
DEFAULT_IN_CORPUS = (
    ("grid(30,30)", 0),
    ("grid(60,60)", 0),
    ("random_planar(1500,4)", 101),
    ("random_planar(3000,4)", 102),
    ("tree(1500,4)", 201),
    ("tree(3000,4)", 202),
)
DEFAULT_FAR_CORPUS = (
    ("random_regular(1000,3)", 301),
    ("random_regular(3000,3)", 302),
    ("union_copies(complete(5),200)", 0),
)


# radius-search eps used when the source cut is empty (only q = 1 everywhere passes)
MIN_SEARCH_EPS = 1e-9


def trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, trial])


def wilson_interval(successes: int, trials: int, alpha: float = 0.05) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    lo, hi = proportion_confint(successes, trials, alpha=alpha, method="wilson")
    return float(lo), float(hi)


def run_trials(fn: Callable, trials: int, jobs: int = 1) -> list:
    """``fn(t)`` for t in range(trials), results in trial order."""
    if jobs <= 1 or trials <= 1:
        return [fn(t) for t in range(trials)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, range(trials)))


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str] | None = None) -> str:
    columns = list(columns or (rows[0].keys() if rows else []))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: _fmt(r.get(c)) for c in columns})
    return buf.getvalue()


def _fmt(x):
    if isinstance(x, float):
        return repr(round(x, 12))
    return x


def load_graph_arg(text: str, seed: int = 0, d: int | None = None) -> BoundedDegreeGraph:
    """A path to an edge-list file, or a generator spec such as ``grid(10,10)``."""
    p = Path(text)
    if p.exists():
        g = load_edge_list(p)
        return g.with_degree_bound(d) if d is not None else g
    return generate(text, seed=seed, d=d)


# --------------------------------------------------------------------------
# randomized cut experiments


@dataclass
class CutReport:
    rows: list
    n: int
    d: int
    k: int
    R: int
    delta_source: float
    source_cut: int
    mean: float
    bound: float
    tried: list = field(default_factory=list)

    @property
    def within_bound(self) -> bool:
        return self.mean <= self.bound

    def summary(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "R": self.R,
            "source_cut": self.source_cut,
            "delta_source": self.delta_source,
            "trials": len(self.rows),
            "mean_cut": self.mean,
            "bound": self.bound,
            "within_bound": self.within_bound,
        }


class _CutTrial:
    """Picklable per-trial callable."""

    def __init__(self, proc, seed):
        self.proc = proc
        self.seed = seed

    def __call__(self, t):
        s = self.proc.draw(np.random.default_rng(trial_seed(self.seed, t)))
        return {
            "trial": t,
            "cut_size": s.size,
            "boundary_edges": s.first_part,
            "leftover_edges": s.leftover,
            "selected_sets": s.selected,
            "covered_vertices": s.covered,
            "max_component": s.max_component,
        }


def source_cut(g: BoundedDegreeGraph, k: int, seed: int = 0) -> PartitionCut:
    return find_partition_greedy(g, k, seed=seed)


def cut_experiment(
    g: BoundedDegreeGraph,
    k: int,
    eps: float | None = None,
    trials: int = 200,
    seed: int = 0,
    max_radius: int = 12,
    jobs: int = 1,
    table_mode: str = "auto",
) -> CutReport:
    """Greedy cut, radius search, table, then ``trials`` draws of the randomized cut.

    ``eps`` drives the radius search and defaults to the greedy cut density;
    selection probabilities and the reported bound use the cut density.
    """
    cut = source_cut(g, k, seed)
    delta = cut.delta
    if delta == 0:
        rows = [
            {"trial": t, "cut_size": 0, "boundary_edges": 0, "leftover_edges": 0, "selected_sets": 0,
             "covered_vertices": g.n, "max_component": max((len(c) for c in cut.components), default=0)}
            for t in range(trials)
        ]
        return CutReport(rows, g.n, g.d, k, 0, 0.0, 0, 0.0, 0.0)
    choice = choose_R(g, cut, k, eps if eps is not None else delta, max_radius=max_radius, mode=table_mode)
    proc = prepare_local_cut(g, choice.table, delta, g.d)
    rows = run_trials(_CutTrial(proc, seed), trials, jobs)
    mean = float(np.mean([r["cut_size"] for r in rows])) if rows else 0.0
    return CutReport(rows, g.n, g.d, k, choice.R, delta, cut.size, mean, cut_bound(delta, g.d, g.n), choice.tried)


@dataclass
class TransferReport:
    source_rows: list
    target_rows: list
    n_source: int
    n_target: int
    R: int
    k: int
    r: int
    rho_r: float
    source_mean: float
    target_mean: float
    difference: float
    ci: float
    d: int

    @property
    def allowance(self) -> float:
        return self.d * self.rho_r / 2 + self.ci

    @property
    def within_bound(self) -> bool:
        return self.difference <= self.allowance

    def summary(self) -> dict:
        return {
            "n_source": self.n_source,
            "n_target": self.n_target,
            "R": self.R,
            "k": self.k,
            "r": self.r,
            "rho_r": self.rho_r,
            "source_density": self.source_mean,
            "target_density": self.target_mean,
            "difference": self.difference,
            "ci": self.ci,
            "allowance": self.allowance,
            "within_bound": self.within_bound,
        }


def transfer_experiment(
    source: BoundedDegreeGraph,
    target: BoundedDegreeGraph,
    k: int,
    eps: float | None = None,
    trials: int = 500,
    seed: int = 0,
    max_radius: int = 12,
    jobs: int = 1,
    cut: PartitionCut | None = None,
) -> TransferReport:
    """Build the table on ``source`` and draw the randomized cut on both graphs.

    The difference of the per-vertex mean cut sizes is compared with
    d * rho_r / 2 plus a 95% normal interval, r = R + k + 1.
    """
    if source.d != target.d:
        raise ValueError("source and target must share the degree bound")
    cut = cut if cut is not None else source_cut(source, k, seed)
    delta = cut.delta
    search_eps = eps if eps is not None else (delta or MIN_SEARCH_EPS)
    choice = choose_R(source, cut, k, search_eps, max_radius=max_radius, mode="complete")
    table = choice.table
    src = prepare_local_cut(source, table, delta, source.d)
    tgt = prepare_local_cut(target, table, delta, target.d)
    src_rows = run_trials(_CutTrial(src, seed), trials, jobs)
    tgt_rows = run_trials(_CutTrial(tgt, seed), trials, jobs)
    a = np.array([r["cut_size"] for r in src_rows], dtype=float) / source.n
    b = np.array([r["cut_size"] for r in tgt_rows], dtype=float) / target.n
    ci = 1.96 * math.sqrt(a.var(ddof=1) / len(a) + b.var(ddof=1) / len(b)) if trials > 1 else float("inf")
    r = choice.R + k + 1
    rho_r = rho_distance(exact_frequency(source, r), exact_frequency(target, r))
    return TransferReport(
        src_rows, tgt_rows, source.n, target.n, choice.R, k, r, rho_r,
        float(a.mean()), float(b.mean()), float(abs(a.mean() - b.mean())), ci, source.d,
    )


# --------------------------------------------------------------------------
# tester experiments


class _TesterTrial:
    def __init__(self, g, profile, seed, kind):
        self.g = g
        self.profile = profile
        self.seed = seed
        self.kind = kind

    def __call__(self, t):
        o = QueryOracle(self.g)
        ss = trial_seed(self.seed, t)
        if self.kind == "planarity":
            v = test_minor_free(o, list(self.profile.patterns), self.profile.eps, ss, self.profile)
        elif self.kind == "hyperfinite":
            v = distinguish(o, self.profile.net, self.profile.delta, ss, self.profile.sample_constant)
        else:
            raise ValueError(f"unknown tester {self.kind!r}")
        return {"trial": t, "decision": v.decision, "phase": v.phase, "queries_used": v.queries_used}


@dataclass
class TestReport:
    rows: list
    accepted: int
    trials: int

    __test__ = False

    @property
    def rate(self) -> float:
        return self.accepted / self.trials if self.trials else 0.0

    def summary(self) -> dict:
        lo, hi = wilson_interval(self.accepted, self.trials)
        return {"trials": self.trials, "accepted": self.accepted, "accept_rate": self.rate, "wilson_low": lo, "wilson_high": hi}


def tester_experiment(
    g: BoundedDegreeGraph,
    profile: CalibrationProfile,
    trials: int = 100,
    seed: int = 0,
    kind: str = "planarity",
    jobs: int = 1,
) -> TestReport:
    rows = run_trials(_TesterTrial(g, profile, seed, kind), trials, jobs)
    return TestReport(rows, sum(r["decision"] == "accept" for r in rows), trials)


tester_experiment.__test__ = False


# --------------------------------------------------------------------------
# calibration


@dataclass
class CalibrationGrid:
    radii: tuple = (1, 2)
    deltas: tuple = (0.2, 0.4, 0.8)
    sample_constants: tuple = (0.02, 0.05, 0.1, 0.25, 0.5)
    ks: tuple = (3, 4)
    phase2_samples: tuple = (5, 10, 20)
    max_phase1_samples: int = 20_000
    trials: int = 20
    bar: float = 0.8
    margin: float = 2.0


def default_corpus(d: int = 4):
    ins = [(f"{s}@{seed}", generate(s, seed=seed, d=d)) for s, seed in DEFAULT_IN_CORPUS]
    far = [(f"{s}@{seed}", generate(s, seed=seed, d=d)) for s, seed in DEFAULT_FAR_CORPUS]
    return ins, far


def load_corpus_dir(path, d: int | None = None):
    """``path/in`` and ``path/far`` hold edge-list files (``*.edges`` or ``*.txt``)."""
    root = Path(path)
    out = []
    for sub in ("in", "far"):
        files = sorted(p for p in (root / sub).glob("*") if p.suffix in (".edges", ".txt")) if (root / sub).is_dir() else []
        graphs = []
        for p in files:
            g = load_edge_list(p)
            graphs.append((p.stem, g.with_degree_bound(d) if d is not None else g))
        out.append(graphs)
    return out[0], out[1]


def _rate(fn, graph, trials, seed) -> float:
    hits = 0
    for t in range(trials):
        hits += fn(QueryOracle(graph), trial_seed(seed, t))
    return hits / trials


def _phase1_stream(ss: np.random.SeedSequence) -> np.random.SeedSequence:
    # the same child stream that test_minor_free hands to its first phase
    return np.random.SeedSequence(ss.entropy, spawn_key=ss.spawn_key + (0,))


def calibrate(
    in_corpus: Sequence[tuple[str, BoundedDegreeGraph]],
    far_corpus: Sequence[tuple[str, BoundedDegreeGraph]],
    eps: float,
    d: int,
    grid: CalibrationGrid | None = None,
    seed: int = 0,
    patterns: Sequence[str] = PLANARITY_PATTERNS,
) -> CalibrationProfile:
    """Cheapest grid point reaching the accept/reject bars on every corpus graph.

    The net is built from the in-class corpus. Phase-1 settings are searched
    in order of increasing sample count; the phase-2 sample count is the
    smallest that, together with phase 1, reaches the bars. The winning
    sample constant and phase-2 count are then multiplied by ``margin``.
    """
    grid = grid or CalibrationGrid()
    if not in_corpus or not far_corpus:
        raise CalibrationFailed("both an in-class and a far corpus are required", [])
    eps0 = resolve_eps0(eps, d)
    base = theoretical_delta(eps0, d)
    labels = [name for name, _ in in_corpus]
    frontier = []
    for R in grid.radii:
        freqs = [exact_frequency(g, R) for _, g in in_corpus]
        options = []
        for delta, c in itertools.product(grid.deltas, grid.sample_constants):
            net = build_reference_net(freqs, R, delta, labels)
            s = _phase1_samples(net, delta, c)
            if s <= grid.max_phase1_samples:
                options.append((s, delta, c, net))
        options.sort(key=lambda o: (o[0], -o[1]))
        for s, delta, c, net in options:
            ok, rates = _phase1_check(net, delta, c, in_corpus, far_corpus, grid, seed)
            frontier.append({"R": R, "delta": delta, "sample_constant": c, "samples": s, "rates": rates})
            if not ok:
                continue
            for k, m in itertools.product(sorted(grid.ks), sorted(grid.phase2_samples)):
                prof = CalibrationProfile(
                    eps, d, eps0, k, R, delta / base, c, m, net, tuple(patterns),
                )
                ok2, rates2 = _full_check(prof, in_corpus, far_corpus, grid, seed)
                frontier.append({"R": R, "delta": delta, "sample_constant": c, "k": k, "m": m, "rates": rates2})
                if ok2:
                    final = CalibrationProfile(
                        eps, d, eps0, k, R, delta / base, c * grid.margin,
                        int(math.ceil(m * grid.margin)), net, tuple(patterns),
                    )
                    final.notes = {
                        "calibration_rates": rates2,
                        "phase1_samples": final.phase1_samples(),
                        "query_budget": final.query_budget(),
                        "trials": grid.trials,
                        "bar": grid.bar,
                        "margin": grid.margin,
                        "seed": seed,
                        "greedy_delta_at_k": {
                            name: find_partition_greedy(g, k).delta for name, g in in_corpus
                        },
                    }
                    return final
    raise CalibrationFailed("no grid point reaches the bars", frontier)


def _phase1_samples(net, delta, c):
    from .testers import sample_count

    return sample_count(len(net.support()), delta, c)


def _phase1_check(net, delta, c, in_corpus, far_corpus, grid, seed):
    rates = {}
    ok = True
    for name, g in in_corpus:
        r = _rate(lambda o, ss: distinguish(o, net, delta, _phase1_stream(ss), c).accepted, g, grid.trials, seed)
        rates[name] = r
        ok &= r >= grid.bar
        if not ok:
            return False, rates
    for name, g in far_corpus:
        # phase 2 may still reject these; only the in-class bar is binding here
        rates[name] = _rate(lambda o, ss: distinguish(o, net, delta, _phase1_stream(ss), c).accepted, g, grid.trials, seed)
    return ok, rates


def _full_check(prof, in_corpus, far_corpus, grid, seed):
    rates = {}
    ok = True
    for name, g in in_corpus:
        r = _rate(lambda o, ss: test_minor_free(o, list(prof.patterns), prof.eps, ss, prof).accepted, g, grid.trials, seed)
        rates[name] = r
        ok &= r >= grid.bar
    for name, g in far_corpus:
        r = _rate(lambda o, ss: test_minor_free(o, list(prof.patterns), prof.eps, ss, prof).accepted, g, grid.trials, seed)
        rates[name] = r
        ok &= (1 - r) >= grid.bar
    return ok, rates
