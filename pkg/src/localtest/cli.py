"""Command-line front end.

Exit status: 0 success, 2 an experiment ran but its bound or bar failed,
3 bad input (unparsable file or spec, infeasible request, tripped guard).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .exceptions import (
    CalibrationFailed,
    GraphError,
    InfeasibleSpec,
    NoAdmissibleR,
    SearchBudgetExceeded,
)
from .generators import generate
from .harness import (
    CalibrationGrid,
    calibrate,
    cut_experiment,
    default_corpus,
    load_corpus_dir,
    load_graph_arg,
    rows_to_csv,
    tester_experiment,
    transfer_experiment,
)
from .hyperfinite import find_partition_exact, find_partition_greedy
from .io import format_edge_list, save_cut_edges
from .stats import exact_frequency, rho_breakdown, rho_distance
from .testers import CalibrationProfile, default_profile

EXIT_OK = 0
EXIT_BOUND = 2
EXIT_INPUT = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for failed bounds here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _say(*parts) -> None:
    # summaries go to stderr when the main output owns stdout
    print(*parts, file=sys.stderr)


def cmd_generate(args) -> int:
    g = generate(args.spec, seed=args.seed, d=args.d)
    _emit(format_edge_list(g), args.out)
    _say(f"n={g.n} edges={g.num_edges} max_degree={g.max_degree} d={g.d}")
    return EXIT_OK


def cmd_stats(args) -> int:
    g = load_graph_arg(args.graph, args.seed)
    f = exact_frequency(g, args.r)
    _emit(json.dumps(f.to_dict(), sort_keys=True, indent=1) + "\n", args.out)
    _say(f"radius={args.r} n={g.n} support={f.support_size} entropy={f.entropy():.6f}")
    for code, p in sorted(f.entries.items(), key=lambda t: (-t[1], t[0]))[: args.top]:
        _say(f"  {p:.6f}  {code.hex()[:48]}")
    return EXIT_OK


def cmd_rho(args) -> int:
    a = exact_frequency(load_graph_arg(args.a, args.seed), args.r)
    b = exact_frequency(load_graph_arg(args.b, args.seed), args.r)
    value = rho_distance(a, b)
    rows = [{"type": c.hex(), "a": x, "b": y, "contribution": abs(x - y)} for c, x, y in rho_breakdown(a, b)]
    if args.out:
        Path(args.out).write_text(rows_to_csv(rows, ["type", "a", "b", "contribution"]))
    print(f"rho_{args.r} = {value!r}")
    for row in rows[: args.top]:
        print(f"  {row['contribution']:.6f}  a={row['a']:.6f} b={row['b']:.6f}  {row['type'][:40]}")
    return EXIT_OK


def cmd_partition(args) -> int:
    g = load_graph_arg(args.graph, args.seed)
    if args.mode == "exact":
        cut = find_partition_exact(g, args.k, max_vertices=args.max_vertices)
    else:
        cut = find_partition_greedy(g, args.k, seed=args.seed)
    if args.out:
        save_cut_edges(cut.cut_edges, args.out)
    print(f"mode={args.mode} k={args.k} n={g.n} cut={cut.size} delta={cut.delta:.6f}")
    print("component sizes: " + " ".join(f"{s}:{c}" for s, c in cut.size_histogram().items()))
    return EXIT_OK


def cmd_cut_experiment(args) -> int:
    g = load_graph_arg(args.graph, args.seed)
    try:
        rep = cut_experiment(g, args.k, args.eps, args.trials, args.seed, args.max_radius, args.jobs)
    except NoAdmissibleR as exc:
        _say(f"no admissible radius: {exc}")
        return EXIT_BOUND
    _emit(rows_to_csv(rep.rows), args.out)
    for key, val in rep.summary().items():
        _say(f"{key}={val}")
    return EXIT_OK if rep.within_bound else EXIT_BOUND


def cmd_transfer_experiment(args) -> int:
    src = load_graph_arg(args.source, args.seed)
    tgt = load_graph_arg(args.target, args.seed)
    try:
        rep = transfer_experiment(src, tgt, args.k, args.eps, args.trials, args.seed, args.max_radius, args.jobs)
    except NoAdmissibleR as exc:
        _say(f"no admissible radius: {exc}")
        return EXIT_BOUND
    rows = [dict(r, graph="source") for r in rep.source_rows] + [dict(r, graph="target") for r in rep.target_rows]
    cols = ["graph", "trial", "cut_size", "boundary_edges", "leftover_edges", "selected_sets", "covered_vertices", "max_component"]
    _emit(rows_to_csv(rows, cols), args.out)
    for key, val in rep.summary().items():
        _say(f"{key}={val}")
    return EXIT_OK if rep.within_bound else EXIT_BOUND


def cmd_calibrate(args) -> int:
    if args.corpus:
        ins, far = load_corpus_dir(args.corpus, args.d)
    else:
        ins, far = default_corpus(args.d)
    if not ins or not far:
        _say("calibration needs graphs in both in/ and far/")
        return EXIT_INPUT
    grid = CalibrationGrid(trials=args.calibration_trials)
    profiles = []
    for eps in args.eps:
        try:
            profiles.append(calibrate(ins, far, eps, args.d, grid, seed=args.seed))
        except CalibrationFailed as exc:
            _say(f"eps={eps}: {exc}; frontier size {len(exc.frontier or [])}")
            return EXIT_BOUND
    if len(profiles) == 1:
        text = profiles[0].to_json()
    else:
        text = json.dumps({"profiles": [p.to_dict() for p in profiles]}, sort_keys=True, indent=1)
    _emit(text + "\n", args.out)
    for p in profiles:
        _say(f"eps={p.eps} k={p.k} R={p.R} delta={p.delta:.4f} phase1_samples={p.phase1_samples()} "
             f"phase2_samples={p.phase2_samples} query_budget={p.query_budget()}")
    return EXIT_OK


def _load_profile(path, eps) -> CalibrationProfile:
    if path is None:
        prof = default_profile()
    else:
        data = json.loads(Path(path).read_text())
        options = [CalibrationProfile.from_dict(p) for p in data["profiles"]] if "profiles" in data else [
            CalibrationProfile.from_dict(data)
        ]
        match = [p for p in options if eps is None or math.isclose(p.eps, eps)]
        if not match:
            raise InfeasibleSpec(f"no profile for eps={eps}")
        prof = match[0]
    if eps is not None and not math.isclose(prof.eps, eps):
        raise InfeasibleSpec(f"profile is calibrated for eps={prof.eps}, not {eps}")
    return prof


def cmd_test(args) -> int:
    prof = _load_profile(args.profile, args.eps)
    g = load_graph_arg(args.graph, args.seed, d=args.d if args.d is not None else prof.d)
    rep = tester_experiment(g, prof, args.trials, args.seed, args.tester, args.jobs)
    _emit(rows_to_csv(rep.rows, ["trial", "decision", "phase", "queries_used"]), args.out)
    for key, val in rep.summary().items():
        _say(f"{key}={val}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", default=None, help="write the main output here instead of stdout")
    common.add_argument("--config", default=None, help="JSON file of option defaults")

    p = _Parser(prog="localtest", description="Constant-query testing of bounded-degree graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("generate", parents=[common], help="write a generated graph as an edge list")
    s.add_argument("spec")
    s.add_argument("--d", type=int, default=None)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("stats", parents=[common], help="exact ball-type frequencies")
    s.add_argument("graph")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("--top", type=int, default=10)
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("rho", parents=[common], help="L1 distance between frequency vectors")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("--top", type=int, default=10)
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("partition", parents=[common], help="small-component cut")
    s.add_argument("graph")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--mode", choices=["exact", "greedy"], default="greedy")
    s.add_argument("--max-vertices", type=int, default=16)
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("cut-experiment", parents=[common], help="size of the randomized local cut")
    s.add_argument("graph")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--eps", type=float, default=None)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--max-radius", type=int, default=12)
    s.set_defaults(func=cmd_cut_experiment)

    s = sub.add_parser("transfer-experiment", parents=[common], help="apply a source table to a target graph")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--eps", type=float, default=None)
    s.add_argument("--trials", type=int, default=500)
    s.add_argument("--max-radius", type=int, default=12)
    s.set_defaults(func=cmd_transfer_experiment)

    s = sub.add_parser("calibrate", parents=[common], help="fit tester constants on in/far corpora")
    s.add_argument("corpus", nargs="?", default=None, help="directory with in/ and far/ (default: built-in corpus)")
    s.add_argument("--eps", type=float, nargs="+", default=[0.1])
    s.add_argument("--d", type=int, default=4)
    s.add_argument("--calibration-trials", type=int, default=20)
    s.set_defaults(func=cmd_calibrate)

    s = sub.add_parser("test", parents=[common], help="run a tester repeatedly on one graph")
    s.add_argument("graph")
    s.add_argument("--tester", choices=["planarity", "hyperfinite"], default="planarity")
    s.add_argument("--profile", default=None)
    s.add_argument("--eps", type=float, default=None)
    s.add_argument("--d", type=int, default=None)
    s.add_argument("--trials", type=int, default=100)
    s.set_defaults(func=cmd_test)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            overrides = json.loads(Path(args.config).read_text())
            sub = parser._subparsers._group_actions[0].choices[args.command]
            sub.set_defaults(**{k.replace("-", "_"): v for k, v in overrides.items()})
            args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except (GraphError, InfeasibleSpec, SearchBudgetExceeded, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
