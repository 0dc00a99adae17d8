"""Command-line entry point: ``deptree {analyze,bounds,simulate,verify,construct}``.

Exit codes: 0 ok, 1 I/O error, 2 no accepted sentences, 3 invariant
violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from deptree import __version__
from deptree.arrangement import LinearArrangement, crossing_count, length_stats
from deptree.baseline import analytic_baseline, monte_carlo_baseline
from deptree.bounds import BoundViolation, bound_violations, bounds_report
from deptree.corpus import (
    AGGREGATE_COLUMNS,
    REPORT_COLUMNS,
    SCHEMA_VERSION,
    EdgeListError,
    ParseLog,
    aggregate_by_length,
    analyze_corpus,
    analyze_tree,
    exact_str,
    format_edgelist,
    json_line,
    parse_conllu,
    parse_edgelist,
    write_csv,
)
from deptree.fixtures import fixture_path
from deptree.oracles import arrange_linear, arrange_star
from deptree.tree import degree_stats, make_linear_tree, make_star_tree
from deptree.verify import SAMPLED_MAX_N, verify

EXIT_OK = 0
EXIT_IO = 1
EXIT_EMPTY = 2
EXIT_INVARIANT = 3
EXIT_USAGE = 64


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_input(name: str) -> Path:
    """``fixture:NAME`` refers to a bundled fixture file."""
    if name.startswith("fixture:"):
        return fixture_path(name[len("fixture:"):])
    return Path(name)


def _header(command: str, **settings) -> dict[str, object]:
    return {"command": command, "version": __version__, "schema": SCHEMA_VERSION, **settings}


def _comment_header(header: dict[str, object]) -> str:
    return "# " + " ".join(f"{k}={v}" for k, v in header.items()) + "\n"


def _load_tree(path: Path):
    with path.open(encoding="utf-8") as fh:
        return parse_edgelist(fh)


# --- analyze -----------------------------------------------------------------


def cmd_analyze(args, out) -> int:
    path = resolve_input(args.input)
    kind = args.input_format
    if kind == "auto":
        kind = "edges" if path.suffix in {".edges", ".txt", ".el"} else "conllu"
    parse_log = ParseLog()
    try:
        if kind == "edges":
            tree, arr = _load_tree(path)
            parse_log.blocks = parse_log.accepted = 1
            reports = [analyze_tree(path.stem, tree, arr, validate=args.validate)] if tree.n >= args.min_n else []
        else:
            with path.open(encoding="utf-8") as fh:
                records = list(parse_conllu(fh, parse_log))
            with (ProcessPoolExecutor(args.jobs) if args.jobs > 1 else contextlib.nullcontext()) as pool:
                reports = list(analyze_corpus(records, args.min_n, args.validate, executor=pool))
    except OSError as exc:
        print(f"deptree: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    except EdgeListError as exc:
        print(f"deptree: {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    except BoundViolation as exc:
        print(f"deptree: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT

    for skip in parse_log.skips:
        print(skip.to_json(), file=sys.stderr)
    aggregates = aggregate_by_length(reports)
    header = _header(
        "analyze",
        input=path.name,
        min_n=args.min_n,
        validate=str(args.validate).lower(),
        blocks=parse_log.blocks,
        accepted=parse_log.accepted,
        reported=len(reports),
        **{f"skip_{k}": v for k, v in parse_log.counts().items()},
    )
    if args.format == "csv":
        out.write(_comment_header(header))
        write_csv(out, REPORT_COLUMNS, (r.values() for r in reports))
        out.write("\n")
        write_csv(out, AGGREGATE_COLUMNS, aggregates)
    else:
        out.write(_dumps({"header": header}) + "\n")
        for r in reports:
            out.write(_dumps({"report": {k: exact_str(v) for k, v in r.values().items()}}) + "\n")
        for row in aggregates:
            out.write(_dumps({"aggregate": {k: exact_str(v) for k, v in row.items()}}) + "\n")
    if not reports:
        print("deptree: no sentences accepted", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


# --- bounds ------------------------------------------------------------------


def bounds_payload(tree, arr) -> dict[str, object]:
    if arr is None:
        arr = LinearArrangement.identity(tree.n)
    d = degree_stats(tree)
    ls = length_stats(tree, arr)
    cs = crossing_count(tree, arr)
    b = bounds_report(tree, arr)
    return {
        "n": tree.n,
        "mean_k2": d.mean_k2,
        "var_k": d.var_k,
        "mean_d": ls.mean_d,
        "mean_d2": ls.mean_d2,
        "C": cs.C,
        "M": cs.M,
        "dmin_eq10": b.dmin_star_ensemble,
        "dmin_eq11": b.dmin_hubiness,
        "dmax_eq7": b.dmax_noncrossing,
        "cmax_c1": b.cmax_simple,
        "cmax_eq12": b.cmax_uncrossable,
        "cmax_eq13": b.cmax_length,
        "cpairs_eq14": b.cpairs_degree,
        "crossings_impossible": b.crossings_impossible,
        "E_d_baseline": b.E_d,
        "V_d_baseline": b.V_d,
        "violations": bound_violations(d, ls, cs, b),
    }


def cmd_bounds(args, out) -> int:
    path = resolve_input(args.input)
    try:
        tree, arr = _load_tree(path)
    except OSError as exc:
        print(f"deptree: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    except EdgeListError as exc:
        print(f"deptree: {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    if tree.n < 2:
        raise UsageError("bounds need a tree with at least 2 vertices")
    payload = bounds_payload(tree, arr)
    out.write(json_line(payload) + "\n")
    if args.validate and payload["violations"]:
        return EXIT_INVARIANT
    return EXIT_OK


# --- simulate ----------------------------------------------------------------


def cmd_simulate(args, out) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    path = resolve_input(args.input)
    try:
        tree, _ = _load_tree(path)
    except OSError as exc:
        print(f"deptree: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    except EdgeListError as exc:
        print(f"deptree: {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    if tree.n < 2:
        raise UsageError("simulation needs a tree with at least 2 vertices")
    mc = monte_carlo_baseline(tree, args.trials, args.seed, jobs=args.jobs)
    base = analytic_baseline(tree.n)
    rows = [
        {"statistic": "mean_d", "analytic": base.E_d, "empirical": mc.mean_d, "std_error": mc.se_mean_d},
        {"statistic": "C", "analytic": None, "empirical": mc.mean_C, "std_error": mc.se_C},
        {"statistic": "max_C", "analytic": None, "empirical": mc.max_C, "std_error": None},
    ]
    header = _header("simulate", input=path.name, n=tree.n, trials=args.trials, seed=args.seed, rng=mc.rng)
    if args.format == "csv":
        out.write(_comment_header(header))
        write_csv(out, ("statistic", "analytic", "empirical", "std_error"), rows)
    else:
        out.write(_dumps({"header": header}) + "\n")
        for row in rows:
            out.write(json_line(row) + "\n")
        out.write(_dumps({"z_score_mean_d": round(mc.z_score, 6)}) + "\n")
    return EXIT_OK


# --- verify ------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    if not 2 <= args.max_n <= SAMPLED_MAX_N:
        raise UsageError(f"--max-n must lie in 2..{SAMPLED_MAX_N}")
    report = verify(args.max_n, seed=args.seed, samples=args.trials, jobs=args.jobs)
    out.write(_comment_header(_header("verify", max_n=args.max_n, seed=args.seed, samples=args.trials)))
    for r in report.invariants.values():
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.name} checked={r.checked} failures={r.failures}"
        if not r.passed:
            line += f" witness: {r.witness}"
        out.write(line + "\n")
    for s in report.sizes:
        mode = "exhaustive" if s.exhaustive else "sampled"
        out.write(
            f"n={s.n} {mode} trees={s.trees} arrangements={s.arrangements} "
            f"noncrossing_delta_attained={s.delta_attained}/{s.trees} "
            f"max_C_path={'NA' if s.max_C_path is None else s.max_C_path} max_C={s.max_C_any}\n"
        )
    return EXIT_OK if report.passed else EXIT_INVARIANT


# --- construct ---------------------------------------------------------------


_MODES = {"star": ("hub_end", "hub_center"), "linear": ("identity", "zigzag")}


def cmd_construct(args, out) -> int:
    mode = args.mode or _MODES[args.family][0]
    if mode not in _MODES[args.family]:
        raise UsageError(f"mode for {args.family} must be one of {', '.join(_MODES[args.family])}")
    if args.n < 2:
        raise UsageError("n must be >= 2")
    if args.family == "star":
        tree, arr = make_star_tree(args.n), arrange_star(args.n, mode)
    else:
        tree, arr = make_linear_tree(args.n), arrange_linear(args.n, mode)
    ls = length_stats(tree, arr)
    cs = crossing_count(tree, arr)
    out.write(f"# {args.family} n={args.n} mode={mode}\n")
    out.write(f"# mean_d = {ls.mean_d}\n# D = {ls.D}\n# C = {cs.C}\n")
    out.write(format_edgelist(tree, arr))
    return EXIT_OK


# --- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deptree", description="Hubiness, length and crossing statistics of dependency trees.")
    parser.add_argument("--version", action="version", version=f"deptree {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=fmt)
        p.add_argument("--output", "-o", help="write primary output here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="worker processes (output is identical for any value)")
        p.add_argument("--validate", action="store_true", help="fail with exit 3 on any bound violation")

    p = sub.add_parser("analyze", help="per-sentence statistics for a CoNLL-U file or edge list")
    p.add_argument("input")
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--input-format", choices=("auto", "conllu", "edges"), default="auto")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="every bound for one edge-list tree as JSON")
    p.add_argument("input")
    common(p, fmt="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", help="Monte Carlo check of the random-arrangement baseline")
    p.add_argument("input")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="exhaustive bound certification on small trees")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5, help="sampled trees per size above the exhaustive cap")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit an extremal arrangement of a star or path")
    p.add_argument("family", choices=("star", "linear"))
    p.add_argument("n", type=int)
    p.add_argument("--mode")
    common(p)
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        if args.output:
            try:
                out = open(args.output, "w", encoding="utf-8", newline="")
            except OSError as exc:
                print(f"deptree: cannot write {args.output}: {exc}", file=sys.stderr)
                return EXIT_IO
            with out:
                return args.func(args, out)
        return args.func(args, sys.stdout)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"deptree: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
