"""Command-line entry point.

Subcommands: solve, validate, oracle, gen, convert, bench, stats,
reduce-mas. Structured output goes to stdout as JSON (CSV for bench and
stats), diagnostics to stderr. Exit codes:

* 0 -- optimal / valid / converted
* 1 -- suboptimal
* 2 -- unsatisfiable
* 3 -- unsolved (a limit was hit with nothing to show)
* 4 -- usage or format error

``--no-timestamps`` zeroes every wall-clock field so that repeated runs
with the same inputs and seed are byte-identical. The default time limit
can be set through the CTW_TIME_LIMIT_MS environment variable; the
--time-limit flag wins.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from . import bench as bench_mod
from . import formats, oracle, reduction
from .errors import CtwError
from .generate import GenMode, GenParams, anytime_suite, certification_suite
from .generate import generate as generate_instance
from .model import Permutation, validate
from .costs import breakdown
from .solver import ResultState, SolverConfig, solve

DEFAULT_TIME_LIMIT_MS = 300_000
TIME_LIMIT_ENV = "CTW_TIME_LIMIT_MS"

STATE_EXIT = {
    ResultState.OPTIMAL: 0,
    ResultState.SUBOPTIMAL: 1,
    ResultState.UNSATISFIABLE: 2,
    ResultState.UNSOLVED: 3,
}

_EMITTERS = {
    "dat": formats.emit_dat,
    "dzn": formats.emit_dzn,
    "json": formats.emit_json,
}


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _default_time_limit() -> int:
    raw = os.environ.get(TIME_LIMIT_ENV)
    if raw is None:
        return DEFAULT_TIME_LIMIT_MS
    try:
        value = int(raw)
    except ValueError:
        raise CtwError(f"{TIME_LIMIT_ENV} must be an integer, found {raw!r}")
    if value <= 0:
        raise CtwError(f"{TIME_LIMIT_ENV} must be positive, found {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctw", description="Cable tree wiring toolkit"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--no-timestamps",
        action="store_true",
        help="zero wall-clock fields for byte-reproducible output",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance", parents=[common])
    p.add_argument("instance")
    p.add_argument("--engine", choices=bench_mod.ENGINES, default="bb")
    p.add_argument("--time-limit", type=int, default=None, metavar="MS")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, metavar="FILE")

    p = sub.add_parser("validate", help="check a solution file against an instance",
                       parents=[common])
    p.add_argument("instance")
    p.add_argument("--solution", required=True)
    p.add_argument("--out", default=None, metavar="FILE")

    p = sub.add_parser("oracle", help="exhaustively enumerate a small instance",
                       parents=[common])
    p.add_argument("instance")
    p.add_argument("--limit-k", type=int, default=oracle.DEFAULT_LIMIT_K)
    p.add_argument("--out", default=None, metavar="FILE")

    p = sub.add_parser("gen", help="generate an instance or a benchmark suite",
                       parents=[common])
    p.add_argument("what", nargs="?", choices=("instance", "suite"), default="instance")
    p.add_argument("--mode", choices=[m.value for m in GenMode],
                   default="satisfiable")
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--p-atomic", type=float, default=0.15)
    p.add_argument("--p-soft", type=float, default=0.05)
    p.add_argument("--p-disjunctive", type=float, default=0.10)
    p.add_argument("--ds-count", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("dat", "dzn", "json"), default="dat")
    p.add_argument("--out", default=None,
                   help="output file (instance) or directory (suite)")

    p = sub.add_parser("convert", help="convert an instance between formats",
                       parents=[common])
    p.add_argument("instance")
    p.add_argument("--to", required=True, choices=("dat", "dzn", "json"))
    p.add_argument("--out", default=None, metavar="FILE")

    p = sub.add_parser("bench", help="run an engine over an instance directory",
                       parents=[common])
    p.add_argument("--dir", required=True)
    p.add_argument("--engine", choices=bench_mod.ENGINES, default="bb")
    p.add_argument("--time-limit", type=int, default=None, metavar="MS")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, metavar="FILE")

    p = sub.add_parser("stats", help="emit instance metrics as CSV", parents=[common])
    p.add_argument("--dir", required=True)
    p.add_argument("--out", default=None, metavar="FILE")

    p = sub.add_parser("reduce-mas", help="encode a digraph as a wiring instance",
                       parents=[common])
    p.add_argument("graph", help="edge list, one 'tail head' per line")
    p.add_argument("--format", choices=("dat", "dzn", "json"), default="dat")
    p.add_argument("--extract", action="store_true",
                   help="read a solution and report the kept (acyclic) edges")
    p.add_argument("--solution", default=None)
    p.add_argument("--out", default=None, metavar="FILE")
    return parser


def _breakdown_doc(bd) -> dict:
    return {"S": bd.S, "M": bd.M, "L": bd.L, "N": bd.N, "objective": bd.objective}


def _cmd_solve(args) -> int:
    inst = formats.load_instance(args.instance)
    cfg = SolverConfig(
        time_limit_ms=args.time_limit if args.time_limit is not None else _default_time_limit(),
        seed=args.seed,
        node_limit=args.node_limit,
    )
    result = bench_mod.run_engine(inst, args.engine, cfg)
    time_ms = 0 if args.no_timestamps else result.stats.time_ms
    if args.output == "json":
        doc = {
            "instance": Path(args.instance).stem,
            "engine": args.engine,
            "state": result.state.value,
            "objective": result.best[1].objective if result.best else None,
            "breakdown": _breakdown_doc(result.best[1]) if result.best else None,
            "tour": list(result.best[0].tour) if result.best else None,
            "stats": {
                "nodes_expanded": result.stats.nodes_expanded,
                "time_ms": time_ms,
                "proven_lower_bound": result.stats.proven_lower_bound,
            },
        }
        _write(_dump_json(doc), args.out)
    else:
        bd = None
        if result.best:
            bd = breakdown(inst, result.best[0])
        row = bench_mod.BenchRow(
            Path(args.instance).stem, result.state, bd, time_ms,
            result.stats.nodes_expanded, bench_mod.metrics(inst),
        )
        _write(formats.emit_report_csv([row]), args.out)
    return STATE_EXIT[result.state]


def _cmd_validate(args) -> int:
    inst = formats.load_instance(args.instance)
    sol = formats.parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    doc = {"instance": Path(args.instance).stem, "valid": False,
           "violations": [], "breakdown": None}
    if len(sol.values) != inst.k:
        doc["violations"] = [
            f"dimension: solution has {len(sol.values)} entries, instance has k={inst.k}"
        ]
        _write(_dump_json(doc), args.out)
        return 4
    try:
        perm = (Permutation(sol.values) if sol.kind == "tour"
                else Permutation.from_positions(sol.values))
    except ValueError as exc:
        doc["violations"] = [f"not-bijective: {exc}"]
        _write(_dump_json(doc), args.out)
        return 4
    violations = validate(inst, perm)
    doc["violations"] = [str(v) for v in violations]
    if perm.is_bijection():
        doc["breakdown"] = _breakdown_doc(breakdown(inst, perm))
    doc["valid"] = not violations
    if sol.claimed is not None and doc["breakdown"] is not None:
        doc["claim_matches"] = _breakdown_doc(sol.claimed) == doc["breakdown"]
    _write(_dump_json(doc), args.out)
    return 0 if not violations else 4


def _cmd_oracle(args) -> int:
    inst = formats.load_instance(args.instance)
    result = oracle.enumerate_solutions(inst, limit_k=args.limit_k)
    doc = {
        "instance": Path(args.instance).stem,
        "enumerated": result.enumerated,
        "valid_count": result.valid_count,
        "optimal_objective": result.optimal_objective,
        "optimal_solutions": [list(p.tour) for p in result.optimal_solutions],
    }
    _write(_dump_json(doc), args.out)
    return 0 if result.valid_count else 2


def _cmd_gen(args) -> int:
    if args.what == "suite":
        if not args.out:
            raise CtwError("gen suite needs --out DIRECTORY")
        root = Path(args.out)
        manifest = {}
        for sub_name, spec_list in (
            ("certify", certification_suite(args.seed)),
            ("anytime", anytime_suite(args.seed)),
        ):
            directory = root / sub_name
            directory.mkdir(parents=True, exist_ok=True)
            emitted = []
            for name, params in spec_list:
                inst = generate_instance(params)
                path = directory / f"{name}.{args.format}"
                path.write_text(_EMITTERS[args.format](inst), encoding="utf-8")
                emitted.append(path.name)
            manifest[sub_name] = emitted
        sys.stdout.write(_dump_json({"root": str(root), "files": manifest}))
        return 0
    params = GenParams(
        b=args.b,
        n=args.n,
        p_atomic=args.p_atomic,
        p_soft=args.p_soft,
        p_disjunctive=args.p_disjunctive,
        ds_count=args.ds_count,
        seed=args.seed,
        mode=GenMode(args.mode),
    )
    inst = generate_instance(params)
    _write(_EMITTERS[args.format](inst), args.out)
    return 0


def _cmd_convert(args) -> int:
    inst = formats.load_instance(args.instance)
    _write(_EMITTERS[args.to](inst), args.out)
    return 0


def _cmd_bench(args) -> int:
    cfg = SolverConfig(
        time_limit_ms=args.time_limit if args.time_limit is not None else _default_time_limit(),
        seed=args.seed,
    )
    rows = bench_mod.run_suite(args.dir, cfg, engine=args.engine, jobs=args.jobs)
    if args.no_timestamps:
        rows = [dataclasses.replace(r, runtime_ms=0) for r in rows]
    _write(formats.emit_report_csv(rows), args.out)
    return 0


def _cmd_stats(args) -> int:
    root = Path(args.dir)
    paths = sorted(
        [p for p in root.iterdir() if p.suffix.lower() in (".dat", ".json")],
        key=lambda p: p.stem,
    )
    items = [(p.stem, bench_mod.metrics(formats.load_instance(p))) for p in paths]
    _write(formats.emit_metrics_csv(items), args.out)
    return 0


def _cmd_reduce_mas(args) -> int:
    g = reduction.parse_edge_list(Path(args.graph).read_text(encoding="utf-8"))
    if args.extract:
        if not args.solution:
            raise CtwError("--extract needs --solution FILE")
        sol = formats.parse_solution(Path(args.solution).read_text(encoding="utf-8"))
        perm = (Permutation(sol.values) if sol.kind == "tour"
                else Permutation.from_positions(sol.values))
        kept = reduction.extract_mas(g, perm)
        doc = {
            "vertices": g.vertex_count,
            "edges": len(g.edges),
            "kept_edges": sorted([list(e) for e in kept]),
            "kept_count": len(kept),
            "removed_count": len(g.edges) - len(kept),
        }
        _write(_dump_json(doc), args.out)
        return 0
    inst = reduction.mas_to_ctw(g)
    _write(_EMITTERS[args.format](inst), args.out)
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "validate": _cmd_validate,
    "oracle": _cmd_oracle,
    "gen": _cmd_gen,
    "convert": _cmd_convert,
    "bench": _cmd_bench,
    "stats": _cmd_stats,
    "reduce-mas": _cmd_reduce_mas,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 4
    try:
        return _COMMANDS[args.command](args)
    except (CtwError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
