"""Command line interface.

Subcommands: run (single solve with optional trace), bench (table
reproduction from a config file), pareto (value-space export + figure),
analyze (trace checks).  Exit codes: 0 success, 2 configuration error,
3 run error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import analysis, bench
from .bench import BenchConfig, ConfigError
from .cone import NAMED_CONES, cone_by_name
from .problems import get_problem, sample_start
from .solver import ALGORITHMS, SolverConfig, read_jsonl, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUN = 3


def _add_solver_flags(sp):
    sp.add_argument("--sigma", type=float, default=1e-4)
    sp.add_argument("--gamma", type=float, default=0.5)
    sp.add_argument("--alpha-min", type=float, default=1e-3)
    sp.add_argument("--alpha-max", type=float, default=1e6)
    sp.add_argument("--ls", choices=["armijo", "mm"], default="armijo")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--max-iter", type=int, default=500)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vopt",
                                     description="Descent methods for vector optimization "
                                                 "under polyhedral ordering cones")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("run", help="solve one problem instance")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--cone", default="R2+", choices=sorted(NAMED_CONES))
    sp.add_argument("--algo", default="bbdvo", choices=sorted(ALGORITHMS))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trace", help="write per-iteration JSON lines here")
    _add_solver_flags(sp)

    sp = sub.add_parser("bench", help="run a benchmark config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--seed", type=int, help="override master seed")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", default="results",
                    help="output directory for tables and figures")
    sp.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    sp.add_argument("--no-figure", action="store_true")

    sp = sub.add_parser("pareto", help="export terminal value-space points")
    sp.add_argument("--problem", required=True)
    sp.add_argument("--cone", default="R2+", choices=sorted(NAMED_CONES))
    sp.add_argument("--algo", default="bbdvo", choices=sorted(ALGORITHMS))
    sp.add_argument("--runs", type=int, default=200)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--out", required=True, help="CSV output path")
    sp.add_argument("--no-figure", action="store_true")

    sp = sub.add_parser("analyze", help="run checks on a solve trace")
    sp.add_argument("--trace", required=True)
    sp.add_argument("--check", required=True, choices=["rate", "u0", "majorization"])
    sp.add_argument("--problem", required=True)
    sp.add_argument("--cone", default="R2+", choices=sorted(NAMED_CONES))
    sp.add_argument("--rate", type=float, help="linear-rate bound for --check rate")
    sp.add_argument("--grid", type=int, default=101, help="grid points per axis")
    sp.add_argument("--out", help="write the JSON report here instead of stdout")

    return parser


def cmd_run(args) -> int:
    p = get_problem(args.problem)
    K = cone_by_name(args.cone)
    start = sample_start(p, args.seed)
    cfg = SolverConfig(algorithm=args.algo, cone=K, tol=args.tol,
                       max_iter=args.max_iter, linesearch=args.ls,
                       sigma=args.sigma, gamma=args.gamma,
                       alpha_min=args.alpha_min, alpha_max=args.alpha_max)
    trace = run(cfg, p, start)
    if args.trace:
        trace.write_jsonl(args.trace)
    print(f"{args.problem}/{args.algo}/{args.cone}: {trace.termination} "
          f"after {trace.iterations} iterations, {trace.fevals} fevals, "
          f"|d|={trace.dnorm_final:.3e}")
    print(f"x = {np.array2string(trace.x_final, precision=6)}")
    print(f"F = {np.array2string(trace.f_final, precision=6)}")
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = bench.load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = bench.run_benchmark(cfg, jobs=args.jobs)
    ext = {"csv": "csv", "json": "json", "markdown": "md"}[args.format]
    table_path = out_dir / f"benchmark.{ext}"
    bench.export_table(rows, table_path, fmt=args.format)
    print(bench.format_table(rows), end="")
    print(f"table written to {table_path}")
    if not args.no_figure:
        from . import plotting

        for cone_name in cfg.cones:
            fig_path = out_dir / f"iterations_{cone_name.replace('+', 'p')}.png"
            plotting.save_benchmark_bars(
                [r for r in rows if r.cone == cone_name], fig_path)
            print(f"figure written to {fig_path}")
    return EXIT_OK


def cmd_pareto(args) -> int:
    K = cone_by_name(args.cone)
    export = bench.export_pareto_points(args.problem, K, args.algo, args.runs,
                                        args.out, seed=args.seed)
    print(f"{len(export.points)} points written to {args.out} "
          f"({export.clusters} clusters at radius 1e-3)")
    if not args.no_figure:
        from . import plotting

        fig_path = str(Path(args.out).with_suffix(".png"))
        plotting.save_pareto_scatter(export.points, fig_path,
                                     title=f"{args.problem} / {args.algo} / {args.cone}",
                                     clusters=export.clusters)
        print(f"figure written to {fig_path}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    trace = read_jsonl(args.trace)
    p = get_problem(args.problem)
    K = cone_by_name(args.cone)
    if args.check == "rate":
        if args.rate is None:
            raise ConfigError("--check rate needs --rate")
        report = analysis.verify_linear_rate(trace, trace.x_final, args.rate)
        payload = {"check": "rate", "bound": report.bound,
                   "ratios": report.ratios, "violations": report.violations,
                   "passed": report.passed}
    elif args.check == "u0":
        grid = analysis.box_grid(p, args.grid)
        values = [analysis.u0_grid_estimate(rec.x, p, K, grid)
                  for rec in trace.records]
        values.append(analysis.u0_grid_estimate(trace.x_final, p, K, grid))
        payload = {"check": "u0", "grid_points_per_axis": args.grid,
                   "estimates": values}
    else:
        if p.ell is None:
            raise ConfigError(f"{p.name} carries no smoothness certificate")
        scale = K.A @ p.ell
        ok = analysis.surrogate_majorization_check(p, K, trace.records[0].x
                                                   if trace.records else trace.x_final,
                                                   scale)
        payload = {"check": "majorization", "scale": scale.tolist(), "passed": ok}
    text = json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": cmd_run, "bench": cmd_bench,
                "pareto": cmd_pareto, "analyze": cmd_analyze}
    try:
        return handlers[args.command](args)
    except (ConfigError, KeyError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - surface run failures as exit 3
        print(f"run error: {exc}", file=sys.stderr)
        return EXIT_RUN


if __name__ == "__main__":
    sys.exit(main())
