"""Benchmark harness: problems x cones x algorithms x seeded random starts.

Start points are derived from (master seed, problem name, run index) only,
so every algorithm cell on the same problem sees bitwise-identical starts.
The report path writes delimited tables and, for the value-space exports,
an accompanying scatter figure.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cone import NAMED_CONES, PolyhedralCone, cone_by_name, scaled_transform
from .problems import VectorProblem, get_problem, sample_start
from .solver import SolveTrace, SolverConfig, run

#: algorithm cells in table order; "sdvo-scaled" runs SDVO under the
#: per-start initial-gradient row scaling
DEFAULT_ALGORITHMS = ["sdvo", "sdvo-scaled", "edvo", "bbdvo"]

TABLE_COLUMNS = ["problem", "cone", "algorithm", "transform",
                 "iter", "feval", "time_ms", "failures"]


class ConfigError(ValueError):
    """Benchmark configuration names something unknown or malformed."""


@dataclass
class BenchmarkRow:
    problem: str
    cone: str
    algorithm: str
    transform: str
    iterations: float
    fevals: float
    time_ms: float
    failures: int
    runs: int

    def as_record(self) -> dict:
        return {"problem": self.problem, "cone": self.cone,
                "algorithm": self.algorithm, "transform": self.transform,
                "iter": round(self.iterations, 2),
                "feval": round(self.fevals, 2),
                "time_ms": round(self.time_ms, 2),
                "failures": self.failures}


@dataclass
class BenchConfig:
    problems: list[str]
    cones: list[str]
    algorithms: list[str]
    runs: int = 200
    seed: int = 42
    max_iter: int = 500
    tol: float = 1e-6
    sigma: float = 1e-4
    gamma: float = 0.5
    alpha_min: float = 1e-3
    alpha_max: float = 1e6
    linesearch: str = "armijo"
    extra_cones: dict = field(default_factory=dict)


def start_seed(master_seed: int, problem: str, run_index: int) -> list[int]:
    """Deterministic seed stream shared by all algorithms on a problem."""
    return [master_seed, zlib.crc32(problem.encode()), run_index]


def _parse_rows(text: str) -> np.ndarray:
    rows = [r.strip() for r in text.split(";") if r.strip()]
    return np.array([[float(v) for v in r.replace(",", " ").split()] for r in rows])


def load_config(path) -> BenchConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    if "bench" not in parser:
        raise ConfigError("config file is missing the [bench] section")
    sec = parser["bench"]

    def split(key, default):
        return [v.strip() for v in sec.get(key, default).split(",") if v.strip()]

    extra = {}
    for name in parser.sections():
        if name.startswith("cone."):
            cone_name = name[len("cone."):]
            try:
                extra[cone_name] = PolyhedralCone(
                    _parse_rows(parser[name]["rows"]), name=cone_name)
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"bad cone section [{name}]: {exc}") from exc

    cfg = BenchConfig(
        problems=split("problems", ""),
        cones=split("cones", "R2+"),
        algorithms=[a.lower() for a in split("algorithms", ",".join(DEFAULT_ALGORITHMS))],
        runs=sec.getint("runs", 200),
        seed=sec.getint("seed", 42),
        max_iter=sec.getint("max_iter", 500),
        tol=sec.getfloat("tol", 1e-6),
        sigma=sec.getfloat("sigma", 1e-4),
        gamma=sec.getfloat("gamma", 0.5),
        alpha_min=sec.getfloat("alpha_min", 1e-3),
        alpha_max=sec.getfloat("alpha_max", 1e6),
        linesearch=sec.get("linesearch", "armijo"),
        extra_cones=extra,
    )
    validate_config(cfg)
    return cfg


def validate_config(cfg: BenchConfig):
    if not cfg.problems:
        raise ConfigError("no problems configured")
    for name in cfg.problems:
        try:
            get_problem(name)
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
    for name in cfg.cones:
        if name not in NAMED_CONES and name not in cfg.extra_cones:
            raise ConfigError(f"unknown cone {name!r}")
    for algo in cfg.algorithms:
        if algo not in ("sdvo", "sdvo-scaled", "edvo", "bbdvo"):
            raise ConfigError(f"unknown benchmark algorithm {algo!r}")
    if cfg.runs < 1:
        raise ConfigError("runs must be at least 1")


def resolve_cone(cfg: BenchConfig, name: str) -> PolyhedralCone:
    if name in cfg.extra_cones:
        return cfg.extra_cones[name]
    return cone_by_name(name)


def run_cell(cfg: BenchConfig, problem_name: str, cone_name: str,
             algo: str) -> BenchmarkRow:
    """Aggregate one (problem, cone, algorithm) cell over the seeded starts."""
    p = get_problem(problem_name)
    K = resolve_cone(cfg, cone_name)
    scaled = algo == "sdvo-scaled"
    solver_algo = "sdvo" if scaled else algo
    iters, fevals, times = [], [], []
    failures = 0
    for r in range(cfg.runs):
        start = sample_start(p, start_seed(cfg.seed, problem_name, r))
        K_run = scaled_transform(K, p, start.x0) if scaled else K
        scfg = SolverConfig(algorithm=solver_algo, cone=K_run, tol=cfg.tol,
                            max_iter=cfg.max_iter, linesearch=cfg.linesearch,
                            sigma=cfg.sigma, gamma=cfg.gamma,
                            alpha_min=cfg.alpha_min, alpha_max=cfg.alpha_max)
        trace = run(scfg, p, start)
        iters.append(trace.iterations)
        fevals.append(trace.fevals)
        times.append(trace.wall_ms)
        if trace.failed:
            failures += 1
    return BenchmarkRow(problem=problem_name, cone=cone_name, algorithm=solver_algo,
                        transform="A-hat" if scaled else "A",
                        iterations=float(np.mean(iters)),
                        fevals=float(np.mean(fevals)),
                        time_ms=float(np.mean(times)),
                        failures=failures, runs=cfg.runs)


def run_benchmark(cfg: BenchConfig, jobs: int = 1) -> list[BenchmarkRow]:
    validate_config(cfg)
    cells = [(pn, cn, algo) for cn in cfg.cones for pn in cfg.problems
             for algo in cfg.algorithms]
    if jobs <= 1:
        return [run_cell(cfg, *cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_cell, cfg, *cell) for cell in cells]
        return [f.result() for f in futures]


def export_table(rows: list[BenchmarkRow], path, fmt: str = "csv"):
    records = [row.as_record() for row in rows]
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=TABLE_COLUMNS)
            writer.writeheader()
            writer.writerows(records)
    elif fmt == "json":
        with open(path, "w") as fh:
            json.dump(records, fh, indent=2)
    elif fmt == "markdown":
        with open(path, "w") as fh:
            fh.write("| " + " | ".join(TABLE_COLUMNS) + " |\n")
            fh.write("|" + "---|" * len(TABLE_COLUMNS) + "\n")
            for rec in records:
                fh.write("| " + " | ".join(str(rec[c]) for c in TABLE_COLUMNS) + " |\n")
    else:
        raise ConfigError(f"unknown table format {fmt!r}")


def format_table(rows: list[BenchmarkRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS)
    writer.writeheader()
    writer.writerows(row.as_record() for row in rows)
    return buf.getvalue()


def cluster_count(points: np.ndarray, radius: float = 1e-3) -> int:
    """Greedy clustering in value space: points within radius share a cluster."""
    centers: list[np.ndarray] = []
    for pt in points:
        if not any(np.linalg.norm(pt - c) <= radius for c in centers):
            centers.append(pt)
    return len(centers)


@dataclass
class ParetoExport:
    points: np.ndarray
    terminations: list[str]
    clusters: int


def collect_pareto_points(problem_name: str, cone: PolyhedralCone, algo: str,
                          runs: int, seed: int = 42, max_iter: int = 500,
                          tol: float = 1e-6) -> ParetoExport:
    p = get_problem(problem_name)
    if p.m != 2:
        raise ConfigError(f"{problem_name} has {p.m} objectives; value-space export needs 2")
    pts, terms = [], []
    for r in range(runs):
        start = sample_start(p, start_seed(seed, problem_name, r))
        scfg = SolverConfig(algorithm=algo, cone=cone, tol=tol, max_iter=max_iter)
        trace = run(scfg, p, start)
        pts.append(trace.f_final)
        terms.append(trace.termination)
    points = np.array(pts) if pts else np.empty((0, 2))
    return ParetoExport(points=points, terminations=terms,
                        clusters=cluster_count(points) if len(points) else 0)


def export_pareto_points(problem_name: str, cone: PolyhedralCone, algo: str,
                         runs: int, out_path, seed: int = 42,
                         max_iter: int = 500, tol: float = 1e-6) -> ParetoExport:
    export = collect_pareto_points(problem_name, cone, algo, runs, seed=seed,
                                   max_iter=max_iter, tol=tol)
    with open(out_path, "w", newline="") as fh:
        fh.write(f"# clusters={export.clusters} radius=1e-3\n")
        writer = csv.writer(fh)
        writer.writerow(["F1", "F2", "termination"])
        for pt, term in zip(export.points, export.terminations):
            writer.writerow([repr(float(pt[0])), repr(float(pt[1])), term])
    return export
