"""Iteration drivers for the descent-method family.

One loop serves every variant; the algorithm choice only selects how the
gradient rows are rescaled before the min-norm subproblem and which step
rule applies afterwards:

  sdvo        unscaled rows + line search
  bbdvo       rows divided by per-row BB scalars + line search
  edvo        rows normalized to unit length + line search
  mm-fixed-l  rows divided by a constant L, step t = 1 (no search)
  mm-ell      rows divided by <A_i, ell>, step t = 1 (no search)

Function evaluations are counted per line-search trial; Jacobian calls
are tracked separately.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import stepsize, subproblem
from .cone import PolyhedralCone
from .problems import StartPair, VectorProblem, evaluate
from .stepsize import LineSearchError

MM_ALGORITHMS = ("mm-fixed-l", "mm-ell", "mm-ell-base")
LS_ALGORITHMS = ("sdvo", "bbdvo", "edvo")
ALGORITHMS = LS_ALGORITHMS + MM_ALGORITHMS


@dataclass
class SolverConfig:
    algorithm: str = "bbdvo"
    cone: PolyhedralCone | None = None
    tol: float = 1e-6
    max_iter: int = 500
    linesearch: str = "armijo"  # "armijo" or "mm"
    sigma: float = stepsize.SIGMA_DEFAULT
    gamma: float = stepsize.GAMMA_DEFAULT
    alpha_min: float = stepsize.ALPHA_MIN_DEFAULT
    alpha_max: float = stepsize.ALPHA_MAX_DEFAULT
    jmax: int = stepsize.JMAX_DEFAULT
    fixed_L: float | None = None  # required for mm-fixed-l

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; known: {ALGORITHMS}")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.linesearch not in ("armijo", "mm"):
            raise ValueError(f"unknown line search {self.linesearch!r}")


@dataclass
class IterationRecord:
    k: int
    x: np.ndarray
    f: np.ndarray
    d: np.ndarray
    dnorm: float
    t: float
    trials: int
    alpha: np.ndarray | None = None

    def to_json_dict(self) -> dict:
        rec = {"k": self.k, "x": self.x.tolist(), "f": self.f.tolist(),
               "d": self.d.tolist(), "dnorm": self.dnorm, "t": self.t,
               "trials": self.trials}
        if self.alpha is not None:
            rec["alpha"] = self.alpha.tolist()
        return rec


@dataclass
class SolveTrace:
    records: list[IterationRecord] = field(default_factory=list)
    termination: str = "running"
    iterations: int = 0
    fevals: int = 0
    jevals: int = 0
    wall_ms: float = 0.0
    x_final: np.ndarray | None = None
    f_final: np.ndarray | None = None
    dnorm_final: float = 0.0
    clamp_events: int = 0

    @property
    def failed(self) -> bool:
        return self.termination in ("max_iter", "linesearch_failure")

    def write_jsonl(self, path):
        with open(path, "w") as fh:
            for rec in self.records:
                fh.write(json.dumps(rec.to_json_dict()) + "\n")
            fh.write(json.dumps({
                "termination": self.termination, "iterations": self.iterations,
                "fevals": self.fevals, "wall_ms": self.wall_ms,
                "x_final": self.x_final.tolist(),
                "f_final": self.f_final.tolist(),
                "dnorm_final": self.dnorm_final,
            }) + "\n")


def read_jsonl(path) -> SolveTrace:
    """Rehydrate a trace written by SolveTrace.write_jsonl."""
    records = []
    summary = None
    with open(path) as fh:
        for line in fh:
            rec = json.loads(line)
            if "termination" in rec:
                summary = rec
            else:
                records.append(IterationRecord(
                    k=rec["k"], x=np.array(rec["x"]), f=np.array(rec["f"]),
                    d=np.array(rec["d"]), dnorm=rec["dnorm"], t=rec["t"],
                    trials=rec["trials"],
                    alpha=np.array(rec["alpha"]) if "alpha" in rec else None))
    if summary is None:
        raise ValueError(f"trace file {path} has no summary record")
    return SolveTrace(records=records, termination=summary["termination"],
                      iterations=summary["iterations"], fevals=summary["fevals"],
                      wall_ms=summary["wall_ms"],
                      x_final=np.array(summary["x_final"]),
                      f_final=np.array(summary["f_final"]),
                      dnorm_final=summary["dnorm_final"])


def strategy_alpha(cfg: SolverConfig, K: PolyhedralCone,
                   p: VectorProblem) -> np.ndarray:
    """Fixed per-row scale vector for the no-line-search variants."""
    if cfg.algorithm == "mm-fixed-l":
        if cfg.fixed_L is None:
            if p.ell is None:
                raise ValueError(f"{p.name}: mm-fixed-l needs fixed_L or a smoothness certificate")
            L = float(np.max(K.A @ p.ell))
        else:
            L = float(cfg.fixed_L)
        return np.full(K.l, L)
    if cfg.algorithm in ("mm-ell", "mm-ell-base"):
        if p.ell is None:
            raise ValueError(f"{p.name}: {cfg.algorithm} needs a smoothness certificate")
        return K.A @ p.ell
    raise ValueError(f"{cfg.algorithm} has no fixed scale vector")


def run(cfg: SolverConfig, p: VectorProblem, start: StartPair) -> SolveTrace:
    """Iterate x <- x + t d until stationarity, max_iter, or search failure."""
    K = cfg.cone
    if K is None:
        raise ValueError("config has no cone")
    if K.m != p.m:
        raise ValueError(f"cone is {K.m}-dimensional but {p.name} has {p.m} objectives")

    t0 = time.perf_counter()
    trace = SolveTrace()
    x = np.asarray(start.x0, dtype=float).copy()
    fx = evaluate(p, x)
    J = p.jac(x)
    trace.jevals += 1

    bb = cfg.algorithm == "bbdvo"
    mm_fixed = cfg.algorithm in MM_ALGORITHMS
    if mm_fixed:
        fixed_scale = strategy_alpha(cfg, K, p)
    if bb:
        x_prev = np.asarray(start.x_prev, dtype=float)
        J_prev = p.jac(x_prev)
        trace.jevals += 1

    for k in range(cfg.max_iter + 1):
        alpha = None
        if bb:
            s = x - x_prev
            if np.linalg.norm(s) == 0.0:
                alpha = stepsize.AlphaVector(np.ones(K.l), ["zero-curvature"] * K.l)
            else:
                alpha = stepsize.bb_alpha(s, K.A @ (J - J_prev),
                                          cfg.alpha_min, cfg.alpha_max)
            trace.clamp_events += sum(
                tag.startswith("clamped") for tag in alpha.provenance)

        if cfg.algorithm == "sdvo":
            res = subproblem.direction(x, p, K, "steepest", jac=J)
        elif bb:
            res = subproblem.direction(x, p, K, "bb", alpha=alpha.alpha, jac=J)
        elif cfg.algorithm == "edvo":
            res = subproblem.direction(x, p, K, "edvo", jac=J)
        else:
            res = subproblem.direction(x, p, K, "fixed", scale=fixed_scale, jac=J)

        if not np.all(np.isfinite(res.d)):
            raise FloatingPointError(
                f"{p.name}/{cfg.algorithm}: non-finite direction at iteration {k}")

        if subproblem.is_stationary(res, cfg.tol) or k == cfg.max_iter:
            trace.termination = "stationary" if res.dnorm <= cfg.tol else "max_iter"
            trace.iterations = k
            trace.dnorm_final = res.dnorm
            break

        row_products = (K.A @ J) @ res.d
        try:
            if mm_fixed:
                # the surrogate majorizes globally, so the full step is taken
                ls = stepsize.LineSearchResult(t=1.0, trials=0,
                                               accepted_condition="surrogate",
                                               f_new=None)
            elif cfg.linesearch == "armijo":
                ls = stepsize.armijo_search(p, K, x, res.d, row_products,
                                            sigma=cfg.sigma, gamma=cfg.gamma,
                                            jmax=cfg.jmax, fx=fx)
            else:
                a = alpha.alpha if bb else np.ones(K.l)
                ls = stepsize.mm_search(p, K, x, res.d, row_products, a,
                                        gamma=cfg.gamma, jmax=cfg.jmax, fx=fx)
        except LineSearchError:
            trace.termination = "linesearch_failure"
            trace.iterations = k
            trace.dnorm_final = res.dnorm
            break

        trace.records.append(IterationRecord(
            k=k, x=x.copy(), f=fx.copy(), d=res.d.copy(), dnorm=res.dnorm,
            t=ls.t, trials=ls.trials,
            alpha=alpha.alpha.copy() if alpha is not None else None))
        trace.fevals += ls.trials

        if bb:
            x_prev, J_prev = x, J
        x = x + ls.t * res.d
        fx = ls.f_new if ls.f_new is not None else evaluate(p, x)
        J = p.jac(x)
        trace.jevals += 1

    trace.x_final = x
    trace.f_final = fx
    trace.wall_ms = (time.perf_counter() - t0) * 1e3
    return trace


@dataclass
class InvarianceReport:
    max_d_deviation: float
    t_match: bool
    iterations: tuple[int, int]
    clamped: bool
    status: str  # "pass", "fail", or "inconclusive (clamped)"


def transform_invariance_check(p: VectorProblem, A1, A2, start: StartPair,
                               cfg: SolverConfig,
                               tol: float = 1e-8) -> InvarianceReport:
    """Run BBDVO under two transforms of the same cone and compare sequences.

    A1, A2 must be related by positive row scaling and/or row permutation.
    Any active clamp makes the comparison inconclusive rather than a failure.
    """
    traces = []
    for A in (A1, A2):
        c = SolverConfig(algorithm="bbdvo", cone=PolyhedralCone(np.asarray(A, dtype=float)),
                         tol=cfg.tol, max_iter=cfg.max_iter, linesearch=cfg.linesearch,
                         sigma=cfg.sigma, gamma=cfg.gamma,
                         alpha_min=cfg.alpha_min, alpha_max=cfg.alpha_max,
                         jmax=cfg.jmax)
        traces.append(run(c, p, start))
    tr1, tr2 = traces
    clamped = tr1.clamp_events > 0 or tr2.clamp_events > 0
    n = min(len(tr1.records), len(tr2.records))
    max_dev = 0.0
    t_match = len(tr1.records) == len(tr2.records)
    for r1, r2 in zip(tr1.records[:n], tr2.records[:n]):
        max_dev = max(max_dev, float(np.linalg.norm(r1.d - r2.d)))
        if r1.t != r2.t:
            t_match = False
    if clamped:
        status = "inconclusive (clamped)"
    elif max_dev <= tol and t_match:
        status = "pass"
    else:
        status = "fail"
    return InvarianceReport(max_d_deviation=max_dev, t_match=t_match,
                            iterations=(tr1.iterations, tr2.iterations),
                            clamped=clamped, status=status)
