"""Theory-side checks: condition number, rate envelopes, surrogate
majorization, and a grid lower bound for the weak-efficiency merit gap."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cone import PolyhedralCone
from .problems import VectorProblem, evaluate
from .solver import SolveTrace


def condition_number(mu, ell, K: PolyhedralCone) -> float:
    """max over base vertices A_i of <A_i, ell> / <A_i, mu>.

    The objective is linear-fractional with positive denominator over the
    dual base conv{A_i}, so the maximum is attained at a vertex.
    """
    mu = np.asarray(mu, dtype=float)
    ell = np.asarray(ell, dtype=float)
    num = K.A @ ell
    den = K.A @ mu
    if np.any(den <= 0.0):
        raise ValueError("mu pairs nonpositively with a base vertex; not interior")
    return float(np.max(num / den))


@dataclass
class RateReport:
    ratios: list[float] = field(default_factory=list)
    bound: float = 1.0
    violations: list[tuple[int, float, float]] = field(default_factory=list)
    passed: bool = True


def verify_linear_rate(trace: SolveTrace, xstar, rate: float,
                       slack: float = 1e-6) -> RateReport:
    """Check per-step contraction toward xstar against a linear-rate bound.

    Steps already inside 10 * eps * ||xstar|| of the limit are skipped;
    the bound carries multiplicative slack (1 + slack).
    """
    if not 0.0 < rate <= 1.0:
        raise ValueError("rate must lie in (0, 1]")
    xstar = np.asarray(xstar, dtype=float)
    floor = 10.0 * np.finfo(float).eps * max(1.0, float(np.linalg.norm(xstar)))
    points = [rec.x for rec in trace.records]
    if trace.x_final is not None:
        points.append(trace.x_final)
    report = RateReport(bound=rate)
    for k in range(len(points) - 1):
        prev = float(np.linalg.norm(points[k] - xstar))
        if prev <= floor:
            continue
        ratio = float(np.linalg.norm(points[k + 1] - xstar)) / prev
        report.ratios.append(ratio)
        if ratio > rate * (1.0 + slack):
            report.violations.append((k, ratio, rate))
    report.passed = not report.violations
    return report


def _base_vertices(K: PolyhedralCone) -> np.ndarray:
    # normalize rows against e = (1,...,1) so the vertex set represents the
    # base C_e paired with the all-ones reference vector
    sums = K.A.sum(axis=1)
    if np.any(sums <= 0.0):
        raise ValueError("row of A pairs nonpositively with the all-ones vector")
    return K.A / sums[:, None]


def u0_grid_estimate(x, p: VectorProblem, K: PolyhedralCone, grid) -> float:
    """Grid lower bound for the merit gap max_x' min_{c* in C} <c*, F(x) - F(x')>.

    The inner minimum over the base is attained at a vertex; restricting
    the outer maximum to the grid makes this a certified lower bound.
    """
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise ValueError("empty grid")
    V = _base_vertices(K)
    fx = evaluate(p, np.asarray(x, dtype=float))
    best = -np.inf
    for xp in grid:
        gaps = V @ (fx - evaluate(p, xp))
        best = max(best, float(gaps.min()))
    return best


def box_grid(p: VectorProblem, points_per_axis: int = 101) -> np.ndarray:
    """Regular grid over the problem box (intended for n = 2)."""
    axes = [np.linspace(p.lower[i], p.upper[i], points_per_axis)
            for i in range(p.n)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def level_set_diameter(p: VectorProblem, K: PolyhedralCone, x0,
                       grid) -> float:
    """Estimated diameter of {x : F(x) <=_K F(x0)} from grid samples."""
    from scipy.spatial import ConvexHull

    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    f0 = evaluate(p, np.asarray(x0, dtype=float))
    a0 = K.A @ f0
    inside = np.array([np.all(K.A @ evaluate(p, xp) <= a0) for xp in grid])
    pts = grid[inside]
    if len(pts) < 2:
        return 0.0
    if len(pts) > p.n + 1:
        try:
            pts = pts[ConvexHull(pts).vertices]
        except Exception:
            pass  # degenerate hull; fall back to all points
    diffs = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diffs ** 2).sum(axis=2)).max())


def surrogate_majorization_check(p: VectorProblem, K: PolyhedralCone, xk,
                                 scale, samples: int = 200,
                                 seed: int = 0) -> bool:
    """Sampled check that the quadratic surrogate upper-bounds A(F - F(xk))."""
    xk = np.asarray(xk, dtype=float)
    scale = np.asarray(scale, dtype=float)
    rng = np.random.default_rng(seed)
    fk = evaluate(p, xk)
    Jk = p.jac(xk)
    AJ = K.A @ Jk
    for _ in range(samples):
        x = rng.uniform(p.lower, p.upper)
        step = x - xk
        lhs = K.A @ (evaluate(p, x) - fk)
        rhs = AJ @ step + 0.5 * float(step @ step) * scale
        if np.any(lhs > rhs + 1e-10):
            return False
    return True
