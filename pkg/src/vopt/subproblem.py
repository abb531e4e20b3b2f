"""Direction-finding subproblems.

The primal problem min_d max_i <M_i, d> + 0.5||d||^2 is solved through its
dual: minimize 0.5 ||M^T lambda||^2 over the unit simplex.  The dual is a
tiny QP (rows = transformed gradient rows), handled by Frank-Wolfe with
exact line search, or in closed form when there are two rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Frank-Wolfe defaults; the subproblems are tiny so the gap tolerance is
#: kept far below the outer stopping threshold.
FW_TOL = 1e-10
FW_MAX_ITER = 10_000

EDVO_DROP_TOL = 1e-14


@dataclass
class DirectionResult:
    d: np.ndarray
    lam: np.ndarray
    dnorm: float
    theta: float
    fw_gap: float
    iterations: int
    converged: bool = True


def _result(M: np.ndarray, lam: np.ndarray, gap: float, iters: int,
            converged: bool = True) -> DirectionResult:
    d = -(M.T @ lam)
    dn = float(np.linalg.norm(d))
    return DirectionResult(d=d, lam=lam, dnorm=dn, theta=-0.5 * dn * dn,
                           fw_gap=gap, iterations=iters, converged=converged)


def min_norm_simplex_qp(M, tol: float = FW_TOL,
                        max_iter: int = FW_MAX_ITER) -> DirectionResult:
    """Minimize 0.5||M^T lambda||^2 over the unit simplex by Frank-Wolfe
    with away steps.

    Plain conditional-gradient steps zig-zag near low-dimensional faces
    and only close the duality gap at rate O(1/k); the away-step variant
    drops weight from the worst active vertex and restores a linear rate,
    which the tight gap tolerance needs.  Linear oracle ties break to the
    smallest index; steps use the exact 1-D minimizer, clipped.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if tol <= 0:
        raise ValueError("gap tolerance must be positive")
    if not np.all(np.isfinite(M)):
        raise ValueError("non-finite entries in subproblem matrix")
    l = M.shape[0]
    if l == 1:
        lam = np.array([1.0])
        return _result(M, lam, 0.0, 0)
    G = M @ M.T  # gram matrix; gradient of the dual objective is G @ lam
    lam = np.full(l, 1.0 / l)
    gap = np.inf
    for it in range(max_iter):
        grad = G @ lam
        i = int(np.argmin(grad))
        gap = float(grad @ lam - grad[i])
        if gap <= tol:
            return _result(M, lam, gap, it)
        # away vertex: worst gradient among active coordinates
        active = np.flatnonzero(lam > 0.0)
        j = int(active[np.argmax(grad[active])])
        away_gap = float(grad[j] - grad @ lam)
        if gap >= away_gap:
            delta = -lam.copy()
            delta[i] += 1.0
            t_max = 1.0
        else:
            delta = lam.copy()
            delta[j] -= 1.0
            t_max = lam[j] / (1.0 - lam[j]) if lam[j] < 1.0 else 1.0
        denom = float(delta @ G @ delta)
        if denom <= 0.0:
            t = t_max
        else:
            t = float(np.clip(-(grad @ delta) / denom, 0.0, t_max))
        lam = lam + t * delta
        np.clip(lam, 0.0, None, out=lam)
        lam /= lam.sum()
    return _result(M, lam, gap, max_iter, converged=False)


def exact_qp_two_rows(M) -> DirectionResult:
    """Closed-form dual solution for l = 2.

    With lambda = (t, 1-t) the dual objective is a 1-D quadratic in t;
    clamp its unconstrained minimizer to [0, 1].
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != 2:
        raise ValueError("exact_qp_two_rows expects exactly two rows")
    diff = M[0] - M[1]
    denom = float(diff @ diff)
    if denom == 0.0:
        t = 0.5
    else:
        t = np.clip(-float(M[1] @ diff) / denom, 0.0, 1.0)
    lam = np.array([t, 1.0 - t])
    return _result(M, lam, 0.0, 0)


def solve_min_norm(M, tol: float = FW_TOL, max_iter: int = FW_MAX_ITER,
                   exact_two: bool = True) -> DirectionResult:
    if np.atleast_2d(np.asarray(M)).shape[0] == 2 and exact_two:
        return exact_qp_two_rows(M)
    return min_norm_simplex_qp(M, tol=tol, max_iter=max_iter)


def direction(x, problem, K, strategy: str = "steepest", alpha=None,
              scale=None, jac=None, tol: float = FW_TOL,
              max_iter: int = FW_MAX_ITER) -> DirectionResult:
    """Descent direction at x under the given row-scaling strategy.

    strategy: "steepest" leaves rows A_i JF(x) as is; "bb" divides row i by
    alpha[i]; "edvo" normalizes rows to unit length (near-zero rows are
    dropped from the hull); "fixed" divides row i by scale[i].
    """
    J = jac if jac is not None else problem.jac(np.asarray(x, dtype=float))
    M = K.A @ J
    if strategy == "steepest":
        pass
    elif strategy == "bb":
        if alpha is None:
            raise ValueError("bb strategy needs an alpha vector")
        M = M / np.asarray(alpha, dtype=float)[:, None]
    elif strategy == "edvo":
        norms = np.linalg.norm(M, axis=1)
        keep = norms > EDVO_DROP_TOL
        if not np.any(keep):
            lam = np.zeros(K.l)
            return DirectionResult(d=np.zeros(problem.n), lam=lam, dnorm=0.0,
                                   theta=0.0, fw_gap=0.0, iterations=0)
        M = M[keep] / norms[keep, None]
        res = solve_min_norm(M, tol=tol, max_iter=max_iter)
        lam = np.zeros(K.l)
        lam[np.flatnonzero(keep)] = res.lam
        res.lam = lam
        return res
    elif strategy == "fixed":
        if scale is None:
            raise ValueError("fixed strategy needs a scale vector")
        M = M / np.asarray(scale, dtype=float)[:, None]
    else:
        raise ValueError(f"unknown direction strategy {strategy!r}")
    return solve_min_norm(M, tol=tol, max_iter=max_iter)


def is_stationary(res: DirectionResult, tol: float) -> bool:
    return res.dnorm <= tol
