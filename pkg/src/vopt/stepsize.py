"""Barzilai-Borwein scalars and the backtracking line searches.

Both line searches test exact componentwise inequalities on A-transformed
objective values, mirroring the partial-order semantics of the cone
module.  Each backtracking trial costs exactly one objective evaluation;
the trial count is returned so the caller can account for it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problems import evaluate

SIGMA_DEFAULT = 1e-4
GAMMA_DEFAULT = 0.5
ALPHA_MIN_DEFAULT = 1e-3
ALPHA_MAX_DEFAULT = 1e6
JMAX_DEFAULT = 50


class LineSearchError(RuntimeError):
    """Backtracking exhausted its budget; carries diagnostics."""

    def __init__(self, message, *, x=None, d=None, jmax=None):
        super().__init__(message)
        self.x = x
        self.d = d
        self.jmax = jmax


@dataclass
class AlphaVector:
    alpha: np.ndarray
    provenance: list[str]

    @property
    def clamped(self) -> bool:
        return any(tag.startswith("clamped") for tag in self.provenance)


@dataclass
class LineSearchResult:
    t: float
    trials: int
    accepted_condition: str
    f_new: np.ndarray | None = None


def bb_alpha(s, Y, amin: float = ALPHA_MIN_DEFAULT,
             amax: float = ALPHA_MAX_DEFAULT) -> AlphaVector:
    """Per-row BB scalar from step s and transformed Jacobian differences Y.

    Row i of Y is row i of A (JF(x_k) - JF(x_{k-1})).  Positive curvature
    gives the Rayleigh quotient, negative curvature the norm ratio, zero
    curvature falls back to amin; everything is clamped to [amin, amax].
    """
    s = np.asarray(s, dtype=float)
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    ss = float(s @ s)
    if ss == 0.0:
        raise ValueError("BB scalar undefined at a repeated point (||s|| = 0)")
    if not (0.0 < amin < amax):
        raise ValueError("need 0 < amin < amax")
    alpha = np.empty(Y.shape[0])
    tags = []
    for i, y in enumerate(Y):
        curv = float(s @ y)
        if curv > 0.0:
            raw, tag = curv / ss, "positive-curvature"
        elif curv < 0.0:
            raw, tag = float(np.linalg.norm(y)) / np.sqrt(ss), "negative-curvature"
        else:
            raw, tag = amin, "zero-curvature"
        if raw < amin:
            raw, tag = amin, "clamped-lo"
        elif raw > amax:
            raw, tag = amax, "clamped-hi"
        alpha[i] = raw
        tags.append(tag)
    return AlphaVector(alpha=alpha, provenance=tags)


def bb_vector_raw(s, dJ) -> np.ndarray:
    """Raw per-objective BB vector: <row i of dJ, s> / ||s||^2, no clamping."""
    s = np.asarray(s, dtype=float)
    dJ = np.atleast_2d(np.asarray(dJ, dtype=float))
    ss = float(s @ s)
    if ss == 0.0:
        raise ValueError("BB vector undefined at a repeated point (||s|| = 0)")
    return dJ @ s / ss


def _backtrack(p, K, x, d, rhs_of_t, label, gamma, jmax, fx):
    x = np.asarray(x, dtype=float)
    d = np.asarray(d, dtype=float)
    if fx is None:
        fx = evaluate(p, x)
    # near stationarity the objective differences fall below the rounding
    # noise of the evaluations themselves; allow that much slack so the
    # comparison never rejects on cancellation error alone
    noise = 8.0 * np.finfo(float).eps * (1.0 + np.abs(K.A) @ np.abs(fx))
    t = 1.0
    for j in range(jmax + 1):
        f_new = evaluate(p, x + t * d)
        lhs = K.A @ (f_new - fx)
        if np.all(lhs <= rhs_of_t(t) + noise):
            return LineSearchResult(t=t, trials=j + 1, accepted_condition=label,
                                    f_new=f_new)
        t *= gamma
    raise LineSearchError(f"{label} line search failed after {jmax + 1} trials",
                          x=x, d=d, jmax=jmax)


def armijo_search(p, K, x, d, J_row_products, sigma: float = SIGMA_DEFAULT,
                  gamma: float = GAMMA_DEFAULT, jmax: int = JMAX_DEFAULT,
                  fx=None) -> LineSearchResult:
    """Largest t = gamma^j with A(F(x+td) - F(x)) <= sigma t (A JF(x) d)."""
    rp = np.asarray(J_row_products, dtype=float)
    if not (0.0 < sigma < 1.0 and 0.0 < gamma < 1.0):
        raise ValueError("sigma and gamma must lie in (0, 1)")
    return _backtrack(p, K, x, d, lambda t: sigma * t * rp, "armijo",
                      gamma, jmax, fx)


def mm_search(p, K, x, d, J_row_products, alpha,
              gamma: float = GAMMA_DEFAULT, jmax: int = JMAX_DEFAULT,
              fx=None) -> LineSearchResult:
    """Backtracking on the majorization condition with relaxation 0.5||d||^2 alpha."""
    rp = np.asarray(J_row_products, dtype=float)
    a = np.asarray(alpha, dtype=float)
    dd = float(np.asarray(d) @ np.asarray(d))
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    return _backtrack(p, K, x, d, lambda t: t * (rp + 0.5 * dd * a),
                      "majorization", gamma, jmax, fx)
