"""Polyhedral ordering cones and the induced partial order.

A cone K in objective space is given in H-representation by a transform
matrix A (l x m): K = {y : A y >= 0 componentwise}.  Comparisons a <=_K b
then reduce to exact componentwise inequalities on A(b - a).  The rows of
A double as the candidate vertices of a base of the dual cone, which is
what every direction subproblem consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PolyhedralCone:
    """Ordering cone K = {y in R^m : A y >= 0}.

    ``generators`` (V-representation) are optional and only used for
    cross-validation in tests; the solver path works off the rows of A.
    """

    A: np.ndarray
    generators: tuple | None = None
    name: str = ""

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        object.__setattr__(self, "A", A)
        l, m = A.shape
        if not np.all(np.isfinite(A)):
            raise ValueError("transform matrix has non-finite entries")
        row_norms = np.linalg.norm(A, axis=1)
        if np.any(row_norms == 0.0):
            raise ValueError("transform matrix has a zero row")
        if l < m:
            raise ValueError(f"need at least m={m} rows, got {l}")
        if np.linalg.matrix_rank(A) < m:
            raise ValueError("transform matrix is column rank deficient")
        if self.generators is not None:
            gens = tuple(np.asarray(g, dtype=float) for g in self.generators)
            object.__setattr__(self, "generators", gens)
            for g in gens:
                if np.any(A @ g < -1e-12):
                    raise ValueError("generator violates an H-representation row")

    @property
    def l(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.A.shape[1]

    def contains(self, y) -> bool:
        """Exact membership test y in K."""
        y = np.asarray(y, dtype=float)
        self._check_dim(y)
        return bool(np.all(self.A @ y >= 0.0))

    def _check_dim(self, y: np.ndarray):
        if y.shape != (self.m,):
            raise ValueError(f"expected vector of dimension {self.m}, got shape {y.shape}")


def cone_leq(a, b, K: PolyhedralCone) -> bool:
    """a <=_K b, i.e. A(b - a) >= 0 componentwise.  No tolerance."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    K._check_dim(a)
    K._check_dim(b)
    return bool(np.all(K.A @ (b - a) >= 0.0))


def cone_strict_lt(a, b, K: PolyhedralCone) -> bool:
    """a <_K b strictly: A(b - a) > 0 in every component."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    K._check_dim(a)
    K._check_dim(b)
    return bool(np.all(K.A @ (b - a) > 0.0))


def dual_base_vertices(K: PolyhedralCone) -> list[np.ndarray]:
    """Rows A_i in order; candidate vertices of the dual-cone base conv{A_i}."""
    return [K.A[i].copy() for i in range(K.l)]


def scaled_transform(K: PolyhedralCone, problem, x0) -> PolyhedralCone:
    """Divide row i by max(1, inf-norm of gradient of objective i at x0).

    Positive row scaling leaves the cone unchanged geometrically; only the
    base handed to direction subproblems moves.  Applies the row-per-objective
    convention, so requires a square transform.
    """
    if K.l != K.m:
        raise ValueError("initial-gradient scaling expects a square transform")
    x0 = np.asarray(x0, dtype=float)
    J = problem.jac(x0)
    scales = np.maximum(1.0, np.max(np.abs(J), axis=1))
    return PolyhedralCone(K.A / scales[:, None], name=K.name + "-hat" if K.name else "")


# The three cones exercised by the shipped benchmark.
R2_PLUS = PolyhedralCone(np.eye(2), name="R2+")
K1 = PolyhedralCone(np.array([[5.0, -1.0], [-1.0, 5.0]]), name="K1")
K2 = PolyhedralCone(np.array([[5.0, 1.0], [1.0, 5.0]]), name="K2")

NAMED_CONES = {"R2+": R2_PLUS, "K1": K1, "K2": K2}


def cone_by_name(name: str) -> PolyhedralCone:
    try:
        return NAMED_CONES[name]
    except KeyError:
        raise KeyError(f"unknown cone {name!r}; known: {sorted(NAMED_CONES)}") from None
