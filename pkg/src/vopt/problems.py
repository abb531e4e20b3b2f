"""Benchmark problem registry: analytic objectives, Jacobians, bounds.

Each problem is an unconstrained vector objective; the box bounds only
constrain initial sampling.  Quadratic problems additionally carry exact
strong-convexity / smoothness certificates in objective space, which the
rate and step-size checks rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class VectorProblem:
    name: str
    n: int
    m: int
    eval: callable
    jac: callable
    lower: np.ndarray
    upper: np.ndarray
    mu: np.ndarray | None = None
    ell: np.ndarray | None = None

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        if not np.all(lower < upper):
            raise ValueError(f"{self.name}: lower bounds must be below upper bounds")
        for cert in ("mu", "ell"):
            v = getattr(self, cert)
            if v is not None:
                object.__setattr__(self, cert, np.asarray(v, dtype=float))


@dataclass(frozen=True)
class StartPair:
    """Initial point plus the auxiliary previous point used to seed BB."""

    x0: np.ndarray
    x_prev: np.ndarray


def evaluate(p: VectorProblem, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    f = np.asarray(p.eval(x), dtype=float)
    if not np.all(np.isfinite(f)):
        raise FloatingPointError(f"{p.name}: non-finite objective at x={x!r}")
    return f


def jacobian(p: VectorProblem, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    J = np.asarray(p.jac(x), dtype=float)
    if not np.all(np.isfinite(J)):
        raise FloatingPointError(f"{p.name}: non-finite Jacobian at x={x!r}")
    return J


def fd_check(p: VectorProblem, samples: int = 20, h: float = 1e-6, seed: int = 0) -> float:
    """Max relative error of the analytic Jacobian vs central differences."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = rng.uniform(p.lower, p.upper)
        J = jacobian(p, x)
        for j in range(p.n):
            e = np.zeros(p.n)
            e[j] = h
            fd = (evaluate(p, x + e) - evaluate(p, x - e)) / (2.0 * h)
            err = np.abs(J[:, j] - fd) / np.maximum(1.0, np.abs(J[:, j]))
            worst = max(worst, float(err.max()))
    return worst


def sample_start(p: VectorProblem, seed) -> StartPair:
    """Uniform start in the box; x_prev perturbed by 1e-4 of the box width."""
    rng = np.random.default_rng(seed)
    width = p.upper - p.lower
    x0 = rng.uniform(p.lower, p.upper)
    delta = rng.uniform(-1e-4, 1e-4, size=p.n) * width
    return StartPair(x0=x0, x_prev=x0 + delta)


# ---------------------------------------------------------------------------
# Problem definitions
# ---------------------------------------------------------------------------

def _bk1():
    def f(x):
        return np.array([x[0] ** 2 + x[1] ** 2,
                         (x[0] - 5.0) ** 2 + (x[1] - 5.0) ** 2])

    def jac(x):
        return np.array([[2.0 * x[0], 2.0 * x[1]],
                         [2.0 * (x[0] - 5.0), 2.0 * (x[1] - 5.0)]])

    return VectorProblem("BK1", 2, 2, f, jac,
                         lower=[-5.0, -5.0], upper=[10.0, 10.0],
                         mu=[2.0, 2.0], ell=[2.0, 2.0])


def _dd1():
    def f(x):
        return np.array([np.sum(x ** 2),
                         3.0 * x[0] + 2.0 * x[1] - x[2] / 3.0
                         + 0.01 * (x[3] - x[4]) ** 3])

    def jac(x):
        g2 = np.array([3.0, 2.0, -1.0 / 3.0,
                       0.03 * (x[3] - x[4]) ** 2,
                       -0.03 * (x[3] - x[4]) ** 2])
        return np.vstack([2.0 * x, g2])

    return VectorProblem("DD1", 5, 2, f, jac,
                         lower=[-20.0] * 5, upper=[20.0] * 5)


def _deb():
    # bimodal ratio objective; the narrow well sits at x2 = 0.2
    def g(x2):
        return (2.0 - np.exp(-(((x2 - 0.2) / 0.004) ** 2))
                - 0.8 * np.exp(-(((x2 - 0.6) / 0.4) ** 2)))

    def gprime(x2):
        return (2.0 * (x2 - 0.2) / 0.004 ** 2 * np.exp(-(((x2 - 0.2) / 0.004) ** 2))
                + 0.8 * 2.0 * (x2 - 0.6) / 0.4 ** 2 * np.exp(-(((x2 - 0.6) / 0.4) ** 2)))

    def f(x):
        return np.array([x[0], g(x[1]) / x[0]])

    def jac(x):
        return np.array([[1.0, 0.0],
                         [-g(x[1]) / x[0] ** 2, gprime(x[1]) / x[0]]])

    return VectorProblem("Deb", 2, 2, f, jac,
                         lower=[0.1, 0.1], upper=[1.0, 1.0])


def _ff1():
    def f(x):
        return np.array([1.0 - np.exp(-(x[0] - 1.0) ** 2 - (x[1] + 1.0) ** 2),
                         1.0 - np.exp(-(x[0] + 1.0) ** 2 - (x[1] - 1.0) ** 2)])

    def jac(x):
        e1 = np.exp(-(x[0] - 1.0) ** 2 - (x[1] + 1.0) ** 2)
        e2 = np.exp(-(x[0] + 1.0) ** 2 - (x[1] - 1.0) ** 2)
        return np.array([[2.0 * (x[0] - 1.0) * e1, 2.0 * (x[1] + 1.0) * e1],
                         [2.0 * (x[0] + 1.0) * e2, 2.0 * (x[1] - 1.0) * e2]])

    return VectorProblem("FF1", 2, 2, f, jac,
                         lower=[-1.0, -1.0], upper=[1.0, 1.0])


def _hil1():
    two_pi = 2.0 * np.pi

    def parts(x):
        a = two_pi / 360.0 * (45.0 + 40.0 * np.sin(two_pi * x[0])
                              + 25.0 * np.sin(two_pi * x[1]))
        b = 1.0 + 0.5 * np.cos(two_pi * x[0])
        da_dx1 = two_pi / 360.0 * 40.0 * two_pi * np.cos(two_pi * x[0])
        da_dx2 = two_pi / 360.0 * 25.0 * two_pi * np.cos(two_pi * x[1])
        db_dx1 = -0.5 * two_pi * np.sin(two_pi * x[0])
        return a, b, da_dx1, da_dx2, db_dx1

    def f(x):
        a, b, *_ = parts(x)
        return np.array([np.cos(a) * b, np.sin(a) * b])

    def jac(x):
        a, b, da1, da2, db1 = parts(x)
        return np.array([
            [-np.sin(a) * da1 * b + np.cos(a) * db1, -np.sin(a) * da2 * b],
            [np.cos(a) * da1 * b + np.sin(a) * db1, np.cos(a) * da2 * b],
        ])

    return VectorProblem("Hil1", 2, 2, f, jac,
                         lower=[0.0, 0.0], upper=[1.0, 1.0])


def _imbalance1():
    # quartic objective with steep walls vs a flat quadratic: gradient
    # magnitudes differ by orders of magnitude over the box
    def f(x):
        return np.array([1.0e4 * (x[0] ** 4 + x[1] ** 4),
                         (x[0] - 1.0) ** 2 + (x[1] - 1.0) ** 2])

    def jac(x):
        return np.array([[4.0e4 * x[0] ** 3, 4.0e4 * x[1] ** 3],
                         [2.0 * (x[0] - 1.0), 2.0 * (x[1] - 1.0)]])

    return VectorProblem("Imbalance1", 2, 2, f, jac,
                         lower=[-2.0, -2.0], upper=[2.0, 2.0])


def _jos1a(n=50):
    def f(x):
        return np.array([np.sum(x ** 2) / n,
                         np.sum((x - 2.0) ** 2) / n])

    def jac(x):
        return np.vstack([2.0 * x / n, 2.0 * (x - 2.0) / n])

    return VectorProblem("JOS1a", n, 2, f, jac,
                         lower=[-2.0] * n, upper=[2.0] * n,
                         mu=[2.0 / n, 2.0 / n], ell=[2.0 / n, 2.0 / n])


def _le1():
    def f(x):
        return np.array([(x[0] ** 2 + x[1] ** 2) ** 0.125,
                         ((x[0] - 0.5) ** 2 + (x[1] - 0.5) ** 2) ** 0.25])

    def jac(x):
        r1 = x[0] ** 2 + x[1] ** 2
        r2 = (x[0] - 0.5) ** 2 + (x[1] - 0.5) ** 2
        g1 = 0.125 * r1 ** (0.125 - 1.0) * 2.0 * x
        g2 = 0.25 * r2 ** (0.25 - 1.0) * 2.0 * (x - 0.5)
        return np.vstack([g1, g2])

    return VectorProblem("LE1", 2, 2, f, jac,
                         lower=[-5.0, -5.0], upper=[10.0, 10.0])


def _pnr():
    def f(x):
        return np.array([x[0] ** 4 + x[1] ** 4 - x[0] ** 2 + x[1] ** 2
                         - 10.0 * x[0] * x[1] + 0.25 * x[0] + 20.0,
                         (x[0] - 1.0) ** 2 + x[1] ** 2])

    def jac(x):
        return np.array([
            [4.0 * x[0] ** 3 - 2.0 * x[0] - 10.0 * x[1] + 0.25,
             4.0 * x[1] ** 3 + 2.0 * x[1] - 10.0 * x[0]],
            [2.0 * (x[0] - 1.0), 2.0 * x[1]],
        ])

    return VectorProblem("PNR", 2, 2, f, jac,
                         lower=[-2.0, -2.0], upper=[2.0, 2.0])


def _wit1(lam=0.5, w=20.0):
    # the first objective carries weight w, so the two gradient scales
    # differ by a constant factor across the whole box
    def f(x):
        u = x[0] + x[1]
        v = x[0] - x[1]
        common = 0.5 * (np.sqrt(1.0 + u ** 2) + np.sqrt(1.0 + v ** 2)) + lam * np.exp(-(v ** 2))
        return np.array([w * (common + 0.5 * v), common - 0.5 * v])

    def jac(x):
        u = x[0] + x[1]
        v = x[0] - x[1]
        su = u / np.sqrt(1.0 + u ** 2)
        sv = v / np.sqrt(1.0 + v ** 2)
        ev = lam * np.exp(-(v ** 2)) * (-2.0 * v)
        # d common / d x = 0.5*(su*du + sv*dv) + ev*dv with du=(1,1), dv=(1,-1)
        c1 = 0.5 * (su + sv) + ev
        c2 = 0.5 * (su - sv) - ev
        return np.array([[w * (c1 + 0.5), w * (c2 - 0.5)],
                         [c1 - 0.5, c2 + 0.5]])

    return VectorProblem("WIT1", 2, 2, f, jac,
                         lower=[-2.0, -2.0], upper=[2.0, 2.0])


def _quad_aniso():
    # constructed quadratic pair with certificates mu=(1,2), ell=(4,2):
    # condition number 4 under the identity transform
    H1 = np.diag([1.0, 4.0])

    def f(x):
        return np.array([0.5 * x @ H1 @ x,
                         (x[0] - 1.0) ** 2 + (x[1] - 1.0) ** 2])

    def jac(x):
        return np.vstack([H1 @ x, 2.0 * (x - 1.0)])

    return VectorProblem("QuadAniso", 2, 2, f, jac,
                         lower=[-5.0, -5.0], upper=[5.0, 5.0],
                         mu=[1.0, 2.0], ell=[4.0, 2.0])


_BUILDERS = {
    "BK1": _bk1,
    "DD1": _dd1,
    "Deb": _deb,
    "FF1": _ff1,
    "Hil1": _hil1,
    "Imbalance1": _imbalance1,
    "JOS1a": _jos1a,
    "LE1": _le1,
    "PNR": _pnr,
    "WIT1": _wit1,
    "QuadAniso": _quad_aniso,
}

#: the ten problems exercised by the shipped benchmark tables
BENCHMARK_NAMES = ["BK1", "DD1", "Deb", "FF1", "Hil1", "Imbalance1",
                   "JOS1a", "LE1", "PNR", "WIT1"]

_CACHE: dict[str, VectorProblem] = {}


def get_problem(name: str) -> VectorProblem:
    if name not in _BUILDERS:
        raise KeyError(f"unknown problem {name!r}; known: {sorted(_BUILDERS)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def all_problems() -> list[VectorProblem]:
    return [get_problem(name) for name in _BUILDERS]
