"""Solver loop: terminations, counters, traces, invariance."""

import numpy as np
import pytest

from vopt.cone import K1, R2_PLUS, cone_leq
from vopt.problems import StartPair, get_problem, sample_start
from vopt.solver import (ALGORITHMS, SolverConfig, read_jsonl, run,
                         strategy_alpha, transform_invariance_check)


def start_at(x0, x_prev=None):
    x0 = np.asarray(x0, dtype=float)
    return StartPair(x0=x0, x_prev=x0 + 1e-4 if x_prev is None else np.asarray(x_prev))


def test_config_validation():
    with pytest.raises(ValueError, match="unknown algorithm"):
        SolverConfig(algorithm="gd")
    with pytest.raises(ValueError, match="tolerance"):
        SolverConfig(tol=0.0)
    with pytest.raises(ValueError, match="max_iter"):
        SolverConfig(max_iter=0)
    with pytest.raises(ValueError, match="line search"):
        SolverConfig(linesearch="wolfe")
    with pytest.raises(ValueError, match="no cone"):
        run(SolverConfig(), get_problem("BK1"), start_at([1.0, 1.0]))


def test_cone_dimension_mismatch():
    from vopt.cone import PolyhedralCone

    line = PolyhedralCone(np.array([[1.0]]))
    with pytest.raises(ValueError, match="objectives"):
        run(SolverConfig(cone=line), get_problem("BK1"), start_at([1.0, 1.0]))


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_every_algorithm_solves_bk1(algo):
    cfg = SolverConfig(algorithm=algo, cone=R2_PLUS, fixed_L=4.0)
    trace = run(cfg, get_problem("BK1"), start_at([-3.0, 7.0]))
    assert trace.termination == "stationary"
    assert not trace.failed
    assert trace.dnorm_final <= cfg.tol
    # the limit lies on the efficient segment between the two minimizers
    assert np.all(trace.x_final >= -1e-6) and np.all(trace.x_final <= 5.0 + 1e-6)


def test_bbdvo_single_step_counters():
    # BB recovers the exact curvature of BK1, so one accepted trial suffices
    p = get_problem("BK1")
    trace = run(SolverConfig(algorithm="bbdvo", cone=R2_PLUS), p,
                sample_start(p, [42, 0, 0]))
    assert trace.iterations == 1
    assert trace.fevals == 1
    assert trace.jevals == 3  # x0, x_prev, and the accepted iterate
    assert len(trace.records) == 1
    assert trace.records[0].t == 1.0
    assert trace.records[0].alpha == pytest.approx([2.0, 2.0])


def test_stationary_start_terminates_immediately():
    # x = (2.5, 2.5) sits on BK1's efficient segment
    trace = run(SolverConfig(algorithm="sdvo", cone=R2_PLUS),
                get_problem("BK1"), start_at([2.5, 2.5]))
    assert trace.termination == "stationary"
    assert trace.iterations == 0
    assert trace.fevals == 0


def test_max_iter_termination_flags_failure():
    trace = run(SolverConfig(algorithm="sdvo", cone=R2_PLUS, max_iter=2),
                get_problem("Deb"), start_at([0.9, 0.9]))
    assert trace.termination == "max_iter"
    assert trace.failed
    assert trace.iterations == 2


def test_mm_steps_are_cone_decreasing():
    p = get_problem("BK1")
    cfg = SolverConfig(algorithm="mm-ell", cone=R2_PLUS)
    trace = run(cfg, p, start_at([-4.0, 9.0]))
    assert trace.termination == "stationary"
    fs = [rec.f for rec in trace.records] + [trace.f_final]
    for a, b in zip(fs[1:], fs[:-1]):
        assert cone_leq(a, b, R2_PLUS)
    # fixed-scale variants take the unit step without trial evaluations
    assert trace.fevals == 0
    assert all(rec.t == 1.0 for rec in trace.records)


def test_strategy_alpha_vectors():
    p = get_problem("QuadAniso")  # ell = (4, 2)
    assert np.allclose(strategy_alpha(SolverConfig(algorithm="mm-ell", cone=R2_PLUS),
                                      R2_PLUS, p), [4.0, 2.0])
    assert np.allclose(strategy_alpha(SolverConfig(algorithm="mm-ell-base", cone=R2_PLUS),
                                      R2_PLUS, p), [4.0, 2.0])
    assert np.allclose(strategy_alpha(SolverConfig(algorithm="mm-fixed-l", cone=R2_PLUS),
                                      R2_PLUS, p), [4.0, 4.0])  # defaults to L_max
    cfg = SolverConfig(algorithm="mm-fixed-l", cone=R2_PLUS, fixed_L=9.0)
    assert np.allclose(strategy_alpha(cfg, R2_PLUS, p), [9.0, 9.0])
    with pytest.raises(ValueError, match="certificate"):
        strategy_alpha(SolverConfig(algorithm="mm-ell", cone=R2_PLUS),
                       R2_PLUS, get_problem("FF1"))
    with pytest.raises(ValueError, match="no fixed scale"):
        strategy_alpha(SolverConfig(algorithm="sdvo", cone=R2_PLUS), R2_PLUS, p)


def test_repeated_start_point_falls_back_to_unit_alpha():
    x0 = np.array([-3.0, 7.0])
    trace = run(SolverConfig(algorithm="bbdvo", cone=R2_PLUS),
                get_problem("BK1"), StartPair(x0=x0, x_prev=x0.copy()))
    assert trace.termination == "stationary"
    assert np.allclose(trace.records[0].alpha, [1.0, 1.0])


def test_trace_jsonl_round_trip(tmp_path):
    p = get_problem("FF1")
    trace = run(SolverConfig(algorithm="bbdvo", cone=R2_PLUS), p,
                sample_start(p, [42, 1, 0]))
    path = tmp_path / "trace.jsonl"
    trace.write_jsonl(path)
    back = read_jsonl(path)
    assert back.termination == trace.termination
    assert back.iterations == trace.iterations
    assert back.fevals == trace.fevals
    assert np.allclose(back.x_final, trace.x_final)
    assert len(back.records) == len(trace.records)
    for r1, r2 in zip(back.records, trace.records):
        assert r1.k == r2.k and r1.t == r2.t
        assert np.allclose(r1.x, r2.x)
        assert np.allclose(r1.alpha, r2.alpha)


def test_read_jsonl_requires_a_summary(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"k": 0, "x": [0], "f": [0], "d": [0], "dnorm": 0, "t": 1, "trials": 1}\n')
    with pytest.raises(ValueError, match="summary"):
        read_jsonl(path)


def test_transform_invariance_pass_and_inconclusive():
    p = get_problem("FF1")
    cfg = SolverConfig(algorithm="bbdvo", cone=R2_PLUS)
    s = sample_start(p, [42, 2, 0])
    rep = transform_invariance_check(p, np.eye(2), np.diag([3.0, 7.0]), s, cfg)
    assert rep.status == "pass"
    assert rep.max_d_deviation <= 1e-8
    assert rep.t_match
    # a tight clamp window forces BB clamping, which voids the comparison
    tight = SolverConfig(algorithm="bbdvo", cone=R2_PLUS,
                         alpha_min=0.9, alpha_max=1.1)
    rep = transform_invariance_check(p, np.eye(2), np.diag([3.0, 7.0]), s, tight)
    assert rep.status == "inconclusive (clamped)"
    assert rep.clamped


def test_solver_under_nondiagonal_cone():
    trace = run(SolverConfig(algorithm="bbdvo", cone=K1),
                get_problem("WIT1"), start_at([1.5, -1.2]))
    assert trace.termination == "stationary"
