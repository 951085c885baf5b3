"""Exact LP solver: hand-checked optima and a float cross-check."""

from fractions import Fraction
from random import Random

import pytest

from valhilb.errors import LPInfeasible, LPUnbounded
from valhilb.exactlp import solve_lp


def test_simple_corner():
    # min -x - y  s.t. x + y <= 1: optimum -1 on the whole edge
    value, x = solve_lp([-1, -1], [[1, 1]], [1])
    assert value == -1
    assert x[0] + x[1] == 1


def test_exact_fractions():
    # min -3x - 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), -36
    value, x = solve_lp([-3, -5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert value == Fraction(-36)
    assert x == [Fraction(2), Fraction(6)]


def test_negative_rhs_feasible():
    # x >= 1 encoded as -x <= -1; min x -> 1
    value, x = solve_lp([1], [[-1]], [-1])
    assert value == 1
    assert x == [Fraction(1)]


def test_infeasible():
    with pytest.raises(LPInfeasible):
        solve_lp([1], [[1], [-1]], [1, -2])  # x <= 1 and x >= 2


def test_unbounded():
    with pytest.raises(LPUnbounded):
        solve_lp([-1], [[-1]], [0])  # min -x with x >= 0 only


def test_degenerate_cycling_guard():
    # классic Beale-style degeneracy; Bland's rule must terminate
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    A = [
        [Fraction(1, 4), -60, Fraction(-1, 25), 9],
        [Fraction(1, 2), -90, Fraction(-1, 50), 3],
        [0, 0, 1, 0],
    ]
    b = [0, 0, 1]
    value, x = solve_lp(c, A, b)
    assert value == Fraction(-1, 20)


def test_random_against_float_solver():
    opt = pytest.importorskip("scipy.optimize")
    rng = Random(61)
    for _ in range(40):
        n = rng.randint(1, 4)
        m = rng.randint(1, 5)
        c = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        A = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(m)]
        b = [Fraction(rng.randint(0, 6)) for _ in range(m)]  # 0 feasible
        # keep it bounded: add sum(x) <= 10
        A.append([Fraction(1)] * n)
        b.append(Fraction(10))
        value, x = solve_lp(c, A, b)
        assert all(xi >= 0 for xi in x)
        for row, bi in zip(A, b):
            assert sum(r * xi for r, xi in zip(row, x)) <= bi
        ref = opt.linprog(
            [float(v) for v in c],
            A_ub=[[float(v) for v in row] for row in A],
            b_ub=[float(v) for v in b],
            bounds=[(0, None)] * n,
            method="highs",
        )
        assert ref.success
        assert float(value) == pytest.approx(ref.fun, abs=1e-7)
