from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from qgames.simplex import solve_lp


def test_textbook_lp():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
    res = solve_lp([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.status == "optimal"
    assert res.value == 36
    assert res.x == [2, 6]


def test_beale_cycling_example():
    # degenerate LP on which the largest-coefficient rule cycles
    c = [F(3, 4), -20, F(1, 2), -6]
    a = [[F(1, 4), -8, -1, 9], [F(1, 2), -12, F(-1, 2), 3], [0, 0, 1, 0]]
    res = solve_lp(c, a, [0, 0, 1])
    assert res.status == "optimal"
    assert res.value == F(5, 4)


def test_equalities_and_negative_rhs():
    # x + y = 1, x - y >= 1/3 written as -x + y <= -1/3; max y
    res = solve_lp([0, 1], [[-1, 1]], [F(-1, 3)], [[1, 1]], [1])
    assert res.value == F(1, 3)
    assert res.x == [F(2, 3), F(1, 3)]


def test_infeasible_and_unbounded():
    assert solve_lp([1], [[1]], [-1]).status == "infeasible"
    assert solve_lp([1, 0], [[-1, 1]], [0]).status == "unbounded"


def test_redundant_equalities():
    res = solve_lp([1, 1], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert res.status == "optimal" and res.value == 1


def test_rejects_floats():
    with pytest.raises(TypeError):
        solve_lp([0.5], [[1]], [1])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_highs(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(1, 5), rng.integers(1, 5)
    a = rng.integers(-3, 6, size=(m, n))
    b = rng.integers(0, 8, size=m)
    c = rng.integers(-4, 5, size=n)
    box = np.eye(n, dtype=int)  # keep it bounded
    a_full = np.vstack([a, box])
    b_full = np.concatenate([b, np.full(n, 5)])
    mine = solve_lp(c.tolist(), a_full.tolist(), b_full.tolist())
    ref = linprog(-c, A_ub=a_full, b_ub=b_full, bounds=[(0, None)] * n, method="highs")
    assert mine.status == "optimal" and ref.status == 0
    assert float(mine.value) == pytest.approx(-ref.fun, abs=1e-9)
    x = np.array([float(v) for v in mine.x])
    assert (a_full @ x <= b_full + 1e-12).all()
