import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from qgames.classical import (
    BimatrixGame,
    ClassicalEnvironment,
    FiniteSampleSpace,
    RandomVariable,
    ce_polytope_is_singleton,
    ce_polytope_optimize,
    constant,
    distribution_from_flat,
    expected_payoffs,
    induced_distribution,
    is_correlated_equilibrium,
    is_nash_in_environment,
    mix,
    point_mass,
    pure_nash_equilibria,
    random_game,
    strategies_equivalent,
    total_payoff_weights,
)
from qgames.scenarios import conditioning_example

HT = ("H", "T")
seeds = st.integers(0, 10**6)


@pytest.fixture
def ex():
    return conditioning_example()


def deviation_map_oracle(game, dist):
    """CE iff no relabelling map of one player's recommendations pays more."""
    base = expected_payoffs(game, dist)
    for player in (0, 1):
        labels = game.strategies[player]
        for image in itertools.product(labels, repeat=len(labels)):
            f = dict(zip(labels, image))
            moved = {}
            for (a, b), p in dist.items():
                key = (f[a], b) if player == 0 else (a, f[b])
                moved.setdefault((a, b), 0)
                # payoff of the deviator only
                moved[(a, b)] = p * game.payoff(*key)[player]
            if sum(moved.values()) > base[player] + 1e-10:
                return False
    return True


def lp_oracle(game, weights):
    cells = [(a, b) for a in game.strategies[0] for b in game.strategies[1]]
    rows = []
    for player in (0, 1):
        labels = game.strategies[player]
        for s, t in itertools.permutations(labels, 2):
            row = []
            for a, b in cells:
                own = a if player == 0 else b
                if own != s:
                    row.append(0.0)
                    continue
                dev = (t, b) if player == 0 else (a, t)
                row.append(float(game.payoff(*dev)[player] - game.payoff(a, b)[player]))
            rows.append(row)
    c = [-float(weights[k]) for k in cells]
    res = linprog(c, A_ub=rows, b_ub=np.zeros(len(rows)), A_eq=[np.ones(len(cells))], b_eq=[1], method="highs")
    return -res.fun


def test_game_validation():
    with pytest.raises(ValueError):
        BimatrixGame((HT, HT), [[(0, 0), (1, 1)]])
    with pytest.raises(ValueError):
        BimatrixGame((HT, HT), [[(0, 0), (1, float("inf"))], [(0, 0), (0, 0)]])


def test_sample_space_validation():
    with pytest.raises(ValueError):
        FiniteSampleSpace((F(1, 2), F(1, 3)))
    with pytest.raises(ValueError):
        FiniteSampleSpace((F(3, 2), F(-1, 2)))


def test_induced_distribution_examples(ex):
    space = FiniteSampleSpace((F(1, 2), F(1, 2)))
    assert induced_distribution(space, constant("H", space), constant("T", space)) == {("H", "T"): 1}
    coin = RandomVariable(("H", "T"))
    assert induced_distribution(space, coin, coin) == {("H", "H"): F(1, 2), ("T", "T"): F(1, 2)}
    dx = induced_distribution(ex.environment.space, ex.x, ex.w)
    assert dx == {("H", "H"): F(1, 8), ("T", "T"): F(1, 8), ("H", "T"): F(3, 8), ("T", "H"): F(3, 8)}
    dy = induced_distribution(ex.environment.space, ex.y, ex.w)
    assert dy[("H", "H")] == F(1, 12) and dy[("H", "T")] == F(5, 12)


def test_expected_payoffs(ex):
    g = ex.game
    assert expected_payoffs(g, point_mass("H", "T")) == (2, 1)
    uniform = {(a, b): F(1, 4) for a in HT for b in HT}
    assert expected_payoffs(g, uniform) == (F(3, 4), F(3, 4))
    dx = induced_distribution(ex.environment.space, ex.x, ex.w)
    assert expected_payoffs(g, dx)[0] == F(9, 8)


def test_strategies_equivalent(ex):
    assert strategies_equivalent(ex.game, 0, "H", "H")
    assert not strategies_equivalent(ex.game, 0, "H", "T")
    twin = BimatrixGame((("a", "b"), HT), [[(1, 2), (3, 4)], [(1, 2), (3, 4)]])
    assert strategies_equivalent(twin, 0, "a", "b")
    assert not strategies_equivalent(twin, 1, "H", "T")


def test_correlated_equilibrium_examples(ex):
    space = ex.environment.space
    assert is_correlated_equilibrium(ex.game, induced_distribution(space, ex.x, ex.w))
    assert is_correlated_equilibrium(ex.game, induced_distribution(space, ex.y, ex.w))
    assert not is_correlated_equilibrium(ex.game, point_mass("H", "H"))


def test_nash_in_environment_examples(ex):
    env = ex.environment
    assert not is_nash_in_environment(ex.game, env, (ex.x, ex.w))
    assert is_nash_in_environment(ex.game, env, (ex.y, ex.w))
    alone = ClassicalEnvironment(env.space, ((ex.x,), (ex.w,)))
    assert is_nash_in_environment(ex.game, alone, (ex.x, ex.w))
    with pytest.raises(ValueError):
        is_nash_in_environment(ex.game, alone, (ex.y, ex.w))


def test_ce_optimize_dominant_strategies():
    # prisoner's dilemma: defect dominates
    g = BimatrixGame((("C", "D"), ("C", "D")), [[(3, 3), (0, 5)], [(5, 0), (1, 1)]])
    value, dist = ce_polytope_optimize(g, total_payoff_weights(g))
    assert value == 2
    assert {k: v for k, v in dist.items() if v} == {("D", "D"): 1}
    assert ce_polytope_is_singleton(g) is not None


def test_ce_optimize_example_game(ex):
    g = ex.game
    weights = {(a, b): cell[0] for a, b, cell in g.cells()}
    value, dist = ce_polytope_optimize(g, weights)
    assert is_correlated_equilibrium(g, dist)
    dx = induced_distribution(ex.environment.space, ex.x, ex.w)
    assert value >= expected_payoffs(g, dx)[0]
    # the game has a continuum of correlated equilibria
    assert ce_polytope_is_singleton(g) is None


def test_float_games_use_highs():
    g = BimatrixGame((HT, HT), [[(0.0, 0.0), (2.0, 1.0)], [(1.0, 2.0), (0.0, 0.0)]])
    value, dist = ce_polytope_optimize(g, total_payoff_weights(g))
    assert value == pytest.approx(3.0, abs=1e-9)
    assert is_correlated_equilibrium(g, dist, tol=1e-8)


def test_pure_nash():
    g = conditioning_example().game
    assert sorted(pure_nash_equilibria(g)) == [("H", "T"), ("T", "H")]


def test_distribution_from_flat():
    g = conditioning_example().game
    d = distribution_from_flat(g, [F(1, 8), F(3, 8), F(3, 8), F(1, 8)])
    assert d[("H", "T")] == F(3, 8)
    with pytest.raises(ValueError):
        distribution_from_flat(g, [1, 0, 0])
    with pytest.raises(ValueError):
        distribution_from_flat(g, [F(1, 2), F(1, 2), F(1, 2), F(-1, 2)])


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_ce_optimum_matches_independent_lp(seed):
    rng = np.random.default_rng(seed)
    g = random_game(rng, int(rng.integers(2, 4)), int(rng.integers(2, 4)))
    w = {(a, b): int(rng.integers(-3, 4)) for a in g.strategies[0] for b in g.strategies[1]}
    value, dist = ce_polytope_optimize(g, w)
    assert float(value) == pytest.approx(lp_oracle(g, w), abs=1e-9)
    assert is_correlated_equilibrium(g, dist)
    assert sum(dist.values()) == 1


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_ce_check_matches_deviation_maps(seed):
    rng = np.random.default_rng(seed)
    g = random_game(rng, 2, 3)
    w = rng.integers(0, 4, size=6)
    if w.sum() == 0:
        w[0] = 1
    cells = [(a, b) for a in g.strategies[0] for b in g.strategies[1]]
    dist = {k: F(int(v), int(w.sum())) for k, v in zip(cells, w)}
    assert is_correlated_equilibrium(g, dist) == deviation_map_oracle(g, dist)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_environment_nash_implies_correlated(seed):
    rng = np.random.default_rng(seed)
    g = random_game(rng, 2, 2)
    n = int(rng.integers(2, 5))
    space = FiniteSampleSpace(tuple(F(1, n) for _ in range(n)))
    labels1, labels2 = g.strategies

    def rv(labels, name):
        return RandomVariable(tuple(labels[int(i)] for i in rng.integers(0, 2, n)), name)

    xs = [rv(labels1, f"X{k}") for k in range(2)]
    ys = [rv(labels2, f"Y{k}") for k in range(2)]
    env = ClassicalEnvironment(space, (xs, ys))
    for x in xs:
        for y in ys:
            if is_nash_in_environment(g, env, (x, y)):
                assert is_correlated_equilibrium(g, induced_distribution(space, x, y))


@settings(max_examples=60)
@given(seeds, st.fractions(0, 1))
def test_payoffs_linear_in_distribution(seed, w):
    rng = np.random.default_rng(seed)
    g = random_game(rng, 2, 2)
    cells = [(a, b) for a in g.strategies[0] for b in g.strategies[1]]
    d1 = point_mass(*cells[int(rng.integers(4))])
    d2 = {k: F(1, 4) for k in cells}
    mixed = expected_payoffs(g, mix(d1, d2, w))
    e1, e2 = expected_payoffs(g, d1), expected_payoffs(g, d2)
    assert mixed == tuple(w * a + (1 - w) * b for a, b in zip(e1, e2))
