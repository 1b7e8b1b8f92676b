"""Correlated equilibria of a small coordination game.

Checks a few distributions, optimizes over the polytope exactly and then
looks at what changes when a player can pick which signal to follow.
"""
from fractions import Fraction as F

from qgames import BimatrixGame, ce_polytope_optimize, expected_payoffs, is_correlated_equilibrium, pure_nash_equilibria
from qgames.classical import induced_distribution, is_nash_in_environment, total_payoff_weights
from qgames.scenarios import conditioning_example

# Each player wants to be the one who plays T while the other plays H.
game = BimatrixGame((("H", "T"), ("H", "T")), [[(0, 0), (2, 1)], [(1, 2), (0, 0)]])
print("pure Nash:", pure_nash_equilibria(game))

fair = {("H", "T"): F(1, 2), ("T", "H"): F(1, 2)}
print("50/50 over the two pure equilibria is a CE:", is_correlated_equilibrium(game, fair))

bad = {("H", "H"): F(1, 2), ("T", "T"): F(1, 2)}
print("50/50 over the miscoordinated cells is a CE:", is_correlated_equilibrium(game, bad))

# Best total payoff over all correlated equilibria, in exact arithmetic.
value, dist = ce_polytope_optimize(game, total_payoff_weights(game))
print("max total payoff:", value)
print({k: v for k, v in dist.items() if v})

# Two signals X and Y for player one, W for player two.
ex = conditioning_example()
for name, sig in (("X", ex.x), ("Y", ex.y)):
    d = induced_distribution(ex.environment.space, sig, ex.w)
    print(f"({name}, W): CE = {is_correlated_equilibrium(ex.game, d)},"
          f" payoffs = {expected_payoffs(ex.game, d)},"
          f" Nash with both signals available = {is_nash_in_environment(ex.game, ex.environment, (sig, ex.w))}")
