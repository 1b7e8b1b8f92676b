"""The cats-and-dogs game: a private-information game where entanglement wins.

Each player is asked about cats or dogs. They score when their answers
match, except when both are asked about cats, where they score on a
mismatch.
"""
import math

import numpy as np

from qgames import ThetaProfile, behavioral_payoff, cats_dogs, optimize_theta, verify_equilibrium
from qgames.private_info import associated_game, extension_refute, quantum_behavioral_game
from qgames.quantum import BELL, PURE_H, PURE_T

scen = cats_dogs()
game = scen.game

# Best any pair of classical strategies can do: 3/4.
g_sharp = associated_game(game)
print("classical ceiling:", max(cell[0] for _, _, cell in g_sharp.cells()))

# Rotation strategies parametrized by one angle.
for theta in np.linspace(0, math.pi / 4, 5):
    u = behavioral_payoff(game, BELL, ThetaProfile(theta).behavioral(game.signals))
    print(f"theta = {theta:.4f}  payoff = {u[0]:.6f}")

opt = optimize_theta(scen.structure, game)
print(f"optimum theta = {opt.theta:.10f} (pi/8 = {math.pi / 8:.10f})")
print(f"optimum value = {opt.value:.10f} (cos^2(pi/8) = {math.cos(math.pi / 8) ** 2:.10f})")

# Nobody gains by switching to any other rotation after seeing a question.
report = verify_equilibrium(scen.structure, ThetaProfile(opt.theta), game, starts=100)
for row in report.rows:
    print(f"player {row.player}, asked {row.signal}: best deviation {row.best_unitary:.6f}"
          f" vs {row.equilibrium:.6f}")
print("equilibrium:", report.verdict)

# The payoff pair from the quantum game lies outside everything a classical
# randomizing device could produce.
f1, f2 = ThetaProfile(opt.theta).behavioral(game.signals)
q = quantum_behavioral_game(game, BELL, {"rotate": f1, "heads": {"cat": PURE_H, "dog": PURE_H}},
                            {"rotate": f2, "tails": {"cat": PURE_T, "dog": PURE_T}})
print("quantum game is a classical extension:", extension_refute(g_sharp, q))
