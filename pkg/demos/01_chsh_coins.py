"""Two players share an entangled pair of coins and each twists one.

Walks through the coin chart: how often the two coins disagree for each
pair of questions, and why no pair of classical coins can match it.
"""
import math

import numpy as np

from qgames import BELL, apply_pair, outcome_distribution, rotation
from qgames.equilibrium import arcsine_slack, classical_feasible, quantum_feasible
from qgames.scenarios import coin_chart

# The shared state: both heads or both tails, each with amplitude 1/sqrt(2).
print("Bell coefficients:\n", BELL.coefficients)

# A rotation by a on one side and b on the other leaves the coins
# disagreeing with probability sin^2(a - b).
a, b = 0.3, -0.1
d = outcome_distribution(BELL, rotation(a), rotation(b))
print(f"disagree = {d.disagreement:.6f}, sin^2(a-b) = {math.sin(a - b) ** 2:.6f}")

# Applying the moves really does act on the coefficient matrix as U C V^T.
after = apply_pair(BELL, rotation(a), rotation(b))
print("after moves:\n", np.round(after.coefficients, 6))

# The chart at the canonical angle.
chart = coin_chart()
for (q1, q2), dist in chart.items():
    print(f"{q1:>3}/{q2:<3}  P(disagree) = {dist.disagreement:.4f}")

# Chain A-S-B-T-A: A, B are player one's coins, S, T player two's.
quad = [chart[k].disagreement for k in (("cat", "dog"), ("dog", "dog"), ("dog", "cat"), ("cat", "cat"))]
print("end to end:", round(quad[3], 4), " sum of links:", round(sum(quad[:3]), 4))
print("classical coins could do this:", classical_feasible(quad))
print("entangled coins can:", quantum_feasible(quad), " slack:", float(arcsine_slack(quad)))

# Sweep the angle: the violation is largest at pi/8.
thetas = np.linspace(0, math.pi / 4, 9)
for th in thetas:
    c = coin_chart(th)
    q = [c[k].disagreement for k in (("cat", "dog"), ("dog", "dog"), ("dog", "cat"), ("cat", "cat"))]
    print(f"theta = {th:.4f}  excess = {q[3] - sum(q[:3]):+.4f}")
