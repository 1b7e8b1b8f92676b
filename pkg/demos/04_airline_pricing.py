"""Two airlines set fares after privately hearing whether demand is strong.

Compares the classical equilibrium, the entangled equilibrium and full
collusion, and who ends up with the surplus in each case.
"""
import math

from qgames import AirlineParameters, ThetaProfile, airline, optimize_theta, verify_equilibrium, welfare_report
from qgames.private_info import associated_game
from qgames.scenarios import airline_classical_equilibrium, ce_ceiling, collusion_plan

params = AirlineParameters()
print("parameters:", params)
print("payoff constants A, B, C, D =", params.A, params.B, params.C, params.D)

scen = airline(params)
game = scen.game

# Classically both firms always price low.
eq = airline_classical_equilibrium(game)
print("classical equilibrium:", eq.profile, "payoff each:", eq.value)

# No correlating device helps either: the CE polytope is a single point.
value, _ = ce_ceiling(game)
print("best total payoff over correlated equilibria:", value)

# With entangled coins the firms do better.
opt = optimize_theta(scen.structure, game)
closed = math.acos(0.5 * math.sqrt((14 + math.sqrt(79)) / 7))
print(f"quantum theta = {opt.theta:.10f}, closed form {closed:.10f}")
print(f"quantum payoff each = {opt.value:.6f}")

report = verify_equilibrium(scen.structure, ThetaProfile(opt.theta), game)
for row in report.rows:
    print(f"firm {row.player} hearing {row.signal}: pure L {float(row.pure['L']):.4f},"
          f" pure H {float(row.pure['H']):.4f}, quantum {row.equilibrium:.4f}")

# Collusion: price high unless neither firm hears of strong demand.
print("collusive plan:", collusion_plan(game))

for regime in ("classical", "quantum", "collusion"):
    w = welfare_report(params, regime)
    print(f"{regime:>9}: consumers {float(w.consumer_surplus):8.3f}  producers {float(w.producer_surplus):8.3f}"
          f"  total {float(w.total):8.3f}")
