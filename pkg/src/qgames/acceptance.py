"""Acceptance checks for the headline numbers.

Each ``criterion_*`` function runs one check at a fixed tolerance and
returns a :class:`CriterionResult`.  ``run_all`` runs every criterion in
order; the ``verify`` command and the test suite both call it.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .classical import (
    ce_polytope_optimize,
    expected_payoffs,
    induced_distribution,
    is_correlated_equilibrium,
    is_nash_in_environment,
    point_mass,
    pure_nash_equilibria,
    total_payoff_weights,
)
from .equilibrium import (
    ThetaProfile,
    arcsine_slack,
    classical_feasible,
    conditional_return,
    disagreement_quads_batch,
    haar_angles,
    multistart_common_payoff,
    optimize_theta,
    verify_equilibrium,
)
from .private_info import (
    associated_game,
    extension_witness,
    kuhn_check,
    quantum_behavioral_game,
    random_environment,
    random_private_game,
)
from .quantum import (
    BELL,
    FLIP,
    IDENTITY,
    PURE_H,
    PURE_T,
    Pure,
    haar_unitary,
    outcome_distribution,
    random_state,
    su2_from_angles,
)
from .scenarios import (
    ALWAYS_L,
    AirlineParameters,
    airline,
    airline_classical_equilibrium,
    cats_dogs,
    coin_chart,
    conditioning_example,
    quantum_theta_closed_form,
    quantum_value_closed_form,
    welfare_report,
)

CHART_TOL = 1e-12
THETA_TOL = 1e-6
VALUE_TOL = 1e-9
WELFARE_TOL = 0.01
SIGNALING_TOL = 1e-12
REALIZABLE_SLACK = 1e-9
MULTISTART_SLACK = 1e-6
SEED = 20110401


class CriterionResult(NamedTuple):
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:>2}. {self.name}: {self.detail} ({self.seconds:.2f}s)"

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": self.seconds,
        }


def criterion_1():
    """Coin chart disagreement rates, and the chain inequality they break."""
    chart = coin_chart()
    low, high = math.sin(math.pi / 8) ** 2, math.sin(3 * math.pi / 8) ** 2
    errs = []
    for (a, b), dist in chart.items():
        target = high if (a, b) == ("cat", "cat") else low
        errs.append(abs(dist.disagreement - target))
    # chain A-S-B-T-A with A, B player one's coins and S, T player two's
    quad = [chart[k].disagreement for k in (("cat", "dog"), ("dog", "dog"), ("dog", "cat"), ("cat", "cat"))]
    violated = not classical_feasible(quad)
    ok = max(errs) <= CHART_TOL and violated
    return ok, f"max chart error {max(errs):.1e}, chain inequality violated: {violated}"


def criterion_2():
    """Best common payoff over all 16 classical contingent profiles."""
    g = associated_game(cats_dogs().game)
    best = max(cell[0] for _, _, cell in g.cells())
    n = len(g.strategies[0]) * len(g.strategies[1])
    return best == Fraction(3, 4) and n == 16, f"max over {n} profiles = {best}"


def criterion_3():
    scen = cats_dogs()
    opt = optimize_theta(scen.structure, scen.game)
    report = verify_equilibrium(scen.structure, ThetaProfile(opt.theta), scen.game)
    dt = abs(opt.theta - math.pi / 8)
    dv = abs(opt.value - math.cos(math.pi / 8) ** 2)
    ok = dt <= THETA_TOL and dv <= VALUE_TOL and report.verdict
    return ok, f"theta* = {opt.theta:.10f} (err {dt:.1e}), value = {opt.value:.10f} (err {dv:.1e}), verdict {report.verdict}"


def criterion_4():
    game = airline().game
    eqs = pure_nash_equilibria(associated_game(game))
    eq = airline_classical_equilibrium(game)
    ok = eqs == [(ALWAYS_L, ALWAYS_L)] and eq.value == Fraction(61, 4)
    return ok, f"pure equilibria {eqs}, payoff {eq.value}"


def _claims(game, theta):
    """Firm One's conditional returns to L, H and the quantum move at each signal."""
    behav = ThetaProfile(theta).behavioral(game.signals)
    out = {}
    for signal in game.signals[0]:
        out[signal] = tuple(
            float(conditional_return(game, BELL, 0, signal, m, behav))
            for m in (Pure("H"), Pure("T"), behav[0][signal])
        )
    return out


def criterion_5():
    scen = airline()
    opt = optimize_theta(scen.structure, scen.game)
    dv = abs(opt.value - quantum_value_closed_form())
    dt = abs(opt.theta - quantum_theta_closed_form())
    r79 = math.sqrt(79)
    expected = {
        "N": (30.25, 15.0, (181 + 7 * r79) / 8),
        "P": (35.0, 30.0, 65 / 2 + 15 * r79 / 28),
    }
    got = _claims(scen.game, opt.theta)
    derr = max(abs(g - e) for s in expected for g, e in zip(got[s], expected[s]))
    ok = dv <= VALUE_TOL and dt <= THETA_TOL and derr <= VALUE_TOL
    return ok, f"value err {dv:.1e}, theta err {dt:.1e}, claims table err {derr:.1e}"


def criterion_6():
    rep = {r: welfare_report(AirlineParameters(), r) for r in ("classical", "quantum", "collusion")}
    exact_ok = (
        (rep["classical"].consumer_surplus, rep["classical"].producer_surplus) == (Fraction(267, 2), Fraction(61, 2))
        and (rep["collusion"].consumer_surplus, rep["collusion"].producer_surplus) == (0, Fraction(205, 2))
    )
    q = rep["quantum"]
    q_ok = abs(q.consumer_surplus - 78.94) <= WELFARE_TOL and abs(q.producer_surplus - 67.66) <= WELFARE_TOL
    detail = ", ".join(
        f"{r} ({float(v.consumer_surplus):.4f}, {float(v.producer_surplus):.4f})" for r, v in rep.items()
    )
    return exact_ok and q_ok, detail


def criterion_7():
    g = associated_game(airline().game)
    value, _ = ce_polytope_optimize(g, total_payoff_weights(g))
    feasible = is_correlated_equilibrium(g, point_mass(ALWAYS_L, ALWAYS_L))
    ok = abs(float(value) - 30.5) <= VALUE_TOL and feasible
    return ok, f"max total payoff {value}, always-L point mass feasible: {feasible}"


def criterion_8():
    ex = conditioning_example()
    dx = induced_distribution(ex.environment.space, ex.x, ex.w)
    dy = induced_distribution(ex.environment.space, ex.y, ex.w)
    ce_x, ce_y = is_correlated_equilibrium(ex.game, dx), is_correlated_equilibrium(ex.game, dy)
    nash_x = is_nash_in_environment(ex.game, ex.environment, (ex.x, ex.w))
    nash_y = is_nash_in_environment(ex.game, ex.environment, (ex.y, ex.w))
    px, py = expected_payoffs(ex.game, dx)[0], expected_payoffs(ex.game, dy)[0]
    ok = ce_x and ce_y and not nash_x and nash_y and px == Fraction(9, 8) and py == Fraction(5, 4)
    return ok, f"CE (X,W)={ce_x} (Y,W)={ce_y}; Nash in E (X,W)={nash_x} (Y,W)={nash_y}; payoffs {px} vs {py}"


def _no_signaling(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        xi, u, v = random_state(rng), haar_unitary(rng), haar_unitary(rng)
        for fixed, player in ((v, 1), (u, 0)):
            margins = []
            for other in (haar_unitary(rng), IDENTITY, PURE_H, PURE_T):
                pair = (other, fixed) if player == 1 else (fixed, other)
                margins.append(outcome_distribution(xi, *pair).marginal(player))
            worst = max(worst, max(float(np.abs(m - margins[0]).max()) for m in margins))
    return worst


def _realizability(rng, n=10_000):
    mats = [su2_from_angles(*haar_angles(rng, n).T) for _ in range(4)]
    quads = disagreement_quads_batch(*mats)
    return float(arcsine_slack(quads).min())


def _diagonal_forcing(rng, n=1000):
    worst = 0.0
    for _ in range(n):
        u = haar_unitary(rng)
        same = outcome_distribution(BELL, u, u.conj())
        flipped = outcome_distribution(BELL, u, FLIP @ u.conj())
        worst = max(worst, same.p_ht + same.p_th, flipped.p_hh + flipped.p_tt)
    return worst


def _kuhn(n=100):
    ok = 0
    for seed in range(n):
        rng = np.random.default_rng(seed)
        g = random_private_game(rng)
        env = random_environment(rng)
        ok += kuhn_check(g, env)
    return ok


def criterion_9():
    rng = np.random.default_rng(SEED)
    sig = _no_signaling(rng)
    realizable = _realizability(rng)
    diag = _diagonal_forcing(rng)
    kuhn = _kuhn()
    gaps = []
    for scen in (cats_dogs(), airline()):
        best = multistart_common_payoff(scen.structure, starts=200, seed=SEED)
        gaps.append(best - optimize_theta(scen.structure, scen.game).value)
    ok = (sig <= SIGNALING_TOL and realizable >= -REALIZABLE_SLACK and diag <= CHART_TOL
          and kuhn == 100 and max(gaps) <= MULTISTART_SLACK)
    return ok, (f"no-signaling {sig:.1e}, arcsine min slack {realizable:.2e}, diagonal forcing {diag:.1e}, "
                f"Kuhn {kuhn}/100, multistart excess {max(gaps):.1e}")


def criterion_10():
    scen = cats_dogs()
    game = scen.game
    f1, f2 = ThetaProfile(math.pi / 8).behavioral(game.signals)
    c1, d1 = game.signals[0]
    c2, d2 = game.signals[1]
    s1 = {"theta": f1, "always-YES": {c1: PURE_H, d1: PURE_H}, "always-NO": {c1: PURE_T, d1: PURE_T}}
    s2 = {"theta": f2, "always-YES": {c2: PURE_H, d2: PURE_H}, "always-NO": {c2: PURE_T, d2: PURE_T}}
    candidate = quantum_behavioral_game(game, BELL, s1, s2)
    base = associated_game(game)
    witness = extension_witness(base, candidate)
    hull_max = max(float(cell[0]) for _, _, cell in base.cells())
    ok = witness is not None and witness[0] > hull_max
    w = "none" if witness is None else f"({float(witness[0]):.4f}, {float(witness[1]):.4f})"
    return ok, f"witness payoff {w} outside hull with max {hull_max}"


CRITERIA = (
    (1, "coin chart", criterion_1),
    (2, "classical ceiling", criterion_2),
    (3, "cats/dogs quantum optimum", criterion_3),
    (4, "airline classical equilibrium", criterion_4),
    (5, "airline quantum equilibrium", criterion_5),
    (6, "welfare table", criterion_6),
    (7, "correlated-equilibrium ceiling", criterion_7),
    (8, "conditioning example", criterion_8),
    (9, "property suites", criterion_9),
    (10, "stochastic-extension refutation", criterion_10),
)


def run_criterion(number: int) -> CriterionResult:
    _, name, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as err:  # a crash is a failure, not an abort of the whole suite
        ok, detail = False, f"error: {type(err).__name__}: {err}"
    return CriterionResult(number, name, bool(ok), detail, time.perf_counter() - start)


def run_all(numbers=None) -> list:
    numbers = numbers or [n for n, _, _ in CRITERIA]
    return [run_criterion(n) for n in numbers]
