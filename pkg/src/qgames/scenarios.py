"""Worked scenarios: cats/dogs, airline pricing and a conditioning example.

Both are 2x2x2x2 games of private information with independent fair-coin
signals.  Strategy labels map onto coin outcomes in order, so the first
label of each player corresponds to H.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .classical import (
    BimatrixGame,
    ClassicalEnvironment,
    FiniteSampleSpace,
    RandomVariable,
    ce_polytope_optimize,
    expected_payoffs,
    pure_nash_equilibria,
    total_payoff_weights,
)
from .equilibrium import ThetaProfile, optimize_theta
from .private_info import (
    PayoffStructure,
    PrivateInfoGame,
    associated_game,
    contingent_label,
)
from .quantum import BELL, outcome_distribution

CATS_DOGS_STRATEGIES = ("YES", "NO")
CATS_DOGS_SIGNALS = ("cat", "dog")
AIRLINE_STRATEGIES = ("L", "H")
AIRLINE_SIGNALS = ("N", "P")


class Scenario(NamedTuple):
    name: str
    game: PrivateInfoGame
    structure: PayoffStructure


def cats_dogs() -> Scenario:
    """Win by agreeing, unless both are asked about cats; then win by disagreeing."""
    structure = PayoffStructure(
        both_first=((0, 0), (1, 1), (1, 1), (0, 0)),
        otherwise=((1, 1), (0, 0), (0, 0), (1, 1)),
    )
    strategies = (CATS_DOGS_STRATEGIES, CATS_DOGS_STRATEGIES)
    signals = (CATS_DOGS_SIGNALS, CATS_DOGS_SIGNALS)
    return Scenario("cats_dogs", structure.to_game(strategies, signals), structure)


def coin_chart(theta: float = math.pi / 8) -> dict:
    """Joint coin outcomes for each question pair under the theta-profile.

    Keys are ``(question1, question2)``; at π/8 the coins disagree with
    probability sin²(3π/8) when both are asked about cats and sin²(π/8)
    otherwise.
    """
    (u_c, u_d), (v_c, v_d) = ThetaProfile(theta).moves()
    c1, d1 = CATS_DOGS_SIGNALS
    moves1 = {c1: u_c, d1: u_d}
    moves2 = {c1: v_c, d1: v_d}
    return {(a, b): outcome_distribution(BELL, moves1[a], moves2[b]) for a in moves1 for b in moves2}


class ConditioningExample(NamedTuple):
    game: BimatrixGame
    environment: ClassicalEnvironment
    x: RandomVariable
    y: RandomVariable
    w: RandomVariable


def conditioning_example() -> ConditioningExample:
    """Two correlated equilibria that behave differently once both signals are on offer.

    Player One may condition on X or on Y, Player Two on W.  Both (X, W)
    and (Y, W) are correlated equilibria, but Y pays Player One more than
    X does, so only (Y, W) survives when both are available.  The 24
    equiprobable atoms realize P(X=W) = 1/4 and P(Y=W) = 1/6.
    """
    game = BimatrixGame((("H", "T"), ("H", "T")), [[(0, 0), (2, 1)], [(1, 2), (0, 0)]])
    space = FiniteSampleSpace.uniform(24)
    w = ["H"] * 12 + ["T"] * 12
    # atoms 0-11 have W=H, atoms 12-23 have W=T
    x = ["H"] * 3 + ["T"] * 9 + ["T"] * 3 + ["H"] * 9
    y = ["H"] * 2 + ["T"] * 10 + ["T"] * 2 + ["H"] * 10
    X, Y, W = RandomVariable(x, "X"), RandomVariable(y, "Y"), RandomVariable(w, "W")
    env = ClassicalEnvironment(space, ((X, Y), (W,)))
    return ConditioningExample(game, env, X, Y, W)


@dataclass(frozen=True)
class AirlineParameters:
    """Demand and cost parameters.

    ``2x`` low-demand customers always show up; ``2y`` high-demand customers
    show up unless both firms see a negative signal.  Each firm can seat
    ``2x`` passengers and pays fixed cost ``F`` per flight.
    """

    x: Fraction = Fraction(49)
    y: Fraction = Fraction(19)
    L: Fraction = Fraction(1)
    H: Fraction = Fraction(108, 19)
    F: Fraction = Fraction(48)

    def __post_init__(self):
        for name in ("x", "y", "L", "H", "F"):
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                v = Fraction(v) if not isinstance(v, float) else Fraction(v).limit_denominator(10**9)
                object.__setattr__(self, name, v)
            if v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")
        checks = [
            (self.y < self.x, "y < x"),
            (self.L < self.H, "L < H"),
            (self.A < self.C, "A < C (xL - F < (x+y)L - F)"),
            (self.C < self.B, "C < B ((x+y)L - F < 2xL - F)"),
            (self.B < self.D, "B < D (2xL - F < yH - F); otherwise L is dominant"),
        ]
        for ok, text in checks:
            if not ok:
                raise ValueError(f"airline parameters violate {text}")

    @property
    def A(self) -> Fraction:
        return self.x * self.L - self.F

    @property
    def B(self) -> Fraction:
        return 2 * self.x * self.L - self.F

    @property
    def C(self) -> Fraction:
        return (self.x + self.y) * self.L - self.F

    @property
    def D(self) -> Fraction:
        return self.y * self.H - self.F

    @property
    def high_demand_surplus(self) -> Fraction:
        """Total surplus of the high-demand customers when they pay the low price."""
        return 2 * self.y * (self.H - self.L)

    @classmethod
    def parse(cls, text: str) -> AirlineParameters:
        """Parse ``"x,y,L,H,F"``; entries may be fractions like ``108/19``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 5:
            raise ValueError(f"expected five comma-separated values x,y,L,H,F, got {text!r}")
        return cls(*(Fraction(p) for p in parts))


def airline(params: Optional[AirlineParameters] = None) -> Scenario:
    params = params or AirlineParameters()
    A, B, C, D = params.A, params.B, params.C, params.D
    structure = PayoffStructure(
        both_first=((A, A), (B, 0), (0, B), (0, 0)),
        otherwise=((C, C), (B, 0), (0, B), (D, D)),
    )
    strategies = (AIRLINE_STRATEGIES, AIRLINE_STRATEGIES)
    signals = (AIRLINE_SIGNALS, AIRLINE_SIGNALS)
    return Scenario("airline", structure.to_game(strategies, signals), structure)


def build_scenario(name: str, params: Optional[AirlineParameters] = None) -> Scenario:
    name = name.replace("-", "_")
    if name == "cats_dogs":
        if params is not None:
            raise ValueError("cats_dogs takes no parameters")
        return cats_dogs()
    if name == "airline":
        return airline(params)
    raise ValueError(f"unknown scenario {name!r}; expected cats_dogs or airline")


# -- airline analysis ----------------------------------------------------------

ALWAYS_L = contingent_label(AIRLINE_SIGNALS, ("L", "L"))


class ClassicalEquilibrium(NamedTuple):
    profile: tuple  # contingent-strategy labels
    value: Fraction
    strict_best_responses: dict


def airline_classical_equilibrium(game: PrivateInfoGame) -> ClassicalEquilibrium:
    """Unique pure equilibrium of the contingent game, with the per-signal margin of L.

    Raises ``ValueError`` if the contingent game has several pure
    equilibria or if L fails to be a strict best response at some signal.
    """
    g_sharp = associated_game(game)
    eqs = pure_nash_equilibria(g_sharp)
    if len(eqs) != 1:
        raise ValueError(f"expected a unique pure equilibrium, found {eqs}")
    profile = eqs[0]
    low, high = game.strategies[0]
    # per-signal returns of each price against an opponent who always plays L
    margins = {}
    for player in (0, 1):
        for signal in game.signals[player]:
            cond = game.conditional_prior(player, signal)
            ret = {}
            for s in game.strategies[player]:
                total = 0
                for b, pr in cond.items():
                    pair = (signal, b) if player == 0 else (b, signal)
                    acts = (s, low) if player == 0 else (low, s)
                    total += pr * game.payoff(*pair, *acts)[player]
                ret[s] = total
            margins[(player + 1, signal)] = ret
            if not ret[low] > ret[high]:
                raise ValueError(f"{low} is not a strict best response for player {player + 1} at {signal}")
    value = g_sharp.payoff(*profile)[0]
    return ClassicalEquilibrium(profile, value, margins)


def collusion_contingent_profile() -> tuple:
    """Firm One prices L on N and H on P; Firm Two always prices H.

    This is the closest contingent-strategy approximation of the collusive
    plan, which itself conditions on both signals.
    """
    return (contingent_label(AIRLINE_SIGNALS, ("L", "H")), contingent_label(AIRLINE_SIGNALS, ("H", "H")))


def collusion_plan(game: PrivateInfoGame) -> dict:
    """Joint-signal plan: (L, H) when both signals are negative, (H, H) otherwise."""
    first = (game.signals[0][0], game.signals[1][0])
    return {pair: (("L", "H") if pair == first else ("H", "H")) for pair in game.prior}


def is_high_demand(signal_pair) -> bool:
    """High-demand customers exist unless both signals are negative."""
    return any(a == "P" for a in signal_pair)


@dataclass(frozen=True)
class WelfareReport:
    regime: str
    consumer_surplus: float
    producer_surplus: float

    @property
    def total(self) -> float:
        return self.consumer_surplus + self.producer_surplus

    def to_dict(self) -> dict:
        return {
            "regime": self.regime,
            "consumer_surplus": float(self.consumer_surplus),
            "producer_surplus": float(self.producer_surplus),
            "total": float(self.total),
        }


REGIMES = ("classical", "quantum", "collusion")


def _signal_pair_distributions(game: PrivateInfoGame, regime: str, theta: Optional[float]) -> dict:
    """Distribution over price pairs at each signal pair under ``regime``."""
    out = {}
    if regime == "classical":
        for pair in game.prior:
            out[pair] = {("L", "L"): 1}
    elif regime == "collusion":
        for pair, acts in collusion_plan(game).items():
            out[pair] = {acts: 1}
    elif regime == "quantum":
        f1, f2 = ThetaProfile(theta).behavioral(game.signals)
        labels = game.strategies
        for a1, a2 in game.prior:
            out[(a1, a2)] = outcome_distribution(BELL, f1[a1], f2[a2]).as_dict(*labels)
    else:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")
    return out


def welfare_report(params: Optional[AirlineParameters] = None, regime: str = "classical",
                   theta: Optional[float] = None) -> WelfareReport:
    """Consumer and producer surplus of the airline market under one regime.

    Producer surplus is the sum of both firms' expected profits.  Consumer
    surplus accrues when high-demand customers exist and at least one firm
    prices low (that firm has room for all of them).
    """
    scenario = airline(params)
    params = params or AirlineParameters()
    game = scenario.game
    if regime == "quantum" and theta is None:
        theta = optimize_theta(scenario.structure, game).theta
    dists = _signal_pair_distributions(game, regime, theta)
    exact = regime != "quantum"
    producer = Fraction(0) if exact else 0.0
    consumer = Fraction(0) if exact else 0.0
    surplus = params.high_demand_surplus if exact else float(params.high_demand_surplus)
    for pair, pr in game.prior.items():
        pr = pr if exact else float(pr)
        u1, u2 = expected_payoffs(game.tables[pair], dists[pair])
        producer += pr * (u1 + u2)
        if is_high_demand(pair):
            someone_low = sum(p for (s1, s2), p in dists[pair].items() if "L" in (s1, s2))
            consumer += pr * someone_low * surplus
    return WelfareReport(regime, consumer, producer)


def ce_ceiling(game: PrivateInfoGame) -> tuple:
    """Largest total payoff over correlated equilibria of the contingent game."""
    g_sharp = associated_game(game)
    return ce_polytope_optimize(g_sharp, total_payoff_weights(g_sharp))


def quantum_value_closed_form() -> float:
    """The airline optimum in closed form, for the default parameters."""
    return (3087 + 79 * math.sqrt(79)) / 112


def quantum_theta_closed_form() -> float:
    return math.acos(0.5 * math.sqrt((14 + math.sqrt(79)) / 7))

