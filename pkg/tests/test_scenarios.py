import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgames.classical import ce_polytope_is_singleton, is_correlated_equilibrium, point_mass, pure_nash_equilibria
from qgames.equilibrium import ThetaProfile, optimize_theta
from qgames.private_info import associated_game, behavioral_payoff, is_balanced
from qgames.quantum import BELL
from qgames.scenarios import (
    ALWAYS_L,
    AirlineParameters,
    airline,
    airline_classical_equilibrium,
    build_scenario,
    cats_dogs,
    ce_ceiling,
    coin_chart,
    collusion_contingent_profile,
    collusion_plan,
    is_high_demand,
    quantum_theta_closed_form,
    welfare_report,
)


def test_cats_dogs_tables():
    g = cats_dogs().game
    both = g.tables[("cat", "cat")]
    assert both.payoffs == (((0, 0), (1, 1)), ((1, 1), (0, 0)))
    for pair in (("cat", "dog"), ("dog", "cat"), ("dog", "dog")):
        assert g.tables[pair].payoffs == (((1, 1), (0, 0)), ((0, 0), (1, 1)))


def test_airline_constants():
    p = AirlineParameters()
    assert (p.A, p.B, p.C, p.D) == (1, 50, 20, 60)
    assert p.high_demand_surplus == 178


def test_parameter_validation():
    with pytest.raises(ValueError, match="B < D"):
        AirlineParameters(H=F(2))
    with pytest.raises(ValueError, match="y < x"):
        AirlineParameters(x=10, y=20)
    with pytest.raises(ValueError):
        AirlineParameters(F=-1)
    with pytest.raises(ValueError):
        AirlineParameters.parse("1,2,3")
    assert AirlineParameters.parse("49,19,1,108/19,48") == AirlineParameters()


def test_build_scenario():
    assert build_scenario("cats-dogs").name == "cats_dogs"
    assert build_scenario("airline").name == "airline"
    with pytest.raises(ValueError):
        build_scenario("poker")
    for name in ("cats_dogs", "airline"):
        assert is_balanced(build_scenario(name).structure)


def test_classical_equilibrium():
    eq = airline_classical_equilibrium(airline().game)
    assert eq.profile == (ALWAYS_L, ALWAYS_L)
    assert eq.value == F(61, 4)
    assert eq.strict_best_responses[(1, "N")] == {"L": F(21, 2), "H": 0}


def test_collusion_is_not_an_equilibrium():
    g = associated_game(airline().game)
    profile = collusion_contingent_profile()
    assert profile not in pure_nash_equilibria(g)
    assert not is_correlated_equilibrium(g, point_mass(*profile))
    u1, u2 = g.payoff(*profile)
    # someone gains by switching to always-L
    assert g.payoff(ALWAYS_L, profile[1])[0] > u1 or g.payoff(profile[0], ALWAYS_L)[1] > u2


def test_collusion_plan():
    plan = collusion_plan(airline().game)
    assert plan[("N", "N")] == ("L", "H")
    assert all(v == ("H", "H") for k, v in plan.items() if k != ("N", "N"))


def test_high_demand_event():
    assert not is_high_demand(("N", "N"))
    assert all(is_high_demand(p) for p in (("N", "P"), ("P", "N"), ("P", "P")))


def test_welfare_table():
    c = welfare_report(regime="classical")
    assert (c.consumer_surplus, c.producer_surplus, c.total) == (F(267, 2), F(61, 2), 164)
    q = welfare_report(regime="quantum")
    assert q.consumer_surplus == pytest.approx(78.94, abs=0.01)
    assert q.producer_surplus == pytest.approx(67.66, abs=0.01)
    assert q.total == pytest.approx(146.6, abs=0.01)
    k = welfare_report(regime="collusion")
    assert (k.consumer_surplus, k.producer_surplus) == (0, F(205, 2))
    with pytest.raises(ValueError):
        welfare_report(regime="monopoly")


@settings(max_examples=30, deadline=None)
@given(st.floats(0, math.pi))
def test_quantum_producer_surplus_is_twice_payoff(theta):
    scen = airline()
    rep = welfare_report(regime="quantum", theta=theta)
    u = behavioral_payoff(scen.game, BELL, ThetaProfile(theta).behavioral(scen.game.signals))
    assert rep.producer_surplus == pytest.approx(2 * u[0], abs=1e-9)
    assert rep.total == pytest.approx(rep.consumer_surplus + rep.producer_surplus, abs=1e-9)


def test_ce_ceiling_and_uniqueness():
    value, dist = ce_ceiling(airline().game)
    assert value == F(61, 2)
    g = associated_game(airline().game)
    assert is_correlated_equilibrium(g, point_mass(ALWAYS_L, ALWAYS_L))
    unique = ce_polytope_is_singleton(g)
    assert unique is not None
    assert {k: v for k, v in unique.items() if v} == {(ALWAYS_L, ALWAYS_L): 1}


def test_coin_chart():
    chart = coin_chart()
    assert chart[("cat", "cat")].disagreement == pytest.approx(math.sin(3 * math.pi / 8) ** 2, abs=1e-12)
    for pair in (("cat", "dog"), ("dog", "cat"), ("dog", "dog")):
        assert chart[pair].disagreement == pytest.approx(math.sin(math.pi / 8) ** 2, abs=1e-12)
        d = chart[pair]
        assert d.p_hh == pytest.approx(math.cos(math.pi / 8) ** 2 / 2, abs=1e-12)


def test_closed_form_theta_is_optimum():
    scen = airline()
    assert optimize_theta(scen.structure, scen.game).theta == pytest.approx(quantum_theta_closed_form(), abs=1e-8)


def test_other_parameters():
    # a second valid market still has always-L as its unique classical equilibrium
    p = AirlineParameters(x=F(50), y=F(20), L=F(1), H=F(6), F=F(40))
    eq = airline_classical_equilibrium(airline(p).game)
    assert eq.profile == (ALWAYS_L, ALWAYS_L)
    assert welfare_report(p, "classical").total == welfare_report(p, "classical").consumer_surplus + 2 * eq.value
