import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgames.classical import BimatrixGame
from qgames.gamefile import GameFileError, distribution_field, dumps, load, loads
from qgames.private_info import PrivateInfoGame, associated_game
from qgames.scenarios import airline, cats_dogs

SIMPLE = {
    "players": ["Row", "Col"],
    "strategies": [["H", "T"], ["H", "T"]],
    "payoffs": [[0, 0], [2, 1], [1, "2"], ["1/2", 0.25]],
}


def test_load_bimatrix():
    g = loads(json.dumps(SIMPLE))
    assert isinstance(g, BimatrixGame)
    assert g.players == ("Row", "Col")
    assert g.payoff("H", "T") == (2, 1)
    assert g.payoff("T", "T") == (F(1, 2), 0.25)
    assert g.payoff("T", "H")[1] == 2


def test_load_from_path(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(SIMPLE))
    assert load(path).shape == (2, 2)


@pytest.mark.parametrize(
    "doc, field",
    [
        ({**SIMPLE, "payoffs": SIMPLE["payoffs"][:3]}, "payoffs"),
        ({**SIMPLE, "payoffs": [[0, 0], [2, 1], [1, "x"], [0, 0]]}, "payoffs[2][1]"),
        ({**SIMPLE, "payoffs": [[0, 0], [2], [1, 2], [0, 0]]}, "payoffs[1]"),
        ({**SIMPLE, "strategies": [["H", "H"], ["H", "T"]]}, "strategies[0]"),
        ({**SIMPLE, "strategies": [["H", "T"]]}, "strategies"),
        ({**SIMPLE, "players": ["only"]}, "players"),
        ({**SIMPLE, "payoffs": [[0, 0], [2, 1], [1, True], [0, 0]]}, "payoffs[2][1]"),
    ],
)
def test_field_diagnostics(doc, field):
    with pytest.raises(GameFileError) as err:
        loads(json.dumps(doc))
    assert str(err.value).startswith(field)


def test_syntax_error_names_line():
    with pytest.raises(GameFileError, match="line 2 column"):
        loads('{"strategies": [["H"]]\n "payoffs": 1}')


def test_distribution_field():
    doc = {**SIMPLE, "distribution": ["1/8", "3/8", "3/8", 0.125]}
    assert distribution_field(doc) == [F(1, 8), F(3, 8), F(3, 8), 0.125]
    assert distribution_field(SIMPLE) is None
    with pytest.raises(GameFileError):
        distribution_field({**SIMPLE, "distribution": "half"})


def test_private_info_file():
    doc = {
        "strategies": [["L", "H"], ["L", "H"]],
        "signals": [["N", "P"], ["N", "P"]],
        "payoffs": {
            "N,N": [[1, 1], [50, 0], [0, 50], [0, 0]],
            "N,P": [[20, 20], [50, 0], [0, 50], [60, 60]],
            "P,N": [[20, 20], [50, 0], [0, 50], [60, 60]],
            "P,P": [[20, 20], [50, 0], [0, 50], [60, 60]],
        },
    }
    g = loads(json.dumps(doc))
    assert isinstance(g, PrivateInfoGame)
    assert g.prior[("N", "P")] == F(1, 4)
    assert list(associated_game(g).cells()) == list(associated_game(airline().game).cells())


def test_private_info_errors():
    doc = json.loads(dumps(cats_dogs().game))
    del doc["payoffs"]["dog,dog"]
    with pytest.raises(GameFileError, match="dog,dog"):
        loads(json.dumps(doc))
    doc = json.loads(dumps(cats_dogs().game))
    doc["signal_prior"] = [0.5, 0.5, 0.5, 0.5]
    with pytest.raises(GameFileError, match="signal_prior"):
        loads(json.dumps(doc))


def test_round_trip_scenarios():
    for game in (cats_dogs().game, airline().game):
        back = loads(dumps(game))
        assert back.prior == game.prior
        assert all(back.tables[k].payoffs == game.tables[k].payoffs for k in game.prior)


payoff = st.one_of(st.integers(-50, 50), st.fractions(-10, 10, max_denominator=20))


@settings(max_examples=50)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_round_trip_bimatrix(n1, n2, data):
    cells = [[(data.draw(payoff), data.draw(payoff)) for _ in range(n2)] for _ in range(n1)]
    g = BimatrixGame((tuple(f"r{i}" for i in range(n1)), tuple(f"c{j}" for j in range(n2))), cells)
    back = loads(dumps(g))
    assert back.payoffs == g.payoffs and back.strategies == g.strategies
