"""JSON game files.

A bimatrix game::

    {
      "players": ["One", "Two"],
      "strategies": [["H", "T"], ["H", "T"]],
      "payoffs": [[0, 0], [2, 1], [1, 2], [0, 0]],
      "distribution": [0.125, 0.375, 0.375, 0.125]
    }

``payoffs`` lists one pair per strategy profile in row-major order (player
one's strategy varies slowest).  ``distribution`` is optional and uses the
same order.  Numbers may be JSON numbers or strings such as ``"3/8"``; ints
and fraction strings are kept exact.

A game of private information adds ``signals`` and ``signal_prior`` (flat,
row-major over signal pairs; omitted means uniform) and makes ``payoffs``
an object keyed by ``"a1,a2"`` whose values are row-major pair lists.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .classical import BimatrixGame
from .private_info import PrivateInfoGame, uniform_prior


class GameFileError(ValueError):
    """A malformed game document; the message names the offending field."""


def _number(value, where: str):
    if isinstance(value, bool) or value is None:
        raise GameFileError(f"{where}: expected a number, got {json.dumps(value)}")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise GameFileError(f"{where}: expected a number or a fraction string, got {json.dumps(value)}")


def _labels(doc: dict) -> tuple:
    strategies = doc.get("strategies")
    if not isinstance(strategies, list) or len(strategies) != 2:
        raise GameFileError("strategies: expected two label arrays")
    out = []
    for k, labels in enumerate(strategies):
        if not isinstance(labels, list) or not labels:
            raise GameFileError(f"strategies[{k}]: expected a non-empty array of labels")
        if any(not isinstance(s, str) for s in labels):
            raise GameFileError(f"strategies[{k}]: labels must be strings")
        if len(set(labels)) != len(labels):
            raise GameFileError(f"strategies[{k}]: duplicate labels")
        out.append(tuple(labels))
    return tuple(out)


def _pairs(raw, n1: int, n2: int, where: str) -> list:
    if not isinstance(raw, list) or len(raw) != n1 * n2:
        size = len(raw) if isinstance(raw, list) else type(raw).__name__
        raise GameFileError(f"{where}: expected {n1 * n2} payoff pairs, got {size}")
    cells = []
    for k, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise GameFileError(f"{where}[{k}]: expected a pair [u1, u2]")
        cells.append(tuple(_number(v, f"{where}[{k}][{i}]") for i, v in enumerate(pair)))
    return [cells[i * n2:(i + 1) * n2] for i in range(n1)]


def _players(doc: dict) -> tuple:
    players = doc.get("players", ["One", "Two"])
    if not isinstance(players, list) or len(players) != 2:
        raise GameFileError("players: expected two player names")
    return tuple(str(p) for p in players)


def game_from_dict(doc: dict) -> Union[BimatrixGame, PrivateInfoGame]:
    if not isinstance(doc, dict):
        raise GameFileError("top level: expected an object")
    players = _players(doc)
    labels = _labels(doc)
    n1, n2 = len(labels[0]), len(labels[1])
    if "signals" not in doc:
        if "payoffs" not in doc:
            raise GameFileError("payoffs: missing")
        table = _pairs(doc["payoffs"], n1, n2, "payoffs")
        try:
            return BimatrixGame(labels, table, players)
        except ValueError as err:
            raise GameFileError(f"payoffs: {err}") from None

    signals = doc["signals"]
    if (not isinstance(signals, list) or len(signals) != 2
            or any(not isinstance(s, list) or not s for s in signals)):
        raise GameFileError("signals: expected two non-empty label arrays")
    signals = tuple(tuple(str(a) for a in s) for s in signals)
    keys = [(a, b) for a in signals[0] for b in signals[1]]
    if doc.get("signal_prior") is None:
        prior = uniform_prior(*signals)
    else:
        raw = doc["signal_prior"]
        if not isinstance(raw, list) or len(raw) != len(keys):
            raise GameFileError(f"signal_prior: expected {len(keys)} probabilities")
        prior = {k: _number(v, f"signal_prior[{i}]") for i, (k, v) in enumerate(zip(keys, raw))}
    payoffs = doc.get("payoffs")
    if not isinstance(payoffs, dict):
        raise GameFileError('payoffs: expected an object keyed by "a1,a2"')
    tables = {}
    for a, b in keys:
        key = f"{a},{b}"
        if key not in payoffs:
            raise GameFileError(f"payoffs: missing signal pair {key!r}")
        tables[(a, b)] = BimatrixGame(labels, _pairs(payoffs[key], n1, n2, f"payoffs[{key!r}]"), players)
    try:
        return PrivateInfoGame(signals, prior, tables)
    except ValueError as err:
        raise GameFileError(f"signal_prior: {err}") from None


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise GameFileError(f"line {err.lineno} column {err.colno}: {err.msg}") from None
    return game_from_dict(doc)


def load(path) -> Union[BimatrixGame, PrivateInfoGame]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def distribution_field(doc_or_text) -> list:
    doc = json.loads(doc_or_text) if isinstance(doc_or_text, str) else doc_or_text
    raw = doc.get("distribution")
    if raw is None:
        return None
    if not isinstance(raw, list):
        raise GameFileError("distribution: expected a flat array")
    return [_number(v, f"distribution[{i}]") for i, v in enumerate(raw)]


def _encode(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def game_to_dict(game: Union[BimatrixGame, PrivateInfoGame]) -> dict:
    if isinstance(game, BimatrixGame):
        return {
            "players": list(game.players),
            "strategies": [list(s) for s in game.strategies],
            "payoffs": [[_encode(a), _encode(b)] for _, _, (a, b) in game.cells()],
        }
    first = next(iter(game.tables.values()))
    return {
        "players": list(first.players),
        "strategies": [list(s) for s in game.strategies],
        "signals": [list(s) for s in game.signals],
        "signal_prior": [_encode(game.prior[(a, b)]) for a in game.signals[0] for b in game.signals[1]],
        "payoffs": {
            f"{a},{b}": [[_encode(x), _encode(y)] for _, _, (x, y) in game.tables[(a, b)].cells()]
            for a in game.signals[0] for b in game.signals[1]
        },
    }


def dumps(game, **kw) -> str:
    return json.dumps(game_to_dict(game), **kw)
