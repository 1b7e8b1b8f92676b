"""Finite two-player games, classical environments and correlated equilibria.

Distributions over strategy pairs are plain mappings ``{(s1, s2): prob}``;
missing pairs carry probability zero.  Payoffs and probabilities may be
ints, Fractions or floats.  When everything is rational the checks below
are exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .quantum import JointOutcomeDistribution
from .simplex import LPError, is_rational, solve_lp

EQ_TOL = 1e-10
LP_SLACK = 1e-9


@dataclass(frozen=True)
class BimatrixGame:
    """A finite game with payoff pairs ``payoffs[i][j]`` for row ``i``, column ``j``."""

    strategies: tuple
    payoffs: tuple
    players: tuple = ("One", "Two")

    def __post_init__(self):
        s1, s2 = (tuple(s) for s in self.strategies)
        if not s1 or not s2:
            raise ValueError("each player needs at least one strategy")
        if len(set(s1)) != len(s1) or len(set(s2)) != len(s2):
            raise ValueError("strategy labels must be distinct")
        table = tuple(tuple(tuple(cell) for cell in row) for row in self.payoffs)
        if len(table) != len(s1) or any(len(row) != len(s2) for row in table):
            raise ValueError(f"payoff table must be {len(s1)}x{len(s2)}")
        for row in table:
            for cell in row:
                if len(cell) != 2:
                    raise ValueError(f"payoff cell {cell!r} is not a pair")
                if any(not np.isfinite(float(v)) for v in cell):
                    raise ValueError(f"payoff cell {cell!r} is not finite")
        object.__setattr__(self, "strategies", (s1, s2))
        object.__setattr__(self, "payoffs", table)
        object.__setattr__(self, "players", tuple(self.players))

    @classmethod
    def from_arrays(cls, p1, p2, labels1=None, labels2=None, **kw) -> BimatrixGame:
        p1 = np.asarray(p1, dtype=object)
        p2 = np.asarray(p2, dtype=object)
        n1, n2 = p1.shape
        labels1 = tuple(labels1) if labels1 is not None else tuple(str(i) for i in range(n1))
        labels2 = tuple(labels2) if labels2 is not None else tuple(str(j) for j in range(n2))
        table = [[(p1[i, j], p2[i, j]) for j in range(n2)] for i in range(n1)]
        return cls((labels1, labels2), table, **kw)

    @property
    def shape(self) -> tuple:
        return len(self.strategies[0]), len(self.strategies[1])

    def index(self, player: int, label) -> int:
        try:
            return self.strategies[player].index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a strategy of player {player + 1}") from None

    def payoff(self, s1, s2) -> tuple:
        return self.payoffs[self.index(0, s1)][self.index(1, s2)]

    def matrix(self, player: int) -> np.ndarray:
        """Float payoff matrix of ``player`` (rows: player one's strategies)."""
        return np.array([[float(c[player]) for c in row] for row in self.payoffs])

    def cells(self):
        for i, s1 in enumerate(self.strategies[0]):
            for j, s2 in enumerate(self.strategies[1]):
                yield s1, s2, self.payoffs[i][j]

    @property
    def exact(self) -> bool:
        return all(is_rational(v) for _, _, cell in self.cells() for v in cell)


def _as_mapping(dist) -> Mapping:
    if isinstance(dist, JointOutcomeDistribution):
        return dist.as_dict()
    return dist


def _check_support(game: BimatrixGame, dist: Mapping) -> None:
    for (s1, s2), pr in dist.items():
        if pr and (s1 not in game.strategies[0] or s2 not in game.strategies[1]):
            raise KeyError(f"distribution puts mass on unknown pair {(s1, s2)!r}")


def distribution_from_flat(game: BimatrixGame, values: Sequence) -> dict:
    """Build a distribution from a flat row-major list over the strategy product."""
    n1, n2 = game.shape
    if len(values) != n1 * n2:
        raise ValueError(f"expected {n1 * n2} probabilities, got {len(values)}")
    if any(not np.isfinite(float(v)) or v < 0 for v in values):
        raise ValueError("probabilities must be finite and non-negative")
    total = sum(values)
    if (total != 1) if all(is_rational(v) for v in values) else abs(total - 1) > 1e-12:
        raise ValueError(f"probabilities sum to {total}, not 1")
    it = iter(values)
    return {(s1, s2): next(it) for s1 in game.strategies[0] for s2 in game.strategies[1]}


def expected_payoffs(game: BimatrixGame, dist) -> tuple:
    dist = _as_mapping(dist)
    _check_support(game, dist)
    u1 = u2 = 0
    for (s1, s2), pr in dist.items():
        if pr:
            a, b = game.payoff(s1, s2)
            u1 += pr * a
            u2 += pr * b
    return u1, u2


def strategies_equivalent(game: BimatrixGame, player: int, s, t, tol: float = 1e-12) -> bool:
    i, j = game.index(player, s), game.index(player, t)
    table = game.payoffs if player == 0 else tuple(zip(*game.payoffs))
    for a, b in zip(table[i], table[j]):
        for x, y in zip(a, b):
            if is_rational(x) and is_rational(y):
                if x != y:
                    return False
            elif abs(x - y) > tol:
                return False
    return True


def obedience_gains(game: BimatrixGame, dist) -> dict:
    """Unconditional gain ``sum_t d(s, t) (P(s', t) - P(s, t))`` for every
    (player, recommended s, deviation s')."""
    dist = _as_mapping(dist)
    _check_support(game, dist)
    gains = {}
    S1, S2 = game.strategies
    for s, dev in itertools.permutations(S1, 2):
        gains[(0, s, dev)] = sum(
            dist.get((s, t), 0) * (game.payoff(dev, t)[0] - game.payoff(s, t)[0]) for t in S2
        )
    for s, dev in itertools.permutations(S2, 2):
        gains[(1, s, dev)] = sum(
            dist.get((r, s), 0) * (game.payoff(r, dev)[1] - game.payoff(r, s)[1]) for r in S1
        )
    return gains


def is_correlated_equilibrium(game: BimatrixGame, dist, tol: float = EQ_TOL) -> bool:
    """Aumann obedience: no recommended strategy can be profitably swapped."""
    return all(g <= tol for g in obedience_gains(game, dist).values())


# -- classical environments -------------------------------------------------

@dataclass(frozen=True)
class FiniteSampleSpace:
    probabilities: tuple

    def __post_init__(self):
        probs = tuple(self.probabilities)
        if not probs:
            raise ValueError("sample space is empty")
        if any(p < 0 for p in probs):
            raise ValueError("negative probability in sample space")
        total = sum(probs)
        ok = total == 1 if all(is_rational(p) for p in probs) else abs(total - 1) <= 1e-12
        if not ok:
            raise ValueError(f"sample space probabilities sum to {total}")
        object.__setattr__(self, "probabilities", probs)

    @classmethod
    def uniform(cls, n: int) -> FiniteSampleSpace:
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    def __len__(self):
        return len(self.probabilities)


@dataclass(frozen=True)
class RandomVariable:
    """A labelled map from sample points (by index) to strategy labels."""

    values: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    def __call__(self, omega: int):
        return self.values[omega]

    def partition(self) -> tuple:
        """Blocks of sample points on which the variable is constant."""
        blocks: dict = {}
        for omega, v in enumerate(self.values):
            blocks.setdefault(v, []).append(omega)
        return tuple(tuple(b) for b in blocks.values())


def constant(value, space: FiniteSampleSpace, name: str = "") -> RandomVariable:
    return RandomVariable((value,) * len(space), name or f"const-{value}")


@dataclass(frozen=True)
class ClassicalEnvironment:
    """Per-player sets of random variables on a shared finite sample space.

    A player may condition on the realization of any one listed variable,
    so her strategy set is every strategy-valued function of a listed
    variable.
    """

    space: FiniteSampleSpace
    variables: tuple = field(default=((), ()))

    def __post_init__(self):
        v1, v2 = (tuple(v) for v in self.variables)
        for x in v1 + v2:
            if len(x.values) != len(self.space):
                raise ValueError(f"variable {x.name!r} is not defined on the whole sample space")
        object.__setattr__(self, "variables", (v1, v2))


def induced_distribution(space: FiniteSampleSpace, x: RandomVariable, y: RandomVariable) -> dict:
    if len(x.values) != len(space) or len(y.values) != len(space):
        raise ValueError("variables are not defined on this sample space")
    dist: dict = {}
    for omega, pr in enumerate(space.probabilities):
        key = (x(omega), y(omega))
        dist[key] = dist.get(key, 0) + pr
    return dist


def _best_response_through(game, space, player, signal: RandomVariable, opponent: RandomVariable):
    """Best payoff ``player`` can get by playing some function of ``signal``."""
    labels = game.strategies[player]
    by_value: dict = {}
    for omega, pr in enumerate(space.probabilities):
        by_value.setdefault(signal(omega), []).append((pr, opponent(omega)))
    total = 0
    for pts in by_value.values():
        best = None
        for s in labels:
            if player == 0:
                v = sum(pr * game.payoff(s, o)[0] for pr, o in pts)
            else:
                v = sum(pr * game.payoff(o, s)[1] for pr, o in pts)
            if best is None or v > best:
                best = v
        total += best
    return total


def is_nash_in_environment(
    game: BimatrixGame, env: ClassicalEnvironment, profile: tuple, tol: float = EQ_TOL
) -> bool:
    """Check that neither player gains by conditioning on another variable available to her."""
    x, y = profile
    if x not in env.variables[0]:
        raise ValueError(f"{x.name or x!r} is not available to player one in this environment")
    if y not in env.variables[1]:
        raise ValueError(f"{y.name or y!r} is not available to player two in this environment")
    current = expected_payoffs(game, induced_distribution(env.space, x, y))
    for player, own, other in ((0, env.variables[0], y), (1, env.variables[1], x)):
        best = max(_best_response_through(game, env.space, player, z, other) for z in own)
        if best > current[player] + tol:
            return False
    return True


# -- the correlated-equilibrium polytope ------------------------------------

def _obedience_rows(game: BimatrixGame):
    S1, S2 = game.strategies
    cells = [(a, b) for a in S1 for b in S2]
    rows = []
    for s, dev in itertools.permutations(S1, 2):
        rows.append([
            (game.payoff(dev, b)[0] - game.payoff(a, b)[0]) if a == s else 0 for a, b in cells
        ])
    for s, dev in itertools.permutations(S2, 2):
        rows.append([
            (game.payoff(a, dev)[1] - game.payoff(a, b)[1]) if b == s else 0 for a, b in cells
        ])
    return cells, rows


def total_payoff_weights(game: BimatrixGame) -> dict:
    return {(s1, s2): cell[0] + cell[1] for s1, s2, cell in game.cells()}


def _weights(game, objective) -> list:
    S1, S2 = game.strategies
    if isinstance(objective, Mapping):
        return [objective.get((a, b), 0) for a in S1 for b in S2]
    arr = np.asarray(objective, dtype=object)
    if arr.shape != game.shape:
        raise ValueError(f"objective must have shape {game.shape}, got {arr.shape}")
    return [arr[i, j] for i in range(len(S1)) for j in range(len(S2))]


def ce_polytope_optimize(game: BimatrixGame, objective) -> tuple:
    """Maximize a linear objective over the correlated equilibria of ``game``.

    ``objective`` maps strategy pairs to weights (or is an array shaped like
    the game).  Exact rational arithmetic is used when the game and the
    weights are rational; otherwise HiGHS with feasibility slack 1e-9.
    Returns ``(value, distribution)``.
    """
    cells, rows = _obedience_rows(game)
    c = _weights(game, objective)
    n = len(cells)
    if game.exact and all(is_rational(v) for v in c):
        res = solve_lp(c, rows, [0] * len(rows), [[1] * n], [1])
        if res.status != "optimal":
            raise LPError(f"correlated-equilibrium LP reported {res.status}")
        return res.value, dict(zip(cells, res.x))
    res = linprog(
        -np.array(c, dtype=float),
        A_ub=np.array(rows, dtype=float),
        b_ub=np.full(len(rows), LP_SLACK),
        A_eq=np.ones((1, n)),
        b_eq=[1.0],
        bounds=[(0, None)] * n,
        method="highs",
    )
    if res.status != 0:
        raise LPError(f"correlated-equilibrium LP failed: {res.message}")
    return -res.fun, dict(zip(cells, res.x))


def ce_polytope_is_singleton(game: BimatrixGame) -> Optional[dict]:
    """Return the unique correlated equilibrium if the polytope is a single point.

    Each cell probability is minimized and maximized over the polytope; the
    polytope is a point exactly when every pair of bounds coincides.
    Returns ``None`` when there is more than one correlated equilibrium.
    """
    cells, _ = _obedience_rows(game)
    point = {}
    for cell in cells:
        hi, _ = ce_polytope_optimize(game, {cell: 1})
        lo, _ = ce_polytope_optimize(game, {cell: -1})
        lo = -lo
        if hi - lo > (0 if game.exact else LP_SLACK):
            return None
        point[cell] = hi
    return point


def pure_nash_equilibria(game: BimatrixGame, tol: float = 0.0) -> list:
    """All pure-strategy Nash equilibria as (s1, s2) pairs."""
    p1, p2 = game.matrix(0), game.matrix(1)
    out = []
    for i, s1 in enumerate(game.strategies[0]):
        for j, s2 in enumerate(game.strategies[1]):
            if p1[i, j] >= p1[:, j].max() - tol and p2[i, j] >= p2[i, :].max() - tol:
                out.append((s1, s2))
    return out


def point_mass(s1, s2) -> dict:
    return {(s1, s2): 1}


def mix(d1: Mapping, d2: Mapping, w) -> dict:
    keys = set(d1) | set(d2)
    return {k: w * d1.get(k, 0) + (1 - w) * d2.get(k, 0) for k in keys}


def random_game(rng: np.random.Generator, n1: int = 2, n2: int = 2, high: int = 5) -> BimatrixGame:
    p1 = rng.integers(-high, high + 1, size=(n1, n2))
    p2 = rng.integers(-high, high + 1, size=(n1, n2))
    labels1 = tuple(f"r{i}" for i in range(n1))
    labels2 = tuple(f"c{j}" for j in range(n2))
    table = [[(int(p1[i, j]), int(p2[i, j])) for j in range(n2)] for i in range(n1)]
    return BimatrixGame((labels1, labels2), table)


__all__ = [
    "BimatrixGame", "FiniteSampleSpace", "RandomVariable", "ClassicalEnvironment",
    "induced_distribution", "expected_payoffs", "strategies_equivalent",
    "is_correlated_equilibrium", "is_nash_in_environment", "ce_polytope_optimize",
    "ce_polytope_is_singleton", "pure_nash_equilibria", "total_payoff_weights",
    "distribution_from_flat", "obedience_gains", "constant", "point_mass", "mix",
    "random_game", "LPError",
]
