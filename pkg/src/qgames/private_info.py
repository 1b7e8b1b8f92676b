"""Games of private information and their classical and quantum extensions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .classical import (
    BimatrixGame,
    ClassicalEnvironment,
    FiniteSampleSpace,
    RandomVariable,
    expected_payoffs,
    induced_distribution,
    pure_nash_equilibria,
)
from .quantum import OUTCOMES, SpecialUnitary, TwoQubitState, outcome_distribution
from .simplex import is_rational

HULL_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class PrivateInfoGame:
    """Nature draws signals ``(a1, a2)`` from ``prior``; each player sees only her own.

    ``tables[(a1, a2)]`` is the bimatrix game played at that signal pair.
    All tables share the same strategy labels.
    """

    signals: tuple
    prior: Mapping
    tables: Mapping

    def __post_init__(self):
        a1, a2 = (tuple(s) for s in self.signals)
        object.__setattr__(self, "signals", (a1, a2))
        prior = {(x, y): self.prior.get((x, y), 0) for x in a1 for y in a2}
        extra = set(self.prior) - set(prior)
        if extra:
            raise ValueError(f"prior mentions unknown signal pairs {sorted(extra)}")
        if any(v < 0 for v in prior.values()):
            raise ValueError("signal prior has a negative entry")
        total = sum(prior.values())
        exact = all(is_rational(v) for v in prior.values())
        if (total != 1) if exact else abs(total - 1) > 1e-12:
            raise ValueError(f"signal prior sums to {total}")
        object.__setattr__(self, "prior", prior)
        tables = dict(self.tables)
        missing = [k for k in prior if k not in tables]
        if missing:
            raise ValueError(f"no payoff table for signal pairs {missing}")
        labels = {g.strategies for g in tables.values()}
        if len(labels) != 1:
            raise ValueError("all payoff tables must use the same strategy labels")
        object.__setattr__(self, "tables", tables)

    @property
    def strategies(self) -> tuple:
        return next(iter(self.tables.values())).strategies

    def payoff(self, a1, a2, s1, s2) -> tuple:
        return self.tables[(a1, a2)].payoff(s1, s2)

    def conditional_prior(self, player: int, signal) -> dict:
        """Distribution of the opponent's signal given ``player`` saw ``signal``."""
        own = self.signals[player]
        if signal not in own:
            raise KeyError(f"{signal!r} is not a signal of player {player + 1}")
        joint = {k: v for k, v in self.prior.items() if k[player] == signal}
        total = sum(joint.values())
        if total == 0:
            return {}
        return {k[1 - player]: v / total for k, v in joint.items()}


def uniform_prior(signals1: Sequence, signals2: Sequence) -> dict:
    n = len(signals1) * len(signals2)
    return {(a, b): Fraction(1, n) for a in signals1 for b in signals2}


# -- the 2x2x2x2 payoff structure ---------------------------------------------

@dataclass(frozen=True)
class PayoffStructure:
    """Two 2x2 payoff matrices: one when both players see the first signal,
    one for every other signal pair.

    ``both_first = ((A, B), (C, D), (E, F), (G, H))`` lists the cells
    HH, HT, TH, TT of the first matrix; ``otherwise = ((I, J), (K, L),
    (M, N), (P, Q))`` those of the second.  ``prior`` gives the
    probabilities of the signal pairs CC, CD, DC, DD.
    """

    both_first: tuple
    otherwise: tuple
    prior: tuple = (Fraction(1, 4),) * 4

    def __post_init__(self):
        for name in ("both_first", "otherwise"):
            cells = tuple(tuple(c) for c in getattr(self, name))
            if len(cells) != 4 or any(len(c) != 2 for c in cells):
                raise ValueError(f"{name} must hold four payoff pairs")
            if any(not np.isfinite(float(v)) for c in cells for v in c):
                raise ValueError(f"{name} has a non-finite payoff")
            object.__setattr__(self, name, cells)
        prior = tuple(self.prior)
        if len(prior) != 4 or any(p < 0 for p in prior):
            raise ValueError("prior must be four non-negative probabilities")
        total = sum(prior)
        if (total != 1) if all(is_rational(p) for p in prior) else abs(total - 1) > 1e-12:
            raise ValueError(f"prior sums to {total}")
        object.__setattr__(self, "prior", prior)

    @property
    def letters(self) -> dict:
        """The sixteen constants keyed by their conventional letters."""
        flat = [v for c in self.both_first + self.otherwise for v in c]
        return dict(zip("ABCDEFGHIJKLMNPQ", flat))

    def to_game(self, strategies=(OUTCOMES, OUTCOMES), signals=(("C", "D"), ("C", "D"))) -> PrivateInfoGame:
        (c1, d1), (c2, d2) = signals
        first = _table(self.both_first, strategies)
        rest = _table(self.otherwise, strategies)
        keys = [(c1, c2), (c1, d2), (d1, c2), (d1, d2)]
        tables = {k: (first if k == (c1, c2) else rest) for k in keys}
        return PrivateInfoGame(signals, dict(zip(keys, self.prior)), tables)


def _table(cells, strategies) -> BimatrixGame:
    hh, ht, th, tt = cells
    return BimatrixGame(strategies, [[hh, ht], [th, tt]])


def is_balanced(ps: PayoffStructure, tol: float = 1e-12) -> bool:
    """Balance makes both players' quantum payoffs identical under HH+TT."""
    L = ps.letters
    pairs = [
        (L["A"] + L["G"], L["B"] + L["H"]),
        (L["C"] + L["E"], L["D"] + L["F"]),
        (L["I"] + L["P"], L["J"] + L["Q"]),
        (L["K"] + L["M"], L["L"] + L["N"]),
    ]
    for lhs, rhs in pairs:
        if is_rational(lhs) and is_rational(rhs):
            if lhs != rhs:
                return False
        elif abs(lhs - rhs) > tol:
            return False
    return True


# -- contingent strategies -----------------------------------------------------

def contingent_label(signals: Sequence, choice: Sequence) -> str:
    return ",".join(f"{a}:{s}" for a, s in zip(signals, choice))


def contingent_strategies(g: PrivateInfoGame, player: int) -> list:
    """All maps from the player's signals to her strategies, as label/choice pairs."""
    sig = g.signals[player]
    return [
        (contingent_label(sig, choice), dict(zip(sig, choice)))
        for choice in itertools.product(g.strategies[player], repeat=len(sig))
    ]


def associated_game(g: PrivateInfoGame) -> BimatrixGame:
    """The ex-ante game whose strategies are contingent plans."""
    c1 = contingent_strategies(g, 0)
    c2 = contingent_strategies(g, 1)
    table = []
    for _, f1 in c1:
        row = []
        for _, f2 in c2:
            u1 = u2 = 0
            for (a1, a2), pr in g.prior.items():
                if pr:
                    x, y = g.payoff(a1, a2, f1[a1], f2[a2])
                    u1 += pr * x
                    u2 += pr * y
            row.append((u1, u2))
        table.append(row)
    return BimatrixGame(([l for l, _ in c1], [l for l, _ in c2]), table)


# -- quantum behavioral payoffs ------------------------------------------------

def _require_binary(g: PrivateInfoGame) -> None:
    if any(len(s) != 2 for s in g.strategies):
        raise ValueError("quantum coins need exactly two strategies per player")


def signal_payoffs(g: PrivateInfoGame, xi: TwoQubitState, m1, m2, a1, a2) -> tuple:
    """Expected payoffs at one signal pair when the players use moves ``m1``, ``m2``."""
    _require_binary(g)
    dist = outcome_distribution(xi, m1, m2).matrix
    table = g.tables[(a1, a2)]
    u1 = u2 = 0.0
    for i in range(2):
        for j in range(2):
            x, y = table.payoffs[i][j]
            u1 += dist[i, j] * float(x)
            u2 += dist[i, j] * float(y)
    return u1, u2


def behavioral_payoff(g: PrivateInfoGame, xi: TwoQubitState, profile: tuple) -> tuple:
    """Ex-ante payoffs of a behavioral profile ``({a1: move}, {a2: move})``."""
    _require_binary(g)
    f1, f2 = profile
    u1 = u2 = 0.0
    for (a1, a2), pr in g.prior.items():
        if pr:
            x, y = signal_payoffs(g, xi, f1[a1], f2[a2], a1, a2)
            u1 += float(pr) * x
            u2 += float(pr) * y
    return u1, u2


def closed_form_payoff(ps: PayoffStructure, u_first, u_second, v_first, v_second) -> float:
    """Player one's payoff under HH+TT for an all-unitary profile, via s and t of U V^T."""
    L = {k: float(v) for k, v in ps.letters.items()}
    pcc, pcd, pdc, pdd = (float(p) for p in ps.prior)

    def term(u: SpecialUnitary, v: SpecialUnitary, diag: float, off: float) -> float:
        w = u @ v.transpose()
        return w.s * diag / 2 + w.t * off / 2

    return (
        pcc * term(u_first, v_first, L["A"] + L["G"], L["C"] + L["E"])
        + pcd * term(u_first, v_second, L["I"] + L["P"], L["K"] + L["M"])
        + pdc * term(u_second, v_first, L["I"] + L["P"], L["K"] + L["M"])
        + pdd * term(u_second, v_second, L["I"] + L["P"], L["K"] + L["M"])
    )


def quantum_behavioral_game(g: PrivateInfoGame, xi: TwoQubitState, strategies1: Mapping, strategies2: Mapping) -> BimatrixGame:
    """A finite slice of the quantum behavioral game.

    ``strategies1`` and ``strategies2`` map names to behavioral strategies
    ``{signal: move}``; the result has exactly those strategies.
    """
    table = [
        [behavioral_payoff(g, xi, (f1, f2)) for f2 in strategies2.values()]
        for f1 in strategies1.values()
    ]
    return BimatrixGame((tuple(strategies1), tuple(strategies2)), table)


# -- stochastic extensions -------------------------------------------------------

def hull_distance(points: np.ndarray, target: np.ndarray) -> float:
    """Smallest max-norm distance from ``target`` to the convex hull of ``points``."""
    points = np.asarray(points, dtype=float)
    k, d = points.shape
    # variables: weights (k) and the slack s; minimize s
    c = np.zeros(k + 1)
    c[-1] = 1.0
    a_ub = np.zeros((2 * d, k + 1))
    b_ub = np.zeros(2 * d)
    a_ub[:d, :k] = points.T
    a_ub[:d, -1] = -1.0
    b_ub[:d] = target
    a_ub[d:, :k] = -points.T
    a_ub[d:, -1] = -1.0
    b_ub[d:] = -np.asarray(target, dtype=float)
    a_eq = np.zeros((1, k + 1))
    a_eq[0, :k] = 1.0
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * (k + 1), method="highs")
    if res.status != 0:
        raise RuntimeError(f"hull membership LP failed: {res.message}")
    return float(res.fun)


def extension_witness(base: BimatrixGame, candidate, tol: float = HULL_SLACK) -> Optional[tuple]:
    """First payoff pair of ``candidate`` lying outside the hull of ``base``'s pairs, or None.

    ``candidate`` is a :class:`BimatrixGame` or an iterable of payoff pairs
    (for instance payoffs of sampled quantum profiles).
    """
    hull = np.array([[float(v) for v in cell] for _, _, cell in base.cells()])
    pairs = [cell for _, _, cell in candidate.cells()] if isinstance(candidate, BimatrixGame) else list(candidate)
    for pair in pairs:
        target = np.array([float(v) for v in pair])
        if target.shape != (2,):
            raise ValueError(f"payoff pair {pair!r} is not two-dimensional")
        if hull_distance(hull, target) > tol:
            return tuple(pair)
    return None


def extension_refute(base: BimatrixGame, candidate, tol: float = HULL_SLACK) -> bool:
    """True iff every payoff pair of ``candidate`` is an expectation of ``base``'s payoffs.

    A ``False`` answer refutes that ``candidate`` is a stochastic extension
    of ``base``; :func:`extension_witness` names the offending pair.
    """
    return extension_witness(base, candidate, tol) is None


# -- Kuhn's mixed/behavioral isomorphism on finite instances ------------------

def _measurable_maps(space: FiniteSampleSpace, partition: tuple, codomain: Sequence) -> list:
    """All maps on sample points constant on every block of ``partition``."""
    maps = []
    for choice in itertools.product(codomain, repeat=len(partition)):
        values = [None] * len(space)
        for block, v in zip(partition, choice):
            for omega in block:
                values[omega] = v
        maps.append(tuple(values))
    return maps


def _partitions(env: ClassicalEnvironment, player: int) -> list:
    seen, out = set(), []
    for x in env.variables[player]:
        p = tuple(sorted(x.partition()))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def mixed_then_contingent(g: PrivateInfoGame, env: ClassicalEnvironment):
    """Strategies of the randomized contingent game: maps omega -> (signal -> strategy).

    Each is stored as a tuple over omega of tuples over signals.
    """
    out = []
    for player in (0, 1):
        plans = list(itertools.product(g.strategies[player], repeat=len(g.signals[player])))
        found = set()
        for part in _partitions(env, player):
            found.update(_measurable_maps(env.space, part, plans))
        out.append(sorted(found))
    return out


def contingent_then_mixed(g: PrivateInfoGame, env: ClassicalEnvironment):
    """Strategies of the contingent game over randomized strategies: maps
    signal -> (omega -> strategy), each random variable measurable for some
    partition available to the player.  Stored as tuples over signals of
    tuples over omega."""
    out = []
    for player in (0, 1):
        rvs = set()
        for part in _partitions(env, player):
            rvs.update(_measurable_maps(env.space, part, g.strategies[player]))
        rvs = sorted(rvs)
        out.append(sorted(itertools.product(rvs, repeat=len(g.signals[player]))))
    return out


def phi(f: tuple) -> tuple:
    """omega -> (signal -> s)  to  signal -> (omega -> s)."""
    return tuple(zip(*f))


def psi(h: tuple) -> tuple:
    """signal -> (omega -> s)  to  omega -> (signal -> s)."""
    return tuple(zip(*h))


def _payoff_randomized_contingent(g, env, f1, f2):
    s1, s2 = g.signals
    u = [0, 0]
    for omega, pw in enumerate(env.space.probabilities):
        for (a1, a2), pr in g.prior.items():
            x = g.payoff(a1, a2, f1[omega][s1.index(a1)], f2[omega][s2.index(a2)])
            u[0] += pw * pr * x[0]
            u[1] += pw * pr * x[1]
    return tuple(u)


def _payoff_contingent_randomized(g, env, h1, h2):
    s1, s2 = g.signals
    u = [0, 0]
    for (a1, a2), pr in g.prior.items():
        x_rv = RandomVariable(h1[s1.index(a1)])
        y_rv = RandomVariable(h2[s2.index(a2)])
        dist = induced_distribution(env.space, x_rv, y_rv)
        e = expected_payoffs(g.tables[(a1, a2)], dist)
        u[0] += pr * e[0]
        u[1] += pr * e[1]
    return tuple(u)


def _close(a, b, tol=1e-12) -> bool:
    if all(is_rational(v) for v in (*a, *b)):
        return tuple(a) == tuple(b)
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def kuhn_check(g: PrivateInfoGame, env: ClassicalEnvironment) -> bool:
    """Verify, by exhaustion, that randomizing-then-contingent and
    contingent-then-randomizing give isomorphic games.

    Builds both strategy sets, checks that ``phi`` and ``psi`` are inverse
    bijections between them, and that every profile keeps its payoffs.
    The bijection exists whenever each player's set of partitions is closed
    under common refinement (in particular for one partition per player);
    otherwise the contingent-then-randomizing side is strictly larger and
    the check fails.
    """
    mixed = mixed_then_contingent(g, env)
    behav = contingent_then_mixed(g, env)
    for player in (0, 1):
        m_set, b_set = set(mixed[player]), set(behav[player])
        if len(m_set) != len(b_set):
            return False
        if {phi(f) for f in m_set} != b_set or {psi(h) for h in b_set} != m_set:
            return False
        if any(psi(phi(f)) != f for f in m_set) or any(phi(psi(h)) != h for h in b_set):
            return False
    for f1 in mixed[0]:
        for f2 in mixed[1]:
            lhs = _payoff_randomized_contingent(g, env, f1, f2)
            rhs = _payoff_contingent_randomized(g, env, phi(f1), phi(f2))
            if not _close(lhs, rhs):
                return False
    return True


def randomized_contingent_game(g: PrivateInfoGame, env: ClassicalEnvironment) -> BimatrixGame:
    """The randomized contingent game as an explicit bimatrix game (strategies enumerated)."""
    mixed = mixed_then_contingent(g, env)
    table = [[_payoff_randomized_contingent(g, env, f1, f2) for f2 in mixed[1]] for f1 in mixed[0]]
    labels = [tuple(f"m{k}" for k in range(len(m))) for m in mixed]
    return BimatrixGame(labels, table)


def contingent_randomized_game(g: PrivateInfoGame, env: ClassicalEnvironment) -> BimatrixGame:
    """The contingent game over randomized strategies, strategies ordered to
    correspond to :func:`randomized_contingent_game` through ``phi``."""
    mixed = mixed_then_contingent(g, env)
    table = [
        [_payoff_contingent_randomized(g, env, phi(f1), phi(f2)) for f2 in mixed[1]]
        for f1 in mixed[0]
    ]
    labels = [tuple(f"b{k}" for k in range(len(m))) for m in mixed]
    return BimatrixGame(labels, table)


def best_equilibrium_payoff(game: BimatrixGame, player: int = 0):
    """Largest payoff to ``player`` over the pure Nash equilibria of ``game``."""
    eqs = pure_nash_equilibria(game)
    if not eqs:
        return None
    return max(game.payoff(s1, s2)[player] for s1, s2 in eqs)


def random_private_game(rng: np.random.Generator, high: int = 4) -> PrivateInfoGame:
    """Two signals and two strategies per player, integer payoffs, rational prior."""
    w = rng.integers(1, 5, size=4)
    keys = [(a, b) for a in ("a", "b") for b in ("x", "y")]
    prior = {k: Fraction(int(v), int(w.sum())) for k, v in zip(keys, w)}
    tables = {}
    for k in keys:
        p = rng.integers(-high, high + 1, size=(2, 2, 2))
        tables[k] = BimatrixGame(
            (("u", "d"), ("l", "r")),
            [[(int(p[i, j, 0]), int(p[i, j, 1])) for j in range(2)] for i in range(2)],
        )
    return PrivateInfoGame((("a", "b"), ("x", "y")), prior, tables)


def random_environment(rng: np.random.Generator, n_points: int = 3, labels=(0, 1, 2)) -> ClassicalEnvironment:
    """One random partition-generating variable per player on a small rational space."""
    w = rng.integers(1, 4, size=n_points)
    space = FiniteSampleSpace(tuple(Fraction(int(v), int(w.sum())) for v in w))
    x = RandomVariable(tuple(labels[int(i)] for i in rng.integers(0, len(labels), n_points)), "X")
    y = RandomVariable(tuple(labels[int(i)] for i in rng.integers(0, len(labels), n_points)), "Y")
    return ClassicalEnvironment(space, ((x,), (y,)))
