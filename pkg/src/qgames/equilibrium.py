"""Quantum equilibria of balanced 2x2x2x2 games of private information.

For a balanced payoff structure played on HH+TT the two players share one
payoff function, and its maximum over all SU(2) quadruples is attained on
a one-parameter family of real rotations.  This module searches that
family, checks correlation quadruples for quantum realizability and
verifies candidate equilibria against pure and unitary deviations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import golden

from .private_info import PayoffStructure, PrivateInfoGame, behavioral_payoff, is_balanced, signal_payoffs
from .quantum import (
    BELL,
    Pure,
    SpecialUnitary,
    TwoQubitState,
    batched_outcome,
    rotation,
    rotation_array,
    su2_from_angles,
)

GRID_POINTS = 10_000
THETA_XTOL = 1e-10
FEASIBLE_SLACK = 1e-9
VERDICT_SLACK = 1e-6
DEFAULT_SEED = 20110401
DEFAULT_STARTS = 200


@dataclass(frozen=True)
class ThetaProfile:
    """First-signal/second-signal rotations ``M(-θ), M(θ)`` for player one and
    ``M(2θ), M(0)`` for player two."""

    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta):
            raise ValueError("theta must be finite")
        object.__setattr__(self, "theta", theta % (2 * math.pi))

    @property
    def angles(self) -> tuple:
        th = self.theta
        return (-th, th), (2 * th, 0.0)

    def moves(self) -> tuple:
        (u1, u2), (v1, v2) = self.angles
        return (rotation(u1), rotation(u2)), (rotation(v1), rotation(v2))

    def behavioral(self, signals) -> tuple:
        """Behavioral profile keyed by the game's signal labels (first label plays C)."""
        (u_c, u_d), (v_c, v_d) = self.moves()
        s1, s2 = signals
        return {s1[0]: u_c, s1[1]: u_d}, {s2[0]: v_c, s2[1]: v_d}


class ThetaOptimum(NamedTuple):
    theta: float
    value: float


class CorrelationQuad(NamedTuple):
    """Disagreement probabilities along the chain A-S-B-T-A."""

    x: float
    y: float
    z: float
    w: float


class ReducedObjective(NamedTuple):
    """``p*W + q*(X + Y + Z) + r``."""

    p: float
    q: float
    r: float


class ReducedOptimum(NamedTuple):
    x_star: float
    w_star: float
    theta: float
    value: float


# -- the theta family --------------------------------------------------------

def _payoff_batch(game: PrivateInfoGame, xi: TwoQubitState, moves1, moves2, player: int = 0) -> np.ndarray:
    """Ex-ante payoff of ``player`` for batches of per-signal moves.

    ``moves1[a]`` / ``moves2[b]`` are arrays of SU(2) matrices (or Pure moves).
    """
    c = xi.coefficients
    total = 0.0
    for (a1, a2), pr in game.prior.items():
        if not pr:
            continue
        probs = batched_outcome(c, moves1[a1], moves2[a2])
        table = game.tables[(a1, a2)].matrix(player)
        total = total + float(pr) * np.einsum("...ij,ij->...", probs, table)
    return total


def theta_payoffs(game: PrivateInfoGame, thetas, xi: TwoQubitState = BELL, player: int = 0) -> np.ndarray:
    """Payoff along the theta family for an array of angles."""
    thetas = np.asarray(thetas, dtype=float)
    s1, s2 = game.signals
    moves1 = {s1[0]: rotation_array(-thetas), s1[1]: rotation_array(thetas)}
    moves2 = {s2[0]: rotation_array(2 * thetas), s2[1]: rotation_array(np.zeros_like(thetas))}
    return _payoff_batch(game, xi, moves1, moves2, player)


def _polish(f, x: float, h: float = 1e-4) -> float:
    """One Newton step (five-point first derivative); kept only if it does not lose value."""
    fm2, fm, f0, fp, fp2 = (f(x + k * h) for k in (-2, -1, 0, 1, 2))
    d2 = (fp - 2 * f0 + fm) / h**2
    if d2 >= 0:
        return x
    d1 = (fm2 - 8 * fm + 8 * fp - fp2) / (12 * h)
    step = -d1 / d2
    if abs(step) > h:
        return x
    return x + step if f(x + step) >= f0 - 1e-15 * max(1.0, abs(f0)) else x


def maximize_periodic(f_batch, period: float, n_grid: int = GRID_POINTS, xtol: float = THETA_XTOL) -> tuple:
    """Global maximum of a smooth ``period``-periodic function on [0, period).

    Grid scan, then golden-section refinement around every grid local
    maximum that comes close to the best grid value.  Ties go to the
    smallest angle.
    """
    h = period / n_grid
    grid = np.arange(n_grid) * h
    vals = np.asarray(f_batch(grid), dtype=float)
    vmax = vals.max()
    scale = max(1.0, abs(vmax))
    if vmax - vals.min() <= 1e-12 * scale:
        return 0.0, float(vals[0])

    def f(x):
        return float(f_batch(np.array([x]))[0])

    left, right = np.roll(vals, 1), np.roll(vals, -1)
    peaks = np.flatnonzero((vals >= left) & (vals >= right) & (vals >= vmax - 1e-4 * scale))
    found = []
    for i in peaks:
        x0 = grid[i]
        # shift so the relative tolerance of golden() acts on a quantity near 1
        g = lambda y, x0=x0: -f(x0 + y - 1.0)
        y = golden(g, brack=(1.0 - h, 1.0, 1.0 + h), tol=xtol / 2)
        x = _polish(f, x0 + y - 1.0)
        found.append((x % period, f(x)))
    best = max(v for _, v in found)
    tie = 1e-12 * max(1.0, abs(best))
    x_best = min(x for x, v in found if v >= best - tie)
    return float(x_best), float(f(x_best))


def optimize_theta(ps: PayoffStructure, game: Optional[PrivateInfoGame] = None, xi: TwoQubitState = BELL) -> ThetaOptimum:
    """Maximize the common payoff over the theta family on [0, π).

    ``game`` only supplies labels; it must be ``ps.to_game(...)``.
    """
    if not is_balanced(ps):
        raise ValueError("payoff structure is not balanced; the theta reduction needs balance")
    game = game or ps.to_game()
    theta, value = maximize_periodic(lambda th: theta_payoffs(game, th, xi), math.pi)
    return ThetaOptimum(theta, value)


# -- realizability of correlation quadruples ---------------------------------

def _check_quad(quad) -> np.ndarray:
    arr = np.asarray(quad, dtype=float)
    if arr.shape[-1] != 4:
        raise ValueError("a correlation quadruple has four entries")
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise ValueError(f"disagreement probabilities must lie in [0, 1], got {quad}")
    return arr


def arcsine_slack(quad) -> np.ndarray:
    """``π - max |sum of arcsines with one sign flipped|``; negative means infeasible.

    Works on a single quadruple or an array of shape (..., 4).
    """
    arr = _check_quad(quad)
    a = np.arcsin(np.clip(1.0 - 2.0 * arr, -1.0, 1.0))
    total = a.sum(axis=-1, keepdims=True)
    flipped = np.abs(total - 2.0 * a)
    return math.pi - flipped.max(axis=-1)


def quantum_feasible(quad, tol: float = FEASIBLE_SLACK) -> bool:
    """Can these disagreement rates arise from measurements on one quantum state?

    Uses the arcsine form on correlations ``c = 1 - 2t``.
    """
    return bool(arcsine_slack(quad) >= -tol)


def classical_feasible(quad, tol: float = 0.0) -> bool:
    """Can these disagreement rates arise from four classical coins A, S, B, T?

    Going round the cycle the number of disagreements is even, so for
    every odd set of edges the rates inside it exceed those outside by at
    most ``|set| - 1``.  The single-edge cases are the chain inequalities,
    e.g. ``P(A≠T) <= P(A≠S) + P(S≠B) + P(B≠T)``.
    """
    arr = _check_quad(quad)
    total = arr.sum()
    for k in range(4):
        if arr[k] - (total - arr[k]) > tol:
            return False
        if (total - arr[k]) - arr[k] > 2 + tol:
            return False
    return True


def product_form_feasible(quad) -> bool:
    """The product form ``|XY - X - Y - ZW + Z + W| <= 2(√(X-X²)√(Y-Y²) + √(Z-Z²)√(W-W²))``.

    Kept for comparison only: it rejects quadruples that quantum
    measurements demonstrably produce, e.g. the optimum of the cats/dogs
    game.
    """
    x, y, z, w = _check_quad(quad)
    lhs = abs(x * y - x - y - z * w + z + w)
    rhs = 2 * (math.sqrt(x - x * x) * math.sqrt(y - y * y) + math.sqrt(z - z * z) * math.sqrt(w - w * w))
    return lhs <= rhs


def disagreement_quad(a, b, s, t) -> CorrelationQuad:
    """``t(AS), t(BS), t(BT), t(AT)`` with ``t`` the squared off-diagonal modulus."""
    def off(m, n):
        return float(np.abs((np.asarray(m) @ np.asarray(n))[..., 0, 1]) ** 2)
    mats = [u.matrix if isinstance(u, SpecialUnitary) else u for u in (a, b, s, t)]
    a, b, s, t = mats
    return CorrelationQuad(off(a, s), off(b, s), off(b, t), off(a, t))


def disagreement_quads_batch(a, b, s, t) -> np.ndarray:
    """Vectorized :func:`disagreement_quad` over arrays of SU(2) matrices."""
    def off(m, n):
        return np.abs((m @ n)[..., 0, 1]) ** 2
    return np.stack([off(a, s), off(b, s), off(b, t), off(a, t)], axis=-1)


def reduced_objective(ps: PayoffStructure) -> ReducedObjective:
    """Rewrite the common payoff as ``p*W + q*(X+Y+Z) + r``.

    ``W`` is the disagreement rate at the first-signal pair and ``X, Y, Z``
    those at the three other pairs, which must be equally likely.
    """
    L = {k: v for k, v in ps.letters.items()}
    pcc, pcd, pdc, pdd = ps.prior
    if not (pcd == pdc == pdd):
        raise ValueError("the reduced form needs equal weight on the three mixed signal pairs")
    diag_first, off_first = L["A"] + L["G"], L["C"] + L["E"]
    diag_rest, off_rest = L["I"] + L["P"], L["K"] + L["M"]
    p = pcc * (off_first - diag_first) / 2
    q = pcd * (off_rest - diag_rest) / 2
    r = pcc * diag_first / 2 + 3 * pcd * diag_rest / 2
    return ReducedObjective(p, q, r)


def reduced_maximize(obj: ReducedObjective) -> ReducedOptimum:
    """Maximize ``p*W + 3q*X + r`` over realizable quadruples with X = Y = Z.

    Every extreme point of the realizable (X, W) region lies on the curve
    ``X = sin²θ, W = sin²3θ`` for θ in [0, π/2], so a one-dimensional search
    along it is exact.
    """
    p, q, r = (float(v) for v in obj)

    def f(th):
        return p * np.sin(3 * th) ** 2 + 3 * q * np.sin(th) ** 2 + r

    theta, value = maximize_periodic(f, math.pi)
    if theta > math.pi / 2:
        theta = math.pi - theta
    return ReducedOptimum(math.sin(theta) ** 2, math.sin(3 * theta) ** 2, theta, value)


# -- multistart search over SU(2) --------------------------------------------

_FREQS = (2.0, 1.0, 1.0)  # payoffs are sinusoids of these frequencies in (t, a, b)


def haar_angles(rng: np.random.Generator, n: int) -> np.ndarray:
    """Angles (t, a, b) of ``n`` Haar-random SU(2) matrices; shape (n, 3)."""
    t = np.arccos(np.sqrt(rng.uniform(0.0, 1.0, n)))
    a = rng.uniform(0.0, 2 * math.pi, n)
    b = rng.uniform(0.0, 2 * math.pi, n)
    return np.stack([t, a, b], axis=1)


def sinusoid_ascent(f, params: np.ndarray, freqs, tol: float = 1e-8, max_sweeps: int = 1000):
    """Cyclic coordinate ascent for objectives that are pure sinusoids in each coordinate.

    ``f`` maps an (n, k) array of parameters to n values.  Each coordinate
    step samples three points over one period, recovers the sinusoid and
    jumps to its maximizer, so every step is an exact line search.  Stops
    when no start improves by more than ``tol`` over a sweep.
    """
    params = np.array(params, dtype=float)
    val = f(params)
    offsets = np.arange(3) * (2 * math.pi / 3)
    for _ in range(max_sweeps):
        for j, w in enumerate(freqs):
            x0 = params[:, j].copy()
            phase = w * x0[:, None] + offsets
            samples = np.empty_like(phase)
            for m in range(3):
                params[:, j] = x0 + offsets[m] / w
                samples[:, m] = f(params)
            a = (2.0 / 3.0) * (samples * np.cos(phase)).sum(axis=1)
            b = (2.0 / 3.0) * (samples * np.sin(phase)).sum(axis=1)
            params[:, j] = np.arctan2(b, a) / w
        new = f(params)
        done = np.max(new - val) < tol
        val = np.maximum(new, val)
        if done:
            break
    return params, f(params)


def _move_array(move):
    return move.matrix if isinstance(move, SpecialUnitary) else move


def conditional_return(game: PrivateInfoGame, xi: TwoQubitState, player: int, signal, move, profile) -> float:
    """Expected payoff of ``player`` at ``signal`` using ``move`` while the opponent follows ``profile``."""
    opp = profile[1 - player]
    total = 0.0
    for b, pr in game.conditional_prior(player, signal).items():
        if not pr:
            continue
        if player == 0:
            u = signal_payoffs(game, xi, move, opp[b], signal, b)
        else:
            u = signal_payoffs(game, xi, opp[b], move, b, signal)
        total += float(pr) * u[player]
    return total


def best_unitary_deviation(game, xi, player, signal, profile, rng, starts=DEFAULT_STARTS, tol=1e-8) -> float:
    """Multistart coordinate ascent over unitary moves at one information set."""
    opp = profile[1 - player]
    cond = game.conditional_prior(player, signal)
    c = xi.coefficients

    def f(params):
        u = su2_from_angles(params[:, 0], params[:, 1], params[:, 2])
        total = np.zeros(len(params))
        for b, pr in cond.items():
            if not pr:
                continue
            if player == 0:
                probs = batched_outcome(c, u, _move_array(opp[b]))
                table = game.tables[(signal, b)].matrix(0)
            else:
                probs = batched_outcome(c, _move_array(opp[b]), u)
                table = game.tables[(b, signal)].matrix(1)
            total += float(pr) * np.einsum("nij,ij->n", probs, table)
        return total

    _, vals = sinusoid_ascent(f, haar_angles(rng, starts), _FREQS, tol=tol)
    return float(vals.max())


def multistart_common_payoff(ps: PayoffStructure, starts: int = DEFAULT_STARTS, seed: int = DEFAULT_SEED,
                             xi: TwoQubitState = BELL) -> float:
    """Best payoff found over unrestricted per-signal SU(2) quadruples (12 angles)."""
    game = ps.to_game()
    (c1, d1), (c2, d2) = game.signals
    rng = np.random.default_rng(seed)
    init = np.concatenate([haar_angles(rng, starts) for _ in range(4)], axis=1)

    def f(params):
        mats = [su2_from_angles(params[:, k], params[:, k + 1], params[:, k + 2]) for k in (0, 3, 6, 9)]
        return _payoff_batch(game, xi, {c1: mats[0], d1: mats[1]}, {c2: mats[2], d2: mats[3]})

    _, vals = sinusoid_ascent(f, init, _FREQS * 4)
    return float(vals.max())


# -- equilibrium verification -------------------------------------------------

@dataclass
class DeviationRow:
    player: int  # 1 or 2
    signal: str
    pure: dict  # strategy label -> conditional return
    equilibrium: float
    best_unitary: float
    ok: bool

    def to_dict(self) -> dict:
        return {
            "player": self.player,
            "signal": self.signal,
            "pure": dict(self.pure),
            "equilibrium": self.equilibrium,
            "best_unitary": self.best_unitary,
            "ok": self.ok,
        }


@dataclass
class EquilibriumReport:
    theta_star: float
    values: tuple
    rows: list = field(default_factory=list)
    verdict: bool = False

    def row(self, player: int, signal) -> DeviationRow:
        return next(r for r in self.rows if r.player == player and r.signal == signal)

    def to_dict(self) -> dict:
        return {
            "theta_star": self.theta_star,
            "values": list(self.values),
            "deviations": [r.to_dict() for r in self.rows],
            "verdict": self.verdict,
        }


def verify_equilibrium(
    ps: PayoffStructure,
    profile: ThetaProfile,
    game: Optional[PrivateInfoGame] = None,
    xi: TwoQubitState = BELL,
    seed: int = DEFAULT_SEED,
    starts: int = DEFAULT_STARTS,
    slack: float = VERDICT_SLACK,
) -> EquilibriumReport:
    """Check a theta profile against pure deviations and searched unitary deviations.

    For every player and signal, the profile's move must do at least as well
    (up to ``slack``) as each pure strategy and as the best unitary move found
    by a seeded multistart search.
    """
    if not is_balanced(ps):
        raise ValueError("payoff structure is not balanced")
    game = game or ps.to_game()
    behav = profile.behavioral(game.signals)
    rng = np.random.default_rng(seed)
    values = behavioral_payoff(game, xi, behav)
    rows = []
    for player in (0, 1):
        labels = game.strategies[player]
        for signal in game.signals[player]:
            if not game.conditional_prior(player, signal):
                continue
            pure = {
                lab: float(conditional_return(game, xi, player, signal, Pure("HT"[k]), behav))
                for k, lab in enumerate(labels)
            }
            eq = float(conditional_return(game, xi, player, signal, behav[player][signal], behav))
            best_u = float(best_unitary_deviation(game, xi, player, signal, behav, rng, starts))
            ok = bool(eq >= max(max(pure.values()), best_u) - slack)
            rows.append(DeviationRow(player + 1, signal, pure, eq, best_u, ok))
    return EquilibriumReport(float(profile.theta), tuple(float(v) for v in values), rows, all(r.ok for r in rows))
