"""State algebra for a pair of quantum coins.

A coin pair lives in the span of HH, HT, TH, TT.  We store the four
amplitudes as a 2x2 coefficient matrix ``C`` (rows index coin one, columns
coin two), so that a move ``U`` on coin one and ``V`` on coin two send
``C`` to ``U @ C @ V.T``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

OUTCOMES = ("H", "T")

UNIT_TOL = 1e-12
CLASSICAL_TOL = 1e-10


@dataclass(frozen=True)
class SpecialUnitary:
    """The SU(2) matrix ``[[p, q], [-conj(q), conj(p)]]``."""

    p: complex
    q: complex

    def __post_init__(self):
        p, q = complex(self.p), complex(self.q)
        if not (cmath.isfinite(p) and cmath.isfinite(q)):
            raise ValueError("SU(2) entries must be finite")
        norm = abs(p) ** 2 + abs(q) ** 2
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"|p|^2 + |q|^2 = {norm!r}, expected 1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_matrix(cls, m) -> SpecialUnitary:
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        p, q = m[0, 0], m[0, 1]
        if abs(m[1, 0] + np.conj(q)) > 1e-9 or abs(m[1, 1] - np.conj(p)) > 1e-9:
            raise ValueError("matrix is not of the form [[p, q], [-conj(q), conj(p)]]")
        # renormalize away accumulated rounding from products
        n = math.sqrt(abs(p) ** 2 + abs(q) ** 2)
        return cls(p / n, q / n)

    @property
    def matrix(self) -> np.ndarray:
        p, q = self.p, self.q
        return np.array([[p, q], [-q.conjugate(), p.conjugate()]])

    @property
    def s(self) -> float:
        """Squared modulus of the diagonal entry."""
        return abs(self.p) ** 2

    @property
    def t(self) -> float:
        """Squared modulus of the off-diagonal entry."""
        return abs(self.q) ** 2

    def __matmul__(self, other: SpecialUnitary) -> SpecialUnitary:
        return SpecialUnitary.from_matrix(self.matrix @ other.matrix)

    def conj(self) -> SpecialUnitary:
        return SpecialUnitary(self.p.conjugate(), self.q.conjugate())

    def transpose(self) -> SpecialUnitary:
        return SpecialUnitary(self.p, -self.q.conjugate())

    def inverse(self) -> SpecialUnitary:
        return SpecialUnitary(self.p.conjugate(), -self.q)


IDENTITY = SpecialUnitary(1.0, 0.0)
# Maps HH+TT onto the off-diagonal (HT, TH) when appended to a move.
FLIP = SpecialUnitary(0.0, 1.0)


@dataclass(frozen=True)
class Pure:
    """A pure strategy: the player discards the coin and plays ``outcome``."""

    outcome: str

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"pure outcome must be one of {OUTCOMES}, got {self.outcome!r}")

    @property
    def index(self) -> int:
        return OUTCOMES.index(self.outcome)


PURE_H = Pure("H")
PURE_T = Pure("T")

PlayerMove = Union[SpecialUnitary, Pure]


def rotation(theta: float) -> SpecialUnitary:
    """Real rotation ``[[cos, sin], [-sin, cos]]``; turns the coin by ``2*theta``."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"rotation angle must be finite, got {theta!r}")
    return SpecialUnitary(math.cos(theta), math.sin(theta))


def haar_unitary(rng: np.random.Generator) -> SpecialUnitary:
    """Draw from Haar measure on SU(2).

    ``p = e^{ia} cos t`` and ``q = e^{ib} sin t`` with independent uniform
    phases and ``cos^2 t`` uniform on [0, 1].
    """
    a, b = rng.uniform(0.0, 2 * math.pi, size=2)
    c2 = rng.uniform(0.0, 1.0)
    c = math.sqrt(c2)
    s = math.sqrt(1.0 - c2)
    return SpecialUnitary(cmath.exp(1j * a) * c, cmath.exp(1j * b) * s)


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Joint state ``hh*HH + ht*HT + th*TH + tt*TT`` of two coins.

    Amplitudes are normalized on construction.  States are rays, so ``==``
    compares up to a global complex scalar.
    """

    hh: complex
    ht: complex
    th: complex
    tt: complex

    def __post_init__(self):
        amps = np.array([self.hh, self.ht, self.th, self.tt], dtype=complex)
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise ValueError("a state needs at least one nonzero amplitude")
        amps = amps / norm
        for name, a in zip(("hh", "ht", "th", "tt"), amps):
            object.__setattr__(self, name, complex(a))

    @classmethod
    def from_coefficients(cls, c) -> TwoQubitState:
        c = np.asarray(c, dtype=complex)
        return cls(c[0, 0], c[0, 1], c[1, 0], c[1, 1])

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.hh, self.ht, self.th, self.tt])

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([[self.hh, self.ht], [self.th, self.tt]])

    def canonical(self) -> np.ndarray:
        """Representative whose first non-negligible amplitude is real positive."""
        amps = self.amplitudes
        k = int(np.argmax(np.abs(amps) > 1e-9))
        return amps * (abs(amps[k]) / amps[k])

    def __eq__(self, other):
        if not isinstance(other, TwoQubitState):
            return NotImplemented
        # |<a|b>| = 1 exactly when the rays coincide
        overlap = abs(np.vdot(self.amplitudes, other.amplitudes))
        return abs(overlap - 1.0) <= UNIT_TOL

    __hash__ = None


BELL = TwoQubitState(1.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class JointOutcomeDistribution:
    """Probabilities of (coin one, coin two) outcomes."""

    p_hh: float
    p_ht: float
    p_th: float
    p_tt: float

    def __post_init__(self):
        probs = tuple(float(p) for p in (self.p_hh, self.p_ht, self.p_th, self.p_tt))
        for name, p in zip(("p_hh", "p_ht", "p_th", "p_tt"), probs):
            object.__setattr__(self, name, p)
        if not all(math.isfinite(p) for p in probs):
            raise ValueError(f"non-finite probability in {probs}")
        if min(probs) < -UNIT_TOL:
            raise ValueError(f"negative probability in {probs}")
        if abs(sum(probs) - 1.0) > UNIT_TOL:
            raise ValueError(f"probabilities sum to {sum(probs)!r}")

    @classmethod
    def from_matrix(cls, m) -> JointOutcomeDistribution:
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.p_hh, self.p_ht], [self.p_th, self.p_tt]])

    def marginal(self, player: int) -> np.ndarray:
        """Outcome probabilities (H, T) of coin ``player`` (0 or 1)."""
        return self.matrix.sum(axis=1 - player)

    @property
    def disagreement(self) -> float:
        return self.p_ht + self.p_th

    def as_dict(self, labels1=OUTCOMES, labels2=OUTCOMES) -> dict:
        m = self.matrix
        return {(labels1[i], labels2[j]): float(m[i, j]) for i in range(2) for j in range(2)}


def apply_pair(xi: TwoQubitState, u: SpecialUnitary, v: SpecialUnitary) -> TwoQubitState:
    """State after player one applies ``u`` to coin one and player two ``v`` to coin two."""
    return TwoQubitState.from_coefficients(u.matrix @ xi.coefficients @ v.matrix.T)


def outcome_distribution(xi: TwoQubitState, m1: PlayerMove, m2: PlayerMove) -> JointOutcomeDistribution:
    """Distribution over (s1, s2) induced by a pair of moves in environment ``xi``."""
    c = xi.coefficients
    out = np.zeros((2, 2))
    if isinstance(m1, SpecialUnitary) and isinstance(m2, SpecialUnitary):
        out = np.abs(m1.matrix @ c @ m2.matrix.T) ** 2
    elif isinstance(m1, SpecialUnitary):
        rows = (np.abs(m1.matrix @ c) ** 2).sum(axis=1)
        out[:, m2.index] = rows
    elif isinstance(m2, SpecialUnitary):
        cols = (np.abs(c @ m2.matrix.T) ** 2).sum(axis=0)
        out[m1.index, :] = cols
    else:
        out[m1.index, m2.index] = 1.0
    return JointOutcomeDistribution.from_matrix(out / out.sum())


def is_classical(xi: TwoQubitState) -> bool:
    """True when the state is a product state, so classical coins can mimic it."""
    return abs(xi.hh * xi.tt - xi.ht * xi.th) <= CLASSICAL_TOL


def random_state(rng: np.random.Generator) -> TwoQubitState:
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return TwoQubitState(*z)


# Vectorized helpers for searches over many moves at once.  Arrays of SU(2)
# matrices have shape (..., 2, 2).

def su2_array(p, q) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    q = np.asarray(q, dtype=complex)
    out = np.empty(np.broadcast(p, q).shape + (2, 2), dtype=complex)
    out[..., 0, 0] = p
    out[..., 0, 1] = q
    out[..., 1, 0] = -np.conj(q)
    out[..., 1, 1] = np.conj(p)
    return out


def su2_from_angles(t, a, b) -> np.ndarray:
    """Batch of SU(2) matrices with ``p = e^{ia} cos t`` and ``q = e^{ib} sin t``."""
    t, a, b = np.broadcast_arrays(*map(np.asarray, (t, a, b)))
    return su2_array(np.exp(1j * a) * np.cos(t), np.exp(1j * b) * np.sin(t))


def rotation_array(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    return su2_array(np.cos(theta), np.sin(theta))


def batched_outcome(c: np.ndarray, m1, m2) -> np.ndarray:
    """Outcome probability matrices for batches of moves.

    ``m1`` and ``m2`` are either arrays of SU(2) matrices (broadcastable
    against each other) or :class:`Pure` moves.  Returns shape (..., 2, 2).
    """
    u_batch = not isinstance(m1, Pure)
    v_batch = not isinstance(m2, Pure)
    if u_batch and v_batch:
        amp = np.asarray(m1) @ c @ np.swapaxes(np.asarray(m2), -1, -2)
        probs = np.abs(amp) ** 2
    elif u_batch:
        rows = (np.abs(np.asarray(m1) @ c) ** 2).sum(axis=-1)
        probs = np.zeros(rows.shape + (2,))
        probs[..., m2.index] = rows
    elif v_batch:
        cols = (np.abs(c @ np.swapaxes(np.asarray(m2), -1, -2)) ** 2).sum(axis=-2)
        probs = np.zeros(cols.shape[:-1] + (2, 2))
        probs[..., m1.index, :] = cols
    else:
        probs = np.zeros((2, 2))
        probs[m1.index, m2.index] = 1.0
    return probs / probs.sum(axis=(-2, -1), keepdims=True)
