"""Dense two-phase simplex over exact rationals.

Small linear programs (correlated-equilibrium polytopes of games with a
handful of strategies) are solved exactly with :class:`fractions.Fraction`
so that reported optima carry no rounding.  Bland's rule is used for both
the entering and the leaving variable, which rules out cycling on the
highly degenerate obedience constraints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence


class LPError(RuntimeError):
    """Raised when a linear program is infeasible or unbounded."""


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Optional[Fraction]
    x: Optional[list]


def is_rational(v) -> bool:
    return isinstance(v, (Rational, Fraction)) and not isinstance(v, bool)


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError(f"exact simplex needs rational input, got float {v!r}")
    return Fraction(v)


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != 1:
            self.rows[r] = row = [a / piv for a in row]
            self.rhs[r] /= piv
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            f = other[j]
            if f:
                self.rows[k] = [a - f * b for a, b in zip(other, row)]
                self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = j

    def reduced_costs(self, cost, allowed):
        # cost is maximized; returns c_j - c_B B^-1 A_j for allowed columns
        cb = [cost[b] for b in self.basis]
        out = {}
        for j in allowed:
            z = sum((cb[i] * self.rows[i][j] for i in range(len(self.rows)) if cb[i]), Fraction(0))
            out[j] = cost[j] - z
        return out

    def run(self, cost, allowed) -> str:
        while True:
            red = self.reduced_costs(cost, allowed)
            entering = next((j for j in sorted(red) if red[j] > 0), None)
            if entering is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)


def solve_lp(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    All data must be rational (int or Fraction); the solution is exact.
    """
    n = len(c)
    cost = [_frac(v) for v in c]
    cons = [([_frac(a) for a in row], _frac(b), "ub") for row, b in zip(A_ub, b_ub)]
    cons += [([_frac(a) for a in row], _frac(b), "eq") for row, b in zip(A_eq, b_eq)]
    for row, _, _ in cons:
        if len(row) != n:
            raise ValueError(f"constraint row has {len(row)} entries, expected {n}")

    m = len(cons)
    n_slack = sum(1 for _, _, kind in cons if kind == "ub")
    # columns: originals | slacks | artificials
    width = n + n_slack + m
    rows, rhs, basis, artificial = [], [], [], []
    slack_col = n
    for i, (coeffs, b, kind) in enumerate(cons):
        row = coeffs + [Fraction(0)] * (width - n)
        own_slack = None
        if kind == "ub":
            row[slack_col] = Fraction(1)
            own_slack = slack_col
            slack_col += 1
        if b < 0:
            row = [-a for a in row]
            b = -b
        if own_slack is not None and row[own_slack] == 1:
            basis.append(own_slack)
        else:
            art = n + n_slack + i
            row[art] = Fraction(1)
            basis.append(art)
            artificial.append(art)
        rows.append(row)
        rhs.append(b)

    tab = _Tableau(rows, rhs, basis)
    art_set = set(artificial)
    real_cols = [j for j in range(width) if j < n + n_slack]

    if artificial:
        phase1 = [Fraction(0)] * width
        for j in artificial:
            phase1[j] = Fraction(-1)
        tab.run(phase1, real_cols + artificial)
        infeasibility = sum((tab.rhs[i] for i, b in enumerate(tab.basis) if b in art_set), Fraction(0))
        if infeasibility > 0:
            return LPResult("infeasible", None, None)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] in art_set:
                j = next((j for j in real_cols if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1

    full_cost = cost + [Fraction(0)] * (width - n)
    status = tab.run(full_cost, real_cols)
    if status == "unbounded":
        return LPResult("unbounded", None, None)
    x = [Fraction(0)] * n
    for i, b in enumerate(tab.basis):
        if b < n:
            x[b] = tab.rhs[i]
    value = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    return LPResult("optimal", value, x)
