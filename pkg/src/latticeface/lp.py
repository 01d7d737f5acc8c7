"""Two-phase tableau simplex over the rationals.

Bland's rule everywhere, so cycling cannot happen and no tolerance is
needed.  Problems are in equality form: maximize c.x subject to
A x = b, x >= 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class UnboundedError(ArithmeticError):
    pass


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows  # list of lists of Fraction
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            row[:] = [x / p for x in row]
            self.rhs[r] /= p
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                other[:] = [x - f * y for x, y in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def optimize(self, cost, allowed):
        """Maximize cost.x over the current basic feasible solution."""
        while True:
            reduced = self._reduced_costs(cost)
            entering = next((j for j in allowed if reduced[j] > 0), None)
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = self.rhs[i] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise UnboundedError("objective is unbounded")
            self.pivot(best[1], entering)

    def _reduced_costs(self, cost):
        n = len(cost)
        out = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb != 0:
                row = self.rows[i]
                for j in range(n):
                    if row[j] != 0:
                        out[j] -= cb * row[j]
        return out

    def value(self, cost):
        return sum((cost[b] * self.rhs[i] for i, b in enumerate(self.basis)), Fraction(0))

    def solution(self, n):
        x = [Fraction(0)] * n
        for i, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[i]
        return tuple(x)


def maximize(c: Sequence, a_eq: Sequence[Sequence], b_eq: Sequence):
    """Return ``(value, x)`` of an optimal solution, or ``None`` if infeasible.

    Raises :class:`UnboundedError` when the objective is unbounded above.
    """
    n = len(c)
    m = len(a_eq)
    rows = []
    rhs = []
    for k, (row, b) in enumerate(zip(a_eq, b_eq)):
        row = [Fraction(x) for x in row]
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row + [Fraction(int(i == k)) for i in range(m)])
        rhs.append(b)
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    tab.optimize(phase1, range(n + m))
    if tab.value(phase1) != 0:
        return None

    # Drive zero-level artificials out of the basis, dropping redundant rows.
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    cost = [Fraction(x) for x in c] + [Fraction(0)] * m
    tab.optimize(cost, range(n))
    return tab.value(cost), tab.solution(n)


def feasible_point(a_eq: Sequence[Sequence], b_eq: Sequence):
    """Some x >= 0 with A x = b, or ``None``."""
    n = len(a_eq[0]) if a_eq else 0
    result = maximize([0] * n, a_eq, b_eq)
    return None if result is None else result[1]
