"""
Exact phase-1 simplex on Fractions.

Decides feasibility of  A w = b,  w >= 0  (with b >= 0) by minimising the total
mass of one artificial variable per row. Bland's rule keeps it from cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    solution: tuple[Fraction, ...]
    residual: Fraction
    pivots: int


class Phase1Tableau:
    def __init__(self, A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> None:
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        if any(len(row) != self.n for row in A):
            raise ValueError("Constraint rows have different lengths")
        if len(b) != self.m:
            raise ValueError("Right-hand side length does not match the number of rows")

        # Columns 0..n-1 are structural, n..n+m-1 artificial.
        self.rows: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        for i, (row, bi) in enumerate(zip(A, b)):
            bi = Fraction(bi)
            sign = -1 if bi < 0 else 1
            art = [Fraction(0)] * self.m
            art[i] = Fraction(1)
            self.rows.append([sign * Fraction(v) for v in row] + art)
            self.rhs.append(sign * bi)
        self.basis = [self.n + i for i in range(self.m)]

        # Reduced costs of "minimise sum of artificials".
        self.cost = [-sum((r[j] for r in self.rows), Fraction(0)) for j in range(self.n)] + [Fraction(0)] * self.m
        self.objective = sum(self.rhs, Fraction(0))
        self.pivots = 0

    def _pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        row = [v / piv for v in self.rows[i]]
        rhs_i = self.rhs[i] / piv
        self.rows[i], self.rhs[i] = row, rhs_i
        for k in range(self.m):
            f = self.rows[k][j]
            if k != i and f != 0:
                self.rows[k] = [v - f * w for v, w in zip(self.rows[k], row)]
                self.rhs[k] -= f * rhs_i
        f = self.cost[j]
        if f != 0:
            self.cost = [v - f * w for v, w in zip(self.cost, row)]
            self.objective += f * rhs_i
        self.basis[i] = j
        self.pivots += 1

    def _step(self) -> bool:
        entering = next((j for j in range(self.n + self.m) if self.cost[j] < 0), None)
        if entering is None:
            return False
        candidates = [
            (self.rhs[i] / self.rows[i][entering], self.basis[i], i)
            for i in range(self.m)
            if self.rows[i][entering] > 0
        ]
        # Phase 1 is bounded below by 0, so some row always qualifies.
        _, _, leave = min(candidates)
        self._pivot(leave, entering)
        return True

    def solve(self) -> FeasibilityResult:
        while self._step():
            pass
        solution = [Fraction(0)] * self.n
        for i, var in enumerate(self.basis):
            if var < self.n:
                solution[var] = self.rhs[i]
        return FeasibilityResult(self.objective == 0, tuple(solution), self.objective, self.pivots)


def find_feasible_point(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> FeasibilityResult:
    if not A:
        return FeasibilityResult(True, (), Fraction(0), 0)
    if not A[0]:
        residual = sum((abs(Fraction(v)) for v in b), Fraction(0))
        return FeasibilityResult(residual == 0, (), residual, 0)
    return Phase1Tableau(A, b).solve()
