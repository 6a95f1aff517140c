"""Local-polytope membership by exact linear feasibility over deterministic strategies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from nonlocality.core.config import load_tolerances
from nonlocality.core.logging import get_logger
from nonlocality.processing.behavior.simplex import find_feasible_point
from nonlocality.processing.behavior.strategies import filter_by_support
from nonlocality.processing.behavior.tables import (
    Behavior,
    DeterministicStrategy,
    mixture_behavior,
    total_variation,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class MembershipResult:
    feasible: bool
    exact: bool
    weights: tuple[tuple[DeterministicStrategy, Fraction], ...]
    residual: Fraction
    strategies_considered: int
    witness: str

    @property
    def verdict(self) -> str:
        kind = "exact" if self.exact else "numerical"
        return f"{'feasible' if self.feasible else 'infeasible'} ({kind})"

    def reconstruct(self, b: Behavior) -> Behavior:
        if not self.feasible:
            raise ValueError("Infeasible membership result has no local model to reconstruct")
        return mixture_behavior(b.scenario, [(w, d) for d, w in self.weights])


def _binary_table(b: Behavior, eps_zero: float) -> np.ndarray:
    """Exact binary value of every float entry; entries <= eps_zero are zero."""
    values = b.as_float()
    table = np.empty(values.shape, dtype=object)
    for idx, v in np.ndenumerate(values):
        table[idx] = Fraction(0) if v <= eps_zero else Fraction(float(v))
    return table


def local_membership(b: Behavior, eps_zero: Optional[float] = None) -> MembershipResult:
    """
    Decide whether b is a convex combination of deterministic-strategy behaviors.

    Only strategies that stay inside b's support can carry weight, so the
    variables are restricted to them and one equality is written per support
    point. Exact tables must be matched exactly. Numerical tables are solved
    on the exact binary value of their entries and are accepted when the
    phase-1 residual is at most eps_lp; the verdict is then marked numerical.
    """
    s = b.scenario
    s.check_enumerable()
    tol = load_tolerances()
    exact = b.is_exact
    table = b.table if exact else _binary_table(b, tol.eps_support if eps_zero is None else eps_zero)
    possible = np.vectorize(lambda v: v > 0, otypes=[bool])(table)

    flt = filter_by_support(s, possible)
    points = [tuple(int(i) for i in idx) for idx in np.argwhere(possible)]
    columns = flt.respecting
    A = [
        [Fraction(1) if (d.map_a[x] == a and d.map_b[y] == bb) else Fraction(0) for d in columns]
        for (x, y, a, bb) in points
    ]
    rhs = [table[p] for p in points]
    result = find_feasible_point(A, rhs)

    feasible = result.feasible or (not exact and bool(columns) and result.residual <= tol.eps_lp)
    weights = tuple((d, w) for d, w in zip(columns, result.solution) if w != 0)
    if feasible and not exact:
        # Float rows need not sum to exactly 1, so neither do the weights.
        total = sum((w for _, w in weights), Fraction(0))
        weights = tuple((d, w / total) for d, w in weights)

    if feasible:
        witness = f"local model with {len(weights)} deterministic strategies"
        if not exact:
            err = total_variation(mixture_behavior(s, [(w, d) for d, w in weights]), b)
            if err > tol.eps_lp:
                logger.warning("Local model matches the table only up to rounding", extra={"tv": err})
    elif not columns:
        witness = "no deterministic strategy stays within the support"
    else:
        witness = (
            f"phase-1 residual {float(result.residual):.6g} > 0 over {len(columns)} support-respecting strategies"
        )

    logger.debug(
        "Local membership decided",
        extra={
            "feasible": feasible,
            "exact": exact,
            "columns": len(columns),
            "residual": float(result.residual),
            "pivots": result.pivots,
        },
    )
    return MembershipResult(feasible, exact, weights, result.residual, len(columns), witness)
