"""
Decision procedures for the three forms of local-hidden-variable no-go theorems.

  - Bell theorem: the behavior is outside the local polytope.
  - Bell theorem without inequalities (possibilistic): no LHV model both stays
    inside the quantum support and produces every quantum-possible outcome.
  - Pseudo-telepathy: no deterministic strategy stays inside the support.

Each level implies the next one down; classify() enforces that on its output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from nonlocality.core.logging import get_logger
from nonlocality.processing.behavior.membership import local_membership
from nonlocality.processing.behavior.strategies import filter_by_support
from nonlocality.processing.behavior.tables import Behavior, DeterministicStrategy, SupportTable, support_of

logger = get_logger(__name__)

EMPTY_SET_WITNESS = "no deterministic strategy avoids every forbidden outcome"


@dataclass(frozen=True, eq=False)
class StrategyFilterResult:
    respecting: frozenset[DeterministicStrategy]
    coverage: np.ndarray

    @property
    def is_empty(self) -> bool:
        return not self.respecting


@dataclass(frozen=True)
class Decision:
    holds: bool
    witness: str
    point: Optional[tuple[int, int, int, int]] = None
    point_names: Optional[tuple[str, str, str, str]] = None


@dataclass(frozen=True)
class NoGoVerdict:
    violates_locality: bool
    btwi: bool
    pt: bool
    witness: str
    point: Optional[tuple[int, int, int, int]] = None
    point_names: Optional[tuple[str, str, str, str]] = None
    membership_exact: bool = True

    def __post_init__(self) -> None:
        if self.pt and not self.btwi:
            raise AssertionError("pseudo-telepathy without a Bell theorem without inequalities")
        if self.btwi and not self.violates_locality:
            raise AssertionError("Bell theorem without inequalities that a local model reproduces")


def support_respecting_strategies(s: SupportTable) -> StrategyFilterResult:
    flt = filter_by_support(s.scenario, s.possible)
    coverage = flt.coverage.copy()
    coverage.setflags(write=False)
    return StrategyFilterResult(frozenset(flt.respecting), coverage)


def is_pseudotelepathic(s: SupportTable) -> Decision:
    flt = support_respecting_strategies(s)
    if flt.is_empty:
        return Decision(True, EMPTY_SET_WITNESS)
    return Decision(False, f"{len(flt.respecting)} deterministic strategies respect the support")


def is_btwi(s: SupportTable) -> Decision:
    flt = support_respecting_strategies(s)
    if flt.is_empty:
        return Decision(True, EMPTY_SET_WITNESS)
    uncovered = np.argwhere(s.possible & ~flt.coverage)
    if uncovered.size == 0:
        return Decision(False, "every possible outcome is produced by some support-respecting strategy")
    # argwhere is row-major, i.e. lexicographic in (x, y, a, b).
    point = tuple(int(v) for v in uncovered[0])
    names = s.scenario.describe_point(*point)
    return Decision(
        True,
        f"outcome ({names[2]}, {names[3]}) on settings ({names[0]}, {names[1]}) is possible "
        "but no support-respecting local strategy produces it",
        point,  # type: ignore[arg-type]
        names,
    )


def classify(b: Behavior, eps_support: Optional[float] = None) -> NoGoVerdict:
    support = support_of(b, eps_support)
    pt = is_pseudotelepathic(support)
    btwi = is_btwi(support)
    # Same zero threshold as the support so the two procedures see one table.
    membership = local_membership(b, eps_zero=eps_support)
    # BTWI on the thresholded support already rules out a local model.
    violates = btwi.holds or not membership.feasible

    if btwi.holds:
        witness, point, names = btwi.witness, btwi.point, btwi.point_names
    else:
        witness, point, names = membership.witness, None, None

    verdict = NoGoVerdict(violates, btwi.holds, pt.holds, witness, point, names, membership.exact)
    logger.info(
        "Behavior classified",
        extra={
            "violates_locality": verdict.violates_locality,
            "btwi": verdict.btwi,
            "pt": verdict.pt,
            "witness": verdict.witness,
            "witness_point": verdict.point_names,
            "membership_exact": verdict.membership_exact,
        },
    )
    return verdict
