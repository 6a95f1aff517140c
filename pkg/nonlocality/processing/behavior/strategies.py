"""
Deterministic strategies and exact local (LHV) bounds.

The local polytope's vertices are the deterministic strategies, so the maximum
of any linear Bell expression over all LHV models is attained on one of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from nonlocality.core.logging import get_logger
from nonlocality.processing.behavior.tables import BellExpression, DeterministicStrategy, Scenario

logger = get_logger(__name__)


def enumerate_deterministic(s: Scenario) -> Iterator[DeterministicStrategy]:
    """All strategies, lexicographic on (map_a, map_b)."""
    s.check_enumerable()
    maps_b = list(itertools.product(range(s.outputs_b), repeat=s.inputs_b))
    for map_a in itertools.product(range(s.outputs_a), repeat=s.inputs_a):
        for map_b in maps_b:
            yield DeterministicStrategy(map_a, map_b)


def alice_maps(s: Scenario) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(s.outputs_a), repeat=s.inputs_a)


def best_response_b(coeffs: np.ndarray, map_a: tuple[int, ...]) -> tuple[Fraction, tuple[int, ...]]:
    """
    Bob's optimal reply to a fixed Alice map.

    The objective separates over Bob's inputs, so each input independently takes
    the smallest output with the largest score.
    """
    inputs_a, inputs_b, _, outputs_b = coeffs.shape
    total = Fraction(0)
    reply = []
    for y in range(inputs_b):
        scores = [sum((coeffs[x, y, map_a[x], b] for x in range(inputs_a)), Fraction(0)) for b in range(outputs_b)]
        best = max(scores)
        reply.append(scores.index(best))
        total += best
    return total, tuple(reply)


@dataclass(frozen=True)
class LhvBound:
    value: Fraction
    strategy: DeterministicStrategy
    strategies_checked: int


def lhv_bound(e: BellExpression) -> LhvBound:
    """
    Exact max of the expression over every deterministic strategy.

    By convexity this is the max over all LHV models. Ties go to the
    lexicographically first (map_a, map_b).
    """
    s = e.scenario
    size = s.check_enumerable()
    coeffs = e.exact_coeffs()
    best_value: Fraction | None = None
    best: DeterministicStrategy | None = None
    for map_a in alice_maps(s):
        value, map_b = best_response_b(coeffs, map_a)
        if best_value is None or value > best_value:
            best_value, best = value, DeterministicStrategy(tuple(map_a), map_b)
    assert best is not None and best_value is not None
    logger.info(
        "LHV bound computed",
        extra={
            "expression": e.description,
            "bound": best_value,
            "strategy": best.describe(s),
            "strategies": size,
        },
    )
    return LhvBound(best_value, best, size)


@dataclass(frozen=True)
class SupportFilter:
    respecting: tuple[DeterministicStrategy, ...]
    coverage: np.ndarray


def filter_by_support(s: Scenario, possible: np.ndarray) -> SupportFilter:
    """
    Strategies whose every (x, y, map_a(x), map_b(y)) is a possible outcome.

    For a fixed Alice map the admissible Bob outputs factor per input, so the
    respecting set is a union of products and never needs the full enumeration.
    """
    s.check_enumerable()
    coverage = np.zeros(s.shape, dtype=bool)
    respecting: list[DeterministicStrategy] = []
    for map_a in alice_maps(s):
        allowed = [
            [b for b in range(s.outputs_b) if all(possible[x, y, map_a[x], b] for x in range(s.inputs_a))]
            for y in range(s.inputs_b)
        ]
        if not all(allowed):
            continue
        for x, y in itertools.product(range(s.inputs_a), range(s.inputs_b)):
            coverage[x, y, map_a[x], allowed[y]] = True
        respecting.extend(DeterministicStrategy(tuple(map_a), map_b) for map_b in itertools.product(*allowed))
    return SupportFilter(tuple(respecting), coverage)
