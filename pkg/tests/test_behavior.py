"""Tests for behaviors, Bell expressions, deterministic strategies and LHV bounds."""
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from nonlocality.core.errors import EnumerationCapError, InvalidInputError
from nonlocality.processing.behavior import (
    BellExpression,
    Behavior,
    DeterministicStrategy,
    Scenario,
    chsh_expression,
    correlator,
    enumerate_deterministic,
    evaluate_expression,
    lhv_bound,
    mixture_behavior,
    rationalize_behavior,
    strategy_behavior,
    support_of,
    total_variation,
)
from nonlocality.processing.catalog import chsh_quantum_behavior, hardy_behavior
from nonlocality.processing.games import game_to_bell_expression, magic_square

CHSH_SCENARIO = Scenario(2, 2, 2, 2)


def test_scenario_rejects_zero_counts():
    with pytest.raises(InvalidInputError):
        Scenario(0, 2, 2, 2)


def test_scenario_names_must_match_counts():
    with pytest.raises(InvalidInputError):
        Scenario(2, 2, 2, 2, setting_names_a=("z",))


def test_behavior_rows_must_sum_to_one():
    table = np.full((2, 2, 2, 2), 0.3)
    with pytest.raises(InvalidInputError, match="sums to"):
        Behavior(CHSH_SCENARIO, table)


def test_behavior_rejects_negative_entries():
    table = np.full((2, 2, 2, 2), 0.25)
    table[0, 0, 0, 0] = -0.25
    table[0, 0, 0, 1] = 0.75
    with pytest.raises(InvalidInputError):
        Behavior(CHSH_SCENARIO, table)


def test_exact_behavior_checks_sums_exactly():
    table = np.empty((1, 1, 1, 2), dtype=object)
    table[0, 0, 0, 0] = Fraction(1, 3)
    table[0, 0, 0, 1] = Fraction(1, 3)
    with pytest.raises(InvalidInputError):
        Behavior(Scenario(1, 1, 1, 2), table)


@pytest.mark.parametrize("shape,count", [((2, 2, 2, 2), 16), ((3, 3, 4, 4), 4096), ((1, 1, 1, 1), 1)])
def test_enumerate_deterministic_counts(shape, count):
    strategies = list(enumerate_deterministic(Scenario(*shape)))
    assert len(strategies) == count
    assert len(set(strategies)) == count
    assert strategies == sorted(strategies)


def test_enumeration_cap_is_read_per_call(monkeypatch):
    monkeypatch.setenv("NONLOCALITY_ENUM_CAP", "100")
    with pytest.raises(EnumerationCapError):
        list(enumerate_deterministic(Scenario(3, 3, 4, 4)))
    monkeypatch.delenv("NONLOCALITY_ENUM_CAP")
    assert len(list(enumerate_deterministic(Scenario(3, 3, 4, 4)))) == 4096


def test_strategy_behavior_is_a_point_mass_per_row():
    d = DeterministicStrategy((0, 1), (1, 0))
    b = strategy_behavior(CHSH_SCENARIO, d)
    assert b.is_exact
    assert b.prob(1, 0, 1, 1) == 1
    assert b.prob(1, 0, 0, 0) == 0
    assert correlator(b, 0, 0) == -1
    assert correlator(b, 1, 0) == 1


def test_strategy_must_fit_scenario():
    with pytest.raises(InvalidInputError):
        strategy_behavior(CHSH_SCENARIO, DeterministicStrategy((0, 2), (0, 0)))


def test_correlator_needs_binary_outcomes():
    b = strategy_behavior(Scenario(1, 1, 3, 2), DeterministicStrategy((2,), (0,)))
    with pytest.raises(InvalidInputError):
        correlator(b, 0, 0)


def test_chsh_lhv_bound_is_two():
    bound = lhv_bound(chsh_expression())
    assert bound.value == 2
    assert bound.strategy == DeterministicStrategy((0, 0), (0, 0))
    assert bound.strategies_checked == 16


def test_float_coefficients_are_rationalized_for_the_bound():
    exact = chsh_expression()
    e = BellExpression(CHSH_SCENARIO, exact.coeffs.astype(float) / 3, "CHSH / 3")
    assert not e.is_exact
    assert lhv_bound(e).value == Fraction(2, 3)
    assert all(isinstance(c, Fraction) for c in e.exact_coeffs().flat)


def test_chsh_quantum_value_is_two_sqrt_two():
    value = evaluate_expression(chsh_expression(), chsh_quantum_behavior())
    assert abs(value - 2 * math.sqrt(2)) < 1e-9


def test_chsh_quantum_correlators():
    qb = chsh_quantum_behavior()
    r = 1 / math.sqrt(2)
    assert correlator(qb, 0, 0) == pytest.approx(r, abs=1e-12)
    assert correlator(qb, 0, 1) == pytest.approx(r, abs=1e-12)
    assert correlator(qb, 1, 0) == pytest.approx(r, abs=1e-12)
    assert correlator(qb, 1, 1) == pytest.approx(-r, abs=1e-12)


def test_zero_expression_bound_is_zero():
    e = BellExpression(CHSH_SCENARIO, np.zeros((2, 2, 2, 2)))
    bound = lhv_bound(e)
    assert bound.value == 0
    assert bound.strategy == DeterministicStrategy((0, 0), (0, 0))


def test_magic_square_expression_bound():
    assert lhv_bound(game_to_bell_expression(magic_square())).value == Fraction(8, 9)


def test_lhv_bound_matches_brute_force():
    rng = random.Random(11)
    for shape in [(2, 2, 2, 2), (2, 3, 2, 3), (3, 2, 3, 2)]:
        s = Scenario(*shape)
        coeffs = np.empty(shape, dtype=object)
        for idx in np.ndindex(*shape):
            coeffs[idx] = Fraction(rng.randint(-5, 5))
        e = BellExpression(s, coeffs)
        brute = max(evaluate_expression(e, strategy_behavior(s, d)) for d in enumerate_deterministic(s))
        assert lhv_bound(e).value == brute


def test_lhv_bound_dominates_every_local_mixture():
    rng = random.Random(5)
    e = chsh_expression()
    strategies = list(enumerate_deterministic(CHSH_SCENARIO))
    for _ in range(50):
        picked = rng.sample(strategies, 3)
        raw = [rng.randint(1, 9) for _ in picked]
        weights = [Fraction(w, sum(raw)) for w in raw]
        b = mixture_behavior(CHSH_SCENARIO, list(zip(weights, picked)))
        assert evaluate_expression(e, b) <= 2


def test_evaluate_rejects_scenario_mismatch():
    b = strategy_behavior(Scenario(1, 1, 2, 2), DeterministicStrategy((0,), (0,)))
    with pytest.raises(InvalidInputError):
        evaluate_expression(chsh_expression(), b)


def test_support_of_hardy_has_three_zeros():
    support = support_of(hardy_behavior())
    assert int((~support.possible).sum()) == 3
    assert not support.possible[0, 0, 0, 0]
    assert not support.possible[0, 1, 1, 1]
    assert not support.possible[1, 0, 1, 1]


def test_support_of_rejects_bad_eps():
    with pytest.raises(InvalidInputError):
        support_of(chsh_quantum_behavior(), eps_support=0)
    with pytest.raises(InvalidInputError, match="too large"):
        support_of(chsh_quantum_behavior(), eps_support=0.9)


def test_rationalize_keeps_rows_exact_and_close():
    qb = chsh_quantum_behavior()
    exact = rationalize_behavior(qb)
    assert exact.is_exact
    for x in range(2):
        for y in range(2):
            assert sum(exact.table[x, y].flat, Fraction(0)) == 1
    assert total_variation(exact, qb) < 1e-6
