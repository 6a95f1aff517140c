"""Tests for the seeded finite-sample Bell experiment."""
import math
import statistics

import numpy as np
import pytest

from nonlocality.core.errors import InvalidInputError
from nonlocality.processing.behavior import (
    DeterministicStrategy,
    Scenario,
    chsh_expression,
    estimate_expression,
    forbidden_events,
    simulate_rounds,
    strategy_behavior,
    support_of,
)
from nonlocality.processing.catalog import chsh_quantum_behavior, hardy_behavior


def _tv(sim, b):
    diff = np.abs(sim.frequencies - b.as_float())
    return float(0.5 * diff.sum(axis=(2, 3)).max())


def test_zero_rounds_rejected():
    with pytest.raises(InvalidInputError):
        simulate_rounds(chsh_quantum_behavior(), 0, seed=1)


def test_single_round_has_a_single_count():
    sim = simulate_rounds(chsh_quantum_behavior(), 1, seed=1)
    assert int(sim.counts.sum()) == 1
    assert sorted(sim.frequencies.reshape(-1).tolist())[-1] == 1.0
    assert float(sim.frequencies.sum()) == 1.0


def test_fixed_seed_is_bit_identical():
    b = chsh_quantum_behavior()
    first = simulate_rounds(b, 5000, seed=42)
    second = simulate_rounds(b, 5000, seed=42)
    assert np.array_equal(first.counts, second.counts)
    assert not np.array_equal(first.counts, simulate_rounds(b, 5000, seed=43).counts)


def test_chsh_estimate_within_three_standard_errors():
    sim = simulate_rounds(chsh_quantum_behavior(), 100_000, seed=7)
    value, se = estimate_expression(chsh_expression(), sim)
    assert se > 0
    assert abs(value - 2 * math.sqrt(2)) <= 3 * se
    assert value > 2


def test_deterministic_behavior_estimate_has_no_spread():
    s = Scenario(2, 2, 2, 2)
    b = strategy_behavior(s, DeterministicStrategy((0, 0), (0, 0)))
    value, se = estimate_expression(chsh_expression(), simulate_rounds(b, 1000, seed=3))
    assert value == pytest.approx(2.0)
    assert se == pytest.approx(0.0, abs=1e-12)


def test_empirical_behavior_needs_every_pair():
    sim = simulate_rounds(chsh_quantum_behavior(), 1, seed=1)
    with pytest.raises(InvalidInputError, match="never drawn"):
        sim.empirical_behavior()
    full = simulate_rounds(chsh_quantum_behavior(), 2000, seed=1).empirical_behavior()
    assert full.scenario == chsh_quantum_behavior().scenario


def test_total_variation_shrinks_with_rounds():
    b = chsh_quantum_behavior()
    medians = [
        statistics.median(_tv(simulate_rounds(b, rounds, seed), b) for seed in range(10))
        for rounds in (10**2, 10**4, 10**6)
    ]
    assert medians[0] > medians[1] > medians[2]


def test_input_distribution_is_respected():
    b = chsh_quantum_behavior()
    dist = np.array([[1.0, 0.0], [0.0, 0.0]])
    sim = simulate_rounds(b, 500, seed=2, input_dist=dist)
    assert int(sim.pair_counts[0, 0]) == 500
    with pytest.raises(InvalidInputError):
        simulate_rounds(b, 10, seed=2, input_dist=np.array([[0.5, 0.6], [0.0, 0.0]]))


def test_hardy_samples_never_hit_forbidden_outcomes():
    b = hardy_behavior()
    sim = simulate_rounds(b, 20_000, seed=9)
    assert forbidden_events(sim, support_of(b)) == 0
    # The LHV-forbidden event (x, x, -, -) shows up about once per 48 rounds.
    assert int(sim.counts[1, 1, 1, 1]) > 0
