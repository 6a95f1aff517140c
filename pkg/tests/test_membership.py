"""Tests for the exact simplex and local-polytope membership."""
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from nonlocality.processing.behavior import (
    Behavior,
    DeterministicStrategy,
    Scenario,
    behavior_from_quantum,
    enumerate_deterministic,
    local_membership,
    mixture_behavior,
    strategy_behavior,
    total_variation,
)
from nonlocality.processing.behavior.simplex import find_feasible_point
from nonlocality.processing.catalog import chsh_quantum_behavior, hardy_behavior, hardy_exact_behavior
from nonlocality.quantum.kernel import bloch_measurement, state_from_amplitudes, tensor_state

F = Fraction


def test_simplex_finds_a_feasible_point():
    A = [[F(1), F(1), F(0)], [F(0), F(1), F(1)]]
    b = [F(1, 2), F(1, 2)]
    result = find_feasible_point(A, b)
    assert result.feasible
    w = result.solution
    assert all(v >= 0 for v in w)
    assert w[0] + w[1] == F(1, 2) and w[1] + w[2] == F(1, 2)


def test_simplex_detects_infeasibility():
    # w0 = 1 and w0 = 2 cannot both hold.
    result = find_feasible_point([[F(1)], [F(1)]], [F(1), F(2)])
    assert not result.feasible
    assert result.residual > 0


def test_simplex_with_no_columns():
    assert not find_feasible_point([[]], [F(1)]).feasible
    assert find_feasible_point([[]], [F(0)]).feasible


def test_deterministic_behavior_gets_weight_one():
    s = Scenario(2, 2, 2, 2)
    d = DeterministicStrategy((1, 0), (0, 1))
    result = local_membership(strategy_behavior(s, d))
    assert result.feasible and result.exact
    assert result.weights == ((d, F(1)),)


def _random_mixture(rng, s, strategies, k):
    picked = rng.sample(strategies, k)
    raw = [rng.randint(1, 20) for _ in picked]
    return mixture_behavior(s, [(F(w, sum(raw)), d) for w, d in zip(raw, picked)])


@pytest.mark.parametrize("shape", [(2, 2, 2, 2), (2, 3, 2, 2), (3, 2, 2, 3)])
def test_random_mixtures_round_trip(shape):
    rng = random.Random(sum(shape))
    s = Scenario(*shape)
    strategies = list(enumerate_deterministic(s))
    trials = 200 if shape == (2, 2, 2, 2) else 40
    for _ in range(trials):
        b = _random_mixture(rng, s, strategies, rng.randint(1, 5))
        result = local_membership(b)
        assert result.feasible, result.witness
        assert all(w > 0 for _, w in result.weights)
        assert sum((w for _, w in result.weights), F(0)) == 1
        rebuilt = result.reconstruct(b)
        assert np.array_equal(rebuilt.table, b.table)


def test_hardy_is_not_local():
    for b in (hardy_exact_behavior(), hardy_behavior()):
        result = local_membership(b)
        assert not result.feasible
        assert result.verdict.startswith("infeasible")


def test_chsh_quantum_behavior_is_not_local():
    result = local_membership(chsh_quantum_behavior())
    assert not result.feasible
    assert not result.exact
    assert result.verdict == "infeasible (numerical)"


def test_uniform_noise_is_local():
    s = Scenario(2, 2, 2, 2)
    table = np.empty(s.shape, dtype=object)
    table.fill(F(1, 4))
    result = local_membership(Behavior(s, table))
    assert result.feasible
    assert result.strategies_considered == 16


def test_reconstruct_refuses_infeasible():
    b = hardy_exact_behavior()
    with pytest.raises(ValueError):
        local_membership(b).reconstruct(b)


def test_numerical_local_behavior_is_accepted_within_tolerance():
    psi = tensor_state(
        state_from_amplitudes((2,), [math.cos(0.4), math.sin(0.4)]),
        state_from_amplitudes((2,), [math.cos(1.1), math.sin(1.1)]),
    )
    meas = [bloch_measurement(0.0, 0.0, 1.0), bloch_measurement(1.0, 0.0, 0.0)]
    b = behavior_from_quantum(psi, meas, meas)
    result = local_membership(b)
    assert result.feasible
    assert not result.exact
    assert sum((w for _, w in result.weights), F(0)) == 1
    assert total_variation(result.reconstruct(b), b) < 1e-9
