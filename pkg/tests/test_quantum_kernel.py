"""Tests for the Born-rule kernel: states, measurements, expectations."""
import math
import random

import numpy as np
import pytest

from nonlocality.core.errors import InvalidInputError
from nonlocality.processing.catalog import singlet
from nonlocality.quantum.kernel import (
    IDENTITY,
    KET_MINUS,
    KET_PLUS,
    SIGMA_X,
    SIGMA_Z,
    Operator,
    ProjectiveMeasurement,
    basis_state,
    bloch_measurement,
    bloch_observable,
    commuting_measurement,
    expectation,
    expectation_from_measurements,
    outcome_probability,
    state_from_amplitudes,
    tensor_op,
    tensor_state,
)


def test_state_must_be_normalized():
    with pytest.raises(InvalidInputError):
        state_from_amplitudes((2,), [1.0, 1.0])


def test_state_length_must_match_dims():
    with pytest.raises(InvalidInputError):
        state_from_amplitudes((2, 2), [1.0, 0.0, 0.0])


def test_state_rejects_nan():
    with pytest.raises(InvalidInputError):
        state_from_amplitudes((2,), [float("nan"), 0.0])


def test_dimension_cap():
    with pytest.raises(InvalidInputError):
        tensor_state(basis_state((9,), 0), basis_state((10,), 0))


def test_operator_must_be_hermitian():
    with pytest.raises(InvalidInputError):
        Operator(np.array([[0, 1], [0, 0]]))


def test_projectors_must_sum_to_identity():
    p = np.array([[1, 0], [0, 0]])
    with pytest.raises(InvalidInputError):
        ProjectiveMeasurement((Operator(p), Operator(p)), ("a", "b"))


def test_unknown_label_rejected():
    m = bloch_measurement(0.0, 0.0, 1.0)
    with pytest.raises(InvalidInputError):
        m.projector("+")


def test_bloch_direction_must_be_unit():
    with pytest.raises(InvalidInputError):
        bloch_observable(1.0, 1.0, 0.0)


def test_born_probabilities_sum_to_one():
    psi = singlet()
    ma = bloch_measurement(0.0, 0.0, 1.0)
    mb = bloch_measurement(1 / math.sqrt(2), 0.0, 1 / math.sqrt(2))
    total = sum(outcome_probability(psi, (ma, mb), (a, b)) for a in (1, -1) for b in (1, -1))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_singlet_correlator_is_minus_dot_product():
    psi = singlet()
    theta = 0.7
    a = bloch_observable(0.0, 0.0, 1.0)
    b = bloch_observable(math.sin(theta), 0.0, math.cos(theta))
    assert expectation(psi, (a, b)) == pytest.approx(-math.cos(theta), abs=1e-12)


def test_expectation_matches_measurement_sum():
    psi = singlet()
    ma = bloch_measurement(1.0, 0.0, 0.0)
    mb = bloch_measurement(0.0, 1.0, 0.0)
    direct = expectation(psi, (bloch_observable(1.0, 0.0, 0.0), bloch_observable(0.0, 1.0, 0.0)))
    assert expectation_from_measurements(psi, (ma, mb)) == pytest.approx(direct, abs=1e-12)


def test_tensor_op_party_a_is_slow_index():
    op = tensor_op(Operator(SIGMA_Z), Operator(np.eye(2)))
    # |-+> is index 2 when A is the slow index.
    psi = basis_state((2, 2), 2)
    assert expectation(psi, (Operator(SIGMA_Z), Operator(np.eye(2)))) == pytest.approx(-1.0)
    assert float(np.vdot(psi.amplitudes, op.matrix @ psi.amplitudes).real) == pytest.approx(-1.0)


def test_commuting_measurement_bit_labels_and_zero_projectors():
    m = commuting_measurement([SIGMA_Z, SIGMA_Z])
    assert m.labels == ("00", "01", "10", "11")
    assert np.allclose(m.projector("01"), 0)
    assert np.allclose(m.projector("00"), np.diag([1, 0]))


def test_commuting_measurement_rejects_noncommuting():
    with pytest.raises(InvalidInputError):
        commuting_measurement([SIGMA_X, SIGMA_Z])


def test_measurement_on_wrong_dims_rejected():
    psi = singlet()
    m = bloch_measurement(0.0, 0.0, 1.0)
    with pytest.raises(InvalidInputError):
        outcome_probability(psi, (m,), (1,))


def _random_state(rng, dim):
    amps = np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim)])
    return state_from_amplitudes((dim,), amps / np.linalg.norm(amps))


def _random_direction(rng):
    n = np.array([rng.gauss(0, 1) for _ in range(3)])
    return tuple(n / np.linalg.norm(n))


def _random_hermitian(rng, dim):
    m = np.array([[complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim)] for _ in range(dim)])
    return Operator(m + m.conj().T)


def test_plus_minus_product_is_basis_index_one():
    psi = tensor_state(state_from_amplitudes((2,), KET_PLUS), state_from_amplitudes((2,), KET_MINUS))
    assert psi.dims == (2, 2)
    assert np.allclose(psi.amplitudes, [0, 1, 0, 0])


def test_sigma_z_on_a_is_diagonal():
    op = tensor_op(Operator(SIGMA_Z), Operator(IDENTITY))
    assert np.allclose(op.matrix, np.diag([1, 1, -1, -1]))


def test_singlet_xx_correlator():
    assert expectation(singlet(), (Operator(SIGMA_X), Operator(SIGMA_X))) == pytest.approx(-1.0, abs=1e-12)
    assert expectation(singlet(), (Operator(SIGMA_Z), Operator(SIGMA_Z))) == pytest.approx(-1.0, abs=1e-12)


def test_tensor_product_of_states_is_normalized():
    rng = random.Random(3)
    for _ in range(50):
        psi = tensor_state(_random_state(rng, rng.randint(1, 3)), _random_state(rng, rng.randint(1, 3)))
        assert float(np.linalg.norm(psi.amplitudes)) == pytest.approx(1.0, abs=1e-12)


def test_tensor_products_are_associative():
    rng = random.Random(17)
    for _ in range(20):
        a, b, c = (_random_state(rng, rng.randint(1, 3)) for _ in range(3))
        left = tensor_state(tensor_state(a, b), c)
        right = tensor_state(a, tensor_state(b, c))
        assert left.dims == right.dims
        assert np.allclose(left.amplitudes, right.amplitudes, atol=1e-12)
        x, y, z = (_random_hermitian(rng, 2) for _ in range(3))
        assert np.allclose(tensor_op(tensor_op(x, y), z).matrix, tensor_op(x, tensor_op(y, z)).matrix, atol=1e-12)


def test_bloch_observable_has_plus_minus_one_spectrum():
    rng = random.Random(23)
    for _ in range(50):
        eig = np.linalg.eigvalsh(bloch_observable(*_random_direction(rng)).matrix)
        assert np.allclose(eig, [-1.0, 1.0], atol=1e-9)


def test_born_probabilities_are_a_distribution():
    rng = random.Random(29)
    for _ in range(50):
        psi = tensor_state(_random_state(rng, 2), _random_state(rng, 2))
        if rng.random() < 0.5:
            psi = singlet()
        ma = bloch_measurement(*_random_direction(rng))
        mb = bloch_measurement(*_random_direction(rng))
        probs = [outcome_probability(psi, (ma, mb), (a, b)) for a in (1, -1) for b in (1, -1)]
        assert min(probs) >= -1e-12
        assert sum(probs) == pytest.approx(1.0, abs=1e-12)
        assert expectation_from_measurements(psi, (ma, mb)) == pytest.approx(
            probs[0] - probs[1] - probs[2] + probs[3], abs=1e-12
        )


def test_expectation_rejects_observable_without_plus_minus_one_spectrum():
    with pytest.raises(InvalidInputError, match="spectrum"):
        expectation(singlet(), (Operator(2 * SIGMA_Z), Operator(IDENTITY)))
