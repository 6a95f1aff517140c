"""
Canonical CHSH and Hardy setups.

CHSH settings on the singlet (Bloch directions, singlet correlator E = -a.b):
    A1 = z, A2 = x, B1 = -(z + x)/sqrt(2), B2 = (x - z)/sqrt(2)
give E = +1/sqrt(2) on three pairs and -1/sqrt(2) on (A2, B2), i.e. 2*sqrt(2).

Hardy settings: index 0 is sigma_z, index 1 is sigma_x on both sides.
"""

from __future__ import annotations

import math

import numpy as np

from nonlocality.processing.behavior.tables import Behavior, behavior_from_quantum, rationalize_behavior
from nonlocality.quantum.kernel import (
    KET_MINUS,
    KET_PLUS,
    ProjectiveMeasurement,
    StateVector,
    bloch_measurement,
    state_from_amplitudes,
)

_R = 1 / math.sqrt(2)

CHSH_DIRECTIONS_A = ((0.0, 0.0, 1.0), (1.0, 0.0, 0.0))
CHSH_DIRECTIONS_B = ((-_R, 0.0, -_R), (_R, 0.0, -_R))

HARDY_SETTINGS = ("z", "x")


def singlet() -> StateVector:
    """(|+-> - |-+>)/sqrt(2)."""
    return state_from_amplitudes((2, 2), _R * (np.kron(KET_PLUS, KET_MINUS) - np.kron(KET_MINUS, KET_PLUS)))


def chsh_measurements() -> tuple[list[ProjectiveMeasurement], list[ProjectiveMeasurement]]:
    return (
        [bloch_measurement(*n) for n in CHSH_DIRECTIONS_A],
        [bloch_measurement(*n) for n in CHSH_DIRECTIONS_B],
    )


def chsh_quantum_behavior() -> Behavior:
    meas_a, meas_b = chsh_measurements()
    return behavior_from_quantum(singlet(), meas_a, meas_b, setting_names=(("A1", "A2"), ("B1", "B2")))


def hardy_state() -> StateVector:
    """(|--> + |-+> + |+->)/sqrt(3) along z."""
    kets = np.kron(KET_MINUS, KET_MINUS) + np.kron(KET_MINUS, KET_PLUS) + np.kron(KET_PLUS, KET_MINUS)
    return state_from_amplitudes((2, 2), kets / math.sqrt(3))


def hardy_measurements() -> list[ProjectiveMeasurement]:
    return [bloch_measurement(0.0, 0.0, 1.0), bloch_measurement(1.0, 0.0, 0.0)]


def hardy_behavior() -> Behavior:
    meas = hardy_measurements()
    return behavior_from_quantum(hardy_state(), meas, meas, setting_names=(HARDY_SETTINGS, HARDY_SETTINGS))


def hardy_exact_behavior() -> Behavior:
    """Hardy table in exact rationals (1/12, 1/6, 2/3, 3/4, 1/3, 0)."""
    return rationalize_behavior(hardy_behavior())
