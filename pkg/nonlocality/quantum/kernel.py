"""
Dense complex linear algebra for Born-rule predictions on small entangled systems.

Conventions (fixed for the whole package):
  - |+> is the sigma_z eigenvector with eigenvalue +1 and is basis index 0, |-> is index 1.
    sigma_x eigenvectors are (|+> +/- |->)/sqrt(2) with labels +/-.
  - Party A is always the slow (leftmost) tensor index.
  - Two-outcome measurements list the +1 outcome first.

These conventions reproduce the four Hardy probabilities (1/12, 0, 0, 0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Hashable, Sequence

import numpy as np

from nonlocality.core.config import load_tolerances
from nonlocality.core.errors import InvalidInputError

Label = Hashable

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

KET_PLUS = np.array([1, 0], dtype=complex)
KET_MINUS = np.array([0, 1], dtype=complex)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _check_finite(arr: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{what} contains NaN or Inf entries")


def _check_dimension(total: int) -> None:
    cap = load_tolerances().max_total_dimension
    if total > cap:
        raise InvalidInputError(f"Total dimension {total} exceeds the configured maximum {cap}")


@dataclass(frozen=True, eq=False)
class StateVector:
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise InvalidInputError(f"State dims must be positive, got {dims}")
        amps = _frozen(np.asarray(self.amplitudes).reshape(-1))
        _check_finite(amps, "State amplitudes")
        if amps.size != int(np.prod(dims)):
            raise InvalidInputError(
                f"State has {amps.size} amplitudes but dims {dims} need {int(np.prod(dims))}"
            )
        _check_dimension(amps.size)
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > load_tolerances().eps_norm:
            raise InvalidInputError(f"State is not normalized (squared norm {norm2:.12g})")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dimension(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True, eq=False)
class Operator:
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidInputError(f"Operator must be square, got shape {m.shape}")
        _check_finite(m, "Operator entries")
        if not np.allclose(m, m.conj().T, atol=load_tolerances().eps_herm, rtol=0):
            raise InvalidInputError("Operator is not Hermitian")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    projectors: tuple[Operator, ...]
    labels: tuple[Label, ...]

    def __post_init__(self) -> None:
        projectors = tuple(p if isinstance(p, Operator) else Operator(p) for p in self.projectors)
        labels = tuple(self.labels)
        if not projectors:
            raise InvalidInputError("Measurement needs at least one projector")
        if len(labels) != len(projectors):
            raise InvalidInputError(f"{len(projectors)} projectors but {len(labels)} labels")
        if len(set(labels)) != len(labels):
            raise InvalidInputError(f"Duplicate outcome labels {labels}")
        dim = projectors[0].dim
        if any(p.dim != dim for p in projectors):
            raise InvalidInputError("Projectors have different dimensions")

        eps = load_tolerances().eps_herm
        total = np.zeros((dim, dim), dtype=complex)
        for i, p in enumerate(projectors):
            if not np.allclose(p.matrix @ p.matrix, p.matrix, atol=eps, rtol=0):
                raise InvalidInputError(f"Projector for outcome {labels[i]!r} is not idempotent")
            for j in range(i + 1, len(projectors)):
                if not np.allclose(p.matrix @ projectors[j].matrix, 0, atol=eps, rtol=0):
                    raise InvalidInputError(
                        f"Projectors for outcomes {labels[i]!r} and {labels[j]!r} are not orthogonal"
                    )
            total = total + p.matrix
        if not np.allclose(total, np.eye(dim), atol=eps, rtol=0):
            raise InvalidInputError("Projectors do not sum to the identity")

        object.__setattr__(self, "projectors", projectors)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.projectors[0].dim

    def projector(self, label: Label) -> np.ndarray:
        try:
            return self.projectors[self.labels.index(label)].matrix
        except ValueError:
            raise InvalidInputError(f"Unknown outcome label {label!r}; known labels {self.labels}")


def state_from_amplitudes(dims: Sequence[int], amplitudes: Sequence[complex]) -> StateVector:
    return StateVector(tuple(dims), np.asarray(amplitudes, dtype=complex))


def basis_state(dims: Sequence[int], index: int) -> StateVector:
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[index] = 1.0
    return StateVector(tuple(dims), amps)


def tensor_state(a: StateVector, b: StateVector) -> StateVector:
    _check_dimension(a.dimension * b.dimension)
    return StateVector(a.dims + b.dims, np.kron(a.amplitudes, b.amplitudes))


def tensor_op(a: Operator, b: Operator) -> Operator:
    _check_dimension(a.dim * b.dim)
    return Operator(np.kron(a.matrix, b.matrix))


def bloch_observable(nx: float, ny: float, nz: float) -> Operator:
    n = np.array([nx, ny, nz], dtype=float)
    if not np.all(np.isfinite(n)) or abs(float(np.linalg.norm(n)) - 1.0) > load_tolerances().eps_norm:
        raise InvalidInputError(f"Bloch direction ({nx}, {ny}, {nz}) is not a unit vector")
    return Operator(n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z)


def bloch_measurement(nx: float, ny: float, nz: float) -> ProjectiveMeasurement:
    """Two-outcome measurement along n: projectors (I +/- n.sigma)/2, labels (+1, -1)."""
    obs = bloch_observable(nx, ny, nz).matrix
    return ProjectiveMeasurement(
        (Operator((IDENTITY + obs) / 2), Operator((IDENTITY - obs) / 2)),
        (1, -1),
    )


def commuting_measurement(observables: Sequence[np.ndarray | Operator]) -> ProjectiveMeasurement:
    """
    Joint measurement of commuting +/-1 observables.

    Outcome labels are bit strings, bit k = 0 for eigenvalue +1 of observable k.
    Bit strings with no joint eigenvector get a zero projector.
    """
    mats = [o.matrix if isinstance(o, Operator) else np.asarray(o, dtype=complex) for o in observables]
    if not mats:
        raise InvalidInputError("Need at least one observable")
    dim = mats[0].shape[0]
    eps = load_tolerances().eps_herm
    for i, j in itertools.combinations(range(len(mats)), 2):
        if not np.allclose(mats[i] @ mats[j], mats[j] @ mats[i], atol=eps, rtol=0):
            raise InvalidInputError(f"Observables {i} and {j} do not commute")
    eye = np.eye(dim, dtype=complex)
    projectors = []
    labels = []
    for bits in itertools.product((0, 1), repeat=len(mats)):
        factors = [(eye + (-1) ** s * m) / 2 for s, m in zip(bits, mats)]
        projectors.append(Operator(reduce(np.matmul, factors)))
        labels.append("".join(str(s) for s in bits))
    return ProjectiveMeasurement(tuple(projectors), tuple(labels))


def _joint(mats: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, mats)


def _check_party_dims(state: StateVector, dims: Sequence[int]) -> None:
    if tuple(dims) != state.dims:
        raise InvalidInputError(f"Measurement dims {tuple(dims)} do not match state dims {state.dims}")


def outcome_probability(
    state: StateVector,
    per_party: Sequence[ProjectiveMeasurement],
    outcome: Sequence[Label],
) -> float:
    """Born rule <psi| (P_1 x ... x P_n) |psi>."""
    _check_party_dims(state, [m.dim for m in per_party])
    if len(outcome) != len(per_party):
        raise InvalidInputError(f"Outcome {tuple(outcome)} does not have one label per party")
    proj = _joint([m.projector(lab) for m, lab in zip(per_party, outcome)])
    psi = state.amplitudes
    return float(np.vdot(psi, proj @ psi).real)


def expectation(state: StateVector, observables: Sequence[Operator]) -> float:
    """<psi| O_1 x ... x O_n |psi> by direct matrix application; each O_k must square to I."""
    _check_party_dims(state, [o.dim for o in observables])
    tol = load_tolerances()
    # Bloch directions are unit only to within eps_norm, so O^2 = |n|^2 I.
    eps = tol.eps_herm + 2 * tol.eps_norm
    for k, o in enumerate(observables):
        if not np.allclose(o.matrix @ o.matrix, np.eye(o.dim), atol=eps, rtol=0):
            raise InvalidInputError(f"Observable {k} does not have a +/-1 spectrum (O^2 != I)")
    psi = state.amplitudes
    return float(np.vdot(psi, _joint([o.matrix for o in observables]) @ psi).real)


def expectation_from_measurements(state: StateVector, measurements: Sequence[ProjectiveMeasurement]) -> float:
    """Sum over outcome tuples of label product times Born probability (labels must be numeric)."""
    _check_party_dims(state, [m.dim for m in measurements])
    total = 0.0
    for outcome in itertools.product(*(m.labels for m in measurements)):
        total += float(np.prod([float(lab) for lab in outcome])) * outcome_probability(
            state, measurements, outcome
        )
    return total
