"""
Bipartite nonlocal games G = (X, Y, R): classical value, quantum winning
probability, and the conversion of a game into a Bell expression.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from nonlocality.core.config import load_tolerances
from nonlocality.core.errors import InvalidInputError
from nonlocality.core.logging import get_logger
from nonlocality.processing.behavior.strategies import alice_maps
from nonlocality.processing.behavior.tables import (
    BellExpression,
    Behavior,
    DeterministicStrategy,
    Scenario,
    behavior_from_quantum,
)
from nonlocality.quantum.kernel import Operator, ProjectiveMeasurement, StateVector

logger = get_logger(__name__)

Label = Hashable
Relation = Callable[[Label, Label, Label, Label], bool]


def _labels(values: Iterable[Label], what: str) -> tuple[Label, ...]:
    values = tuple(values)
    if not values:
        raise InvalidInputError(f"Game {what} must be nonempty")
    if len(set(values)) != len(values):
        raise InvalidInputError(f"Game {what} contain duplicates: {values}")
    return values


@dataclass(frozen=True, eq=False)
class Game:
    name: str
    inputs_a: tuple[Label, ...]
    inputs_b: tuple[Label, ...]
    outputs_a: tuple[Label, ...]
    outputs_b: tuple[Label, ...]
    relation: Relation

    def __post_init__(self) -> None:
        for name in ("inputs_a", "inputs_b", "outputs_a", "outputs_b"):
            object.__setattr__(self, name, _labels(getattr(self, name), name))
        table = np.zeros(
            (len(self.inputs_a), len(self.inputs_b), len(self.outputs_a), len(self.outputs_b)), dtype=bool
        )
        # Tabulating R on the full product also checks that it is total.
        for (i, xa), (j, xb), (k, ya), (l, yb) in itertools.product(
            enumerate(self.inputs_a), enumerate(self.inputs_b), enumerate(self.outputs_a), enumerate(self.outputs_b)
        ):
            verdict = self.relation(xa, xb, ya, yb)
            if not isinstance(verdict, (bool, np.bool_)):
                raise InvalidInputError(f"Relation returned {verdict!r} for {(xa, xb, ya, yb)}, expected bool")
            table[i, j, k, l] = bool(verdict)
        table.setflags(write=False)
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_accepted(
        cls,
        name: str,
        inputs_a: Sequence[Label],
        inputs_b: Sequence[Label],
        outputs_a: Sequence[Label],
        outputs_b: Sequence[Label],
        accepted: Iterable[Sequence[Label]],
    ) -> "Game":
        accepted_set = {tuple(t) for t in accepted}
        for t in accepted_set:
            if len(t) != 4 or t[0] not in inputs_a or t[1] not in inputs_b or t[2] not in outputs_a or t[3] not in outputs_b:
                raise InvalidInputError(f"Accepted tuple {t} is not in X_A x X_B x Y_A x Y_B")
        return cls(
            name, tuple(inputs_a), tuple(inputs_b), tuple(outputs_a), tuple(outputs_b),
            lambda xa, xb, ya, yb: (xa, xb, ya, yb) in accepted_set,
        )

    @property
    def relation_table(self) -> np.ndarray:
        return self._table  # type: ignore[attr-defined]

    @property
    def scenario(self) -> Scenario:
        return Scenario(
            len(self.inputs_a), len(self.inputs_b), len(self.outputs_a), len(self.outputs_b),
            setting_names_a=tuple(str(v) for v in self.inputs_a),
            setting_names_b=tuple(str(v) for v in self.inputs_b),
            outcome_names_a=tuple(str(v) for v in self.outputs_a),
            outcome_names_b=tuple(str(v) for v in self.outputs_b),
        )

    def accepts(self, xa: Label, xb: Label, ya: Label, yb: Label) -> bool:
        return bool(self.relation(xa, xb, ya, yb))

    def accepted_tuples(self) -> list[tuple[Label, Label, Label, Label]]:
        return [
            (self.inputs_a[i], self.inputs_b[j], self.outputs_a[k], self.outputs_b[l])
            for i, j, k, l in np.argwhere(self.relation_table)
        ]


def input_weights(g: Game, input_dist: Optional[np.ndarray | Sequence] = None) -> np.ndarray:
    """Exact (X_A, X_B) input distribution; uniform when not given."""
    shape = (len(g.inputs_a), len(g.inputs_b))
    weights = np.empty(shape, dtype=object)
    if input_dist is None:
        weights.fill(Fraction(1, shape[0] * shape[1]))
        return weights
    dist = np.asarray(input_dist, dtype=object if np.asarray(input_dist).dtype == object else float)
    if dist.shape != shape:
        raise InvalidInputError(f"Input distribution has shape {dist.shape}, expected {shape}")
    exact = all(isinstance(v, (Fraction, int, np.integer)) for v in dist.flat)
    for idx, v in np.ndenumerate(dist):
        w = Fraction(int(v)) if isinstance(v, np.integer) else Fraction(v if exact else float(v))
        if w < 0:
            raise InvalidInputError(f"Negative input probability at {idx}")
        weights[idx] = w
    total = sum(weights.flat, Fraction(0))
    if exact:
        if total != 1:
            raise InvalidInputError("Input distribution does not sum to 1")
        return weights
    if abs(float(total) - 1.0) > load_tolerances().eps_lp or total == 0:
        raise InvalidInputError(f"Input distribution sums to {float(total)}, not 1")
    # Binary values of floats that sum to 1 in float arithmetic rarely sum to exactly 1.
    return weights / total


@dataclass(frozen=True, eq=False)
class QuantumStrategy:
    shared_state: StateVector
    meas_a: tuple[ProjectiveMeasurement, ...]
    meas_b: tuple[ProjectiveMeasurement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "meas_a", tuple(self.meas_a))
        object.__setattr__(self, "meas_b", tuple(self.meas_b))
        if len(self.shared_state.dims) != 2:
            raise InvalidInputError(f"Shared state must be bipartite, got dims {self.shared_state.dims}")
        dim_a, dim_b = self.shared_state.dims
        if any(m.dim != dim_a for m in self.meas_a) or any(m.dim != dim_b for m in self.meas_b):
            raise InvalidInputError("Measurement dims do not match the shared state's party dims")

    def check_against(self, g: Game) -> None:
        if len(self.meas_a) != len(g.inputs_a) or len(self.meas_b) != len(g.inputs_b):
            raise InvalidInputError(f"Strategy needs one measurement per input of game {g.name!r}")
        if any(m.labels != g.outputs_a for m in self.meas_a) or any(m.labels != g.outputs_b for m in self.meas_b):
            raise InvalidInputError(f"Measurement outcome labels do not match the outputs of game {g.name!r}")


@dataclass(frozen=True)
class ClassicalValue:
    value: Fraction
    strategy: DeterministicStrategy


@dataclass(frozen=True)
class GameValueReport:
    classical_value: Fraction
    best_classical_strategy: DeterministicStrategy
    quantum_win_probability: float
    is_quantum_winning: bool


def classical_value(g: Game, input_dist: Optional[np.ndarray] = None) -> ClassicalValue:
    """
    Best winning probability over deterministic strategies.

    Shared randomness is a mixture of deterministic strategies and cannot beat
    the best of them. For each Alice map Bob answers each input separately with
    his first highest-scoring output; ties keep the lexicographically first map.
    """
    s = g.scenario
    s.check_enumerable()
    weights = input_weights(g, input_dist)
    R = g.relation_table
    best_value: Optional[Fraction] = None
    best: Optional[DeterministicStrategy] = None
    for map_a in alice_maps(s):
        total = Fraction(0)
        reply = []
        for y in range(s.inputs_b):
            wins = [
                sum((weights[x, y] for x in range(s.inputs_a) if R[x, y, map_a[x], b]), Fraction(0))
                for b in range(s.outputs_b)
            ]
            top = max(wins)
            reply.append(wins.index(top))
            total += top
        if best_value is None or total > best_value:
            best_value, best = total, DeterministicStrategy(tuple(map_a), tuple(reply))
    assert best_value is not None and best is not None
    logger.info(
        "Classical value computed",
        extra={"game": g.name, "value": best_value, "strategy": best.describe(s)},
    )
    return ClassicalValue(best_value, best)


def game_behavior(g: Game, qs: QuantumStrategy) -> Behavior:
    qs.check_against(g)
    return behavior_from_quantum(
        qs.shared_state, qs.meas_a, qs.meas_b,
        setting_names=(tuple(str(v) for v in g.inputs_a), tuple(str(v) for v in g.inputs_b)),
    )


def _losing_mass(g: Game, b: Behavior) -> np.ndarray:
    table = b.as_float()
    return np.where(g.relation_table, 0.0, table).sum(axis=(2, 3))


def quantum_win_probability(g: Game, qs: QuantumStrategy, input_dist: Optional[np.ndarray] = None) -> float:
    b = game_behavior(g, qs)
    weights = input_weights(g, input_dist).astype(float)
    winning = np.where(g.relation_table, b.as_float(), 0.0).sum(axis=(2, 3))
    return float(np.sum(weights * winning))


def is_winning_strategy(g: Game, qs: QuantumStrategy, eps: Optional[float] = None) -> bool:
    eps = load_tolerances().eps_win if eps is None else eps
    return bool(np.all(_losing_mass(g, game_behavior(g, qs)) < eps))


def game_value_report(g: Game, qs: QuantumStrategy, input_dist: Optional[np.ndarray] = None) -> GameValueReport:
    cv = classical_value(g, input_dist)
    return GameValueReport(
        classical_value=cv.value,
        best_classical_strategy=cv.strategy,
        quantum_win_probability=quantum_win_probability(g, qs, input_dist),
        is_quantum_winning=is_winning_strategy(g, qs),
    )


def game_to_bell_expression(g: Game, input_dist: Optional[np.ndarray] = None) -> BellExpression:
    """c(x,y,a,b) = pi(x,y) when R(x,y,a,b) holds, else 0; its value is the winning probability."""
    weights = input_weights(g, input_dist)
    s = g.scenario
    coeffs = np.empty(s.shape, dtype=object)
    for x, y, a, b in np.ndindex(*s.shape):
        coeffs[x, y, a, b] = weights[x, y] if g.relation_table[x, y, a, b] else Fraction(0)
    return BellExpression(s, coeffs, f"winning probability of game {g.name!r}")


def deterministic_quantum_strategy(g: Game, d: DeterministicStrategy) -> QuantumStrategy:
    """A classical strategy as one-dimensional 'measurements' on a trivial state."""
    d.validate_for(g.scenario)

    def fixed(outputs: tuple[Label, ...], choice: int) -> ProjectiveMeasurement:
        return ProjectiveMeasurement(
            tuple(Operator(np.array([[1.0 if i == choice else 0.0]])) for i in range(len(outputs))),
            outputs,
        )

    return QuantumStrategy(
        StateVector((1, 1), np.array([1.0])),
        tuple(fixed(g.outputs_a, v) for v in d.map_a),
        tuple(fixed(g.outputs_b, v) for v in d.map_b),
    )


def classical_survival_probability(g: Game, rounds: int, input_dist: Optional[np.ndarray] = None) -> Fraction:
    """Chance that the best local strategy wins `rounds` independent rounds in a row."""
    if int(rounds) != rounds or rounds < 0:
        raise InvalidInputError(f"rounds must be a nonnegative integer, got {rounds!r}")
    return classical_value(g, input_dist).value ** int(rounds)
