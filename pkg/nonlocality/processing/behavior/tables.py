"""
Bipartite measurement scenarios as conditional probability tables p(a,b|x,y).

Tables are numpy arrays indexed [x, y, a, b]. A table is *exact* when it holds
`Fraction` objects (dtype=object) and *numerical* when it holds float64.
For two-outcome scenarios outcome index 0 is the +1 outcome and index 1 is -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from nonlocality.core.config import enumeration_cap, load_tolerances
from nonlocality.core.errors import EnumerationCapError, InvalidInputError
from nonlocality.quantum.kernel import ProjectiveMeasurement, StateVector, outcome_probability

Number = float | Fraction


def _names(names: Optional[Sequence[str]], count: int, what: str) -> Optional[tuple[str, ...]]:
    if names is None:
        return None
    names = tuple(str(n) for n in names)
    if len(names) != count:
        raise InvalidInputError(f"{what}: expected {count} names, got {len(names)}")
    return names


@dataclass(frozen=True)
class Scenario:
    inputs_a: int
    inputs_b: int
    outputs_a: int
    outputs_b: int
    # Display names only; two scenarios with the same counts are the same scenario.
    setting_names_a: Optional[tuple[str, ...]] = field(default=None, compare=False)
    setting_names_b: Optional[tuple[str, ...]] = field(default=None, compare=False)
    outcome_names_a: Optional[tuple[str, ...]] = field(default=None, compare=False)
    outcome_names_b: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for name in ("inputs_a", "inputs_b", "outputs_a", "outputs_b"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise InvalidInputError(f"Scenario {name} must be an integer >= 1, got {value!r}")
            object.__setattr__(self, name, int(value))
        object.__setattr__(self, "setting_names_a", _names(self.setting_names_a, self.inputs_a, "setting_names_a"))
        object.__setattr__(self, "setting_names_b", _names(self.setting_names_b, self.inputs_b, "setting_names_b"))
        object.__setattr__(self, "outcome_names_a", _names(self.outcome_names_a, self.outputs_a, "outcome_names_a"))
        object.__setattr__(self, "outcome_names_b", _names(self.outcome_names_b, self.outputs_b, "outcome_names_b"))

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return (self.inputs_a, self.inputs_b, self.outputs_a, self.outputs_b)

    @property
    def is_binary(self) -> bool:
        return self.outputs_a == 2 and self.outputs_b == 2

    @property
    def strategy_count(self) -> int:
        return self.outputs_a ** self.inputs_a * self.outputs_b ** self.inputs_b

    def check_enumerable(self) -> int:
        cap = enumeration_cap()
        size = self.strategy_count
        if size > cap:
            raise EnumerationCapError(size, cap)
        return size

    def describe_point(self, x: int, y: int, a: int, b: int) -> tuple[str, str, str, str]:
        def pick(names: Optional[tuple[str, ...]], i: int) -> str:
            return names[i] if names else str(i)

        return (
            pick(self.setting_names_a, x),
            pick(self.setting_names_b, y),
            pick(self.outcome_names_a, a),
            pick(self.outcome_names_b, b),
        )

    def describe_setting(self, x: int, y: int) -> str:
        sx, sy, _, _ = self.describe_point(x, y, 0, 0)
        return f"({sx}, {sy})"


def _as_table(values, shape: tuple[int, ...], what: str) -> np.ndarray:
    arr = np.asarray(values)
    if arr.shape != shape:
        try:
            arr = arr.reshape(shape)
        except ValueError:
            raise InvalidInputError(f"{what} has shape {np.shape(values)}, expected {shape}")
    if arr.dtype == object:
        out = np.empty(shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = Fraction(v)
        return out
    out = arr.astype(float)
    if not np.all(np.isfinite(out)):
        raise InvalidInputError(f"{what} contains NaN or Inf entries")
    return out


@dataclass(frozen=True, eq=False)
class Behavior:
    scenario: Scenario
    table: np.ndarray

    def __post_init__(self) -> None:
        table = _as_table(self.table, self.scenario.shape, "Behavior table")
        eps = load_tolerances().eps_prob
        exact = table.dtype == object
        for x, y in itertools.product(range(self.scenario.inputs_a), range(self.scenario.inputs_b)):
            row = table[x, y]
            where = self.scenario.describe_setting(x, y)
            if exact:
                if any(v < 0 or v > 1 for v in row.flat):
                    raise InvalidInputError(f"Behavior entries outside [0, 1] at setting pair {where}")
                total = sum(row.flat, Fraction(0))
                if total != 1:
                    raise InvalidInputError(f"Behavior row for setting pair {where} sums to {total}, not 1")
            else:
                if row.min() < -eps or row.max() > 1 + eps:
                    raise InvalidInputError(f"Behavior entries outside [0, 1] at setting pair {where}")
                total = float(row.sum())
                if abs(total - 1.0) > eps:
                    raise InvalidInputError(
                        f"Behavior row for setting pair {where} sums to {total:.12g}, not 1"
                    )
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def is_exact(self) -> bool:
        return self.table.dtype == object

    def prob(self, x: int, y: int, a: int, b: int) -> Number:
        return self.table[x, y, a, b]

    def as_float(self) -> np.ndarray:
        return self.table.astype(float)


@dataclass(frozen=True, order=True)
class DeterministicStrategy:
    map_a: tuple[int, ...]
    map_b: tuple[int, ...]

    def validate_for(self, s: Scenario) -> None:
        if len(self.map_a) != s.inputs_a or len(self.map_b) != s.inputs_b:
            raise InvalidInputError(f"Strategy {self} does not have one output per input of {s.shape}")
        if any(not 0 <= v < s.outputs_a for v in self.map_a) or any(not 0 <= v < s.outputs_b for v in self.map_b):
            raise InvalidInputError(f"Strategy {self} uses outputs outside the scenario's range")

    def describe(self, s: Scenario) -> str:
        names_a = s.outcome_names_a or tuple(str(i) for i in range(s.outputs_a))
        names_b = s.outcome_names_b or tuple(str(i) for i in range(s.outputs_b))
        a = ",".join(names_a[v] for v in self.map_a)
        b = ",".join(names_b[v] for v in self.map_b)
        return f"A=({a}) B=({b})"


@dataclass(frozen=True, eq=False)
class BellExpression:
    scenario: Scenario
    coeffs: np.ndarray
    description: str = ""

    def __post_init__(self) -> None:
        coeffs = _as_table(self.coeffs, self.scenario.shape, "Bell expression coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_exact(self) -> bool:
        return self.coeffs.dtype == object

    def exact_coeffs(self) -> np.ndarray:
        """Coefficients as Fractions; floats go through a continued-fraction approximation."""
        if self.is_exact:
            return self.coeffs
        max_den = load_tolerances().rational_max_denominator
        out = np.empty(self.scenario.shape, dtype=object)
        for idx, c in np.ndenumerate(self.coeffs):
            out[idx] = Fraction(float(c)).limit_denominator(max_den)
        return out


@dataclass(frozen=True, eq=False)
class SupportTable:
    scenario: Scenario
    possible: np.ndarray

    def __post_init__(self) -> None:
        possible = np.asarray(self.possible, dtype=bool)
        if possible.shape != self.scenario.shape:
            raise InvalidInputError(f"Support table has shape {possible.shape}, expected {self.scenario.shape}")
        empty = np.argwhere(~possible.any(axis=(2, 3)))
        if empty.size:
            x, y = (int(v) for v in empty[0])
            raise InvalidInputError(f"No possible outcome at setting pair {self.scenario.describe_setting(x, y)}")
        possible = possible.copy()
        possible.setflags(write=False)
        object.__setattr__(self, "possible", possible)


def _require_same_shape(s1: Scenario, s2: Scenario) -> None:
    if s1.shape != s2.shape:
        raise InvalidInputError(f"Scenario mismatch: {s1.shape} vs {s2.shape}")


def behavior_from_quantum(
    state: StateVector,
    meas_a: Sequence[ProjectiveMeasurement],
    meas_b: Sequence[ProjectiveMeasurement],
    *,
    setting_names: tuple[Optional[Sequence[str]], Optional[Sequence[str]]] = (None, None),
) -> Behavior:
    if len(state.dims) != 2:
        raise InvalidInputError(f"Expected a bipartite state, got dims {state.dims}")
    if not meas_a or not meas_b:
        raise InvalidInputError("Each party needs at least one measurement setting")
    labels_a, labels_b = meas_a[0].labels, meas_b[0].labels
    if any(m.labels != labels_a for m in meas_a) or any(m.labels != labels_b for m in meas_b):
        raise InvalidInputError("All settings of a party must share the same outcome labels")

    scenario = Scenario(
        len(meas_a), len(meas_b), len(labels_a), len(labels_b),
        setting_names_a=setting_names[0],
        setting_names_b=setting_names[1],
        outcome_names_a=_outcome_names(labels_a),
        outcome_names_b=_outcome_names(labels_b),
    )
    table = np.zeros(scenario.shape)
    for x, ma in enumerate(meas_a):
        for y, mb in enumerate(meas_b):
            for a, la in enumerate(labels_a):
                for b, lb in enumerate(labels_b):
                    table[x, y, a, b] = outcome_probability(state, (ma, mb), (la, lb))
    table = np.clip(table, 0.0, 1.0)
    table /= table.sum(axis=(2, 3), keepdims=True)
    return Behavior(scenario, table)


def _outcome_names(labels: Sequence) -> tuple[str, ...]:
    """+1/-1 eigenvalue labels print as + and -, anything else as its str()."""
    if len(labels) == 2 and all(not isinstance(v, (str, bool)) for v in labels) and set(labels) == {1, -1}:
        return tuple("+" if v == 1 else "-" for v in labels)
    return tuple(str(v) for v in labels)


def strategy_behavior(s: Scenario, d: DeterministicStrategy) -> Behavior:
    d.validate_for(s)
    table = np.empty(s.shape, dtype=object)
    table.fill(Fraction(0))
    for x, y in itertools.product(range(s.inputs_a), range(s.inputs_b)):
        table[x, y, d.map_a[x], d.map_b[y]] = Fraction(1)
    return Behavior(s, table)


def mixture_behavior(s: Scenario, weighted: Sequence[tuple[Number, DeterministicStrategy]]) -> Behavior:
    """Convex mixture sum_i w_i * D_i; exact when every weight is a Fraction or int."""
    if not weighted:
        raise InvalidInputError("Mixture needs at least one strategy")
    exact = all(isinstance(w, (Fraction, int)) for w, _ in weighted)
    table = np.zeros(s.shape, dtype=object if exact else float)
    if exact:
        table.fill(Fraction(0))
    for w, d in weighted:
        if w < 0:
            raise InvalidInputError(f"Negative mixture weight {w}")
        d.validate_for(s)
        for x, y in itertools.product(range(s.inputs_a), range(s.inputs_b)):
            table[x, y, d.map_a[x], d.map_b[y]] += Fraction(w) if exact else float(w)
    return Behavior(s, table)


def correlator(b: Behavior, x: int, y: int) -> Number:
    """E(x,y) = p(++) + p(--) - p(+-) - p(-+)."""
    if not b.scenario.is_binary:
        raise InvalidInputError(f"Correlator needs two outcomes per side, scenario is {b.scenario.shape}")
    p = b.table[x, y]
    return p[0, 0] + p[1, 1] - p[0, 1] - p[1, 0]


def chsh_expression() -> BellExpression:
    """<A1B1> + <A1B2> + <A2B1> - <A2B2> written on probabilities."""
    s = Scenario(2, 2, 2, 2, outcome_names_a=("+", "-"), outcome_names_b=("+", "-"))
    coeffs = np.empty(s.shape, dtype=object)
    for x, y, a, b in np.ndindex(*s.shape):
        sign = -1 if (x, y) == (1, 1) else 1
        coeffs[x, y, a, b] = Fraction(sign * (1 if a == b else -1))
    return BellExpression(s, coeffs, "CHSH: <A1B1> + <A1B2> + <A2B1> - <A2B2>")


def evaluate_expression(e: BellExpression, b: Behavior) -> Number:
    _require_same_shape(e.scenario, b.scenario)
    if e.is_exact and b.is_exact:
        return sum((e.coeffs * b.table).flat, Fraction(0))
    return float(np.sum(e.coeffs.astype(float) * b.as_float()))


def support_of(b: Behavior, eps_support: Optional[float] = None) -> SupportTable:
    eps = load_tolerances().eps_support if eps_support is None else eps_support
    if not eps > 0:
        raise InvalidInputError(f"eps_support must be > 0, got {eps}")
    possible = b.as_float() > eps
    empty = np.argwhere(~possible.any(axis=(2, 3)))
    if empty.size:
        x, y = (int(v) for v in empty[0])
        raise InvalidInputError(
            f"eps_support={eps:g} leaves no possible outcome at setting pair "
            f"{b.scenario.describe_setting(x, y)}; eps is too large"
        )
    return SupportTable(b.scenario, possible)


def rationalize_behavior(b: Behavior, eps_zero: Optional[float] = None) -> Behavior:
    """
    Exact copy of a numerical behavior.

    Entries <= eps_zero become 0, the rest go through Fraction.limit_denominator;
    each row's residual is absorbed by its largest entry so rows sum to exactly 1.
    """
    if b.is_exact:
        return b
    tol = load_tolerances()
    eps = tol.eps_support if eps_zero is None else eps_zero
    values = b.as_float()
    table = np.empty(values.shape, dtype=object)
    for idx, v in np.ndenumerate(values):
        if v <= eps:
            table[idx] = Fraction(0)
            continue
        approx = Fraction(float(v)).limit_denominator(tol.rational_max_denominator)
        # A possible outcome must stay possible.
        table[idx] = approx if approx > 0 else Fraction(float(v))
    for x, y in np.ndindex(*values.shape[:2]):
        row = table[x, y]
        residual = 1 - sum(row.flat, Fraction(0))
        a, bb = np.unravel_index(int(np.argmax(values[x, y])), values.shape[2:])
        row[a, bb] += residual
    return Behavior(b.scenario, table)


def total_variation(b1: Behavior, b2: Behavior) -> float:
    """Largest per-setting-pair total-variation distance."""
    _require_same_shape(b1.scenario, b2.scenario)
    diff = np.abs(b1.as_float() - b2.as_float())
    return float(0.5 * diff.sum(axis=(2, 3)).max())
