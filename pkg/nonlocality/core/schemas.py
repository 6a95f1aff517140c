"""
JSON documents for behaviors, Bell expressions, supports and games.

Tables are row-major: row x*Y + y, column a*B + b. Exact rationals are
{"num": n, "den": d}; floats are plain numbers at 12 significant digits.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Type, TypeVar, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from nonlocality.core.config import load_output_config
from nonlocality.core.errors import DocumentParseError

DocT = TypeVar("DocT", bound=BaseModel)


class RationalModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    num: int
    den: int = Field(..., gt=0)


Entry = Union[RationalModel, int, float]


class ScenarioModel(BaseModel):
    inputs_a: int = Field(..., ge=1)
    inputs_b: int = Field(..., ge=1)
    outputs_a: int = Field(..., ge=1)
    outputs_b: int = Field(..., ge=1)
    setting_names_a: Optional[list[str]] = None
    setting_names_b: Optional[list[str]] = None
    outcome_names_a: Optional[list[str]] = None
    outcome_names_b: Optional[list[str]] = None

    @field_validator("setting_names_a", "setting_names_b", "outcome_names_a", "outcome_names_b")
    @classmethod
    def strip_names(cls, v: Optional[list[str]]) -> Optional[list[str]]:
        if v is None:
            return None
        names = [n.strip() for n in v]
        if any(not n for n in names):
            raise ValueError("Names must be nonempty")
        return names

    @property
    def rows(self) -> int:
        return self.inputs_a * self.inputs_b

    @property
    def columns(self) -> int:
        return self.outputs_a * self.outputs_b


def _check_grid(grid: list[list[Any]], scenario: ScenarioModel, what: str) -> None:
    if len(grid) != scenario.rows:
        raise ValueError(f"{what} has {len(grid)} rows, expected inputs_a*inputs_b = {scenario.rows}")
    for i, row in enumerate(grid):
        if len(row) != scenario.columns:
            raise ValueError(
                f"{what} row {i} has {len(row)} entries, expected outputs_a*outputs_b = {scenario.columns}"
            )


class BehaviorDocument(BaseModel):
    schema_version: int = 1
    scenario: ScenarioModel
    table: list[list[Entry]]

    @model_validator(mode="after")
    def table_matches_scenario(self) -> "BehaviorDocument":
        _check_grid(self.table, self.scenario, "table")
        return self


class ExpressionDocument(BaseModel):
    schema_version: int = 1
    scenario: ScenarioModel
    coeffs: list[list[Entry]]
    description: str = ""

    @model_validator(mode="after")
    def coeffs_match_scenario(self) -> "ExpressionDocument":
        _check_grid(self.coeffs, self.scenario, "coeffs")
        return self


class SupportDocument(BaseModel):
    schema_version: int = 1
    scenario: ScenarioModel
    possible: list[list[bool]]

    @model_validator(mode="after")
    def possible_matches_scenario(self) -> "SupportDocument":
        _check_grid(self.possible, self.scenario, "possible")
        return self


class GameDocument(BaseModel):
    schema_version: int = 1
    name: str = Field(..., min_length=1)
    inputs_a: list[Union[int, str]] = Field(..., min_length=1)
    inputs_b: list[Union[int, str]] = Field(..., min_length=1)
    outputs_a: list[Union[int, str]] = Field(..., min_length=1)
    outputs_b: list[Union[int, str]] = Field(..., min_length=1)
    accepted: list[list[Union[int, str]]]

    @field_validator("accepted")
    @classmethod
    def quadruples(cls, v: list[list[Union[int, str]]]) -> list[list[Union[int, str]]]:
        for t in v:
            if len(t) != 4:
                raise ValueError(f"Accepted entry {t} is not an (x_a, x_b, y_a, y_b) quadruple")
        return v


def entry_value(e: Entry) -> Fraction | float:
    if isinstance(e, RationalModel):
        return Fraction(e.num, e.den)
    if isinstance(e, int):
        return Fraction(e)
    return float(e)


def grid_to_array(grid: list[list[Entry]], shape: tuple[int, int, int, int]) -> np.ndarray:
    """Object array of Fractions when every entry is exact, float array otherwise."""
    values = [entry_value(e) for row in grid for e in row]
    if all(isinstance(v, Fraction) for v in values):
        out = np.empty(len(values), dtype=object)
        out[:] = values
        return out.reshape(shape)
    return np.array([float(v) for v in values]).reshape(shape)


def encode_number(v: Any) -> Any:
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    digits = load_output_config().significant_digits
    return float(f"{float(v):.{digits}g}")


def array_to_grid(arr: np.ndarray) -> list[list[Any]]:
    x, y, a, b = arr.shape
    flat = arr.reshape(x * y, a * b)
    return [[encode_number(v) for v in row] for row in flat]


def dumps(payload: Any) -> str:
    """Stable JSON: insertion-ordered keys, fixed float precision."""
    return json.dumps(payload, indent=2, ensure_ascii=False)


def parse_document(text: str, model: Type[DocT]) -> DocT:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(f"Malformed JSON: {exc.msg}", line=exc.lineno)
    try:
        return model.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(p) for p in first.get("loc", ())) or None
        raise DocumentParseError(f"Invalid {model.__name__}: {first.get('msg')}", field=field)


def load_document(path: Path | str, model: Type[DocT]) -> DocT:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentParseError(f"Cannot read {path}: {exc.strerror}")
    return parse_document(text, model)
