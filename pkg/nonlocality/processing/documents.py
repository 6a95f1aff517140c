"""Conversions between domain objects and their JSON documents."""

from __future__ import annotations

from typing import Any

import numpy as np

from nonlocality.core.config import load_output_config
from nonlocality.core.schemas import (
    BehaviorDocument,
    ExpressionDocument,
    GameDocument,
    ScenarioModel,
    SupportDocument,
    array_to_grid,
    grid_to_array,
)
from nonlocality.processing.behavior.tables import BellExpression, Behavior, Scenario, SupportTable
from nonlocality.processing.games.games import Game
from nonlocality.processing.nogo.classifier import NoGoVerdict


def scenario_from_model(m: ScenarioModel) -> Scenario:
    def opt(v):
        return tuple(v) if v is not None else None

    return Scenario(
        m.inputs_a, m.inputs_b, m.outputs_a, m.outputs_b,
        setting_names_a=opt(m.setting_names_a),
        setting_names_b=opt(m.setting_names_b),
        outcome_names_a=opt(m.outcome_names_a),
        outcome_names_b=opt(m.outcome_names_b),
    )


def scenario_to_dict(s: Scenario) -> dict[str, Any]:
    out: dict[str, Any] = {
        "inputs_a": s.inputs_a,
        "inputs_b": s.inputs_b,
        "outputs_a": s.outputs_a,
        "outputs_b": s.outputs_b,
    }
    for name in ("setting_names_a", "setting_names_b", "outcome_names_a", "outcome_names_b"):
        value = getattr(s, name)
        if value is not None:
            out[name] = list(value)
    return out


def _header() -> dict[str, Any]:
    return {"schema_version": load_output_config().schema_version}


def behavior_from_document(doc: BehaviorDocument) -> Behavior:
    s = scenario_from_model(doc.scenario)
    return Behavior(s, grid_to_array(doc.table, s.shape))


def behavior_to_dict(b: Behavior) -> dict[str, Any]:
    return {**_header(), "scenario": scenario_to_dict(b.scenario), "table": array_to_grid(b.table)}


def expression_from_document(doc: ExpressionDocument) -> BellExpression:
    s = scenario_from_model(doc.scenario)
    return BellExpression(s, grid_to_array(doc.coeffs, s.shape), doc.description)


def expression_to_dict(e: BellExpression) -> dict[str, Any]:
    return {
        **_header(),
        "scenario": scenario_to_dict(e.scenario),
        "coeffs": array_to_grid(e.coeffs),
        "description": e.description,
    }


def support_from_document(doc: SupportDocument) -> SupportTable:
    s = scenario_from_model(doc.scenario)
    return SupportTable(s, np.array(doc.possible, dtype=bool).reshape(s.shape))


def support_to_dict(t: SupportTable) -> dict[str, Any]:
    return {**_header(), "scenario": scenario_to_dict(t.scenario), "possible": array_to_grid(t.possible)}


def game_from_document(doc: GameDocument) -> Game:
    return Game.from_accepted(
        doc.name, doc.inputs_a, doc.inputs_b, doc.outputs_a, doc.outputs_b, [tuple(t) for t in doc.accepted]
    )


def game_to_dict(g: Game) -> dict[str, Any]:
    return {
        **_header(),
        "name": g.name,
        "inputs_a": list(g.inputs_a),
        "inputs_b": list(g.inputs_b),
        "outputs_a": list(g.outputs_a),
        "outputs_b": list(g.outputs_b),
        "accepted": [list(t) for t in g.accepted_tuples()],
    }


def verdict_to_dict(v: NoGoVerdict) -> dict[str, Any]:
    return {
        "violates_locality": v.violates_locality,
        "btwi": v.btwi,
        "pt": v.pt,
        "witness": v.witness,
        "witness_point": list(v.point_names) if v.point_names else None,
        "membership": "exact" if v.membership_exact else "numerical",
    }
