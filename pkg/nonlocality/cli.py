"""
Command-line front end for the three canonical no-go demonstrations.

Usage:
    python -m nonlocality chsh [--rounds 100000 --seed 7] [--format json]
    python -m nonlocality hardy
    python -m nonlocality magic-square
    python -m nonlocality classify --input behavior.json [--eps 1e-9]
    python -m nonlocality lhv-bound --game magic-square | --input expression.json
    python -m nonlocality simulate [--input behavior.json] --rounds 100000 --seed 7

Exit codes: 0 ok, 2 validation error, 3 parse error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import pandas as pd

from nonlocality.core.config import load_output_config, load_tolerances, simulation_defaults
from nonlocality.core.errors import DocumentParseError, InvalidInputError
from nonlocality.core.logging import get_logger
from nonlocality.core.schemas import BehaviorDocument, ExpressionDocument, dumps, encode_number, load_document
from nonlocality.processing.behavior import (
    Behavior,
    SimulationResult,
    chsh_expression,
    correlator,
    estimate_expression,
    evaluate_expression,
    lhv_bound,
    simulate_rounds,
)
from nonlocality.processing.catalog import chsh_quantum_behavior, hardy_behavior, hardy_exact_behavior
from nonlocality.processing.documents import behavior_from_document, expression_from_document, verdict_to_dict
from nonlocality.processing.games import (
    BUILTIN_GAMES,
    BUILTIN_STRATEGIES,
    classical_survival_probability,
    classical_value,
    game_behavior,
    game_to_bell_expression,
    is_winning_strategy,
    magic_square,
    magic_square_quantum,
    parity_table_search,
    quantum_win_probability,
)
from nonlocality.processing.nogo import classify, hardy_chain

logger = get_logger(__name__)

COMMANDS = ("chsh", "hardy", "magic-square", "classify", "lhv-bound", "simulate")
EXIT_OK, EXIT_VALIDATION, EXIT_PARSE = 0, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: Optional[Path] = None
    output_format: str = "table"
    eps_support: float = field(default_factory=lambda: load_tolerances().eps_support)
    seed: int = field(default_factory=lambda: simulation_defaults()[1])
    rounds: Optional[int] = None
    game: Optional[str] = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InvalidInputError(f"Unknown command {self.command!r}")
        if self.output_format not in ("table", "json"):
            raise InvalidInputError(f"Unknown output format {self.output_format!r}")
        if not self.eps_support > 0:
            raise InvalidInputError(f"--eps must be > 0, got {self.eps_support}")
        if self.rounds is not None and self.rounds < 1:
            raise InvalidInputError(f"--rounds must be >= 1, got {self.rounds}")


@dataclass
class Report:
    payload: dict[str, Any]
    sections: list[tuple[str, pd.DataFrame | str]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------

def _human(v: Any) -> str:
    places = load_output_config().decimal_places
    if isinstance(v, Fraction):
        return f"{v} ({float(v):.{places}f})" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, float):
        return f"{v:.{places}f}"
    return str(v)


def _kv_frame(rows: Sequence[tuple[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame([(k, _human(v)) for k, v in rows], columns=["quantity", "value"])


def _behavior_frame(b: Behavior) -> pd.DataFrame:
    s = b.scenario
    rows = []
    for x in range(s.inputs_a):
        for y in range(s.inputs_b):
            for a in range(s.outputs_a):
                for bb in range(s.outputs_b):
                    sx, sy, na, nb = s.describe_point(x, y, a, bb)
                    rows.append((sx, sy, na, nb, _human(b.table[x, y, a, bb])))
    return pd.DataFrame(rows, columns=["x", "y", "a", "b", "p(a,b|x,y)"])


def render(report: Report, output_format: str) -> str:
    if output_format == "json":
        return dumps(report.payload)
    chunks = []
    for title, body in report.sections:
        text = body.to_string(index=False) if isinstance(body, pd.DataFrame) else body
        chunks.append(f"== {title}\n{text}")
    return "\n\n".join(chunks)


def _simulation_block(sim: SimulationResult) -> tuple[dict[str, Any], list[tuple[str, Any]]]:
    block: dict[str, Any] = {"rounds": sim.rounds, "seed": sim.seed, "counts": sim.counts.reshape(-1).tolist()}
    rows: list[tuple[str, Any]] = [("rounds", sim.rounds), ("seed", sim.seed)]
    if sim.scenario.shape == (2, 2, 2, 2):
        if (sim.pair_counts == 0).any():
            block["empirical_chsh"] = None
            block["standard_error"] = None
            rows.append(("empirical CHSH", "n/a (a setting pair was never drawn)"))
            return block, rows
        value, se = estimate_expression(chsh_expression(), sim)
        block["empirical_chsh"] = encode_number(value)
        block["standard_error"] = encode_number(se)
        rows += [("empirical CHSH", value), ("standard error", se)]
    return block, rows


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_chsh(cfg: RunConfig) -> Report:
    e = chsh_expression()
    bound = lhv_bound(e)
    qb = chsh_quantum_behavior()
    qv = evaluate_expression(e, qb)
    s = qb.scenario
    corr = {
        f"{s.setting_names_a[x]}{s.setting_names_b[y]}": float(correlator(qb, x, y))  # type: ignore[index]
        for x in range(2)
        for y in range(2)
    }
    payload: dict[str, Any] = {
        "command": "chsh",
        "lhv_bound": encode_number(bound.value),
        "lhv_strategy": bound.strategy.describe(e.scenario),
        "quantum_value": encode_number(qv),
        "two_sqrt_two": encode_number(2 * math.sqrt(2)),
        "correlators": {k: encode_number(v) for k, v in corr.items()},
    }
    summary = [
        ("LHV bound", bound.value),
        ("maximizing strategy", bound.strategy.describe(e.scenario)),
        ("quantum value", float(qv)),
        ("2*sqrt(2)", 2 * math.sqrt(2)),
    ]
    sections: list[tuple[str, Any]] = [
        ("CHSH", _kv_frame(summary)),
        ("Correlators", _kv_frame([(f"<{k}>", v) for k, v in corr.items()])),
    ]
    if cfg.rounds:
        block, rows = _simulation_block(simulate_rounds(qb, cfg.rounds, cfg.seed))
        payload["empirical"] = block
        sections.append(("Finite-sample estimate", _kv_frame(rows)))
    return Report(payload, sections)


def cmd_hardy(cfg: RunConfig) -> Report:
    exact = hardy_exact_behavior()
    numeric = hardy_behavior()
    chain = hardy_chain(exact, cfg.eps_support)
    verdict = classify(exact, cfg.eps_support)
    # Cells of the four cited probabilities, in hardy_chain's order.
    cells = [(1, 1, 1, 1), (1, 0, 1, 1), (0, 1, 1, 1), (0, 0, 0, 0)]
    key = [
        (name, value, float(numeric.table[idx]))
        for (name, value), idx in zip(chain.probabilities.items(), cells)
    ]
    payload = {
        "command": "hardy",
        "probabilities": {name: {"exact": encode_number(v), "quantum": encode_number(q)} for name, v, q in key},
        "chain": {"status": chain.status.value, "steps": list(chain.steps)},
        "verdict": verdict_to_dict(verdict),
    }
    prob_frame = pd.DataFrame(
        [(name, _human(v), _human(q)) for name, v, q in key], columns=["probability", "exact", "quantum"]
    )
    vd = verdict_to_dict(verdict)
    sections: list[tuple[str, Any]] = [
        ("Hardy probabilities", prob_frame),
        ("Logical chain", "\n".join(chain.steps)),
        ("Verdict", f"violates_locality={str(vd['violates_locality']).lower()} "
                    f"btwi={str(vd['btwi']).lower()} pt={str(vd['pt']).lower()}\nwitness: {verdict.witness}"),
    ]
    return Report(payload, sections)


def cmd_magic_square(cfg: RunConfig) -> Report:
    g = magic_square()
    qs = magic_square_quantum()
    valid = parity_table_search()
    cv = classical_value(g)
    qwp = quantum_win_probability(g, qs)
    winning = is_winning_strategy(g, qs)
    verdict = classify(game_behavior(g, qs), cfg.eps_support)
    payload: dict[str, Any] = {
        "command": "magic-square",
        "valid_tables": valid,
        "rows_even_tables": parity_table_search("even", None),
        "columns_odd_tables": parity_table_search(None, "odd"),
        "classical_value": encode_number(cv.value),
        "best_classical_strategy": cv.strategy.describe(g.scenario),
        "quantum_win_probability": encode_number(qwp),
        "quantum_winning": winning,
        "verdict": verdict_to_dict(verdict),
    }
    rows: list[tuple[str, Any]] = [
        ("valid tables", valid),
        ("classical value", cv.value),
        ("quantum win probability", qwp),
        ("quantum strategy wins every round", winning),
    ]
    if cfg.rounds:
        survival = classical_survival_probability(g, cfg.rounds)
        payload["classical_survival"] = {"rounds": cfg.rounds, "probability": encode_number(float(survival))}
        rows.append((f"best classical survives {cfg.rounds} rounds", float(survival)))
    sections: list[tuple[str, Any]] = [
        ("Magic Square", _kv_frame(rows)),
        ("Verdict", f"violates_locality={str(verdict.violates_locality).lower()} "
                    f"btwi={str(verdict.btwi).lower()} pt={str(verdict.pt).lower()}\nwitness: {verdict.witness}"),
    ]
    return Report(payload, sections)


def _require_input(cfg: RunConfig) -> Path:
    if cfg.input_path is None:
        raise InvalidInputError(f"Command {cfg.command!r} needs --input <path>")
    return cfg.input_path


def cmd_classify(cfg: RunConfig) -> Report:
    b = behavior_from_document(load_document(_require_input(cfg), BehaviorDocument))
    verdict = classify(b, cfg.eps_support)
    vd = verdict_to_dict(verdict)
    frame = _kv_frame([(k, str(v).lower() if isinstance(v, bool) else v) for k, v in vd.items()])
    return Report({"command": "classify", **vd}, [("Verdict", frame)])


def cmd_lhv_bound(cfg: RunConfig) -> Report:
    payload: dict[str, Any] = {"command": "lhv-bound"}
    rows: list[tuple[str, Any]] = []
    if cfg.game is not None:
        if cfg.game == "chsh":
            e = chsh_expression()
        elif cfg.game in BUILTIN_GAMES:
            g = BUILTIN_GAMES[cfg.game]()
            e = game_to_bell_expression(g)
            cv = classical_value(g).value
            qv = quantum_win_probability(g, BUILTIN_STRATEGIES[cfg.game]())
            payload["classical_value"] = encode_number(cv)
            payload["quantum_value"] = encode_number(qv)
            rows += [("classical value", cv), ("quantum value", qv)]
        else:
            raise InvalidInputError(
                f"Unknown built-in {cfg.game!r}; choose chsh or one of {sorted(BUILTIN_GAMES)}"
            )
    else:
        e = expression_from_document(load_document(_require_input(cfg), ExpressionDocument))
    bound = lhv_bound(e)
    payload.update(
        {
            "description": e.description,
            "lhv_bound": encode_number(bound.value),
            "strategy": bound.strategy.describe(e.scenario),
            "strategies_checked": bound.strategies_checked,
        }
    )
    rows = [
        ("expression", e.description),
        ("LHV bound", bound.value),
        ("maximizing strategy", bound.strategy.describe(e.scenario)),
        ("strategies checked", bound.strategies_checked),
    ] + rows
    return Report(payload, [("LHV bound", _kv_frame(rows))])


def cmd_simulate(cfg: RunConfig) -> Report:
    if cfg.input_path is not None:
        b = behavior_from_document(load_document(cfg.input_path, BehaviorDocument))
    else:
        b = chsh_quantum_behavior()
    sim = simulate_rounds(b, cfg.rounds or simulation_defaults()[0], cfg.seed)
    block, rows = _simulation_block(sim)
    frequencies = sim.frequencies
    payload = {"command": "simulate", **block, "frequencies": [encode_number(v) for v in frequencies.reshape(-1)]}
    freq_frame = _behavior_frame(b).rename(columns={"p(a,b|x,y)": "p"})
    freq_frame["count"] = sim.counts.reshape(-1)
    freq_frame["frequency"] = [_human(float(v)) for v in frequencies.reshape(-1)]
    return Report(payload, [("Simulation", _kv_frame(rows)), ("Counts", freq_frame)])


HANDLERS: dict[str, Callable[[RunConfig], Report]] = {
    "chsh": cmd_chsh,
    "hardy": cmd_hardy,
    "magic-square": cmd_magic_square,
    "classify": cmd_classify,
    "lhv-bound": cmd_lhv_bound,
    "simulate": cmd_simulate,
}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table", help="Output format.")
    common.add_argument("--eps", type=float, default=None, help="Support threshold eps_support.")
    common.add_argument("--seed", type=int, default=None, help="Sampler seed.")
    common.add_argument("--rounds", type=int, default=None, help="Number of simulated rounds.")
    common.add_argument("--input", type=Path, default=None, help="JSON document to read.")
    common.add_argument("--game", default=None, help="Built-in name for lhv-bound (chsh, chsh-game, magic-square).")

    parser = argparse.ArgumentParser(
        prog="nonlocality",
        description="Bell theorems, Bell theorems without inequalities and pseudo-telepathy, executable.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    defaults = RunConfig(command=args.command)
    return RunConfig(
        command=args.command,
        input_path=args.input,
        output_format=args.format,
        eps_support=defaults.eps_support if args.eps is None else args.eps,
        seed=defaults.seed if args.seed is None else args.seed,
        rounds=args.rounds,
        game=args.game,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        report = HANDLERS[cfg.command](cfg)
    except DocumentParseError as exc:
        logger.error("Parse error", extra={"error": str(exc), "line": exc.line, "field": exc.field})
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidInputError as exc:
        logger.error("Validation error", extra={"error": str(exc)})
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(render(report, cfg.output_format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
