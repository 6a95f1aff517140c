from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

load_dotenv()

# Package root = folder that contains /core, /infra, /processing, etc.
_PACKAGE_ROOT = Path(__file__).resolve().parents[1]
_DEFAULT_CONFIG_PATH = _PACKAGE_ROOT / "infra" / "config" / "nonlocality.yaml"

ENUM_CAP_ENV = "NONLOCALITY_ENUM_CAP"


def _config_path() -> Path:
    override = os.getenv("NONLOCALITY_CONFIG")
    return Path(override) if override else _DEFAULT_CONFIG_PATH


def load_config(path: Path | None = None) -> Dict[str, Any]:
    path = path or _config_path()
    if not path.exists():
        raise FileNotFoundError(f"Nonlocality config not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Invalid config format in {path} (expected YAML mapping).")
    return data  # type: ignore[return-value]


# Central config object (loaded once at import time)
CONFIG: Dict[str, Any] = load_config()


@dataclass(frozen=True)
class Tolerances:
    eps_norm: float
    eps_herm: float
    max_total_dimension: int
    eps_prob: float
    eps_support: float
    eps_lp: float
    rational_max_denominator: int
    eps_win: float


@dataclass(frozen=True)
class OutputConfig:
    schema_version: int
    significant_digits: int
    decimal_places: int


def load_tolerances() -> Tolerances:
    q_cfg = CONFIG.get("quantum", {}) or {}
    b_cfg = CONFIG.get("behavior", {}) or {}
    g_cfg = CONFIG.get("games", {}) or {}
    return Tolerances(
        eps_norm=float(q_cfg.get("eps_norm", 1e-9)),
        eps_herm=float(q_cfg.get("eps_herm", 1e-9)),
        max_total_dimension=int(q_cfg.get("max_total_dimension", 81)),
        eps_prob=float(b_cfg.get("eps_prob", 1e-9)),
        eps_support=float(b_cfg.get("eps_support", 1e-9)),
        eps_lp=float(b_cfg.get("eps_lp", 1e-9)),
        rational_max_denominator=int(b_cfg.get("rational_max_denominator", 10**6)),
        eps_win=float(g_cfg.get("eps_win", 1e-9)),
    )


def load_output_config() -> OutputConfig:
    o_cfg = CONFIG.get("output", {}) or {}
    return OutputConfig(
        schema_version=int(o_cfg.get("schema_version", 1)),
        significant_digits=int(o_cfg.get("significant_digits", 12)),
        decimal_places=int(o_cfg.get("decimal_places", 10)),
    )


def enumeration_cap() -> int:
    """Strategy-enumeration cap; the environment variable wins over the YAML value."""
    raw = os.getenv(ENUM_CAP_ENV)
    if raw:
        try:
            return int(float(raw))
        except ValueError:
            raise ValueError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}")
    return int((CONFIG.get("behavior", {}) or {}).get("enumeration_cap", 10**7))


def simulation_defaults() -> tuple[int, int]:
    s_cfg = CONFIG.get("simulation", {}) or {}
    return int(s_cfg.get("default_rounds", 100_000)), int(s_cfg.get("default_seed", 7))
