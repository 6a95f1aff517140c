"""
The four-step Hardy argument as a checked trace.

Setting 0 is sigma_z and setting 1 is sigma_x on both sides; outcome 0 is +
and outcome 1 is -.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from nonlocality.core.config import load_tolerances
from nonlocality.core.errors import InvalidInputError
from nonlocality.processing.behavior.tables import Behavior, Number

Z, X = 0, 1
PLUS, MINUS = 0, 1


class HardyStatus(str, Enum):
    CONTRADICTION = "contradiction"
    NO_CONTRADICTION = "no-contradiction"
    PREMISE_VACUOUS = "premise-vacuous"
    PATTERN_MISSING = "pattern-missing"


@dataclass(frozen=True)
class HardyChain:
    status: HardyStatus
    steps: tuple[str, ...]
    probabilities: dict[str, Number]

    @property
    def contradiction(self) -> bool:
        return self.status is HardyStatus.CONTRADICTION


def _is_zero(v: Number, eps: float) -> bool:
    return v == 0 if not isinstance(v, float) else v <= eps


def hardy_chain(b: Behavior, eps_support: Optional[float] = None) -> HardyChain:
    if b.scenario.shape != (2, 2, 2, 2):
        raise InvalidInputError(f"Hardy chain needs a 2-setting/2-outcome behavior, got {b.scenario.shape}")
    eps = load_tolerances().eps_support if eps_support is None else eps_support

    p_xx = b.prob(X, X, MINUS, MINUS)
    p_xz = b.prob(X, Z, MINUS, MINUS)
    p_zx = b.prob(Z, X, MINUS, MINUS)
    p_zz = b.prob(Z, Z, PLUS, PLUS)
    cited = {"p(--|x,x)": p_xx, "p(--|x,z)": p_xz, "p(--|z,x)": p_zx, "p(++|z,z)": p_zz}

    if _is_zero(p_xx, eps):
        return HardyChain(
            HardyStatus.PREMISE_VACUOUS,
            (f"p(--|x,x) = {p_xx}: no local instance ever outputs -- on (x, x); nothing to derive",),
            cited,
        )

    steps = [
        f"1. p(--|x,x) = {p_xx} > 0: some LHV instance outputs - on Alice's x and - on Bob's x.",
    ]
    missing = [name for name, v in (("p(--|x,z)", p_xz), ("p(--|z,x)", p_zx)) if not _is_zero(v, eps)]
    if missing:
        steps.append(
            f"2. {' and '.join(missing)} nonzero: the local z outputs of that instance are not forced to +."
        )
        return HardyChain(HardyStatus.PATTERN_MISSING, tuple(steps), cited)

    steps.append(
        f"2. p(--|x,z) = {p_xz} and p(--|z,x) = {p_zx}: with x outputs fixed to -, "
        "locality forces that instance's z outputs to + on both sides."
    )
    steps.append("3. Hence that instance outputs ++ on (z, z).")
    if not _is_zero(p_zz, eps):
        steps.append(f"4. p(++|z,z) = {p_zz} > 0: no contradiction.")
        return HardyChain(HardyStatus.NO_CONTRADICTION, tuple(steps), cited)
    steps.append(f"4. But p(++|z,z) = {p_zz}: contradiction, no LHV model reproduces these zeros.")
    return HardyChain(HardyStatus.CONTRADICTION, tuple(steps), cited)
