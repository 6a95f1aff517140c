"""Finite-sample Bell experiments: settings drawn at random each round."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from nonlocality.core.errors import InvalidInputError
from nonlocality.core.logging import get_logger
from nonlocality.processing.behavior.tables import BellExpression, Behavior, Scenario, SupportTable

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SimulationResult:
    scenario: Scenario
    counts: np.ndarray
    rounds: int
    seed: int

    @property
    def pair_counts(self) -> np.ndarray:
        return self.counts.sum(axis=(2, 3))

    @property
    def frequencies(self) -> np.ndarray:
        """Per-setting-pair relative frequencies; pairs never drawn stay all-zero."""
        n = self.pair_counts[:, :, None, None]
        return np.divide(self.counts, n, out=np.zeros(self.counts.shape), where=n > 0)

    def empirical_behavior(self) -> Behavior:
        missing = np.argwhere(self.pair_counts == 0)
        if missing.size:
            x, y = (int(v) for v in missing[0])
            raise InvalidInputError(
                f"Setting pair {self.scenario.describe_setting(x, y)} was never drawn in {self.rounds} rounds"
            )
        return Behavior(self.scenario, self.frequencies)


def _input_distribution(s: Scenario, input_dist: Optional[np.ndarray]) -> np.ndarray:
    if input_dist is None:
        return np.full(s.inputs_a * s.inputs_b, 1.0 / (s.inputs_a * s.inputs_b))
    dist = np.asarray(input_dist, dtype=float)
    if dist.shape != (s.inputs_a, s.inputs_b):
        raise InvalidInputError(f"Input distribution has shape {dist.shape}, expected {(s.inputs_a, s.inputs_b)}")
    if dist.min() < 0 or abs(float(dist.sum()) - 1.0) > 1e-9:
        raise InvalidInputError("Input distribution must be nonnegative and sum to 1")
    return dist.reshape(-1)


def simulate_rounds(
    b: Behavior,
    rounds: int,
    seed: int,
    input_dist: Optional[np.ndarray] = None,
) -> SimulationResult:
    """
    Draw (x, y) from input_dist, then (a, b) from p(.|x, y), `rounds` times.

    Sampling is sequential per setting pair through one seeded generator, so a
    fixed seed gives bit-identical counts.
    """
    if int(rounds) != rounds or rounds < 1:
        raise InvalidInputError(f"rounds must be an integer >= 1, got {rounds!r}")
    s = b.scenario
    rng = np.random.default_rng(seed)
    pairs = rng.multinomial(int(rounds), _input_distribution(s, input_dist))
    probs = b.as_float().clip(min=0.0)
    counts = np.zeros(s.shape, dtype=np.int64)
    for k, n in enumerate(pairs):
        x, y = divmod(k, s.inputs_b)
        if n:
            p = probs[x, y].reshape(-1)
            counts[x, y] = rng.multinomial(int(n), p / p.sum()).reshape(s.outputs_a, s.outputs_b)
    logger.debug("Simulated rounds", extra={"rounds": int(rounds), "seed": seed})
    return SimulationResult(s, counts, int(rounds), seed)


def estimate_expression(e: BellExpression, sim: SimulationResult) -> tuple[float, float]:
    """
    Empirical value of a Bell expression and its standard error.

    Each setting pair contributes an independent multinomial sample mean; pairs
    with a single draw contribute no variance estimate.
    """
    if e.scenario.shape != sim.scenario.shape:
        raise InvalidInputError(f"Scenario mismatch: {e.scenario.shape} vs {sim.scenario.shape}")
    missing = np.argwhere(sim.pair_counts == 0)
    if missing.size:
        x, y = (int(v) for v in missing[0])
        raise InvalidInputError(f"Setting pair {sim.scenario.describe_setting(x, y)} was never drawn")
    coeffs = e.coeffs.astype(float)
    freq = sim.frequencies
    value = 0.0
    variance = 0.0
    for x, y in np.ndindex(*sim.pair_counts.shape):
        c = coeffs[x, y]
        f = freq[x, y]
        mean = float(np.sum(c * f))
        value += mean
        n = int(sim.pair_counts[x, y])
        if n > 1:
            variance += (float(np.sum(c * c * f)) - mean * mean) / n
    return value, float(np.sqrt(variance))


def forbidden_events(sim: SimulationResult, support: SupportTable) -> int:
    """Number of sampled outcomes that the support marks impossible."""
    if sim.scenario.shape != support.scenario.shape:
        raise InvalidInputError(f"Scenario mismatch: {sim.scenario.shape} vs {support.scenario.shape}")
    return int(sim.counts[~support.possible].sum())
