from nonlocality.processing.behavior.membership import MembershipResult, local_membership
from nonlocality.processing.behavior.sampling import (
    SimulationResult,
    estimate_expression,
    forbidden_events,
    simulate_rounds,
)
from nonlocality.processing.behavior.strategies import LhvBound, enumerate_deterministic, lhv_bound
from nonlocality.processing.behavior.tables import (
    BellExpression,
    Behavior,
    DeterministicStrategy,
    Scenario,
    SupportTable,
    behavior_from_quantum,
    chsh_expression,
    correlator,
    evaluate_expression,
    mixture_behavior,
    rationalize_behavior,
    strategy_behavior,
    support_of,
    total_variation,
)

__all__ = [
    "BellExpression",
    "Behavior",
    "DeterministicStrategy",
    "LhvBound",
    "MembershipResult",
    "Scenario",
    "SimulationResult",
    "SupportTable",
    "behavior_from_quantum",
    "chsh_expression",
    "correlator",
    "enumerate_deterministic",
    "estimate_expression",
    "evaluate_expression",
    "forbidden_events",
    "lhv_bound",
    "local_membership",
    "mixture_behavior",
    "rationalize_behavior",
    "simulate_rounds",
    "strategy_behavior",
    "support_of",
    "total_variation",
]
