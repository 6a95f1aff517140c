from nonlocality.processing.nogo.classifier import (
    Decision,
    NoGoVerdict,
    StrategyFilterResult,
    classify,
    is_btwi,
    is_pseudotelepathic,
    support_respecting_strategies,
)
from nonlocality.processing.nogo.hardy import HardyChain, HardyStatus, hardy_chain

__all__ = [
    "Decision",
    "HardyChain",
    "HardyStatus",
    "NoGoVerdict",
    "StrategyFilterResult",
    "classify",
    "hardy_chain",
    "is_btwi",
    "is_pseudotelepathic",
    "support_respecting_strategies",
]
