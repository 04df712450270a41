from .backtracking import (
    EnumConfig,
    PartialSchedule,
    PruneReason,
    PruneResult,
    enumerate_valid,
    iter_valid,
    next_matchup_candidates,
    prune_check,
)

__all__ = [
    "EnumConfig",
    "PartialSchedule",
    "PruneReason",
    "PruneResult",
    "enumerate_valid",
    "iter_valid",
    "next_matchup_candidates",
    "prune_check",
]
