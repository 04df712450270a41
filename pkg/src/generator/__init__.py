from .random_tournament import (
    GenConfig,
    random_round,
    random_schedule,
    random_schedules,
    substream,
)

__all__ = [
    "GenConfig",
    "random_round",
    "random_schedule",
    "random_schedules",
    "substream",
]
