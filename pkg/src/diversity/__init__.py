from .schedule_distance import (
    DiffMode,
    DiffStats,
    diff,
    pairwise_distances,
    pairwise_stats,
    project,
    write_histogram_csv,
)

__all__ = [
    "DiffMode",
    "DiffStats",
    "diff",
    "pairwise_distances",
    "pairwise_stats",
    "project",
    "write_histogram_csv",
]
