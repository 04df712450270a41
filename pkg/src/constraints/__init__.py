from .violations import (
    CSV_HEADER,
    CountingConvention,
    ViolationReport,
    count_drr,
    count_maxstreak,
    count_norepeat,
    is_valid,
    streak_violations,
    violation_report,
)

__all__ = [
    "CSV_HEADER",
    "CountingConvention",
    "ViolationReport",
    "count_drr",
    "count_maxstreak",
    "count_norepeat",
    "is_valid",
    "streak_violations",
    "violation_report",
]
