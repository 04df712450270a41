"""
Violation counting for the three TTP constraints.

Counts follow tuple semantics: every round is a list of ``(home, away)`` games.

- doubleRoundRobin: one violation per missing ordered game plus one per
  surplus appearance of an ordered game.
- maxStreak(k): every game past ``k`` in a run of equal venues is one violation.
  Runs at the start of the season count like any other.
- noRepeat: one violation per unordered pair that meets in two adjacent
  rounds, whatever the venues.

The matrix convention reports DRR halved and noRepeat doubled relative to the
tuple counts; maxStreak is the same in both.
"""

from enum import StrEnum
from itertools import groupby

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core import DomainError, Schedule, VenueSequence, per_team_table

CSV_HEADER = "drr,max_streak_k,max_streak,no_repeat"


class CountingConvention(StrEnum):
    TUPLE = "tuple"
    MATRIX = "matrix"


class ViolationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    drr: int = Field(ge=0)
    max_streak: int = Field(ge=0)
    max_streak_k: int = Field(ge=1)
    no_repeat: int = Field(ge=0)
    convention: CountingConvention = CountingConvention.TUPLE

    @model_validator(mode="after")
    def _drr_parity(self) -> "ViolationReport":
        if self.convention == CountingConvention.TUPLE and self.drr % 2:
            raise ValueError(f"tuple DRR count must be even, got {self.drr}")
        return self

    @property
    def is_valid(self) -> bool:
        return self.drr == 0 and self.max_streak == 0 and self.no_repeat == 0

    def to_csv_row(self) -> str:
        return f"{self.drr},{self.max_streak_k},{self.max_streak},{self.no_repeat}"


def _check_k(k: int) -> None:
    if k < 1:
        raise DomainError(f"maxStreak threshold must be >= 1, got {k}")


def count_drr(schedule: Schedule) -> int:
    n = schedule.n_teams
    codes = schedule.games[:, :, 0] * n + schedule.games[:, :, 1]
    appearances = np.bincount(codes.ravel(), minlength=n * n).reshape(n, n)
    off_diagonal = ~np.eye(n, dtype=np.bool_)

    missing = np.count_nonzero((appearances == 0) & off_diagonal)
    surplus = np.clip(appearances - 1, 0, None).sum()
    return int(missing + surplus)


def streak_violations(venues: VenueSequence | str, k: int) -> int:
    _check_k(k)
    return sum(max(0, len(list(run)) - k) for _, run in groupby(venues))


def count_maxstreak(schedule: Schedule, k: int) -> int:
    _check_k(k)
    home = per_team_table(schedule).home
    # same[t, i] is True when rounds i and i + 1 share a venue for team t
    same = home[:, 1:] == home[:, :-1]
    if k > same.shape[1]:
        return 0
    # a game at position i >= k violates when the k steps before it kept the venue
    return int(sliding_window_view(same, k, axis=1).all(axis=-1).sum())


def count_norepeat(schedule: Schedule) -> int:
    opponent = per_team_table(schedule).opponent
    # each recurring pair is seen by both of its teams
    return int(np.count_nonzero(opponent[:, 1:] == opponent[:, :-1]) // 2)


def violation_report(
    schedule: Schedule,
    k: int,
    convention: CountingConvention = CountingConvention.TUPLE,
) -> ViolationReport:
    drr = count_drr(schedule)
    no_repeat = count_norepeat(schedule)
    if convention == CountingConvention.MATRIX:
        drr //= 2
        no_repeat *= 2
    return ViolationReport(
        drr=drr,
        max_streak=count_maxstreak(schedule, k),
        max_streak_k=k,
        no_repeat=no_repeat,
        convention=convention,
    )


def is_valid(schedule: Schedule, k: int) -> bool:
    return violation_report(schedule, k).is_valid
