"""
Exhaustive depth-first enumeration of valid half-normalized schedules.

Round 0 is fixed to ``[(0, 1), (2, 3), ..., (n-2, n-1)]``. Every later round is
built one matchup at a time; after each placement the three constraints are
checked on the partial schedule and the branch is abandoned as soon as one of
them breaks. Within a round the lowest team not yet placed is always paired
next, so each round is produced in exactly one matchup order.

Bookkeeping is incremental: played ordered games, each team's current venue run
and each team's opponent in the last completed round.
"""

from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from enum import StrEnum
from itertools import islice
from typing import NamedTuple

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.constraints import is_valid
from src.core import (
    DEFAULT_MAX_STREAK,
    MatchUp,
    Round,
    Schedule,
    Venue,
    check_team_count,
    season_length,
)


class EnumConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_teams: int
    max_streak: int = Field(default=DEFAULT_MAX_STREAK, ge=1)
    limit: int | None = Field(default=None, ge=0)

    @field_validator("n_teams")
    @classmethod
    def _even_team_count(cls, n_teams: int) -> int:
        return check_team_count(n_teams)


class PruneReason(StrEnum):
    DRR = "doubleRoundRobin"
    MAX_STREAK = "maxStreak"
    NO_REPEAT = "noRepeat"


class PruneResult(NamedTuple):
    accepted: bool
    reason: PruneReason | None = None


ACCEPT = PruneResult(accepted=True)


class _Run(NamedTuple):
    venue: Venue | None
    length: int


@dataclass
class PartialSchedule:
    """Completed rounds plus the round under construction."""

    n_teams: int
    max_streak: int = DEFAULT_MAX_STREAK
    rounds: list[Round] = field(default_factory=list)
    current: list[MatchUp] = field(default_factory=list)
    played: set[MatchUp] = field(default_factory=set)
    runs: list[_Run] = field(default_factory=list)
    last_opponent: list[int | None] = field(default_factory=list)
    placed: set[int] = field(default_factory=set)
    _undo: list[tuple[_Run, _Run]] = field(default_factory=list, repr=False)
    _closed: list[list[int | None]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        check_team_count(self.n_teams)
        if not self.runs:
            self.runs = [_Run(None, 0)] * self.n_teams
        if not self.last_opponent:
            self.last_opponent = [None] * self.n_teams

    @classmethod
    def half_normalized(cls, n_teams: int, max_streak: int = DEFAULT_MAX_STREAK) -> "PartialSchedule":
        partial = cls(n_teams=n_teams, max_streak=max_streak)
        for home in range(0, n_teams, 2):
            partial.place(MatchUp(home, home + 1))
        partial.close_round()
        return partial

    @property
    def round_full(self) -> bool:
        return len(self.current) == self.n_teams // 2

    @property
    def complete(self) -> bool:
        return len(self.rounds) == season_length(self.n_teams)

    def extended_run(self, team: int, venue: Venue) -> _Run:
        run = self.runs[team]
        return _Run(venue, run.length + 1 if run.venue == venue else 1)

    def place(self, matchup: MatchUp) -> None:
        home_run = self.runs[matchup.home]
        away_run = self.runs[matchup.away]
        self._undo.append((home_run, away_run))
        self.runs[matchup.home] = self.extended_run(matchup.home, Venue.HOME)
        self.runs[matchup.away] = self.extended_run(matchup.away, Venue.AWAY)
        self.current.append(matchup)
        self.played.add(matchup)
        self.placed.update(matchup)

    def unplace(self) -> MatchUp:
        matchup = self.current.pop()
        self.runs[matchup.home], self.runs[matchup.away] = self._undo.pop()
        self.played.discard(matchup)
        self.placed.difference_update(matchup)
        return matchup

    def close_round(self) -> None:
        self._closed.append(self.last_opponent)
        opponents: list[int | None] = [None] * self.n_teams
        for home, away in self.current:
            opponents[home] = away
            opponents[away] = home
        self.last_opponent = opponents
        self.rounds.append(tuple(self.current))
        self.current = []
        self.placed = set()

    def reopen_round(self) -> None:
        self.current = list(self.rounds.pop())
        self.placed = {team for matchup in self.current for team in matchup}
        self.last_opponent = self._closed.pop()

    def to_schedule(self) -> Schedule:
        return Schedule.from_rounds(self.n_teams, self.rounds)


def prune_check(partial: PartialSchedule, matchup: MatchUp) -> PruneResult:
    if matchup in partial.played:
        return PruneResult(False, PruneReason.DRR)
    if (
        partial.extended_run(matchup.home, Venue.HOME).length > partial.max_streak
        or partial.extended_run(matchup.away, Venue.AWAY).length > partial.max_streak
    ):
        return PruneResult(False, PruneReason.MAX_STREAK)
    if partial.last_opponent[matchup.home] == matchup.away:
        return PruneResult(False, PruneReason.NO_REPEAT)
    return ACCEPT


def next_matchup_candidates(partial: PartialSchedule) -> list[MatchUp]:
    """Accepted extensions of the current round, in canonical branching order.

    The lowest unplaced team is paired with every other unplaced team, opponent
    ascending, home-first orientation before away-first.
    """
    free = [t for t in range(partial.n_teams) if t not in partial.placed]
    if not free:
        return []
    team, opponents = free[0], free[1:]
    structural = (
        matchup
        for opponent in opponents
        for matchup in (MatchUp(team, opponent), MatchUp(opponent, team))
    )
    return [m for m in structural if prune_check(partial, m).accepted]


def _search(partial: PartialSchedule) -> Iterator[Schedule]:
    if partial.complete:
        schedule = partial.to_schedule()
        # full recount, stripped under python -O
        assert is_valid(schedule, partial.max_streak), "enumerator emitted an invalid schedule"
        yield schedule
        return

    for matchup in next_matchup_candidates(partial):
        partial.place(matchup)
        if partial.round_full:
            partial.close_round()
            yield from _search(partial)
            partial.reopen_round()
        else:
            yield from _search(partial)
        partial.unplace()


def iter_valid(cfg: EnumConfig) -> Iterator[Schedule]:
    schedules = _search(PartialSchedule.half_normalized(cfg.n_teams, cfg.max_streak))
    return schedules if cfg.limit is None else islice(schedules, cfg.limit)


def enumerate_valid(cfg: EnumConfig, sink: Callable[[Schedule], object]) -> int:
    """Streams every valid half-normalized schedule into ``sink``.

    Args:
        cfg (EnumConfig): Team count, maxStreak threshold and optional limit.
        sink (Callable[[Schedule], object]): Called once per schedule, in
            canonical depth-first order, on the caller's thread.

    Returns:
        int: Number of schedules emitted.
    """
    emitted = 0
    for schedule in iter_valid(cfg):
        sink(schedule)
        emitted += 1
    logger.info(f"enumeration finished {cfg=} {emitted=}")
    return emitted
