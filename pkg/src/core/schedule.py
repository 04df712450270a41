"""
Tournament domain types.

A schedule is stored as an integer array of shape ``(rounds, n_teams / 2, 2)``
holding ``[home, away]`` pairs, so that violation counting and distance
computations can work on whole rounds at once. Matchup order inside a round is
kept as constructed but carries no meaning.

Constants:
    DEFAULT_MAX_STREAK (int): The classic maxStreak value (3)
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple, NewType

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from src.core.errors import DomainError, ScheduleStructureError

DEFAULT_MAX_STREAK = 3

TeamId = int
VenueSequence = NewType("VenueSequence", str)


class Venue(StrEnum):
    HOME = "H"
    AWAY = "A"


class MatchUp(NamedTuple):
    home: TeamId
    away: TeamId


Round = tuple[MatchUp, ...]


class TeamRoundCell(NamedTuple):
    opponent: TeamId
    venue: Venue


def season_length(n_teams: int) -> int:
    return 2 * (n_teams - 1)


def check_team_count(n_teams: int) -> int:
    if n_teams < 4 or n_teams % 2 != 0:
        raise DomainError(f"n_teams must be even and >= 4, got {n_teams}")
    return n_teams


@dataclass(frozen=True, eq=False)
class Schedule:
    """A double round robin candidate: ``2 * (n_teams - 1)`` perfect matchings.

    Every round is checked at construction to be a perfect matching of
    ``0 .. n_teams - 1``; cross-round constraints are not checked here, that is
    the job of the violation counters.

    Attributes:
        n_teams (int): Even number of teams, at least 4.
        games (NDArray[np.int64]): Read-only ``(rounds, n_teams / 2, 2)`` array
            of ``[home, away]`` pairs.
    """

    n_teams: int
    games: NDArray[np.int64]

    def __post_init__(self):
        check_team_count(self.n_teams)
        try:
            games = np.array(self.games, dtype=np.int64)
        except ValueError as shape_err:
            raise ScheduleStructureError(f"ragged rounds: {shape_err}") from shape_err
        n_rounds = season_length(self.n_teams)
        expected_shape = (n_rounds, self.n_teams // 2, 2)
        if games.shape != expected_shape:
            logger.error(f"bad schedule shape {games.shape=} {expected_shape=}")
            raise ScheduleStructureError(
                f"expected games of shape {expected_shape}, got {games.shape}"
            )

        # each round must hold every team exactly once
        flat = np.sort(games.reshape(n_rounds, self.n_teams), axis=1)
        bad_rounds = np.flatnonzero(
            (flat != np.arange(self.n_teams)).any(axis=1)
        )
        if bad_rounds.size:
            raise ScheduleStructureError(
                f"round {int(bad_rounds[0])} is not a perfect matching of "
                f"{self.n_teams} teams"
            )

        games.setflags(write=False)
        object.__setattr__(self, "games", games)

    @classmethod
    def from_rounds(
        cls, n_teams: int, rounds: Iterable[Iterable[Sequence[int]]]
    ) -> "Schedule":
        return cls(n_teams=n_teams, games=np.array([list(r) for r in rounds]))

    @property
    def n_rounds(self) -> int:
        return self.games.shape[0]

    @property
    def rounds(self) -> tuple[Round, ...]:
        return tuple(
            tuple(MatchUp(int(h), int(a)) for h, a in round_games)
            for round_games in self.games
        )

    def normalized(self) -> "Schedule":
        """Same schedule with each round's matchups ordered by their lower team."""
        order = np.argsort(self.games.min(axis=2), axis=1)
        return Schedule(
            n_teams=self.n_teams,
            games=np.take_along_axis(self.games, order[:, :, None], axis=1),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Schedule):
            return NotImplemented
        return self.n_teams == other.n_teams and np.array_equal(
            self.games, other.games
        )

    def __hash__(self) -> int:
        return hash((self.n_teams, self.games.tobytes()))


class TeamTable(NamedTuple):
    """Per-team view of a schedule, indexed ``[team, round]``."""

    opponent: NDArray[np.int64]
    home: NDArray[np.bool_]

    @property
    def n_teams(self) -> int:
        return self.opponent.shape[0]

    def cell(self, team: TeamId, round_index: int) -> TeamRoundCell:
        venue = Venue.HOME if self.home[team, round_index] else Venue.AWAY
        return TeamRoundCell(int(self.opponent[team, round_index]), venue)


def per_team_table(schedule: Schedule) -> TeamTable:
    n_rounds = schedule.n_rounds
    opponent = np.empty((schedule.n_teams, n_rounds), dtype=np.int64)
    home = np.zeros((schedule.n_teams, n_rounds), dtype=np.bool_)

    round_idx = np.repeat(np.arange(n_rounds), schedule.n_teams // 2)
    home_teams = schedule.games[:, :, 0].ravel()
    away_teams = schedule.games[:, :, 1].ravel()

    opponent[home_teams, round_idx] = away_teams
    opponent[away_teams, round_idx] = home_teams
    home[home_teams, round_idx] = True
    return TeamTable(opponent=opponent, home=home)


def table_to_schedule(table: TeamTable) -> Schedule:
    """Rebuild the schedule a per-team table describes.

    Matchups within a round come out ordered by home team, so the result
    equals the source schedule as a set of matchups per round.

    Raises:
        ScheduleStructureError: If a round column is not a consistent pairing.
    """
    n_teams, n_rounds = table.n_teams, table.opponent.shape[1]
    teams = np.arange(n_teams)
    rounds: list[list[tuple[int, int]]] = []
    for r in range(n_rounds):
        opp = table.opponent[:, r]
        home = table.home[:, r]
        if (
            ((opp < 0) | (opp >= n_teams)).any()
            or (opp == teams).any()
            or (opp[opp] != teams).any()
            or (home == home[opp]).any()
        ):
            raise ScheduleStructureError(f"round {r} of the table is not a pairing")
        rounds.append([(int(t), int(opp[t])) for t in teams[home]])
    return Schedule.from_rounds(n_teams, rounds)


def venue_sequence(schedule: Schedule, team: TeamId) -> VenueSequence:
    if not 0 <= team < schedule.n_teams:
        raise DomainError(f"team {team} out of range for {schedule.n_teams} teams")
    is_home = (schedule.games[:, :, 0] == team).any(axis=1)
    return VenueSequence(
        "".join(Venue.HOME if h else Venue.AWAY for h in is_home)
    )
