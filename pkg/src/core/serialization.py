"""
Canonical JSON form of schedules and JSON Lines collections.

One schedule per line: ``{"n_teams":N,"rounds":[[[h,a],...],...]}``.
"""

from collections.abc import Iterable, Iterator
from typing import IO

from loguru import logger
from pydantic import BaseModel, ConfigDict, ValidationError

from src.core.errors import ScheduleParseError, TournamentError
from src.core.schedule import Schedule


class ScheduleDocument(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_teams: int
    rounds: list[list[tuple[int, int]]]

    @classmethod
    def from_schedule(cls, schedule: Schedule) -> "ScheduleDocument":
        return cls(n_teams=schedule.n_teams, rounds=schedule.games.tolist())

    def to_schedule(self) -> Schedule:
        return Schedule.from_rounds(self.n_teams, self.rounds)


def schedule_to_json(schedule: Schedule) -> str:
    return ScheduleDocument.from_schedule(schedule).model_dump_json()


def schedule_from_json(text: str) -> Schedule:
    return ScheduleDocument.model_validate_json(text).to_schedule()


def write_jsonl(schedules: Iterable[Schedule], stream: IO[str]) -> int:
    count = 0
    for schedule in schedules:
        stream.write(schedule_to_json(schedule))
        stream.write("\n")
        count += 1
    return count


def read_jsonl(stream: IO[str]) -> Iterator[Schedule]:
    """Parses schedules line by line; blank lines are skipped.

    Raises:
        ScheduleParseError: With the 1-based line number of the first bad line.
    """
    for line_number, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            yield schedule_from_json(line)
        except (ValidationError, TournamentError) as parse_err:
            logger.error(f"failed to parse schedule {line_number=}: {parse_err}")
            raise ScheduleParseError(line_number, str(parse_err)) from parse_err
