from .errors import (
    DegenerateFitError,
    DomainError,
    ScheduleParseError,
    ScheduleStructureError,
    SweepCellError,
    TournamentError,
)
from .schedule import (
    DEFAULT_MAX_STREAK,
    MatchUp,
    Round,
    Schedule,
    TeamId,
    TeamRoundCell,
    TeamTable,
    Venue,
    VenueSequence,
    check_team_count,
    per_team_table,
    season_length,
    table_to_schedule,
    venue_sequence,
)
from .serialization import (
    ScheduleDocument,
    read_jsonl,
    schedule_from_json,
    schedule_to_json,
    write_jsonl,
)

__all__ = [
    "DEFAULT_MAX_STREAK",
    "MatchUp",
    "Round",
    "Schedule",
    "TeamId",
    "TeamRoundCell",
    "TeamTable",
    "Venue",
    "VenueSequence",
    "check_team_count",
    "per_team_table",
    "season_length",
    "table_to_schedule",
    "venue_sequence",
    "ScheduleDocument",
    "read_jsonl",
    "schedule_from_json",
    "schedule_to_json",
    "write_jsonl",
    "TournamentError",
    "ScheduleStructureError",
    "DomainError",
    "DegenerateFitError",
    "ScheduleParseError",
    "SweepCellError",
]
