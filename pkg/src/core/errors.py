"""Exceptions shared by every module of the toolkit."""


class TournamentError(ValueError):
    """Base class for data and computation errors (CLI exit code 1)."""


class ScheduleStructureError(TournamentError):
    """A schedule or per-team table that breaks the round structure."""


class DomainError(TournamentError):
    """A value outside the domain an operation accepts."""


class DegenerateFitError(TournamentError):
    pass


class ScheduleParseError(TournamentError):
    def __init__(self, line_number: int, reason: str) -> None:
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number


class SweepCellError(TournamentError):
    def __init__(self, n_teams: int, reason: str) -> None:
        super().__init__(f"sweep cell n_teams={n_teams} incomplete: {reason}")
        self.n_teams = n_teams
