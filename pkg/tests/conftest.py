from importlib.resources import files

import pytest

from src.assets import schedules as schedule_assets
from src.core import Schedule, read_jsonl
from src.enumerator import EnumConfig, iter_valid


def load_schedule(name: str) -> Schedule:
    resource = files(schedule_assets).joinpath(name)
    with resource.open("r", encoding="utf-8") as stream:
        (schedule,) = list(read_jsonl(stream))
    return schedule


@pytest.fixture
def valid_schedule() -> Schedule:
    """The hand-built valid 4-team schedule V.

    Rounds: [(0,1),(2,3)], [(0,2),(1,3)], [(0,3),(1,2)],
            [(1,0),(3,2)], [(2,0),(3,1)], [(3,0),(2,1)]
    """
    return load_schedule("valid_4team.jsonl")


@pytest.fixture
def single_swap_schedule() -> Schedule:
    """V with the fourth round's (1,0) replaced by (0,1)."""
    return load_schedule("single_swap_4team.jsonl")


@pytest.fixture(scope="session")
def enumerated_4team() -> list[Schedule]:
    """All valid half-normalized 4-team schedules in canonical order."""
    return list(iter_valid(EnumConfig(n_teams=4)))
