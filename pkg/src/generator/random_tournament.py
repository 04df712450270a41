"""
Rows-first random tournament generation.

Each round is a shuffle of ``[0 .. n_teams - 1]`` read off in pairs, the
earlier team of each pair playing at home. Cross-round constraints are ignored.

Randomness comes from numpy's PCG64 bit generator. Every sample gets its own
substream whose seed is the SeedSequence hash of
``(master_seed, n_teams, sample_index)``, so samples can be produced in any
order, or in parallel, with identical results.
"""

from collections.abc import Iterator

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.core import MatchUp, Round, Schedule, check_team_count, season_length

SEED_LIMIT = 2**64


class GenConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_teams: int
    seed: int = Field(ge=0, lt=SEED_LIMIT)

    @field_validator("n_teams")
    @classmethod
    def _even_team_count(cls, n_teams: int) -> int:
        return check_team_count(n_teams)


def substream(master_seed: int, n_teams: int, sample_index: int) -> np.random.Generator:
    seed_seq = np.random.SeedSequence([master_seed, n_teams, sample_index])
    return np.random.Generator(np.random.PCG64(seed_seq))


def _shuffled_pairs(n_teams: int, rng: np.random.Generator) -> NDArray[np.int64]:
    return rng.permutation(n_teams).reshape(n_teams // 2, 2)


def random_round(n_teams: int, rng: np.random.Generator) -> Round:
    check_team_count(n_teams)
    return tuple(MatchUp(int(h), int(a)) for h, a in _shuffled_pairs(n_teams, rng))


def random_schedule(cfg: GenConfig, sample_index: int) -> Schedule:
    rng = substream(cfg.seed, cfg.n_teams, sample_index)
    games = np.stack(
        [_shuffled_pairs(cfg.n_teams, rng) for _ in range(season_length(cfg.n_teams))]
    )
    return Schedule(n_teams=cfg.n_teams, games=games)


def random_schedules(cfg: GenConfig, count: int, start: int = 0) -> Iterator[Schedule]:
    for sample_index in range(start, start + count):
        yield random_schedule(cfg, sample_index)
