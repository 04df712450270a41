"""
Pairwise schedule distances.

A slot is one (team, round) cell of the per-team table. Two schedules differ
in a slot when the compared content differs:

- full: opponent and venue
- opponent: opponent only
- venue: home/away only

The distance is the Hamming distance over all slots. For two half-normalized
4-team schedules the fixed first round never differs, so at most 20 of the 24
slots can.
"""

import csv
from collections.abc import Sequence
from enum import StrEnum
from typing import IO

import numpy as np
from loguru import logger
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.spatial.distance import pdist

from src.core import DomainError, Schedule, per_team_table

HISTOGRAM_CSV_HEADER = ["distance", "count"]


class DiffMode(StrEnum):
    FULL = "full"
    OPPONENT = "opponent"
    VENUE = "venue"


class DiffStats(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    mode: DiffMode
    pair_count: int = Field(serialization_alias="pairs", ge=1)
    mean: float
    histogram: dict[int, int] = Field(exclude=True)

    @model_validator(mode="after")
    def _histogram_matches(self) -> "DiffStats":
        if sum(self.histogram.values()) != self.pair_count:
            raise ValueError("histogram counts do not add up to the pair count")
        total = sum(distance * count for distance, count in self.histogram.items())
        if abs(total / self.pair_count - self.mean) > 1e-9:
            raise ValueError("mean does not match the histogram")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)


def project(schedule: Schedule, mode: DiffMode) -> NDArray[np.int64]:
    """Flattened slot contents of ``schedule`` as compared under ``mode``."""
    table = per_team_table(schedule)
    match DiffMode(mode):
        case DiffMode.FULL:
            cells = table.opponent * 2 + table.home
        case DiffMode.OPPONENT:
            cells = table.opponent
        case DiffMode.VENUE:
            cells = table.home.astype(np.int64)
    return cells.ravel()


def _check_same_shape(schedules: Sequence[Schedule]) -> None:
    shapes = {s.games.shape for s in schedules}
    if len(shapes) > 1:
        raise DomainError(f"schedules differ in shape: {sorted(shapes)}")


def diff(first: Schedule, second: Schedule, mode: DiffMode) -> int:
    _check_same_shape([first, second])
    return int(np.count_nonzero(project(first, mode) != project(second, mode)))


def pairwise_distances(population: Sequence[Schedule], mode: DiffMode) -> NDArray[np.int64]:
    """Condensed distance vector over pairs ``(i, j)``, ``i < j``, index-ascending."""
    if len(population) < 2:
        raise DomainError(f"need at least 2 schedules, got {len(population)}")
    _check_same_shape(population)

    cells = np.stack([project(s, mode) for s in population])
    # scipy gives the fraction of differing slots
    fractions = pdist(cells, metric="hamming")
    return np.rint(fractions * cells.shape[1]).astype(np.int64)


def pairwise_stats(population: Sequence[Schedule], mode: DiffMode) -> DiffStats:
    distances = pairwise_distances(population, mode)
    counts = np.bincount(distances)
    histogram = {int(d): int(c) for d, c in enumerate(counts) if c}
    pair_count = int(distances.size)
    stats = DiffStats(
        mode=DiffMode(mode),
        pair_count=pair_count,
        mean=int(distances.sum()) / pair_count,
        histogram=histogram,
    )
    logger.info(f"pairwise stats {stats.mode=} {stats.pair_count=} {stats.mean=}")
    return stats


def write_histogram_csv(stats: DiffStats, stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n", quoting=csv.QUOTE_NONE)
    writer.writerow(HISTOGRAM_CSV_HEADER)
    for distance in sorted(stats.histogram):
        writer.writerow([distance, stats.histogram[distance]])
