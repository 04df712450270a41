"""
The random-tournament sweep: for every team count, generate samples, count
violations on each sample once per constraint (maxStreak once per k on the same
schedule) and keep min / avg / max per cell.

Reduction is over exact integers, so records do not depend on the order in
which cells run or on how many worker processes run them.
"""

import csv
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import IO, NamedTuple

import numpy as np
from loguru import logger
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.analytics.scaling import Constraint, CurveFit, CurvePoint, fit_quadratic
from src.constraints import count_drr, count_maxstreak, count_norepeat
from src.core import DegenerateFitError, SweepCellError, TournamentError, check_team_count
from src.generator import GenConfig, random_schedule
from src.generator.random_tournament import SEED_LIMIT

SWEEP_CSV_HEADER = ["n_teams", "constraint", "k", "samples", "min", "avg", "max"]
DEFAULT_TEAM_SIZES = list(range(4, 51, 2))
DEFAULT_K_VALUES = list(range(1, 7))


class SweepConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    team_sizes: list[int] = Field(default_factory=lambda: list(DEFAULT_TEAM_SIZES), min_length=1)
    samples_per_size: int = Field(default=1000, ge=1)
    k_values: list[int] = Field(default_factory=lambda: list(DEFAULT_K_VALUES), min_length=1)
    master_seed: int = Field(ge=0, lt=SEED_LIMIT)

    @field_validator("team_sizes")
    @classmethod
    def _even_sizes(cls, team_sizes: list[int]) -> list[int]:
        for n_teams in team_sizes:
            check_team_count(n_teams)
        return team_sizes

    @field_validator("k_values")
    @classmethod
    def _positive_k(cls, k_values: list[int]) -> list[int]:
        if any(k < 1 for k in k_values):
            raise ValueError(f"k values must be >= 1, got {k_values}")
        return k_values


class SweepRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_teams: int
    constraint: Constraint
    k: int | None = None
    samples: int = Field(ge=1)
    min: int
    avg: float
    max: int
    # sample standard deviation; not part of the CSV
    std: float | None = Field(default=None, exclude=True)

    @model_validator(mode="after")
    def _ordered(self) -> "SweepRecord":
        if not self.min <= self.avg <= self.max:
            raise ValueError(f"expected min <= avg <= max, got {self.min}, {self.avg}, {self.max}")
        if (self.constraint == Constraint.MAXSTREAK) != (self.k is not None):
            raise ValueError("k is set for maxstreak records only")
        return self

    def to_csv_fields(self) -> list[str]:
        return [
            str(self.n_teams),
            self.constraint.value,
            "" if self.k is None else str(self.k),
            str(self.samples),
            str(self.min),
            repr(self.avg),
            str(self.max),
        ]


class CellCounts(NamedTuple):
    """Per-sample violation counts for one team count."""

    n_teams: int
    drr: NDArray[np.int64]
    norepeat: NDArray[np.int64]
    maxstreak: dict[int, NDArray[np.int64]]


def sweep_cell(n_teams: int, cfg: SweepConfig) -> CellCounts:
    gen_cfg = GenConfig(n_teams=n_teams, seed=cfg.master_seed)
    samples = cfg.samples_per_size
    drr = np.empty(samples, dtype=np.int64)
    norepeat = np.empty(samples, dtype=np.int64)
    maxstreak = {k: np.empty(samples, dtype=np.int64) for k in cfg.k_values}

    for sample_index in range(samples):
        schedule = random_schedule(gen_cfg, sample_index)
        drr[sample_index] = count_drr(schedule)
        norepeat[sample_index] = count_norepeat(schedule)
        for k, counts in maxstreak.items():
            counts[sample_index] = count_maxstreak(schedule, k)

    logger.info(f"sweep cell done {n_teams=} {samples=}")
    return CellCounts(n_teams=n_teams, drr=drr, norepeat=norepeat, maxstreak=maxstreak)


def _record(
    n_teams: int, constraint: Constraint, k: int | None, counts: NDArray[np.int64]
) -> SweepRecord:
    samples = counts.size
    return SweepRecord(
        n_teams=n_teams,
        constraint=constraint,
        k=k,
        samples=samples,
        min=int(counts.min()),
        # integer sum first so the mean is exact up to the final division
        avg=int(counts.sum()) / samples,
        max=int(counts.max()),
        std=float(counts.std(ddof=1)) if samples > 1 else 0.0,
    )


def cell_records(cell: CellCounts, k_values: Sequence[int]) -> list[SweepRecord]:
    records = [
        _record(cell.n_teams, Constraint.DRR, None, cell.drr),
        _record(cell.n_teams, Constraint.NOREPEAT, None, cell.norepeat),
    ]
    records.extend(
        _record(cell.n_teams, Constraint.MAXSTREAK, k, cell.maxstreak[k]) for k in k_values
    )
    return records


def run_sweep(
    cfg: SweepConfig,
    workers: int = 1,
    on_cell: Callable[[int], None] | None = None,
) -> list[SweepRecord]:
    """Runs every cell of the grid and returns records in grid order.

    Args:
        cfg (SweepConfig): Grid, sample count and master seed.
        workers (int): Worker processes; 1 runs in the calling process.
        on_cell (Callable[[int], None] | None): Called with each finished n_teams.

    Raises:
        SweepCellError: Naming the first team count whose cell did not complete.
    """
    records: list[SweepRecord] = []

    def collect(n_teams: int, cell_fn: Callable[[], CellCounts]) -> None:
        try:
            cell = cell_fn()
        except (MemoryError, OSError, RuntimeError) as cell_err:
            logger.error(f"sweep cell failed {n_teams=} {cell_err=}")
            raise SweepCellError(n_teams, repr(cell_err)) from cell_err
        records.extend(cell_records(cell, cfg.k_values))
        if on_cell is not None:
            on_cell(n_teams)

    if workers <= 1:
        for n_teams in cfg.team_sizes:
            collect(n_teams, lambda n=n_teams: sweep_cell(n, cfg))
        return records

    with ProcessPoolExecutor(max_workers=workers) as pool:
        # submission order, not completion order, fixes the record order
        futures = [(n, pool.submit(sweep_cell, n, cfg)) for n in cfg.team_sizes]
        for n_teams, future in futures:
            collect(n_teams, future.result)
    return records


def write_sweep_csv(records: Iterable[SweepRecord], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n", quoting=csv.QUOTE_NONE)
    writer.writerow(SWEEP_CSV_HEADER)
    for record in records:
        writer.writerow(record.to_csv_fields())


def read_sweep_csv(stream: IO[str]) -> list[SweepRecord]:
    reader = csv.DictReader(stream)
    if reader.fieldnames != SWEEP_CSV_HEADER:
        raise TournamentError(f"not a sweep CSV, header is {reader.fieldnames}")

    records = []
    for line_number, row in enumerate(reader, start=2):
        # DictReader pads short rows with None and files long ones under None
        if None in row or None in row.values():
            logger.error(f"bad sweep row {line_number=} {row=}")
            raise TournamentError(
                f"sweep CSV line {line_number}: expected {len(SWEEP_CSV_HEADER)} fields"
            )
        try:
            records.append(
                SweepRecord(
                    n_teams=int(row["n_teams"]),
                    constraint=row["constraint"],
                    k=int(row["k"]) if row["k"] else None,
                    samples=int(row["samples"]),
                    min=int(row["min"]),
                    avg=float(row["avg"]),
                    max=int(row["max"]),
                )
            )
        except (ValueError, ValidationError) as row_err:
            logger.error(f"bad sweep row {line_number=} {row=}")
            raise TournamentError(f"sweep CSV line {line_number}: {row_err}") from row_err
    return records


def fit_curves(
    records: Iterable[SweepRecord],
    constraint: Constraint | None = None,
    k: int | None = None,
) -> list[CurveFit]:
    """Fits one quadratic per (constraint, k) curve, over the avg column only."""
    curves: dict[tuple[Constraint, int | None], list[CurvePoint]] = {}
    for record in records:
        if constraint is not None and record.constraint != constraint:
            continue
        if k is not None and record.k != k:
            continue
        curves.setdefault((record.constraint, record.k), []).append(
            CurvePoint(record.n_teams, record.avg)
        )

    fits = []
    for (curve_constraint, curve_k), points in curves.items():
        label = curve_constraint if curve_k is None else f"{curve_constraint}(k={curve_k})"
        try:
            coefficients = fit_quadratic(points)
        except DegenerateFitError as fit_err:
            raise DegenerateFitError(f"curve {label}: {fit_err}") from fit_err
        fits.append(
            CurveFit(constraint=curve_constraint, k=curve_k, **coefficients.model_dump())
        )
        logger.debug(f"fitted {label}: {coefficients=}")
    return fits
