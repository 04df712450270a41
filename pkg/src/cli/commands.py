"""
Command-line surface: one subcommand per experiment.

Data goes to stdout or ``--out``; logs, counts and summaries go to stderr.
Exit codes: 0 success, 1 data or computation error, 2 usage error.
"""

import argparse
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from typing import IO

from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.progress import Progress
from rich.table import Table

from src.analytics import (
    Constraint,
    SweepConfig,
    SweepRecord,
    expected_coefficients,
    expected_violations,
    fit_curves,
    read_sweep_csv,
    run_sweep,
    write_sweep_csv,
)
from src.constraints import CSV_HEADER, CountingConvention, violation_report
from src.core import DEFAULT_MAX_STREAK, TournamentError, read_jsonl, write_jsonl
from src.diversity import DiffMode, pairwise_stats, write_histogram_csv
from src.enumerator import EnumConfig, iter_valid
from src.generator import GenConfig, random_schedules

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2

console = Console(stderr=True)


class UsageError(Exception):
    """Flag values that parse but are rejected by a config model."""


def even_team_count(text: str) -> int:
    value = int(text)
    if value < 4 or value % 2:
        raise argparse.ArgumentTypeError(f"team count must be even and >= 4, got {value}")
    return value


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected an integer >= 0, got {value}")
    return value


def inclusive_range(text: str, step: int) -> list[int]:
    """Parses ``lo..hi`` (or a single value) into an inclusive stepped range."""
    lo_text, sep, hi_text = text.partition("..")
    try:
        lo = int(lo_text)
        hi = int(hi_text) if sep else lo
    except ValueError as range_err:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from range_err
    if hi < lo:
        raise argparse.ArgumentTypeError(f"inverted range {text!r}")
    return list(range(lo, hi + 1, step))


def team_range(text: str) -> list[int]:
    teams = inclusive_range(text, step=2)
    for n_teams in teams:
        even_team_count(str(n_teams))
    return teams


def k_range(text: str) -> list[int]:
    ks = inclusive_range(text, step=1)
    if ks[0] < 1:
        raise argparse.ArgumentTypeError(f"k must be >= 1, got {text!r}")
    return ks


@contextmanager
def open_output(path: str | None) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        out = open(path, "w", encoding="utf-8", newline="")
    except OSError as io_err:
        raise TournamentError(f"cannot write {path}: {io_err}") from io_err
    with out:
        yield out


@contextmanager
def open_input(path: str) -> Iterator[IO[str]]:
    if path == "-":
        yield sys.stdin
        return
    try:
        stream = open(path, encoding="utf-8", newline="")
    except OSError as io_err:
        raise TournamentError(f"cannot read {path}: {io_err}") from io_err
    with stream:
        yield stream


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = GenConfig(n_teams=args.teams, seed=args.seed)
    with open_output(args.out) as out:
        written = write_jsonl(random_schedules(cfg, args.count), out)
    console.print(f"generated {written} schedules ({cfg.n_teams} teams, seed {cfg.seed})")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    convention = CountingConvention(args.convention)
    rows = 0
    with open_input(args.input) as stream, open_output(args.out) as out:
        out.write(CSV_HEADER + "\n")
        for schedule in read_jsonl(stream):
            report = violation_report(schedule, args.max_streak, convention)
            out.write(report.to_csv_row() + "\n")
            rows += 1
    console.print(f"checked {rows} schedules at maxStreak={args.max_streak}")
    return EXIT_OK


def _summary_table(records: Sequence[SweepRecord]) -> Table:
    table = Table(title="observed vs expected average violations")
    for column in ("n_teams", "constraint", "k", "observed", "expected"):
        table.add_column(column, justify="right")
    for record in records:
        expected = expected_violations(record.n_teams, record.constraint, record.k)
        table.add_row(
            str(record.n_teams),
            record.constraint.value,
            "" if record.k is None else str(record.k),
            f"{record.avg:.6g}",
            f"{expected:.6g}",
        )
    return table


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = SweepConfig(
        team_sizes=args.teams,
        samples_per_size=args.samples,
        k_values=args.k,
        master_seed=args.seed,
    )
    total = len(cfg.team_sizes) * cfg.samples_per_size
    with Progress(console=console, transient=True) as progress:
        task = progress.add_task(f"sweeping {total} tournaments", total=len(cfg.team_sizes))
        records = run_sweep(
            cfg,
            workers=args.workers,
            on_cell=lambda _n: progress.advance(task),
        )
    with open_output(args.out) as out:
        write_sweep_csv(records, out)
    console.print(f"{total} tournaments, {len(records)} records")
    if args.summary:
        console.print(_summary_table(records))
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    constraint = Constraint(args.constraint) if args.constraint else None
    with open_input(args.input) as stream:
        records = read_sweep_csv(stream)
    fits = fit_curves(records, constraint=constraint, k=args.k)
    if not fits:
        raise TournamentError(
            f"no curve in {args.input} matches constraint={args.constraint} k={args.k}"
        )

    table = Table(title="fitted A vs 2^(1-k)")
    for column in ("curve", "A", "B", "C", "r_squared", "law A"):
        table.add_column(column, justify="right")
    with open_output(args.out) as out:
        for fit in fits:
            out.write(fit.model_dump_json() + "\n")
            law = "" if fit.k is None else f"{expected_coefficients(fit.k).A:.6g}"
            table.add_row(
                fit.label, f"{fit.A:.6g}", f"{fit.B:.6g}", f"{fit.C:.6g}", f"{fit.r_squared:.6g}", law
            )
    console.print(table)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    cfg = EnumConfig(n_teams=args.teams, max_streak=args.max_streak, limit=args.limit)
    with open_output(args.out) as out:
        emitted = write_jsonl(iter_valid(cfg), out)
    console.print(f"count {emitted}")
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    with open_input(args.input) as stream:
        population = list(read_jsonl(stream))
    stats = pairwise_stats(population, DiffMode(args.mode))

    with open_output(args.out) as out:
        out.write(stats.to_json() + "\n")
    if args.hist:
        with open_output(args.hist) as hist:
            write_histogram_csv(stats, hist)
    console.print(f"{stats.mode} mode: {stats.pair_count} pairs, mean {stats.mean:.6g}")
    return EXIT_OK


def cmd_expect(args: argparse.Namespace) -> int:
    constraint = Constraint(args.constraint)
    if constraint == Constraint.MAXSTREAK and args.k is None:
        raise UsageError("--k is required for --constraint maxstreak")
    value = expected_violations(args.teams, constraint, args.k)
    print(repr(value))
    console.print(f"expected {constraint} violations at {args.teams} teams: {value:.6g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttp-landscape",
        description="Random tournaments, violation counts, exhaustive enumeration "
        "and schedule diversity for the traveling tournament problem.",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO logs, -vv for DEBUG"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate rows-first random schedules as JSON Lines")
    gen.add_argument("--teams", type=even_team_count, required=True, help="even team count >= 4")
    gen.add_argument("--count", type=positive_int, required=True, help="number of schedules")
    gen.add_argument("--seed", type=non_negative_int, required=True, help="master seed")
    gen.add_argument("--out", help="output path (default stdout)")
    gen.set_defaults(handler=cmd_gen)

    check = sub.add_parser("check", help="count violations for each schedule of a JSON Lines file")
    check.add_argument("--in", dest="input", required=True, help="schedules file, - for stdin")
    check.add_argument(
        "-K", "--max-streak", type=positive_int, default=DEFAULT_MAX_STREAK, help="maxStreak threshold"
    )
    check.add_argument(
        "--convention",
        choices=[c.value for c in CountingConvention],
        default=CountingConvention.TUPLE.value,
        help="tuple counts (default) or matrix-based counts",
    )
    check.add_argument("--out", help="output CSV path (default stdout)")
    check.set_defaults(handler=cmd_check)

    sweep = sub.add_parser("sweep", help="violation statistics over random tournaments")
    sweep.add_argument("--teams", type=team_range, default=team_range("4..50"), help="lo..hi, step 2")
    sweep.add_argument("--samples", type=positive_int, default=1000, help="schedules per team count")
    sweep.add_argument("--k", type=k_range, default=k_range("1..6"), help="maxStreak values lo..hi")
    sweep.add_argument("--seed", type=non_negative_int, required=True, help="master seed")
    sweep.add_argument("--workers", type=positive_int, default=1, help="worker processes")
    sweep.add_argument("--summary", action="store_true", help="print observed vs expected table")
    sweep.add_argument("--out", help="output CSV path (default stdout)")
    sweep.set_defaults(handler=cmd_sweep)

    fit = sub.add_parser("fit", help="fit A n^2 + B n + C to the averages of a sweep CSV")
    fit.add_argument("--in", dest="input", required=True, help="sweep CSV, - for stdin")
    fit.add_argument("--constraint", choices=[c.value for c in Constraint], help="only this constraint")
    fit.add_argument("--k", type=positive_int, help="only this maxStreak value")
    fit.add_argument("--out", help="output path (default stdout)")
    fit.set_defaults(handler=cmd_fit)

    enum = sub.add_parser("enumerate", help="all valid half-normalized schedules")
    enum.add_argument("--teams", type=even_team_count, required=True, help="even team count >= 4")
    enum.add_argument("--max-streak", type=positive_int, default=DEFAULT_MAX_STREAK)
    enum.add_argument("--limit", type=non_negative_int, help="stop after this many schedules")
    enum.add_argument("--out", help="output path (default stdout)")
    enum.set_defaults(handler=cmd_enumerate)

    diff = sub.add_parser("diff", help="pairwise slot differences of a schedule population")
    diff.add_argument("--in", dest="input", required=True, help="schedules file, - for stdin")
    diff.add_argument("--mode", choices=[m.value for m in DiffMode], default=DiffMode.FULL.value)
    diff.add_argument("--hist", help="write the distance histogram CSV here")
    diff.add_argument("--out", help="stats JSON path (default stdout)")
    diff.set_defaults(handler=cmd_diff)

    expect = sub.add_parser("expect", help="closed-form expected violations")
    expect.add_argument("--teams", type=even_team_count, required=True)
    expect.add_argument("--constraint", choices=[c.value for c in Constraint], required=True)
    expect.add_argument("--k", type=positive_int, help="maxStreak value")
    expect.set_defaults(handler=cmd_expect)

    return parser


def configure_logging(verbosity: int) -> None:
    level = {0: "WARNING", 1: "INFO"}.get(verbosity, "DEBUG")
    logger.remove()
    logger.add(sys.stderr, level=level)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        return args.handler(args)
    except (UsageError, ValidationError) as usage_err:
        parser.error(str(usage_err))
    except TournamentError as data_err:
        logger.error(f"{args.command} failed: {data_err}")
        console.print(f"[red]error:[/red] {escape(str(data_err))}")
        return EXIT_DATA_ERROR
