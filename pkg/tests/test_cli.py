import io
import json
import sys
from pathlib import Path

import pytest
from loguru import logger

from src.analytics import SweepRecord, write_sweep_csv
from src.cli import EXIT_DATA_ERROR, EXIT_OK, EXIT_USAGE_ERROR, main
from src.core import Schedule, schedule_from_json, schedule_to_json


@pytest.fixture(autouse=True)
def restore_logger():
    yield
    # main() binds the sink to the captured stderr of the test that called it
    logger.remove()
    logger.add(lambda message: sys.stderr.write(message), level="INFO")


def run(argv: list[str], capsys: pytest.CaptureFixture[str]) -> tuple[int, str, str]:
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def usage_exit(argv: list[str]) -> int:
    with pytest.raises(SystemExit) as exit_info:
        main(argv)
    return exit_info.value.code


@pytest.fixture
def valid_file(tmp_path: Path, valid_schedule: Schedule) -> Path:
    path = tmp_path / "valid.jsonl"
    path.write_text(schedule_to_json(valid_schedule) + "\n", encoding="utf-8")
    return path


@pytest.mark.unit
def test_gen_writes_one_schedule_per_line(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, err = run(["gen", "--teams", "4", "--count", "3", "--seed", "42"], capsys)

    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 3
    for line in lines:
        schedule = schedule_from_json(line)
        assert schedule.n_rounds == 6
    assert "generated 3" in err


@pytest.mark.unit
def test_gen_is_reproducible(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (first, second):
        assert main(["gen", "--teams", "6", "--count", "5", "--seed", "7", "--out", str(path)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.unit
def test_gen_rejects_odd_team_count() -> None:
    assert usage_exit(["gen", "--teams", "5", "--count", "1", "--seed", "1"]) == EXIT_USAGE_ERROR


@pytest.mark.unit
def test_check_reports_valid_schedule(valid_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, out, _ = run(["check", "--in", str(valid_file)], capsys)
    assert code == EXIT_OK
    assert out == "drr,max_streak_k,max_streak,no_repeat\n0,3,0,0\n"

    _, out, _ = run(["check", "--in", str(valid_file), "-K", "1"], capsys)
    assert out.splitlines()[1] == "0,1,14,0"


@pytest.mark.unit
def test_check_matrix_convention(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "repeated.jsonl"
    path.write_text(
        json.dumps({"n_teams": 4, "rounds": [[[0, 1], [2, 3]]] * 6}) + "\n", encoding="utf-8"
    )
    _, out, _ = run(["check", "--in", str(path), "--convention", "matrix"], capsys)
    assert out.splitlines()[1] == "10,3,12,20"


@pytest.mark.unit
def test_check_empty_input(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "empty.jsonl"
    path.write_text("", encoding="utf-8")
    code, out, _ = run(["check", "--in", str(path)], capsys)
    assert code == EXIT_OK
    assert out == "drr,max_streak_k,max_streak,no_repeat\n"


@pytest.mark.unit
def test_check_parse_error_exits_1(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "broken.jsonl"
    path.write_text('{"n_teams": 4, "rounds": [[[0, 1], [0, 3]]]}\n', encoding="utf-8")
    code, _, err = run(["check", "--in", str(path)], capsys)
    assert code == EXIT_DATA_ERROR
    assert "line 1" in err


@pytest.mark.unit
def test_check_missing_file_exits_1(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, _, _ = run(["check", "--in", str(tmp_path / "nope.jsonl")], capsys)
    assert code == EXIT_DATA_ERROR


@pytest.mark.unit
def test_unwritable_out_is_not_reported_as_read_error(
    valid_file: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    out = tmp_path / "missing" / "report.csv"
    code, _, err = run(["check", "--in", str(valid_file), "--out", str(out)], capsys)
    assert code == EXIT_DATA_ERROR
    assert "cannot write" in err
    assert "cannot read" not in err


@pytest.mark.unit
def test_sweep_single_cell(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["sweep", "--teams", "4..4", "--samples", "200", "--k", "3..3", "--seed", "2025"]
    code, out, _ = run(argv, capsys)

    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "n_teams,constraint,k,samples,min,avg,max"
    assert [line.split(",")[:4] for line in lines[1:]] == [
        ["4", "drr", "", "200"],
        ["4", "norepeat", "", "200"],
        ["4", "maxstreak", "3", "200"],
    ]

    _, again, _ = run(argv + ["--workers", "2"], capsys)
    assert again == out


@pytest.mark.unit
def test_sweep_summary_goes_to_stderr(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["sweep", "--teams", "4..6", "--samples", "20", "--k", "1..2", "--seed", "1", "--summary"]
    code, out, err = run(argv, capsys)
    assert code == EXIT_OK
    assert len(out.splitlines()) == 1 + 2 * 4
    assert "expected" in err


@pytest.mark.unit
@pytest.mark.parametrize("teams", ["8..4", "5..9", "x"])
def test_sweep_rejects_bad_team_range(teams: str) -> None:
    assert usage_exit(["sweep", "--teams", teams, "--seed", "1"]) == EXIT_USAGE_ERROR


def write_records(path: Path, records: list[SweepRecord]) -> None:
    buffer = io.StringIO()
    write_sweep_csv(records, buffer)
    path.write_text(buffer.getvalue(), encoding="utf-8")


@pytest.mark.unit
def test_fit_recovers_exact_quadratic(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "sweep.csv"
    write_records(
        path,
        [
            SweepRecord(
                n_teams=n, constraint="maxstreak", k=2, samples=1, min=0, avg=0.5 * n * n - 2 * n, max=n * n
            )
            for n in (4, 6, 8, 10)
        ],
    )
    code, out, err = run(["fit", "--in", str(path)], capsys)

    assert code == EXIT_OK
    (line,) = out.splitlines()
    fit = json.loads(line)
    assert fit["constraint"] == "maxstreak"
    assert fit["k"] == 2
    assert fit["A"] == pytest.approx(0.5)
    assert fit["B"] == pytest.approx(-2.0)
    assert fit["C"] == pytest.approx(0.0, abs=1e-9)
    assert "maxstreak" in err


@pytest.mark.unit
def test_fit_degenerate_exits_1(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "sweep.csv"
    write_records(
        path,
        [SweepRecord(n_teams=n, constraint="drr", samples=1, min=0, avg=1.0, max=2) for n in (4, 6)],
    )
    code, _, _ = run(["fit", "--in", str(path)], capsys)
    assert code == EXIT_DATA_ERROR


@pytest.mark.unit
def test_fit_without_matching_curve_exits_1(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "sweep.csv"
    write_records(
        path,
        [SweepRecord(n_teams=n, constraint="drr", samples=1, min=0, avg=1.0, max=2) for n in (4, 6, 8)],
    )
    code, _, _ = run(["fit", "--in", str(path), "--constraint", "norepeat"], capsys)
    assert code == EXIT_DATA_ERROR


@pytest.mark.unit
def test_enumerate_four_teams(capsys: pytest.CaptureFixture[str]) -> None:
    code, out, err = run(["enumerate", "--teams", "4"], capsys)
    assert code == EXIT_OK
    assert len(out.splitlines()) == 160
    assert "count 160" in err

    _, limited, err = run(["enumerate", "--teams", "4", "--limit", "5"], capsys)
    assert limited.splitlines() == out.splitlines()[:5]
    assert "count 5" in err


@pytest.mark.unit
def test_enumerate_then_check_is_all_zero(
    monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    _, enumerated, _ = run(["enumerate", "--teams", "4"], capsys)
    monkeypatch.setattr("sys.stdin", io.StringIO(enumerated))

    code, out, _ = run(["check", "--in", "-"], capsys)
    assert code == EXIT_OK
    rows = out.splitlines()[1:]
    assert len(rows) == 160
    assert set(rows) == {"0,3,0,0"}


@pytest.mark.unit
def test_diff_of_enumerated_population(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    population = tmp_path / "valid.jsonl"
    hist = tmp_path / "hist.csv"
    assert main(["enumerate", "--teams", "4", "--out", str(population)]) == EXIT_OK

    code, out, _ = run(["diff", "--in", str(population), "--hist", str(hist)], capsys)
    assert code == EXIT_OK
    stats = json.loads(out)
    assert stats["mode"] == "full"
    assert stats["pairs"] == 12_720
    assert stats["mean"] == pytest.approx(199_680 / 12_720)

    rows = hist.read_text(encoding="utf-8").splitlines()
    assert rows[0] == "distance,count"
    assert sum(int(row.split(",")[1]) for row in rows[1:]) == 12_720

    _, out, _ = run(["diff", "--in", str(population), "--mode", "venue"], capsys)
    assert json.loads(out)["mean"] == pytest.approx(120_832 / 12_720)


@pytest.mark.unit
def test_diff_of_identical_pair(tmp_path: Path, valid_schedule: Schedule, capsys) -> None:
    path = tmp_path / "pair.jsonl"
    path.write_text((schedule_to_json(valid_schedule) + "\n") * 2, encoding="utf-8")
    _, out, _ = run(["diff", "--in", str(path)], capsys)
    assert json.loads(out) == {"mode": "full", "pairs": 1, "mean": 0.0}


@pytest.mark.unit
def test_diff_single_schedule_exits_1(valid_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, _, _ = run(["diff", "--in", str(valid_file)], capsys)
    assert code == EXIT_DATA_ERROR


@pytest.mark.unit
@pytest.mark.parametrize(
    ("argv", "expected"),
    [
        (["--teams", "4", "--constraint", "maxstreak", "--k", "3"], "1.5"),
        (["--teams", "4", "--constraint", "norepeat"], repr(10 / 3)),
        (["--teams", "4", "--constraint", "maxstreak", "--k", "6"], "0.0"),
    ],
)
def test_expect_prints_closed_form(
    argv: list[str], expected: str, capsys: pytest.CaptureFixture[str]
) -> None:
    code, out, _ = run(["expect", *argv], capsys)
    assert code == EXIT_OK
    assert out.strip() == expected


@pytest.mark.unit
def test_expect_maxstreak_needs_k() -> None:
    assert usage_exit(["expect", "--teams", "4", "--constraint", "maxstreak"]) == EXIT_USAGE_ERROR
