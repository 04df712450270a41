from .scaling import (
    Constraint,
    CurveFit,
    CurvePoint,
    FitCoefficients,
    expected_coefficients,
    expected_violations,
    fit_quadratic,
)
from .sweep import (
    SWEEP_CSV_HEADER,
    CellCounts,
    SweepConfig,
    SweepRecord,
    cell_records,
    fit_curves,
    read_sweep_csv,
    run_sweep,
    sweep_cell,
    write_sweep_csv,
)

__all__ = [
    "Constraint",
    "CurveFit",
    "CurvePoint",
    "FitCoefficients",
    "expected_coefficients",
    "expected_violations",
    "fit_quadratic",
    "SWEEP_CSV_HEADER",
    "CellCounts",
    "SweepConfig",
    "SweepRecord",
    "cell_records",
    "fit_curves",
    "read_sweep_csv",
    "run_sweep",
    "sweep_cell",
    "write_sweep_csv",
]
