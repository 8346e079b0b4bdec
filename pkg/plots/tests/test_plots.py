"""Secondary-package tests: schema round-trips, figure smoke, the fitted
convergence slope, and the skip-with-warning path."""

import csv

import numpy as np
import pytest

from bq6_plots.cli import render_report
from bq6_plots.figures import render_convergence, render_plateau
from bq6_plots.readers import SchemaError, read_field, read_traces

F = "%.17g"


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


@pytest.fixture()
def report(tmp_path):
    """Synthetic artifact set conforming to the documented schemas."""
    t = np.linspace(0, 1, 21)
    x = np.linspace(0, 5, 31)
    u = np.sin(2 * x)[None, :] * np.exp(-t)[:, None]
    write_csv(tmp_path / "field.csv", ["t", "x", "u"],
              [(F % ti, F % xj, F % u[i, j])
               for i, ti in enumerate(t) for j, xj in enumerate(x)])
    write_csv(tmp_path / "traces.csv", ["t", "order", "value"],
              [(F % ti, k, F % (np.sin(ti) * (k + 1)))
               for k in (0, 2, 4) for ti in t])
    write_csv(tmp_path / "iterations.csv", ["k", "diff_norm", "ratio"],
              [(1, "1e-2", ""), (2, "1e-4", "1e-2"), (3, "1e-6", "1e-2")])
    write_csv(tmp_path / "convergence.csv", ["dx", "error"],
              [("0.01", "1e-2"), ("0.005", "2.5e-3"), ("0.0025", "6.3e-4")])
    rows = []
    for s in (0.0, -0.4):
        for R in (64, 256, 1024):
            rows.append(("bilinear", f"aggregate_R={R}", F % s, "0.45",
                         F % (0.3 + 0.01 * np.log2(R)), "true"))
    write_csv(tmp_path / "scan.csv",
              ["suite", "name", "param_s", "param_b", "value", "pass"], rows)
    return tmp_path


def test_field_roundtrip(report):
    t, x, u = read_field(report / "field.csv")
    assert u.shape == (21, 31)
    assert abs(u[0, 1] - np.sin(2 * x[1])) < 1e-15


def test_traces_reader(report):
    tr = read_traces(report / "traces.csv")
    assert sorted(tr) == [0, 2, 4]
    t, v = tr[2]
    assert len(t) == 21


def test_schema_error_names_columns(tmp_path):
    write_csv(tmp_path / "field.csv", ["time", "x", "u"], [("0", "0", "1")])
    with pytest.raises(SchemaError) as exc:
        read_field(tmp_path / "field.csv")
    assert "t" in str(exc.value)


def test_render_full_report(report, tmp_path):
    figs = tmp_path / "figs"
    written, skipped, notes = render_report(report, figs)
    names = sorted(p.name for p in written)
    assert names == ["contraction.png", "convergence.png", "plateau.png",
                     "traces.png", "waterfall.png"]
    assert not skipped
    for p in written:
        assert p.stat().st_size > 2000  # nonempty image


def test_empty_report_skips_everything(tmp_path):
    written, skipped, notes = render_report(tmp_path / "nothing",
                                            tmp_path / "figs")
    assert written == []
    assert sorted(skipped) == ["contraction", "convergence", "plateau",
                               "traces", "waterfall"]


def test_convergence_slope_annotation(report, tmp_path):
    # errors (1e-2, 2.5e-3, 6.3e-4) at dx halvings fit order ~2
    out, slope = render_convergence(report / "convergence.csv",
                                    tmp_path / "conv.png")
    fitted = np.polyfit(np.log([0.01, 0.005, 0.0025]),
                        np.log([1e-2, 2.5e-3, 6.3e-4]), 1)[0]
    assert abs(slope - fitted) <= 0.2
    assert abs(slope - 2.0) <= 0.2


def test_rerender_identical(report, tmp_path):
    a = render_plateau(report / "scan.csv", tmp_path / "p1.png")
    b = render_plateau(report / "scan.csv", tmp_path / "p2.png")
    assert (tmp_path / "p1.png").read_bytes() == (tmp_path / "p2.png").read_bytes()


def test_unknown_figure_kind_rejected(report, tmp_path):
    with pytest.raises(ValueError):
        render_report(report, tmp_path / "figs", only=["sculpture"])
