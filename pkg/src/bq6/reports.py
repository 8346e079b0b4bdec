"""CSV artifact writers and the run-metadata record.

Schemas (consumed by the plotting package and external tooling):

    field.csv    header t,x,u           row-major in t then x
    traces.csv   header t,order,value
    verify.csv   header suite,name,param_s,param_b,value,pass
    iterations.csv  header k,diff_norm,ratio
    convergence.csv header dx,error
    metadata.json   config echo, seed, grid sizes, versions, wall time

Floats are written with 17 significant digits so identical runs produce
byte-identical bodies (timestamps live only in metadata).
"""

from __future__ import annotations

import csv
import json
import time
from pathlib import Path

import numpy as np

__all__ = ["write_field", "write_traces", "write_verify", "write_iterations",
           "write_convergence", "write_metadata", "read_field", "VerifyRow"]

FMT = "%.17g"


def _f(x):
    return FMT % float(x)


def write_field(path, field):
    """Field CSV: t,x,u rows, outer loop over t."""
    t = field.t_grid
    x = field.x_grid
    vals = np.asarray(field.values)
    if np.iscomplexobj(vals):
        vals = vals.real
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "x", "u"])
        for i, ti in enumerate(t):
            for j, xj in enumerate(x):
                w.writerow([_f(ti), _f(xj), _f(vals[i, j])])


def read_field(path):
    """Read a field CSV back into (t_grid, x_grid, values)."""
    t_vals, x_vals, u_vals = [], [], []
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header[:3] != ["t", "x", "u"]:
            raise ValueError(f"not a field CSV: header {header}")
        for row in r:
            t_vals.append(float(row[0]))
            x_vals.append(float(row[1]))
            u_vals.append(float(row[2]))
    t = np.unique(t_vals)
    x = np.unique(x_vals)
    return t, x, np.asarray(u_vals).reshape(len(t), len(x))


def write_traces(path, t_grid, traces):
    """Traces CSV: t,order,value; `traces` maps order -> series."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "order", "value"])
        for order in sorted(traces):
            series = np.asarray(traces[order])
            if np.iscomplexobj(series):
                series = series.real
            for ti, vi in zip(t_grid, series):
                w.writerow([_f(ti), order, _f(vi)])


class VerifyRow:
    """One verification result: suite, name, parameters, value, pass flag."""

    def __init__(self, suite, name, value, passed, s=float("nan"),
                 b=float("nan")):
        self.suite = suite
        self.name = name
        self.value = float(value)
        self.passed = bool(passed)
        self.s = s
        self.b = b


def write_verify(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["suite", "name", "param_s", "param_b", "value", "pass"])
        for r in rows:
            w.writerow([r.suite, r.name, _f(r.s), _f(r.b), _f(r.value),
                        "true" if r.passed else "false"])


def write_iterations(path, report):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "diff_norm", "ratio"])
        for k, d in enumerate(report.diffs):
            ratio = report.ratios[k - 1] if 0 < k <= len(report.ratios) else ""
            w.writerow([k + 1, _f(d), _f(ratio) if ratio != "" else ""])


def write_convergence(path, dx_list, errors):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["dx", "error"])
        for d, e in zip(dx_list, errors):
            w.writerow([_f(d), _f(e)])


def write_metadata(path, config_echo, seed, grids, wall_start, extra=None):
    import scipy

    rec = {
        "config": config_echo,
        "seed": seed,
        "grids": grids,
        "versions": {"bq6": "0.1.0", "numpy": np.__version__,
                     "scipy": scipy.__version__},
        "wall_seconds": time.time() - wall_start,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
    }
    if extra:
        rec.update(extra)
    Path(path).write_text(json.dumps(rec, indent=2, default=str) + "\n")
