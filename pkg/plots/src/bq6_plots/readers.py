"""Readers for the solver's documented CSV schemas.

This package consumes the artifacts only -- it never imports the solver.
Schemas:

    field.csv        t,x,u                    row-major in t then x
    traces.csv       t,order,value
    iterations.csv   k,diff_norm,ratio
    convergence.csv  dx,error
    verify.csv/scan.csv  suite,name,param_s,param_b,value,pass

A mismatched header raises SchemaError naming the offending column.
"""

from __future__ import annotations

import csv

import numpy as np

__all__ = ["SchemaError", "read_field", "read_traces", "read_iterations",
           "read_convergence", "read_rows"]


class SchemaError(ValueError):
    """CSV file does not match the documented schema."""


def _check_header(got, want, path):
    if list(got) != list(want):
        missing = [c for c in want if c not in got]
        raise SchemaError(f"{path}: expected columns {want}, got {got}"
                          + (f" (missing {missing})" if missing else ""))


def read_field(path):
    """(t_grid, x_grid, values[t, x]) from a field CSV."""
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        _check_header(next(r), ["t", "x", "u"], path)
        rows = [(float(a), float(b), float(c)) for a, b, c in r]
    arr = np.asarray(rows)
    t = np.unique(arr[:, 0])
    x = np.unique(arr[:, 1])
    if t.size * x.size != arr.shape[0]:
        raise SchemaError(f"{path}: rows do not tile a (t, x) grid")
    return t, x, arr[:, 2].reshape(t.size, x.size)


def read_traces(path):
    """{order: (t_grid, values)} from a traces CSV."""
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        _check_header(next(r), ["t", "order", "value"], path)
        data = {}
        for ts, os_, vs in r:
            data.setdefault(int(os_), []).append((float(ts), float(vs)))
    out = {}
    for k, rows in data.items():
        arr = np.asarray(rows)
        out[k] = (arr[:, 0], arr[:, 1])
    return out


def read_iterations(path):
    """(k, diff_norm, ratio-with-nan) arrays from an iterations CSV."""
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        _check_header(next(r), ["k", "diff_norm", "ratio"], path)
        ks, ds, rs = [], [], []
        for k, d, ratio in r:
            ks.append(int(k))
            ds.append(float(d))
            rs.append(float(ratio) if ratio else np.nan)
    return np.asarray(ks), np.asarray(ds), np.asarray(rs)


def read_convergence(path):
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        _check_header(next(r), ["dx", "error"], path)
        rows = [(float(a), float(b)) for a, b in r]
    arr = np.asarray(rows)
    return arr[:, 0], arr[:, 1]


def read_rows(path):
    """Verify/scan rows as a list of dicts with typed fields."""
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        _check_header(next(r), ["suite", "name", "param_s", "param_b",
                                "value", "pass"], path)
        out = []
        for suite, name, s, b, value, ok in r:
            out.append({"suite": suite, "name": name, "s": float(s),
                        "b": float(b), "value": float(value),
                        "pass": ok == "true"})
    return out
