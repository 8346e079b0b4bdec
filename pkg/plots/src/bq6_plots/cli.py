"""Render figures from a solver report directory.

    bq6-plots --report out/ --figures figs/ [--only waterfall,traces]

Walks the report directory for the documented CSV artifacts and writes one
image per available figure kind; missing inputs are skipped with a warning
list (exit stays 0 unless nothing could be rendered or a schema is broken).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FIGURES
from .readers import SchemaError

__all__ = ["main", "render_report"]


def render_report(report_dir, figures_dir, only=None, verify_csv_names=(
        "scan.csv", "verify.csv")):
    """Render every available figure; returns (written, skipped, notes)."""
    report = Path(report_dir)
    outdir = Path(figures_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written, skipped, notes = [], [], []
    wanted = set(only) if only else set(FIGURES)
    for kind in sorted(wanted):
        if kind not in FIGURES:
            raise ValueError(f"unknown figure kind {kind!r}; "
                             f"choose from {sorted(FIGURES)}")
        src_name, fn = FIGURES[kind]
        candidates = [report / src_name]
        if kind == "plateau":
            candidates = [report / n for n in verify_csv_names]
        src = next((c for c in candidates if c.exists()), None)
        if src is None:
            skipped.append(kind)
            continue
        out = outdir / f"{kind}.png"
        result = fn(src, out)
        if isinstance(result, tuple):
            notes.append(f"{kind}: fitted order {result[1]:.2f}")
        written.append(out)
    return written, skipped, notes


def main(argv=None):
    p = argparse.ArgumentParser(prog="bq6-plots", description=__doc__)
    p.add_argument("--report", required=True, help="solver output directory")
    p.add_argument("--figures", default="figs", help="image output directory")
    p.add_argument("--only", default=None,
                   help="comma-separated subset of "
                        f"{sorted(FIGURES)}")
    args = p.parse_args(argv)
    only = args.only.split(",") if args.only else None
    try:
        written, skipped, notes = render_report(args.report, args.figures,
                                                only)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for w in written:
        print(f"wrote {w}")
    for n in notes:
        print(n)
    if skipped:
        print("skipped (no input): " + ", ".join(skipped))
    if not written:
        print("nothing to render", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
