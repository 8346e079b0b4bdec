"""Figure builders: one static image per artifact kind.

Rendering is read-only over the inputs and deterministic (fixed figure
geometry, no timestamps embedded), so re-running reproduces the files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .readers import (read_convergence, read_field, read_iterations,
                      read_rows, read_traces)

__all__ = ["render_waterfall", "render_traces", "render_contraction",
           "render_convergence", "render_plateau", "FIGURES"]

_SAVE = dict(dpi=110, metadata={"Software": "bq6-plots"})


def render_waterfall(field_csv, out_png, stride=None):
    """Offset line plot of u(x, t_k): the classic space-time waterfall."""
    t, x, u = read_field(field_csv)
    n_lines = 24
    stride = stride or max(1, len(t) // n_lines)
    scale = np.max(np.abs(u)) or 1.0
    offset = 0.8 * scale
    fig, ax = plt.subplots(figsize=(7, 6))
    for i, k in enumerate(range(0, len(t), stride)):
        ax.plot(x, u[k] + i * offset, lw=0.9,
                color=plt.cm.viridis(i / max(1, len(t) // stride)))
    ax.set_xlabel("x")
    ax.set_ylabel("u(x, t) + offset, t increasing upward")
    ax.set_title(f"solution waterfall ({len(t)} x {len(x)} samples)")
    fig.tight_layout()
    fig.savefig(out_png, **_SAVE)
    plt.close(fig)
    return out_png


def render_traces(traces_csv, out_png, prescribed=None):
    """Overlay of the boundary traces per derivative order."""
    tr = read_traces(traces_csv)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for order in sorted(tr):
        t, v = tr[order]
        ax.plot(t, v, lw=1.2, label=f"order {order}")
    if prescribed is not None:
        t, v = prescribed
        ax.plot(t, v, "k--", lw=1.0, label="prescribed")
    ax.set_xlabel("t")
    ax.set_ylabel("d^j u / dx^j (0, t)")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("boundary traces")
    fig.tight_layout()
    fig.savefig(out_png, **_SAVE)
    plt.close(fig)
    return out_png


def render_contraction(iterations_csv, out_png):
    """Successive-difference norms (log scale) with the contraction ratios."""
    k, d, r = read_iterations(iterations_csv)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.semilogy(k, d, "o-", lw=1.2)
    for ki, di, ri in zip(k, d, r):
        if np.isfinite(ri):
            ax.annotate(f"{ri:.3g}", (ki, di), textcoords="offset points",
                        xytext=(6, 4), fontsize=8)
    ax.set_xlabel("iteration k")
    ax.set_ylabel("|u_{k+1} - u_k| in the Y norm")
    ax.set_title("fixed-point contraction (ratio annotated)")
    fig.tight_layout()
    fig.savefig(out_png, **_SAVE)
    plt.close(fig)
    return out_png


def render_convergence(convergence_csv, out_png):
    """Log-log error vs dx with the least-squares order annotated.

    Returns (path, fitted_slope).
    """
    dx, err = read_convergence(convergence_csv)
    slope = float(np.polyfit(np.log(dx), np.log(err), 1)[0])
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.loglog(dx, err, "o-", lw=1.2, label="measured error")
    ref = err[0] * (dx / dx[0]) ** 2
    ax.loglog(dx, ref, "k:", lw=1.0, label="slope 2 reference")
    ax.annotate(f"fitted order = {slope:.2f}",
                (dx[len(dx) // 2], err[len(err) // 2]),
                textcoords="offset points", xytext=(10, -14))
    ax.set_xlabel("dx")
    ax.set_ylabel("error")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("oracle convergence order")
    fig.tight_layout()
    fig.savefig(out_png, **_SAVE)
    plt.close(fig)
    return out_png, slope


def render_plateau(scan_csv, out_png):
    """Multiplier-scan suprema vs truncation radius, per scan family."""
    rows = [r for r in read_rows(scan_csv)
            if r["suite"] == "bilinear" and "_R=" in r["name"]]
    if not rows:
        raise ValueError(f"{scan_csv}: no bilinear R-rows to plot")
    series = {}
    for r in rows:
        family, rad = r["name"].rsplit("_R=", 1)
        series.setdefault((family, r["s"]), []).append((float(rad),
                                                        r["value"]))
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for (family, s), pts in sorted(series.items()):
        pts.sort()
        radii = [p[0] for p in pts]
        vals = [p[1] for p in pts]
        ax.semilogx(radii, vals, "o-", lw=1.2, base=2,
                    label=f"{family}, s={s:g}")
    ax.set_xlabel("truncation radius R")
    ax.set_ylabel("sup ||M||")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("bilinear multiplier scan: plateau in R")
    fig.tight_layout()
    fig.savefig(out_png, **_SAVE)
    plt.close(fig)
    return out_png


FIGURES = {
    "waterfall": ("field.csv", render_waterfall),
    "traces": ("traces.csv", render_traces),
    "contraction": ("iterations.csv", render_contraction),
    "convergence": ("convergence.csv", render_convergence),
    "plateau": ("scan.csv", render_plateau),
}
