"""Scenario runner: solve/verify/scan subcommands writing CSV artifacts.

    bq6 solve-linear    --config run.cfg --out results/
    bq6 solve-nonlinear --out results/ --set data.phi="gaussian(amp=0.1,center=3)"
    bq6 solve-forced    --out results/
    bq6 verify all      --out results/
    bq6 scan-multiplier --out results/ --set s=-0.4

Exit codes: 0 success, 2 Picard found no contraction (shrink the window),
1 any other failure -- with an error.json record in the output directory.
Identical config + seed produce byte-identical CSV bodies; wall-clock and
timestamps live only in metadata.json.  BQ6_THREADS sets the default worker
count for the independent verification suites.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .config import parse_config
from .reports import (VerifyRow, write_convergence, write_field,
                      write_iterations, write_metadata, write_traces,
                      write_verify)
from .solver import ConfigError, NoContraction

__all__ = ["main"]


def _parser():
    p = argparse.ArgumentParser(prog="bq6", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("command", choices=["solve-linear", "solve-nonlinear",
                                       "solve-forced", "verify",
                                       "scan-multiplier"])
    p.add_argument("suite", nargs="?", default="all",
                   help="verify suite: roots|propagators|lemmas|kato|bilinear|all")
    p.add_argument("--config", default=None, help="config file path")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--seed", type=int, default=None, help="override seed")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a config entry (repeatable)")
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("BQ6_THREADS", "1")))
    p.add_argument("--quiet", action="store_true")
    return p


def _say(args, msg):
    if not args.quiet:
        print(msg)


def _solve_linear(rc, outdir, args, t0):
    from .solver import solve_linear_ibvp, solution_traces, _contour

    data = rc.ibvp_data()
    quad = _contour(rc.solver)
    u = solve_linear_ibvp(data, rc.solver, quad=quad)
    tr = solution_traces(data, rc.solver, quad=quad)
    write_field(outdir / "field.csv", u)
    write_traces(outdir / "traces.csv", rc.solver.t_grid, tr)
    _say(args, f"field {u.values.shape} -> {outdir/'field.csv'}")
    return {"mu_max": quad.mu_max, "n_mu_nodes": int(quad.mu.size)}


def _solve_nonlinear(rc, outdir, args, t0):
    from .solver import (solve_nonlinear_ibvp, solution_traces, _contour)

    data = rc.ibvp_data()
    u, rep = solve_nonlinear_ibvp(data, rc.solver)
    quad = _contour(rc.solver)
    tr = solution_traces(data, rc.solver, u=u, quad=quad, nonlinearity=True)
    write_field(outdir / "field.csv", u)
    write_traces(outdir / "traces.csv", rc.solver.t_grid, tr)
    write_iterations(outdir / "iterations.csv", rep)
    _say(args, f"picard: {rep.n_iter} iterations, converged={rep.converged}, "
               f"max ratio={rep.max_ratio:.3g}")
    if not rep.converged:
        raise NoContraction("picard did not reach rel_tol", rep)
    return {"picard_iterations": rep.n_iter,
            "contraction_ratios": rep.ratios,
            "final_residual": rep.final_residual}


def _solve_forced(rc, outdir, args, t0):
    from .duhamel import duhamel_halfline
    from .lineprop import Field2D

    cfg = rc.solver
    fx = rc.profiles["forcing.x_profile"](cfg.x_grid)
    ft = rc.profiles["forcing.t_profile"](cfg.t_grid)
    g = Field2D(np.outer(ft, fx), 0.0, cfg.dx, 0.0, cfg.dt, "forcing")
    u = duhamel_halfline(g, cfg.spec, cfg.extension, cfg.xi_grid, cfg.t_grid,
                         n_mu=cfg.n_mu, mu_max=cfg.mu_max)
    write_field(outdir / "field.csv", u.real_part(tol=1e-6))
    from .duhamel import duhamel_traces

    # traces of the line part tell how much the boundary correction removes
    write_traces(outdir / "traces.csv", cfg.t_grid,
                 {0: u.values[:, 0].real})
    _say(args, f"forced solve -> {outdir/'field.csv'}")
    return {}


def _suite_roots(rc):
    from .spectral import PhaseSpec, characteristic_roots, _oracle_roots, phase

    rows = []
    worst = 0.0
    worst_cf = 0.0
    for beta in (1, -1):
        spec = PhaseSpec(beta)
        for mu in np.geomspace(1e-3, 1e3, 200):
            tri = characteristic_roots(spec, float(mu))
            rho2 = -float(phase(spec, mu)) ** 2
            for g in tri.gammas:
                res = abs(g ** 6 - beta * g ** 4 + g ** 2 - rho2) \
                    / max(1.0, abs(rho2))
                worst = max(worst, res)
            if beta == 1:
                orc = _oracle_roots(spec, float(mu))
                for g in (tri.gamma2, tri.gamma3):
                    worst_cf = max(worst_cf, float(np.min(np.abs(orc - g))
                                                   / max(1.0, abs(g))))
    rows.append(VerifyRow("roots", "max_rel_residual", worst, worst <= 1e-10))
    rows.append(VerifyRow("roots", "closed_form_vs_oracle", worst_cf,
                          worst_cf <= 1e-10))
    return rows


def _suite_propagators(rc, outdir):
    from .fd import mms_convergence
    from .lineprop import cosine_line_data, v1, v2
    from .spectral import PhaseSpec, phase

    rows = []
    spec = PhaseSpec(rc.solver.beta)
    data, xi0 = cosine_line_data(2.0, spec, 6.0, 1024, slot=1)
    x = np.linspace(0, 5, 41)
    t = np.linspace(0, 1.5, 161)
    ph0 = float(phase(spec, xi0))
    err1 = float(np.max(np.abs(v1(data, x, t).values
                               - np.cos(ph0 * t)[:, None]
                               * np.cos(xi0 * x)[None, :])))
    rows.append(VerifyRow("propagators", "v1_cosine_max_err", err1,
                          err1 <= 1e-8))
    data2, xi0b = cosine_line_data(2.0, spec, 6.0, 1024, slot=2)
    err2 = float(np.max(np.abs(v2(data2, x, t).values
                               - (xi0b ** 2 / ph0) * np.sin(ph0 * t)[:, None]
                               * np.cos(xi0b * x)[None, :])))
    rows.append(VerifyRow("propagators", "v2_cosine_max_err", err2,
                          err2 <= 1e-8))
    errs, order = mms_convergence(beta=rc.solver.beta, nonlinearity=True,
                                  dx_list=(0.12, 0.06, 0.03))
    write_convergence(outdir / "convergence.csv", (0.12, 0.06, 0.03), errs)
    rows.append(VerifyRow("propagators", "fd_mms_order", order,
                          1.8 <= order <= 2.2))
    return rows


def _suite_lemmas(rc):
    from .lab import (check_calculus_lemmas, duhamel_scaling_probe,
                      phase_equivalence_scan, window_scaling_probe,
                      xsb_equivalence)

    rows = []
    calc = check_calculus_lemmas()
    rows.append(VerifyRow("lemmas", "lemma21_pi_case", calc["lemma21_pi_case"],
                          abs(calc["lemma21_pi_case"] - np.pi) <= 1e-6))
    rows.append(VerifyRow("lemmas", "lemma21_sup_ratio",
                          calc["lemma21_sup_ratio"],
                          np.isfinite(calc["lemma21_sup_ratio"])))
    rows.append(VerifyRow("lemmas", "lemma22_sup_ratio",
                          calc["lemma22_sup_ratio"],
                          np.isfinite(calc["lemma22_sup_ratio"])))
    for beta in (1, -1):
        _, _, c = phase_equivalence_scan(beta)
        rows.append(VerifyRow("lemmas", f"phase_equiv_c_beta{beta:+d}", c,
                              c <= 10.0))
    _, _, cp = xsb_equivalence(beta=rc.solver.beta, seed=rc.seed)
    rows.append(VerifyRow("lemmas", "xsb_equiv_c", cp, np.isfinite(cp),
                          s=-0.2, b=0.45))
    wr = window_scaling_probe(beta=rc.solver.beta, seed=rc.seed)
    rows.append(VerifyRow("lemmas", "window_scaling_max", max(wr),
                          max(wr) < 50.0, s=-0.2, b=0.45))
    dr = duhamel_scaling_probe(beta=rc.solver.beta, seed=rc.seed)
    rows.append(VerifyRow("lemmas", "duhamel_scaling_spread",
                          max(dr) / min(dr), max(dr) / min(dr) <= 3.0,
                          s=-0.2, b=0.45))
    return rows


def _suite_kato(rc):
    from .lab import kato_ratio_suite

    rows = []
    n = max(4, rc.n_verify_samples // 2)
    for prop in ("line", "wbdr", "ibvp", "duhamel"):
        for s in (0.0, -0.4):
            r = kato_ratio_suite(prop, s=s, n_samples=n, seed=rc.seed,
                                 beta=rc.solver.beta)
            rows.append(VerifyRow("kato", f"{prop}_max_ratio", max(r),
                                  np.isfinite(max(r)), s=s, b=0.45))
    return rows


def _suite_bilinear(rc, r_pow=None):
    from .lab import bilinear_multiplier_scan

    rows = []
    r_top = 2 ** (r_pow or rc.r_max_pow)
    R_list = tuple(2 ** k for k in range(4, (r_pow or rc.r_max_pow) + 1, 2)) \
        + (r_top // 2, r_top)
    for s in (0.0, -0.4):
        for pairing in ("aggregate", "same_sign"):
            sup = bilinear_multiplier_scan(
                s=s, b=0.45, beta=rc.solver.beta,
                R_list=sorted(set(R_list)), n_samples=rc.n_scan_samples,
                seed=rc.seed, pairing=pairing)
            growth = sup[r_top] / sup[r_top // 2]
            for R, v in sorted(sup.items()):
                rows.append(VerifyRow("bilinear", f"{pairing}_R={R}", v,
                                      True, s=s, b=0.45))
            rows.append(VerifyRow("bilinear", f"{pairing}_growth", growth,
                                  growth <= 1.1, s=s, b=0.45))
    return rows


def _verify(rc, outdir, args, t0):
    suite = args.suite
    jobs = {
        "roots": lambda: _suite_roots(rc),
        "propagators": lambda: _suite_propagators(rc, outdir),
        "lemmas": lambda: _suite_lemmas(rc),
        "kato": lambda: _suite_kato(rc),
        "bilinear": lambda: _suite_bilinear(rc, r_pow=8),
    }
    if suite != "all":
        if suite not in jobs:
            raise ConfigError(f"unknown verify suite {suite!r}; choose from "
                              f"{sorted(jobs)} or all")
        selected = [suite]
    else:
        selected = list(jobs)
    rows = []
    if args.threads > 1 and len(selected) > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as ex:
            for part in ex.map(lambda k: jobs[k](), selected):
                rows.extend(part)
    else:
        for k in selected:
            rows.extend(jobs[k]())
    write_verify(outdir / "verify.csv", rows)
    n_fail = sum(1 for r in rows if not r.passed)
    for r in rows:
        _say(args, f"  [{'PASS' if r.passed else 'FAIL'}] {r.suite}/{r.name} "
                   f"= {r.value:.6g}")
    _say(args, f"verify: {len(rows) - n_fail}/{len(rows)} checks passed")
    return {"n_checks": len(rows), "n_failed": n_fail}


def _scan(rc, outdir, args, t0):
    rows = _suite_bilinear(rc)
    write_verify(outdir / "scan.csv", rows)
    for r in rows:
        if r.name.endswith("growth"):
            _say(args, f"  {r.name} (s={r.s}): {r.value:.4f}")
    return {"n_rows": len(rows)}


def main(argv=None):
    args = _parser().parse_args(argv)
    t0 = time.time()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    overrides = list(args.set)
    if args.seed is not None:
        overrides.append(f"seed={args.seed}")
    try:
        rc = parse_config(args.config, overrides)
    except ConfigError as exc:
        (outdir / "error.json").write_text(json.dumps(
            {"error": "config", "violations": str(exc).split("; ")},
            indent=2) + "\n")
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    np.random.seed(rc.seed)
    handlers = {
        "solve-linear": _solve_linear,
        "solve-nonlinear": _solve_nonlinear,
        "solve-forced": _solve_forced,
        "verify": _verify,
        "scan-multiplier": _scan,
    }
    try:
        extra = handlers[args.command](rc, outdir, args, t0)
    except NoContraction as exc:
        rep = getattr(exc, "report", None)
        (outdir / "error.json").write_text(json.dumps(
            {"error": "no_contraction", "message": str(exc),
             "ratios": getattr(rep, "ratios", []),
             "hint": "shrink window.T_window or the data amplitude"},
            indent=2) + "\n")
        print(f"no contraction: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - machine-readable record
        (outdir / "error.json").write_text(json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}, indent=2)
            + "\n")
        print(f"error: {exc}", file=sys.stderr)
        return 1
    write_metadata(outdir / "metadata.json", rc.echo(), rc.seed,
                   {"n_x": rc.solver.n_x, "n_t": rc.solver.n_t,
                    "n_xi": rc.solver.n_xi, "n_mu": rc.solver.n_mu},
                   t0, extra)
    _say(args, f"done in {time.time() - t0:.1f}s -> {outdir}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
