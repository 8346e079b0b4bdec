"""Watch the nonlinear fixed point contract, then lose contraction.

Solves the quarter-plane problem for a small Gaussian hump and prints the
successive-difference norms and their ratios; then retries with a large
amplitude on a long window, where the local theory makes no promise and the
iteration correctly reports no contraction.  Writes field, traces and
iteration CSVs under demos/out/picard/.
"""

from pathlib import Path

import numpy as np

from bq6.reports import write_field, write_iterations, write_traces
from bq6.solver import (NoContraction, SolverConfig, ibvp_data_from_profiles,
                        solution_traces, solve_nonlinear_ibvp)

OUT = Path(__file__).parent / "out" / "picard"
ZP = lambda t: 0.0 * t


def main():
    cfg = SolverConfig(beta=1, X=10.0, n_x=121, T=0.25, n_t=101,
                       xi_max=6.0, n_xi=2304, n_mu=1024, T_window=0.25)
    data = ibvp_data_from_profiles(
        cfg, lambda x: 0.1 * np.exp(-(x - 3.0) ** 2), ZP, ZP, ZP, ZP)
    print("small data, T_window = 0.25:")
    u, rep = solve_nonlinear_ibvp(data, cfg)
    for k, d in enumerate(rep.diffs):
        ratio = f"  ratio {rep.ratios[k-1]:.4f}" if k >= 1 else ""
        print(f"  step {k + 1}: |u_k+1 - u_k|_Y = {d:.3e}{ratio}")
    print(f"  converged = {rep.converged}, final residual "
          f"{rep.final_residual:.2e}")

    OUT.mkdir(parents=True, exist_ok=True)
    write_field(OUT / "field.csv", u)
    write_iterations(OUT / "iterations.csv", rep)
    tr = solution_traces(data, cfg, u=u, nonlinearity=True)
    write_traces(OUT / "traces.csv", cfg.t_grid, tr)
    print(f"artifacts -> {OUT}")

    print("amplitude 1000, T_window = 1.0 (expect no contraction):")
    cfg_big = SolverConfig(beta=1, X=10.0, n_x=121, T=1.0, n_t=161,
                           xi_max=6.0, n_xi=2304, n_mu=1024, T_window=1.0,
                           max_iter=10)
    big = ibvp_data_from_profiles(
        cfg_big, lambda x: 1e3 * np.exp(-(x - 3.0) ** 2), ZP, ZP, ZP, ZP)
    try:
        solve_nonlinear_ibvp(big, cfg_big)
        print("  unexpectedly converged")
    except NoContraction as exc:
        print(f"  {exc}")


if __name__ == "__main__":
    main()
