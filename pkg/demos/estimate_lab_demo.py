"""Tour of the estimate lab: observed constants behind the well-posedness.

Prints the calculus-lemma constants (including the exact-pi sanity case),
the two phase-distance equivalence constants, the window scaling ratios,
and a short bilinear multiplier scan showing the plateau at s = 0 next to
the slowly growing aggregate at s = -0.4 (with the same-sign pairing that
does plateau).  Writes the scan rows to demos/out/lab/scan.csv.
"""

from pathlib import Path

import numpy as np

from bq6.lab import (bilinear_multiplier_scan, check_calculus_lemmas,
                     duhamel_scaling_probe, phase_equivalence_scan,
                     window_scaling_probe)
from bq6.reports import VerifyRow, write_verify

OUT = Path(__file__).parent / "out" / "lab"


def main():
    calc = check_calculus_lemmas()
    print(f"convolution-bound constants: sup ratio {calc['lemma21_sup_ratio']:.2f}, "
          f"pi case = {calc['lemma21_pi_case']:.10f} (exact pi = {np.pi:.10f})")
    print(f"sqrt-singularity bound: ratios {np.round(calc['lemma22_ratios'], 2)}"
          f" across a = 1e2, 1e3, 1e4")
    for beta in (1, -1):
        lo, hi, c = phase_equivalence_scan(beta)
        print(f"phase-distance equivalence (beta={beta:+d}): "
              f"ratio in [{lo:.3f}, {hi:.3f}], c = {c:.3f}")
    print(f"window scaling ratios over T=0.1/0.2/0.4: "
          f"{np.round(window_scaling_probe(), 3)}")
    print(f"forced-solve scaling ratios:              "
          f"{np.round(duhamel_scaling_probe(), 4)}")

    rows = []
    print("bilinear multiplier scan (24 samples, b = 0.45):")
    for s, pairing in ((0.0, "aggregate"), (-0.4, "aggregate"),
                       (-0.4, "same_sign")):
        sup = bilinear_multiplier_scan(s=s, b=0.45, n_samples=24,
                                       R_list=(64, 256, 512, 1024),
                                       pairing=pairing)
        for R, v in sorted(sup.items()):
            rows.append(VerifyRow("bilinear", f"{pairing}_R={R}", v, True,
                                  s=s, b=0.45))
        g = sup[1024] / sup[512]
        print(f"  s={s:+.1f} {pairing:>10}: sup(1024)={sup[1024]:.4f}, "
              f"growth/doubling {g:.4f}")
    OUT.mkdir(parents=True, exist_ok=True)
    write_verify(OUT / "scan.csv", rows)
    print(f"artifacts -> {OUT}")


if __name__ == "__main__":
    main()
