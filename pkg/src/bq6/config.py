"""Line-oriented run configuration with dotted keys.

Example file::

    beta = 1
    s = 0.0
    b = 0.45
    grid.X = 10.0
    grid.n_x = 121
    grid.T = 1.0
    grid.n_t = 201
    grid.xi_max = 6.0
    grid.n_xi = 2048
    grid.n_mu = 1024
    extension.mode = zero
    picard.max_iter = 50
    picard.rel_tol = 1e-8
    window.T_window = 0.25
    data.phi = gaussian(amp=0.1, width=1.0, center=3.0)
    data.psi = zero
    data.h1 = zero
    data.h2 = zero
    data.h3 = zero
    forcing.x_profile = gaussian(width=1.0, center=4.0)
    forcing.t_profile = sine_decay(freq=3.0, rate=2.0)
    seed = 0

`#` starts a comment; later keys override earlier ones; `--set key=value`
entries override the file.  Validation raises ConfigError listing every
violated invariant.
"""

from __future__ import annotations

import numpy as np

from .profiles import make_profile
from .solver import ConfigError, SolverConfig

__all__ = ["RunConfig", "parse_config", "DEFAULTS"]

DEFAULTS = {
    "beta": "1",
    "s": "0.0",
    "b": "0.45",
    "grid.X": "10.0",
    "grid.n_x": "121",
    "grid.T": "1.0",
    "grid.n_t": "201",
    "grid.xi_max": "6.0",
    "grid.n_xi": "2048",
    "grid.mu_max": "auto",
    "grid.n_mu": "1024",
    "extension.mode": "zero",
    "picard.max_iter": "50",
    "picard.rel_tol": "1e-8",
    "window.T_window": "0.25",
    "data.phi": "gaussian(amp=0.1, width=1.0, center=3.0)",
    "data.psi": "zero",
    "data.h1": "zero",
    "data.h2": "zero",
    "data.h3": "zero",
    "forcing.x_profile": "gaussian(width=1.0, center=4.0)",
    "forcing.t_profile": "sine_decay(amp=1.0, freq=3.0, rate=2.0)",
    "seed": "0",
    "verify.n_samples": "12",
    "scan.n_samples": "100",
    "scan.r_max_pow": "10",
}


class RunConfig:
    """Parsed configuration: SolverConfig + data profiles + run options."""

    def __init__(self, raw):
        self.raw = dict(raw)
        errs = []
        try:
            self.solver = SolverConfig(
                beta=int(raw["beta"]),
                s=float(raw["s"]),
                b=float(raw["b"]),
                X=float(raw["grid.X"]),
                n_x=int(raw["grid.n_x"]),
                T=float(raw["grid.T"]),
                n_t=int(raw["grid.n_t"]),
                xi_max=float(raw["grid.xi_max"]),
                n_xi=int(raw["grid.n_xi"]),
                mu_max=None if raw["grid.mu_max"] in ("auto", "none")
                else float(raw["grid.mu_max"]),
                n_mu=int(raw["grid.n_mu"]),
                extension=raw["extension.mode"],
                max_iter=int(raw["picard.max_iter"]),
                rel_tol=float(raw["picard.rel_tol"]),
                T_window=float(raw["window.T_window"]),
            )
        except ConfigError as exc:
            errs.append(str(exc))
        except (KeyError, ValueError) as exc:
            errs.append(f"bad solver settings: {exc}")
        self.profiles = {}
        for key in ("data.phi", "data.psi", "data.h1", "data.h2", "data.h3",
                    "forcing.x_profile", "forcing.t_profile"):
            try:
                self.profiles[key] = make_profile(raw[key])
            except ValueError as exc:
                errs.append(f"{key}: {exc}")
        try:
            self.seed = int(raw["seed"])
        except ValueError:
            errs.append(f"seed must be an integer, got {raw['seed']!r}")
        self.n_verify_samples = int(raw.get("verify.n_samples", 12))
        self.n_scan_samples = int(raw.get("scan.n_samples", 100))
        self.r_max_pow = int(raw.get("scan.r_max_pow", 10))
        if errs:
            raise ConfigError("; ".join(errs))

    def ibvp_data(self):
        from .solver import ibvp_data_from_profiles

        return ibvp_data_from_profiles(
            self.solver, self.profiles["data.phi"], self.profiles["data.psi"],
            self.profiles["data.h1"], self.profiles["data.h2"],
            self.profiles["data.h3"])

    def echo(self):
        return dict(self.raw)


def parse_config(path=None, overrides=()):
    """Merge defaults, optional config file, and --set overrides."""
    raw = dict(DEFAULTS)
    if path is not None:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key = value")
                k, v = line.split("=", 1)
                raw[k.strip()] = v.strip()
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        raw[k.strip()] = v.strip()
    return RunConfig(raw)
