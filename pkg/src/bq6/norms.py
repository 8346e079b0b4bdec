"""Discrete Sobolev and dispersive-modulation norms.

Conventions (fixed artifact-wide): fhat(xi) = (1/2pi) int f e^{-ix xi} dx and

    ||f||_{H^s}^2   = 2pi  int <xi>^{2s} |fhat|^2 dxi,
    ||u||_{X^{s,b}}^2 = (2pi)^2 int <xi>^{2s} <|tau| - phase(xi)>^{2b} |uhat|^2 dxi dtau,

so s = 0 (resp. s = b = 0) reduces exactly to the discrete L2 norm, which
the tests assert to 1e-12.  Half-line functions are zero-extended before
transforming; restricted (quotient) norms over R+ x Omega are replaced by
this fixed zero-extension surrogate, an upper bound for the true infimum
(recorded on every report).

The `kdv_surrogate` variant swaps the modulation weight for
<|tau| - |xi|^3 - (beta/2)|xi|>, the equivalent KdV-style distance used for
the bilinear estimates; the observed equivalence constant is what the lab
reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import PhaseSpec, phase, surrogate_phase

__all__ = ["NormReport", "sobolev_norm", "time_sobolev_norm", "xsb_norm"]


@dataclass(frozen=True)
class NormReport:
    """A computed norm with the parameters and grid it was computed on."""

    name: str
    value: float
    params: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)

    def __post_init__(self):
        if not np.isfinite(self.value) or self.value < 0:
            raise ValueError(f"norm {self.name} is not finite/nonnegative")


def _bracket(x):
    return np.sqrt(1.0 + np.asarray(x, dtype=float) ** 2)


def _padded_fft_freqs(n, d, pad=2):
    m = int(pad * n)
    freqs = 2.0 * np.pi * np.fft.fftfreq(m, d=d)
    return m, freqs


def sobolev_norm(samples, dx, s, pad=2) -> NormReport:
    """H^s norm of a sampled (half-)line function, zero-extended.

    (sum <xi>^{2s} |fhat|^2 dxi * 2pi)^{1/2} over the padded discrete
    spectrum; at s = 0 this is the discrete L2 norm exactly (Parseval).
    """
    f = np.asarray(samples)
    m, xi = _padded_fft_freqs(f.shape[-1], dx, pad)
    fhat = np.fft.fft(f, n=m) * (dx / (2.0 * np.pi))
    dxi = 2.0 * np.pi / (m * dx)
    val = np.sqrt(2.0 * np.pi * np.sum(_bracket(xi) ** (2 * s)
                                       * np.abs(fhat) ** 2) * dxi)
    return NormReport("sobolev", float(val), {"s": s},
                      {"n": int(f.shape[-1]), "dx": dx, "pad": pad})


def time_sobolev_norm(samples, dt, sigma, pad=2) -> NormReport:
    """Same discrete H^sigma norm for a time series (trace norms)."""
    rep = sobolev_norm(samples, dt, sigma, pad)
    return NormReport("time_sobolev", rep.value, {"s": sigma},
                      {"n": len(samples), "dt": dt, "pad": pad})


def xsb_norm(values, dx, dt, s, b, spec: PhaseSpec,
             variant="exact_phase", pad=2) -> NormReport:
    """Dispersive-modulation norm of a compactly supported space-time field.

    `values` has shape (n_t, n_x) covering the support (zero-extension
    surrogate beyond); weight <xi>^s <|tau| - W(xi)>^b with W the exact phase
    or its KdV surrogate.  b = 0 collapses to the time-integrated H^s norm.
    """
    u = np.asarray(values)
    if variant not in ("exact_phase", "kdv_surrogate"):
        raise ValueError("variant must be exact_phase or kdv_surrogate")
    n_t, n_x = u.shape
    mt, tau = _padded_fft_freqs(n_t, dt, pad)
    mx, xi = _padded_fft_freqs(n_x, dx, pad)
    uhat = np.fft.fft2(u, s=(mt, mx)) * (dx * dt / (2.0 * np.pi) ** 2)
    if variant == "exact_phase":
        w_disp = phase(spec, xi)
    else:
        w_disp = surrogate_phase(spec, xi)
    mod = _bracket(np.abs(tau)[:, None] - w_disp[None, :]) ** (2 * b)
    wt = _bracket(xi)[None, :] ** (2 * s) * mod
    dxi = 2.0 * np.pi / (mx * dx)
    dtau = 2.0 * np.pi / (mt * dt)
    val = np.sqrt((2.0 * np.pi) ** 2
                  * np.sum(wt * np.abs(uhat) ** 2) * dxi * dtau)
    return NormReport("xsb", float(val),
                      {"s": s, "b": b, "variant": variant, "beta": spec.beta},
                      {"n_t": n_t, "n_x": n_x, "dx": dx, "dt": dt, "pad": pad,
                       "extension": "zero (upper bound for quotient norm)"})
