"""Oscillatory quadrature helpers shared by the propagators.

Two tools live here:

* `oscillatory_transform` evaluates F(w) = int f(t) e^{i w t} dt from uniform
  samples of f, for arbitrary (possibly large) frequencies w.  Each sample
  interval carries the local cubic interpolant, integrated against e^{iwt}
  in closed form (a Filon-type rule), so the error is O(dt^4 ||f''''||)
  uniformly in w rather than blowing up past the sampling Nyquist rate.

* `oscillation_panels` splits [0, mu_max] into Gauss-Legendre panels whose
  width is tied to the local phase T*phase(mu) + X*mu of the boundary
  integrals, with a geometric opening near mu = 0 where the characteristic
  roots cluster.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = ["oscillatory_transform", "oscillation_panels", "cumulative_simpson"]


def _interval_moments(w, dt, nmom=4):
    """I_m(w) = int_0^dt u^m e^{iwu} du for m = 0..nmom-1, vectorized in w.

    Upward recursion I_m = (dt^m e^{iw dt} - m I_{m-1})/(iw) is stable for
    |w dt| away from 0; a truncated Taylor series covers the small-phase
    regime where the recursion cancels catastrophically.
    """
    w = np.asarray(w, dtype=float)
    z = 1j * w * dt
    small = np.abs(z) < 0.5
    mom = np.empty((nmom,) + w.shape, dtype=complex)

    with np.errstate(divide="ignore", invalid="ignore"):
        a = 1j * w
        e = np.exp(z)
        prev = (e - 1.0) / a
        rec = [prev]
        for m in range(1, nmom):
            prev = (dt ** m * e - m * prev) / a
            rec.append(prev)

    # series: I_m = sum_k z^k dt^{m+1} / (k! (m+k+1))
    zs = z[small]
    for m in range(nmom):
        term = np.ones_like(zs)
        acc = term / (m + 1.0)
        for k in range(1, 22):
            term = term * zs / k
            acc = acc + term / (m + k + 1.0)
        ser = acc * dt ** (m + 1)
        mom[m] = rec[m]
        mom[m][small] = ser
    return mom


def _local_cubic_coeffs(samples, dt):
    """Monomial coefficients of the per-interval cubic interpolant.

    Interval k spans [t_k, t_{k+1}]; its cubic interpolates samples
    k-1..k+2 (shifted stencils at the ends) in the local coordinate
    u = t - t_k.  Accepts a leading batch axis; returns (..., 4, n_int).
    """
    f = np.asarray(samples, dtype=complex)
    n = f.shape[-1]
    if n < 2:
        raise ValueError("need at least two samples")
    if n < 4:
        # degrade to linear interpolation
        c = np.zeros(f.shape[:-1] + (4, n - 1), dtype=complex)
        c[..., 0, :] = f[..., :-1]
        c[..., 1, :] = (f[..., 1:] - f[..., :-1]) / dt
        return c
    nint = n - 1
    # stencil start index s(k): nodes s..s+3, with local offset of t_k
    s = np.clip(np.arange(nint) - 1, 0, n - 4)
    off = (np.arange(nint) - s) * dt  # position of t_k inside the stencil
    y = np.stack([f[..., s + m] for m in range(4)], axis=-2)  # (...,4,nint)
    # Vandermonde on stencil nodes u' = m*dt, then shift u' = u + off
    v = np.vander(np.arange(4.0) * dt, 4, increasing=True)  # (4,4)
    a = np.linalg.solve(v, y.reshape(-1, 4, nint).transpose(1, 0, 2)
                        .reshape(4, -1)).reshape(4, -1, nint)
    # shift: p(u) = sum_m a_m (u+off)^m -> binomial re-expansion
    c = np.zeros((4, a.shape[1], nint), dtype=complex)
    from math import comb

    for m in range(4):
        for r in range(m + 1):
            c[r] += a[m] * comb(m, r) * off ** (m - r)
    c = c.transpose(1, 0, 2)
    return c.reshape(f.shape[:-1] + (4, nint))


def oscillatory_transform(samples, dt, omegas, t0=0.0):
    """int_{t0}^{t0+(n-1)dt} f(t) e^{i w t} dt for each w in `omegas`.

    `samples` are f on the uniform grid t0 + k*dt; a leading batch axis is
    allowed (shape (..., n) -> output (..., n_w)).  Piecewise-cubic Filon
    rule: exact for cubics on each interval, error uniform in w.
    """
    f = np.asarray(samples)
    w = np.asarray(omegas, dtype=float)
    scalar_w = w.ndim == 0
    w = np.atleast_1d(w)
    batched = f.ndim == 2
    fs = f if batched else f[None, :]
    cs = _local_cubic_coeffs(fs, dt)  # (nb, 4, nint)
    nint = cs.shape[2]
    mom = _interval_moments(w, dt)  # (4, nw)
    tk = t0 + np.arange(nint) * dt
    ph = np.exp(1j * np.outer(tk, w))  # (nint, nw)
    out = np.zeros((fs.shape[0], w.size), dtype=complex)
    for m in range(4):
        out += (cs[:, m, :] @ ph) * mom[m][None, :]
    if not batched:
        out = out[0]
    if scalar_w:
        out = out[..., 0]
    return out


def oscillation_panels(phase_fn, mu_max, n_nodes, t_span, x_span,
                       nodes_per_panel=8, opening=8):
    """Gauss-Legendre nodes/weights on [0, mu_max] tied to local oscillation.

    Panels equidistribute the accumulated phase t_span*phase(mu) + x_span*mu
    (about pi per panel when the budget allows), with `opening` extra
    geometrically shrinking panels near mu = 0.  When mu_max is None it is
    chosen so the node budget resolves the phase at ~pi per panel.
    Returns (mu_nodes, weights).
    """
    xg, wg = leggauss(nodes_per_panel)
    mu_fine = np.linspace(0.0, 1.0, 8193)

    def total_phase(mmax):
        g = mu_fine * mmax
        return t_span * phase_fn(g)[-1] + x_span * mmax

    if mu_max is None:
        budget = max(n_nodes // nodes_per_panel - opening, 4) * np.pi
        lo, hi = 1e-3, 1e3
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if total_phase(mid) > budget:
                hi = mid
            else:
                lo = mid
        mu_max = 0.5 * (lo + hi)

    g = mu_fine * mu_max
    acc = t_span * phase_fn(g) + x_span * g  # monotone phase accumulation
    n_panels = max(int(n_nodes) // nodes_per_panel, 4)
    n_main = max(n_panels - opening, 4)
    edges = np.interp(np.linspace(acc[0], acc[-1], n_main + 1), acc, g)
    # geometric opening refinement of the first panel toward mu = 0
    first = edges[1]
    sub = first * 0.5 ** np.arange(opening, -1, -1.0)
    sub[0] = 0.0
    breaks = np.concatenate([sub, edges[2:]])
    mid = 0.5 * (breaks[1:] + breaks[:-1])
    half = 0.5 * (breaks[1:] - breaks[:-1])
    mu = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    return mu, w


def cumulative_simpson(values, dt, axis=0):
    """Running integral int_0^{t_k} along `axis`, composite Simpson.

    Wraps scipy's cumulative_simpson (initial=0), which is real-only:
    complex inputs are integrated componentwise.
    """
    from scipy.integrate import cumulative_simpson as _cs

    vals = np.asarray(values)
    if np.iscomplexobj(vals):
        return (_cs(vals.real, dx=dt, axis=axis, initial=0.0)
                + 1j * _cs(vals.imag, dx=dt, axis=axis, initial=0.0))
    return _cs(vals, dx=dt, axis=axis, initial=0.0)
