"""Whole-line linear solution group for the sixth-order Boussinesq equation.

The initial-value problem

    u_tt - u_xx + beta*u_xxxx - u_xxxxxx = 0,   u(x,0) = f1,  u_t(x,0) = f2'',

is solved in Fourier variables, with the artifact-wide transform convention

    f(x) = int e^{i x xi} fhat(xi) dxi,    fhat(xi) = (1/2pi) int e^{-i x xi} f(x) dx.

The two half-wave integrals are implemented literally:

    v1(f1)(x,t) = (1/2) int (e^{i(t*phi+x*xi)} + e^{i(-t*phi+x*xi)}) f1hat dxi
    v2(f2)(x,t) = (1/2i) int (e^{i(t*phi+x*xi)} - e^{i(-t*phi+x*xi)}) xi^2 f2hat/phi dxi

i.e. cosine and sine propagation of the two spectra.  Under this convention
the literal pair gives u_t(x,0) = -f2'' (the paper-facing sign is fixed at
the solver assembly level by negating the second slot, validated by the PDE
residual tests).  The removable xi = 0 singularity of xi^2/phi has limit 0.

Half-line data enter through `extend_halfline`, and boundary traces
d^j/dx^j u(0,t) are extracted spectrally by inserting (i xi)^j factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import oscillatory_transform
from .spectral import PhaseSpec, phase, phase_derivative

__all__ = [
    "Field2D",
    "LineData",
    "NyquistError",
    "extend_halfline",
    "line_spectrum",
    "line_data_from_halfline",
    "cosine_line_data",
    "v1",
    "v2",
    "propagate_line",
    "line_traces",
    "shift_state",
    "spectrum_at",
]


class NyquistError(ValueError):
    """Requested grids cannot represent the oscillation; message says how to fix."""


@dataclass(frozen=True)
class Field2D:
    """Sampled space-time field u(t_i, x_j) with uniform grid metadata."""

    values: np.ndarray  # shape (n_t, n_x)
    x0: float
    dx: float
    t0: float
    dt: float
    label: str = ""

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2:
            raise ValueError("Field2D.values must be 2-D (n_t, n_x)")
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise ValueError("Field2D.values must be finite")

    @property
    def x_grid(self):
        return self.x0 + self.dx * np.arange(self.values.shape[1])

    @property
    def t_grid(self):
        return self.t0 + self.dt * np.arange(self.values.shape[0])

    def real_part(self, tol=1e-8):
        v = np.asarray(self.values)
        if np.iscomplexobj(v):
            scale = max(np.max(np.abs(v)), 1e-300)
            if np.max(np.abs(v.imag)) > tol * scale:
                raise ValueError("field has non-negligible imaginary part")
            v = v.real
        return Field2D(v, self.x0, self.dx, self.t0, self.dt, self.label)


@dataclass(frozen=True)
class LineData:
    """Spectra of a whole-line data pair on a uniform symmetric xi grid.

    n_xi is even so the grid never contains xi = 0, and conjugate symmetry
    f_hat(-xi) = conj(f_hat(xi)) holds for real physical data.
    """

    xi: np.ndarray
    f1_hat: np.ndarray
    f2_hat: np.ndarray
    spec: PhaseSpec

    def __post_init__(self):
        xi = np.asarray(self.xi)
        if xi.size % 2 != 0:
            raise ValueError("n_xi must be even")
        if not np.allclose(xi, -xi[::-1], atol=1e-12 * max(1.0, abs(xi[-1]))):
            raise ValueError("xi grid must be symmetric about 0")

    @property
    def dxi(self):
        return float(self.xi[1] - self.xi[0])

    @property
    def xi_max(self):
        return float(self.xi[-1])


def extend_halfline(samples, dx, mode):
    """Extend half-line samples on [0, X] to [-X, X].

    Modes: 'zero' pads by 0, 'even'/'odd' reflect, 'decay_reflection'
    reflects with an exp(-x^2) taper.  Returns (x_grid, values).
    """
    f = np.asarray(samples, dtype=float)
    n = f.shape[0]
    if n < 2:
        raise ValueError("need at least two samples")
    x_pos = dx * np.arange(n)
    x = np.concatenate([-x_pos[1:][::-1], x_pos])
    mirror = f[1:][::-1]
    if mode == "zero":
        left = np.zeros(n - 1)
    elif mode == "even":
        left = mirror
    elif mode == "odd":
        left = -mirror
    elif mode == "decay_reflection":
        left = mirror * np.exp(-(x_pos[1:][::-1]) ** 2)
    else:
        raise ValueError(f"unknown extension mode {mode!r}")
    return x, np.concatenate([left, f])


def line_spectrum(x_grid, values, xi):
    """fhat(xi) = (1/2pi) int f(x) e^{-i x xi} dx from uniform samples."""
    dx = float(x_grid[1] - x_grid[0])
    return oscillatory_transform(values, dx, -np.asarray(xi, float),
                                 t0=float(x_grid[0])) / (2.0 * np.pi)


def line_data_from_halfline(phi_samples, psi_samples, dx, mode, spec,
                            xi_max, n_xi):
    """Extend (phi, psi) and sample their spectra on a symmetric xi grid."""
    xi = np.linspace(-xi_max, xi_max, int(n_xi))
    x1, g1 = extend_halfline(phi_samples, dx, mode)
    x2, g2 = extend_halfline(psi_samples, dx, mode)
    return LineData(xi, line_spectrum(x1, g1, xi), line_spectrum(x2, g2, xi), spec)


def cosine_line_data(xi0, spec, xi_max, n_xi, slot=1):
    """Two-point spectrum of cos(xi0*x), placed on the nearest grid nodes.

    Returns (data, xi0_on_grid); the discrete spectrum integrates back to
    cos(xi0_on_grid * x) exactly under the trapezoid rule, which makes the
    plane-wave propagation tests exact to rounding.
    """
    xi = np.linspace(-xi_max, xi_max, int(n_xi))
    dxi = xi[1] - xi[0]
    k = int(np.argmin(np.abs(xi - xi0)))
    k_neg = xi.size - 1 - k
    f = np.zeros(xi.size, dtype=complex)
    f[k] = 0.5 / dxi
    f[k_neg] = 0.5 / dxi
    z = np.zeros_like(f)
    if slot == 1:
        data = LineData(xi, f, z, spec)
    else:
        data = LineData(xi, z, f, spec)
    return data, float(xi[k])


def _quad_weights(xi):
    dxi = xi[1] - xi[0]
    w = np.full(xi.size, dxi)
    w[0] = w[-1] = 0.5 * dxi
    return w


def _guard(data: LineData, x_grid, t_grid):
    xi_max = data.xi_max
    phi_max = float(phase(data.spec, xi_max))
    dx = float(x_grid[1] - x_grid[0]) if len(x_grid) > 1 else 0.0
    dt = float(t_grid[1] - t_grid[0]) if len(t_grid) > 1 else 0.0
    msgs = []
    if dx > 0 and xi_max * dx > np.pi + 1e-12:
        msgs.append(f"xi_max*dx = {xi_max * dx:.3g} > pi; need n_x >= "
                    f"{int(np.ceil((x_grid[-1] - x_grid[0]) * xi_max / np.pi)) + 1}")
    if dt > 0 and phi_max * dt > np.pi + 1e-12:
        msgs.append(f"phase(xi_max)*dt = {phi_max * dt:.3g} > pi; need n_t >= "
                    f"{int(np.ceil((t_grid[-1] - t_grid[0]) * phi_max / np.pi)) + 1}")
    # quadrature refinement guard: points per oscillation of the integrand
    osc = np.max(np.abs(x_grid)) + np.max(np.abs(t_grid)) * float(
        phase_derivative(data.spec, xi_max))
    if data.dxi * osc > np.pi + 1e-12:
        msgs.append(f"dxi*(X + T*phase'(xi_max)) = {data.dxi * osc:.3g} > pi; "
                    f"need n_xi >= {int(np.ceil(2 * xi_max * osc / np.pi)) + 1}")
    if msgs:
        raise NyquistError("; ".join(msgs))


def _assemble(data: LineData, x_grid, t_grid, tker, slot_hat, multiplier,
              label, order=0):
    xi = data.xi
    w = _quad_weights(xi) * multiplier * slot_hat
    if order:
        w = w * (1j * xi) ** order
    coef = tker * w[None, :]  # (n_t, n_xi)
    ker = np.exp(1j * np.outer(xi, np.asarray(x_grid, float)))
    vals = coef @ ker
    dx = float(x_grid[1] - x_grid[0]) if len(x_grid) > 1 else 1.0
    dt = float(t_grid[1] - t_grid[0]) if len(t_grid) > 1 else 1.0
    return Field2D(vals, float(x_grid[0]), dx, float(t_grid[0]), dt, label)


def _sine_multiplier(data: LineData):
    """xi^2/phase(xi) with the removable zero at xi = 0."""
    xi = data.xi
    ph = phase(data.spec, xi)
    return np.where(ph > 0, xi ** 2 / np.where(ph > 0, ph, 1.0), 0.0)


def v1(data: LineData, x_grid, t_grid) -> Field2D:
    """Cosine propagation of the first slot: int e^{ix xi} cos(t phi) f1hat dxi."""
    x_grid = np.asarray(x_grid, float)
    t_grid = np.asarray(t_grid, float)
    _guard(data, x_grid, t_grid)
    ph = phase(data.spec, data.xi)
    tker = np.cos(np.outer(t_grid, ph))
    return _assemble(data, x_grid, t_grid, tker, data.f1_hat,
                     np.ones_like(ph), "v1")


def v2(data: LineData, x_grid, t_grid) -> Field2D:
    """Sine propagation of the second slot with the xi^2/phi multiplier."""
    x_grid = np.asarray(x_grid, float)
    t_grid = np.asarray(t_grid, float)
    _guard(data, x_grid, t_grid)
    ph = phase(data.spec, data.xi)
    tker = np.sin(np.outer(t_grid, ph))
    return _assemble(data, x_grid, t_grid, tker, data.f2_hat,
                     _sine_multiplier(data), "v2")


def propagate_line(data: LineData, x_grid, t_grid) -> Field2D:
    """W_R(f1, f2) = v1(f1) + v2(f2)."""
    a = v1(data, x_grid, t_grid)
    b = v2(data, x_grid, t_grid)
    return Field2D(a.values + b.values, a.x0, a.dx, a.t0, a.dt, "W_R")


def line_traces(data: LineData, t_grid, orders=(0, 2, 4), x0=0.0):
    """Spectral boundary traces d^j/dx^j u(x0, t) for j in `orders`.

    (i xi)^j is inserted in the integrand; the field is never finite
    differenced.  Returns {order: complex array over t_grid}.
    """
    t_grid = np.asarray(t_grid, float)
    _guard(data, np.array([x0]), t_grid)
    xi = data.xi
    ph = phase(data.spec, xi)
    w = _quad_weights(xi)
    base = (np.cos(np.outer(t_grid, ph)) * (w * data.f1_hat)[None, :]
            + np.sin(np.outer(t_grid, ph)) * (w * _sine_multiplier(data)
                                              * data.f2_hat)[None, :])
    shift = np.exp(1j * xi * x0)
    out = {}
    for j in orders:
        out[j] = base @ ((1j * xi) ** j * shift)
    return out


def spectrum_at(data: LineData, t):
    """Evolved spectrum uhat(xi, t) = cos(t phi) f1hat + sin(t phi) m f2hat."""
    ph = phase(data.spec, data.xi)
    return (np.cos(t * ph) * data.f1_hat
            + np.sin(t * ph) * _sine_multiplier(data) * data.f2_hat)


def shift_state(data: LineData, T) -> LineData:
    """LineData whose evolution equals that of `data` shifted by time T.

    The per-frequency state (f1hat, m*f2hat) rotates by angle T*phi; both
    slots are recovered exactly, so shift_state(shift_state(d, T), -T)
    reproduces d to rounding (time reversibility of the linear group).
    """
    ph = phase(data.spec, data.xi)
    m = _sine_multiplier(data)
    c, s = np.cos(T * ph), np.sin(T * ph)
    a = data.f1_hat
    b = m * data.f2_hat
    a2 = c * a + s * b
    b2 = -s * a + c * b
    f2 = np.where(m > 0, b2 / np.where(m > 0, m, 1.0), data.f2_hat)
    return LineData(data.xi, a2, f2, data.spec)
