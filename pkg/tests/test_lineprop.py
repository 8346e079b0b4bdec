"""Whole-line propagator: plane-wave exactness, extensions, traces,
Parseval, reversibility, and the PDE residual under refinement."""

import numpy as np
import pytest

from bq6.fd import pde_residual
from bq6.lineprop import (Field2D, LineData, NyquistError, cosine_line_data,
                          extend_halfline, line_data_from_halfline,
                          line_spectrum, line_traces, propagate_line,
                          shift_state, spectrum_at, v1, v2)
from bq6.spectral import PhaseSpec, phase

SPEC = PhaseSpec(1)


def test_extend_zero_function_all_modes():
    for mode in ("zero", "even", "odd", "decay_reflection"):
        x, g = extend_halfline(np.zeros(50), 0.1, mode)
        assert np.all(g == 0)
        assert len(x) == 99


def test_extend_even_gaussian_exact():
    xs = np.linspace(0, 8, 200)
    f = np.exp(-xs ** 2)
    x, g = extend_halfline(f, xs[1] - xs[0], "even")
    assert np.allclose(g, np.exp(-x ** 2), atol=1e-15)


def test_extend_zero_l2_example():
    # f(x) = x e^{-x}: || zero extension ||_L2 = 1/2 (Gamma integral).  The
    # window must reach past x = 8, where the squared tail is still 4e-6;
    # at x = 12 the remainder (x^2+x+1/2)/2 e^{-2x} drops below 1e-8.
    xs = np.linspace(0, 12, 2401)
    x, g = extend_halfline(xs * np.exp(-xs), xs[1] - xs[0], "zero")
    from scipy.integrate import simpson

    l2 = np.sqrt(simpson(g ** 2, dx=xs[1] - xs[0]))
    assert abs(l2 - 0.5) <= 1e-6
    # and the extension preserves the discrete half-line norm exactly
    assert abs(np.sum(g ** 2) - np.sum((xs * np.exp(-xs)) ** 2)) < 1e-14


def test_extend_modes_shape_and_values():
    xs = np.linspace(0, 2, 21)
    f = 1.0 + xs
    x, gz = extend_halfline(f, 0.1, "zero")
    assert np.all(gz[:20] == 0) and np.allclose(gz[20:], f)
    _, ge = extend_halfline(f, 0.1, "even")
    assert np.allclose(ge[:20], f[1:][::-1])
    _, go = extend_halfline(f, 0.1, "odd")
    assert np.allclose(go[:20], -f[1:][::-1])
    _, gd = extend_halfline(f, 0.1, "decay_reflection")
    assert np.allclose(gd[:20], f[1:][::-1] * np.exp(-xs[1:][::-1] ** 2))
    with pytest.raises(ValueError):
        extend_halfline(f, 0.1, "nope")


def test_v1_cosine_plane_wave():
    data, xi0 = cosine_line_data(2.0, SPEC, 6.0, 1024, slot=1)
    x = np.linspace(0, 5, 41)
    t = np.linspace(0, 1.5, 161)
    ph0 = float(phase(SPEC, xi0))
    exact = np.cos(ph0 * t)[:, None] * np.cos(xi0 * x)[None, :]
    err = np.max(np.abs(v1(data, x, t).values - exact))
    assert err <= 1e-8


def test_v2_cosine_plane_wave_and_zero_slices():
    data, xi0 = cosine_line_data(2.0, SPEC, 6.0, 1024, slot=2)
    x = np.linspace(0, 5, 41)
    t = np.linspace(0, 1.5, 161)
    ph0 = float(phase(SPEC, xi0))
    fld = v2(data, x, t)
    exact = (xi0 ** 2 / ph0) * np.sin(ph0 * t)[:, None] * np.cos(
        xi0 * x)[None, :]
    assert np.max(np.abs(fld.values - exact)) <= 1e-8
    assert np.max(np.abs(fld.values[0])) <= 1e-12  # t = 0 slice vanishes
    z = v1(LineData(data.xi, 0 * data.f2_hat, 0 * data.f2_hat, SPEC), x, t)
    assert np.all(z.values == 0)


def test_propagate_line_is_sum():
    d1, _ = cosine_line_data(1.5, SPEC, 6.0, 1024, slot=1)
    data = LineData(d1.xi, d1.f1_hat, np.roll(d1.f1_hat, 7), SPEC)
    x = np.linspace(0, 3, 31)
    t = np.linspace(0, 1.0, 121)
    full = propagate_line(data, x, t)
    parts = v1(data, x, t).values + v2(data, x, t).values
    assert np.allclose(full.values, parts, atol=1e-14)


def test_t0_reproduces_datum():
    xs = np.linspace(0, 10, 161)
    phi = np.exp(-xs ** 2)
    ld = line_data_from_halfline(phi, 0 * phi, xs[1] - xs[0], "even", SPEC,
                                 8.0, 2048)
    f0 = v1(ld, xs, np.array([0.0]))
    assert np.max(np.abs(f0.values[0] - phi)) < 1e-5


def test_traces_cosine():
    data, xi0 = cosine_line_data(2.0, SPEC, 6.0, 1024, slot=1)
    t = np.linspace(0, 1.5, 161)
    ph0 = float(phase(SPEC, xi0))
    tr = line_traces(data, t, orders=(0, 1))
    assert np.max(np.abs(tr[0] - np.cos(ph0 * t))) <= 1e-8
    assert np.max(np.abs(tr[1])) <= 1e-10  # odd integrand kills order 1


def test_traces_zero_data():
    xi = np.linspace(-4, 4, 256)
    z = np.zeros(256, dtype=complex)
    tr = line_traces(LineData(xi, z, z, SPEC), np.linspace(0, 1, 41),
                     orders=(0, 1, 2, 3, 4, 5))
    for j in tr:
        assert np.all(tr[j] == 0)


def test_nyquist_refusal_reports_sizes():
    data, _ = cosine_line_data(2.0, SPEC, 6.0, 64, slot=1)
    with pytest.raises(NyquistError) as exc:
        v1(data, np.linspace(0, 5, 5), np.linspace(0, 2, 5))
    assert "need" in str(exc.value)


def test_parseval_at_fixed_time():
    xs = np.linspace(0, 10, 161)
    phi = np.exp(-xs ** 2)
    ld = line_data_from_halfline(phi, 0 * phi, xs[1] - xs[0], "even", SPEC,
                                 8.0, 2048)
    x_big = np.linspace(-30, 30, 1401)
    tt = 0.2
    u = v1(ld, x_big, np.array([tt]))
    lhs = np.sqrt(np.trapezoid(np.abs(u.values[0]) ** 2,
                               dx=x_big[1] - x_big[0]))
    spec_t = spectrum_at(ld, tt)
    w = np.full(ld.xi.size, ld.dxi)
    w[0] = w[-1] = 0.5 * ld.dxi
    rhs = np.sqrt(2 * np.pi * np.sum(w * np.abs(spec_t) ** 2))
    assert abs(lhs - rhs) / rhs < 1e-6


def test_time_reversibility():
    rng = np.random.default_rng(0)
    xi = np.linspace(-4, 4, 256)
    f1 = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    f2 = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    ld = LineData(xi, f1, f2, SPEC)
    back = shift_state(shift_state(ld, 1.3), -1.3)
    assert np.max(np.abs(back.f1_hat - f1)) < 1e-8
    assert np.max(np.abs(back.f2_hat - f2)) < 1e-8


def test_line_spectrum_matches_analytic_gaussian():
    # fhat of e^{-x^2} is e^{-xi^2/4} / (2 sqrt(pi)) in this convention
    x = np.linspace(-12, 12, 2401)
    xi = np.linspace(-6, 6, 100)
    got = line_spectrum(x, np.exp(-x ** 2), xi)
    want = np.exp(-xi ** 2 / 4) / (2 * np.sqrt(np.pi))
    assert np.max(np.abs(got - want)) < 1e-9


def test_pde_residual_refines_at_second_order():
    xs = np.linspace(0, 10, 161)
    phi = np.exp(-(xs - 5.0) ** 2)
    ld = line_data_from_halfline(phi, 0 * phi, xs[1] - xs[0], "zero", SPEC,
                                 4.0, 1024)
    res = []
    for n_x, n_t in ((81, 161), (161, 321), (321, 641)):
        fld = propagate_line(ld, np.linspace(2, 8, n_x),
                             np.linspace(0, 0.5, n_t))
        res.append(pde_residual(fld, beta=1))
    orders = np.log2(np.array(res[:-1]) / np.array(res[1:]))
    assert np.all(np.array(res) < 0.2)
    assert np.all(orders > 1.5), (res, orders)


def test_kato_trace_ratio_stable_under_doubling():
    # sharp-smoothing surrogate: trace/data ratios move < 2x when the grid
    # doubles, for s in {0, -0.4} and a couple of derivative orders
    from bq6.lab import kato_ratio_suite

    for s in (0.0, -0.4):
        for j in (0, 3):
            r1 = kato_ratio_suite("line", s=s, order=j, n_samples=6, seed=5)
            r2 = kato_ratio_suite("line", s=s, order=j, n_samples=6, seed=5,
                                  refine=2)
            assert max(r2) / max(r1) < 2.0
            assert max(r1) / max(r2) < 2.0
