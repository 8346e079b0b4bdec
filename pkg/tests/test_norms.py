"""Discrete Sobolev and modulation norms: closed-form values, Parseval
consistency, homogeneity, weight collapse at b = 0."""

import numpy as np
import pytest

from bq6.norms import sobolev_norm, time_sobolev_norm, xsb_norm
from bq6.spectral import PhaseSpec

SPEC = PhaseSpec(1)


def test_zero_function():
    assert sobolev_norm(np.zeros(64), 0.1, -0.3).value == 0.0
    assert xsb_norm(np.zeros((32, 32)), 0.1, 0.1, 0.0, 0.45, SPEC).value == 0.0


def test_gaussian_l2_value():
    # || e^{-x^2} ||_L2 = (pi/2)^{1/4}
    x = np.linspace(-10, 10, 1001)
    rep = sobolev_norm(np.exp(-x ** 2), x[1] - x[0], 0.0)
    assert abs(rep.value - (np.pi / 2) ** 0.25) <= 1e-6


def test_s0_equals_discrete_l2():
    rng = np.random.default_rng(1)
    f = rng.standard_normal(200)
    dx = 0.05
    rep = sobolev_norm(f, dx, 0.0)
    assert abs(rep.value - np.sqrt(np.sum(f ** 2) * dx)) <= 1e-12 * rep.value


def test_monotone_in_s():
    rng = np.random.default_rng(2)
    f = rng.standard_normal(128)
    vals = [sobolev_norm(f, 0.1, s).value for s in (-0.5, -0.2, 0.0, 0.3)]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_time_norm_matches_space_norm():
    f = np.sin(np.linspace(0, 6, 300))
    a = sobolev_norm(f, 0.02, -0.4).value
    b = time_sobolev_norm(f, 0.02, -0.4).value
    assert a == b


def test_xsb_b0_collapses_to_time_integrated_hs():
    rng = np.random.default_rng(3)
    u = rng.standard_normal((48, 96))
    dx, dt, s = 0.08, 0.02, -0.3
    full = xsb_norm(u, dx, dt, s, 0.0, SPEC).value
    slices = [sobolev_norm(u[i], dx, s, pad=2).value ** 2
              for i in range(u.shape[0])]
    agg = np.sqrt(np.sum(np.array(slices) * dt))
    # pad-2 zero extension in t makes the time direction plain L2
    assert abs(full - agg) <= 1e-8 * full


def test_xsb_absolutely_homogeneous():
    rng = np.random.default_rng(4)
    u = rng.standard_normal((40, 80))
    a = xsb_norm(u, 0.1, 0.02, -0.2, 0.45, SPEC).value
    b = xsb_norm(-2.5 * u, 0.1, 0.02, -0.2, 0.45, SPEC).value
    assert abs(b - 2.5 * a) <= 1e-12 * b


def test_xsb_variants_comparable():
    rng = np.random.default_rng(5)
    u = rng.standard_normal((48, 96))
    a = xsb_norm(u, 0.08, 0.02, -0.2, 0.45, SPEC, "exact_phase").value
    c = xsb_norm(u, 0.08, 0.02, -0.2, 0.45, SPEC, "kdv_surrogate").value
    assert 0.5 <= a / c <= 2.0


def test_bad_variant_rejected():
    with pytest.raises(ValueError):
        xsb_norm(np.zeros((8, 8)), 0.1, 0.1, 0.0, 0.45, SPEC, "nope")


def test_norm_report_metadata():
    rep = xsb_norm(np.ones((16, 16)), 0.1, 0.1, -0.4, 0.45, SPEC)
    assert rep.params["s"] == -0.4
    assert "zero" in rep.grid["extension"]
