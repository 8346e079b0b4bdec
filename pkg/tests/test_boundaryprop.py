"""Boundary integral operator: data transform, trace recovery, field
properties (realness, linearity, zero initial slice, PDE residual)."""

import numpy as np
import pytest

from bq6.boundaryprop import (BoundaryTriple, boundary_spectrum,
                              boundary_transform, build_contour_quadrature,
                              wbdr_eval, wbdr_traces)
from bq6.fd import pde_residual
from bq6.lineprop import NyquistError
from bq6.spectral import PhaseSpec

SPEC = PhaseSpec(1)


def _sin_decay(t):
    return np.sin(t) * np.exp(-t)


@pytest.fixture(scope="module")
def quad2048():
    return build_contour_quadrature(SPEC, 2048, 4.0, 6.0, None)


def test_transform_zero():
    t = np.linspace(0, 5, 101)
    out = boundary_transform(np.zeros_like(t), t[1] - t[0], SPEC,
                             np.array([0.0, 1.0, 3.0]))
    assert np.all(out == 0)


def test_transform_exponential_closed_form():
    # h = e^{-t}, mu = 1 (phase sqrt(3)): integral -> 1/(1 - i sqrt3);
    # T = 40 leaves only an e^{-40} truncation remainder
    t = np.linspace(0, 40, 4001)
    h = np.exp(-t)
    got = boundary_transform(h, t[1] - t[0], SPEC, np.array([1.0]))[0]
    want = 1.0 / (1.0 - 1j * np.sqrt(3.0))
    assert abs(got - want) <= 1e-8
    got0 = boundary_transform(h, t[1] - t[0], SPEC, np.array([0.0]))[0]
    assert abs(got0 - 1.0) <= 1e-8


def test_boundary_spectrum_stacks_slots():
    t = np.linspace(0, 3, 301)
    triple = BoundaryTriple(_sin_decay(t), 0 * t, np.cos(t) * np.exp(-t),
                            t[1] - t[0])
    spect = boundary_spectrum(triple, SPEC, np.array([0.5, 1.0]))
    assert spect.h_plus.shape == (3, 2)
    assert np.all(spect.h_plus[1] == 0)


def test_triple_validation():
    with pytest.raises(ValueError):
        BoundaryTriple(np.zeros(5), np.zeros(4), np.zeros(5), 0.1)
    with pytest.raises(ValueError):
        BoundaryTriple(np.array([np.nan]), np.array([0.0]), np.array([0.0]),
                       0.1)
    assert BoundaryTriple.regularity(0.0) == (1 / 3, -1 / 3, -1.0)


@pytest.mark.parametrize("beta", [1, -1])
@pytest.mark.parametrize("slot,order", [(0, 0), (1, 2), (2, 4)])
def test_trace_recovery_each_slot(beta, slot, order):
    spec = PhaseSpec(beta)
    T, n_t = 4.0, 513
    t = np.linspace(0, T, n_t)
    dt = t[1] - t[0]
    h = _sin_decay(t)
    z = np.zeros_like(h)
    slots = [z, z, z]
    slots[slot] = h
    triple = BoundaryTriple(*slots, dt)
    tr = wbdr_traces(triple, spec, t, orders=(0, 2, 4), n_mu=2048)
    mask = (t >= 0.1) & (t <= T - 0.1)
    for k in (0, 2, 4):
        target = h if k == order else z
        err = np.sqrt(np.trapezoid((tr[k][mask] - target[mask]) ** 2, dx=dt))
        assert err <= 1e-3, (beta, slot, k, err)


def test_zero_triple_zero_field(quad2048):
    t = np.linspace(0, 4, 513)
    z = np.zeros_like(t)
    triple = BoundaryTriple(z, z, z, t[1] - t[0])
    fld = wbdr_eval(triple, SPEC, np.linspace(0, 6, 31), t, quad=quad2048)
    assert np.all(fld.values == 0)
    tr = wbdr_traces(triple, SPEC, t, quad=quad2048)
    for k in tr:
        assert np.all(tr[k] == 0)


def test_initial_slice_and_realness(quad2048):
    T, n_t = 4.0, 513
    t = np.linspace(0, T, n_t)
    x = np.linspace(0, 6, 121)
    triple = BoundaryTriple(_sin_decay(t), 0 * t, 0 * t, t[1] - t[0])
    fld = wbdr_eval(triple, SPEC, x, t, quad=quad2048)
    u0 = fld.values[0].real
    assert np.sqrt(np.trapezoid(u0 ** 2, dx=x[1] - x[0])) <= 1e-3
    scale = np.max(np.abs(fld.values.real))
    assert np.max(np.abs(fld.values.imag)) <= 1e-10 * scale
    fld.real_part(tol=1e-10)  # must not raise


def test_linearity(quad2048):
    t = np.linspace(0, 4, 257)
    dt = t[1] - t[0]
    x = np.linspace(0, 4, 41)
    ha = BoundaryTriple(_sin_decay(t), 0 * t, np.exp(-t) - np.exp(-4.0), dt)
    hb = BoundaryTriple(0 * t, np.cos(2 * t) * np.exp(-t), 0 * t, dt)
    combo = BoundaryTriple(2.0 * ha.h1 - 0.5 * hb.h1,
                           2.0 * ha.h2 - 0.5 * hb.h2,
                           2.0 * ha.h3 - 0.5 * hb.h3, dt)
    fa = wbdr_eval(ha, SPEC, x, t, quad=quad2048).values
    fb = wbdr_eval(hb, SPEC, x, t, quad=quad2048).values
    fc = wbdr_eval(combo, SPEC, x, t, quad=quad2048).values
    scale = np.max(np.abs(fc))
    assert np.max(np.abs(fc - (2.0 * fa - 0.5 * fb))) <= 1e-10 * scale


def test_pde_residual_refines():
    T = 2.0
    res = []
    for n_x, n_t in ((61, 161), (121, 321)):
        t = np.linspace(0, T, n_t)
        x = np.linspace(0, 6, n_x)
        triple = BoundaryTriple(_sin_decay(t), 0 * t, 0 * t, t[1] - t[0])
        fld = wbdr_eval(triple, SPEC, x, t, n_mu=1024)
        res.append(pde_residual(fld, beta=1))
    assert res[1] < res[0]
    assert np.log2(res[0] / res[1]) > 1.5


def test_nyquist_guard_refuses():
    t = np.linspace(0, 4, 33)
    triple = BoundaryTriple(_sin_decay(t), 0 * t, 0 * t, t[1] - t[0])
    with pytest.raises(NyquistError):
        wbdr_eval(triple, SPEC, np.linspace(0, 6, 31), t, n_mu=512,
                  mu_max=30.0)


def test_negative_x_rejected(quad2048):
    t = np.linspace(0, 4, 129)
    triple = BoundaryTriple(_sin_decay(t), 0 * t, 0 * t, t[1] - t[0])
    with pytest.raises(ValueError):
        wbdr_eval(triple, SPEC, np.linspace(-1, 6, 31), t, quad=quad2048)


def test_prop31_ratio_stable_under_doubling():
    from bq6.lab import kato_ratio_suite

    r1 = kato_ratio_suite("wbdr", s=-0.4, order=0, n_samples=4, seed=9)
    r2 = kato_ratio_suite("wbdr", s=-0.4, order=0, n_samples=4, seed=9,
                          refine=2)
    assert max(r2) / max(r1) < 2.0 and max(r1) / max(r2) < 2.0
