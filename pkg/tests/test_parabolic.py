import numpy as np
import pytest

import fiokit as fk
from conftest import random_field


def high_pass(spec, rng):
    f = random_field(spec, rng)
    mask = np.where(fk.lattice(spec).mags >= 0.5, 1.0, 0.0)
    return fk.inverse_transform(mask * fk.forward_transform(f), spec)


def test_c_sigma_closed_form():
    flat = (2.0 * np.pi) ** -0.5
    for sigma in (16.0, 25.0, 100.0):
        assert abs(fk.c_sigma(sigma) - flat) / flat < 1e-8


def test_c_sigma_monotone_nonincreasing():
    sigmas = np.geomspace(0.01, 64.0, 25)
    vals = [fk.c_sigma(float(s)) for s in sigmas]
    for a, b in zip(vals, vals[1:]):
        assert b <= a * (1 + 1e-10)


def test_c_sigma_against_fine_trapezoid_oracle():
    for sigma in (0.3, 1.0, 4.0, 12.0):
        oracle = fk.c_sigma(sigma, nodes=8192)
        assert abs(fk.c_sigma(sigma) - oracle) / oracle < 1e-8


def test_c_sigma_validation():
    with pytest.raises(fk.ParameterError):
        fk.c_sigma(-1.0)


def test_c_sigma_table_matches_direct(frame64):
    table = frame64.geometry.ctable
    for sigma in np.geomspace(table.sigma_min * 2, 40.0, 15):
        direct = fk.c_sigma(float(sigma))
        assert abs(float(table(sigma)) - direct) / direct < 1e-5


def test_calderon_normalization(frame64):
    psi = frame64.geometry.psi
    for rho in np.geomspace(0.03, 300.0, 20):
        s = np.linspace(np.log(0.5 / rho) - 0.05, np.log(2.0 / rho) + 0.05, 4096)
        integral = np.trapezoid(psi(np.exp(s) * rho) ** 2, s)
        assert abs(integral - 1.0) <= 1e-10


def test_calderon_profile_support(frame64):
    psi = frame64.geometry.psi
    assert float(psi(0.49)) == 0.0
    assert float(psi(2.01)) == 0.0
    assert float(psi(1.0)) > 0.0


def test_phi_support_hard_zeros(frame64):
    geom = frame64.geometry
    e1 = np.array([1.0, 0.0])
    # below the radial threshold
    assert float(geom.phi_values(np.array([0.1, 0.0]), e1)) == 0.0
    # on-axis inside the active range
    assert float(geom.phi_values(np.array([4.0, 0.0]), e1)) > 0.0
    # angular distance 3 |zeta|^{-1/2}: outside the parabolic aperture
    rho = 9.0
    d = 3.0 / np.sqrt(rho)
    theta = 2.0 * np.arcsin(d / 2.0)
    pt = rho * np.array([np.cos(theta), np.sin(theta)])
    assert float(geom.phi_values(pt, e1)) == 0.0


def test_phi_support_on_whole_lattice(frame64):
    pts = fk.lattice(frame64.spec).points()
    mags = fk.lattice(frame64.spec).mags.ravel()
    for l in range(0, frame64.n_directions, 2):
        vals = np.zeros(len(pts))
        idx, v = frame64.sparse(l)
        vals[idx] = v
        omega = frame64.directions.omegas[l]
        safe = mags > 0
        unit = pts[safe] / mags[safe][:, None]
        d = np.hypot(unit[:, 0] - omega[0], unit[:, 1] - omega[1])
        outside = (mags[safe] < 0.125) | (d > 2.0 / np.sqrt(mags[safe]))
        assert np.abs(vals[safe][outside]).max() == 0.0
        assert vals[0] == 0.0  # zeta = 0


def test_rotational_covariance(frame64, rng):
    geom = frame64.geometry
    pts = rng.uniform(-8, 8, size=(64, 2))
    base = geom.phi_values(pts, frame64.directions.omegas[0])
    for l in (1, 3, 7):
        ang = 2.0 * np.pi * l / frame64.n_directions
        rot = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
        rotated = geom.phi_values(pts @ rot.T, frame64.directions.omegas[l])
        assert np.abs(rotated - base).max() <= 1e-10


def test_build_phi_omega_validation(spec64, frame64):
    with pytest.raises(fk.ParameterError):
        fk.build_phi_omega(np.array([1.0, 1.0]), spec64, frame64.geometry)
    mult = fk.build_phi_omega(np.array([0.0, 1.0]), spec64, frame64.geometry)
    ref = frame64.multiplier(frame64.n_directions // 4)
    assert np.abs(mult.values - ref.values).max() <= 1e-12


def test_frame_reconstruction_high_pass(spec64, frame64, rng):
    g = high_pass(spec64, rng)
    rec = fk.frame_synthesize(fk.frame_analyze(g, frame64), frame64)
    rel = np.abs(rec.samples - g.samples).max() / np.abs(g.samples).max()
    assert rel <= 1e-10


def test_frame_kills_low_spectra(spec64, frame64, rng):
    f = random_field(spec64, rng)
    mask = np.where(fk.lattice(spec64).mags < 0.5, 1.0, 0.0)
    low = fk.inverse_transform(mask * fk.forward_transform(f), spec64)
    rec = fk.frame_synthesize(fk.frame_analyze(low, frame64), frame64)
    assert np.abs(rec.samples).max() <= 1e-12 * np.abs(low.samples).max()


def test_analyze_low_pass_is_zero(spec64, frame64, rng):
    f = random_field(spec64, rng)
    mask = np.where(fk.lattice(spec64).mags < 0.12, 1.0, 0.0)
    low = fk.inverse_transform(mask * fk.forward_transform(f), spec64)
    for piece in fk.frame_analyze(low, frame64):
        assert np.abs(piece.samples).max() <= 1e-13 * np.abs(low.samples).max()


def test_analyze_linearity(spec64, frame64, rng):
    f = random_field(spec64, rng)
    g = random_field(spec64, rng)
    both = fk.frame_analyze(f + g, frame64)
    fa = fk.frame_analyze(f, frame64)
    ga = fk.frame_analyze(g, frame64)
    for b, x, y in zip(both, fa, ga):
        assert np.abs(b.samples - x.samples - y.samples).max() < 1e-12


def test_synthesize_single_member(spec64, frame64, rng):
    g = high_pass(spec64, rng)
    collection = [fk.GridField(spec64, np.zeros(spec64.shape, complex))
                  for _ in range(frame64.n_directions)]
    collection[5] = g
    out = fk.frame_synthesize(collection, frame64)
    w = frame64.directions.weights[5]
    ref = fk.apply_multiplier(g, frame64.m)
    assert np.abs(out.samples - w * ref.samples).max() < 1e-12 * np.abs(g.samples).max()


def test_m_growth_exponent(spec_fine):
    frame = fk.ParabolicFrame(spec_fine)
    axis = fk.lattice(spec_fine).axis
    sel = [(i, axis[i]) for i in range(1, spec_fine.N // 2) if 4.0 <= axis[i] <= 64.0]
    xs = np.log([x for _, x in sel])
    ys = np.log([frame.m.values[i, 0] for i, _ in sel])
    slope = np.polyfit(xs, ys, 1)[0]
    assert abs(slope - 0.25) <= 0.05


def test_insufficient_directions_raises():
    spec = fk.GridSpec(N=64, L=2.0 * np.pi)
    with pytest.raises(fk.ConstructionError):
        fk.ParabolicFrame(spec, M_omega=4)


def test_direction_set_weights(frame64):
    w = frame64.directions.weights
    assert abs(w.sum() - 2.0 * np.pi) < 1e-12
    norms = np.hypot(frame64.directions.omegas[:, 0], frame64.directions.omegas[:, 1])
    assert np.abs(norms - 1.0).max() < 1e-12


def test_anisotropic_bound_finite(frame64):
    report = fk.anisotropic_bound_check(frame64, alpha_max=2)
    assert set(report) == {(a, b) for a in range(3) for b in range(3 - a)}
    for val in report.values():
        assert np.isfinite(val)
    assert report[(0, 0)] > 0.0
    # far off the support the integrand contributes nothing
    geom = frame64.geometry
    assert float(geom.phi_values(np.array([-4.0, 0.0]), np.array([1.0, 0.0]))) == 0.0


def test_frame_rejects_other_dimensions():
    with pytest.raises(fk.ParameterError):
        fk.ParabolicFrame(fk.GridSpec(n=1, N=64))
