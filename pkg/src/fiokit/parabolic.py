"""Dyadic-parabolic directional decomposition.

For each direction omega on the circle, phi_omega is a frequency
cutoff concentrated on the parabolic sector |zeta^ - omega| <=
2|zeta|^{-1/2}, |zeta| >= 1/8, built as a scale integral

    phi_omega(zeta) = int_0^4 Psi(tau zeta) c_tau u(|zeta^ - omega| / sqrt(tau)) dtau/tau

where u is a directional bump, c_tau the sphere normalization and Psi
a Calderon-normalized radial window.  The reproducing multiplier m is
the exact lattice inverse of the direction-quadrature sum, so
analyze-then-synthesize is an identity (to roundoff) on spectra with
|zeta| >= 1/2.

phi_omega depends on zeta only through (|zeta|, |zeta^ - omega|), so
rotational covariance is exact by construction, and the same routine
evaluates at arbitrary off-lattice points (used for derivative
sampling).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .errors import ConstructionError, ParameterError, ResolutionError
from .grid import (
    GridField,
    GridSpec,
    SpectralMultiplier,
    forward_transform,
    inverse_transform,
    lattice,
)
from .profiles import BumpProfile

_CHUNK = 1 << 16


def c_sigma(sigma: float, profile: BumpProfile = BumpProfile(), nodes: int | None = None) -> float:
    """Normalization c_sigma = (int_{S^1} u(|e1 - nu|/sqrt(sigma))^2 dnu)^{-1/2}.

    Periodic trapezoid quadrature on the circle; the node count grows
    like 1/sqrt(sigma) so the shrinking angular support stays resolved.
    """
    if not (sigma > 0 and np.isfinite(sigma)):
        raise ParameterError(f"sigma={sigma} must be positive")
    if nodes is None:
        nodes = max(512, int(np.ceil(2048.0 / np.sqrt(min(sigma, 16.0)))))
    theta = np.linspace(0.0, 2.0 * np.pi, nodes, endpoint=False)
    chord = 2.0 * np.abs(np.sin(theta / 2.0))
    integral = float((profile(chord / np.sqrt(sigma)) ** 2).sum() * 2.0 * np.pi / nodes)
    if integral < 1e-14:
        raise ResolutionError(f"sphere quadrature unresolved at sigma={sigma}")
    return integral ** -0.5


class CSigmaTable:
    """Cubic-spline cache of log c_sigma vs log sigma.

    Above sigma = 16 the directional bump covers the whole circle and
    c_sigma = (2 pi)^{-1/2} exactly.
    """

    FLAT = (2.0 * np.pi) ** -0.5

    def __init__(self, sigma_min: float, profile: BumpProfile = BumpProfile()):
        self.profile = profile
        self.sigma_min = min(float(sigma_min), 1.0) / 2.0
        lo, hi = np.log(self.sigma_min), np.log(16.0)
        count = int(np.ceil(16.0 * (hi - lo) / np.log(2.0))) + 1
        logs = np.linspace(lo, hi, count)
        logc = np.array([np.log(c_sigma(float(np.exp(s)), profile)) for s in logs])
        self._spline = CubicSpline(logs, logc)

    def __call__(self, sigma) -> np.ndarray:
        sigma = np.asarray(sigma, dtype=float)
        out = np.full(sigma.shape, self.FLAT)
        low = sigma < 16.0
        if low.any():
            out[low] = np.exp(self._spline(np.log(sigma[low])))
        return out


class AngularCalderonProfile:
    """Radial window Psi(t) = Theta(t)/sqrt(C), Theta = u(t/2)(1 - u(t)).

    Theta is supported in [1/2, 2]; C = int_0^inf Theta(s)^2 ds/s makes
    int_0^inf Psi(sigma zeta)^2 dsigma/sigma = 1 for every zeta != 0
    (the integral is scale invariant, so C is a single number).
    """

    def __init__(self, profile: BumpProfile = BumpProfile()):
        self.profile = profile

        def theta_log(s):
            t = np.exp(s)
            return float(profile(t / 2.0) * (1.0 - profile(t))) ** 2

        val, _ = quad(theta_log, np.log(0.5), np.log(2.0), epsabs=1e-14, epsrel=1e-13, limit=200)
        self.constant = val

    def theta(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return self.profile(t / 2.0) * (1.0 - self.profile(t))

    def __call__(self, t) -> np.ndarray:
        return self.theta(t) / np.sqrt(self.constant)


@dataclass
class PhiGeometry:
    """Everything needed to evaluate phi_omega at arbitrary points."""

    profile: BumpProfile
    psi: AngularCalderonProfile
    ctable: CSigmaTable
    n_tau: int = 96

    def phi_values(self, points, omega) -> np.ndarray:
        """phi_omega at points of shape (..., 2); hard zeros off support."""
        pts = np.asarray(points, dtype=float)
        shape = pts.shape[:-1]
        pts = pts.reshape(-1, 2)
        omega = np.asarray(omega, dtype=float)
        rho = np.hypot(pts[:, 0], pts[:, 1])
        out = np.zeros(len(pts))
        cand = rho > 0.125
        if cand.any():
            r = rho[cand]
            unit = pts[cand] / r[:, None]
            d = np.hypot(unit[:, 0] - omega[0], unit[:, 1] - omega[1])
            lo = np.maximum(0.5 / r, d * d)
            hi = np.minimum(2.0 / r, 4.0)
            act = lo < hi
            vals = np.zeros(len(r))
            vals[act] = self._windows(r[act], d[act], lo[act], hi[act])
            out[cand] = vals
        return out.reshape(shape)

    def _windows(self, rho, d, lo, hi) -> np.ndarray:
        n = self.n_tau
        t = np.linspace(0.0, 1.0, n)
        wt = np.full(n, 1.0)
        wt[0] = wt[-1] = 0.5
        out = np.empty(len(rho))
        for start in range(0, len(rho), _CHUNK):
            sl = slice(start, min(start + _CHUNK, len(rho)))
            ls, lh = np.log(lo[sl]), np.log(hi[sl])
            s = ls[:, None] + (lh - ls)[:, None] * t
            tau = np.exp(s)
            integrand = (
                self.psi(tau * rho[sl, None])
                * self.ctable(tau)
                * self.profile(d[sl, None] / np.sqrt(tau))
            )
            out[sl] = (integrand * wt).sum(axis=1) * (lh - ls) / (n - 1)
        return out


class DirectionSet:
    """Equispaced directions on the circle with uniform quadrature weights."""

    def __init__(self, M: int):
        if M < 4:
            raise ParameterError(f"direction count M={M} too small")
        self.M = M
        ang = 2.0 * np.pi * np.arange(M) / M
        self.omegas = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        self.weights = np.full(M, 2.0 * np.pi / M)


def default_direction_count(spec: GridSpec) -> int:
    # neighboring directions closer than the narrowest sector aperture
    return 8 * int(np.ceil(np.sqrt(spec.xi_max)))


class ParabolicFrame:
    """Directional frame: cutoffs phi_{omega_l} (stored sparsely on the
    lattice) and the reproducing multiplier m."""

    def __init__(
        self,
        spec: GridSpec,
        M_omega: int | None = None,
        profile: BumpProfile = BumpProfile(),
        n_tau: int = 96,
    ):
        if spec.n != 2:
            raise ParameterError("directional frame requires n = 2")
        self.spec = spec
        self.directions = DirectionSet(M_omega or default_direction_count(spec))
        self.geometry = PhiGeometry(
            profile,
            AngularCalderonProfile(profile),
            CSigmaTable(0.5 / spec.xi_max, profile),
            n_tau,
        )
        pts = lattice(spec).points()
        coverage = np.zeros(len(pts))
        self._sparse = []
        w = self.directions.weights[0]
        for omega in self.directions.omegas:
            vals = self.geometry.phi_values(pts, omega)
            idx = np.nonzero(vals)[0]
            self._sparse.append((idx, vals[idx]))
            coverage[idx] += w * vals[idx]
        self.coverage = coverage.reshape(spec.shape)
        self.m = build_reproducing_m(self)

    @property
    def n_directions(self) -> int:
        return self.directions.M

    def multiplier(self, l: int) -> SpectralMultiplier:
        idx, vals = self._sparse[l]
        full = np.zeros(self.spec.N**self.spec.n)
        full[idx] = vals
        return SpectralMultiplier(self.spec, full.reshape(self.spec.shape))

    def sparse(self, l: int):
        """(flat lattice indices, phi values) for direction l."""
        return self._sparse[l]


def build_reproducing_m(frame: ParabolicFrame) -> SpectralMultiplier:
    """Exact lattice inverse of the direction-quadrature sum on |zeta| >= 1/2."""
    spec = frame.spec
    high = lattice(spec).mags >= 0.5
    cov = frame.coverage
    if high.any() and float(cov[high].min()) < 1e-10:
        raise ConstructionError(
            "insufficient directions: frame coverage vanishes at some |zeta| >= 1/2"
        )
    vals = np.zeros(spec.shape)
    vals[high] = 1.0 / cov[high]
    return SpectralMultiplier(spec, vals)


def build_phi_omega(omega, spec: GridSpec, geometry: PhiGeometry) -> SpectralMultiplier:
    omega = np.asarray(omega, dtype=float)
    if abs(np.hypot(omega[0], omega[1]) - 1.0) > 1e-12:
        raise ParameterError("omega must be a unit vector")
    vals = geometry.phi_values(lattice(spec).points(), omega)
    return SpectralMultiplier(spec, vals.reshape(spec.shape))


def frame_analyze(f: GridField, frame: ParabolicFrame) -> list:
    """[phi_{omega_l}(D) f for every frame direction l]."""
    if f.spec != frame.spec:
        raise ParameterError("field and frame grids differ")
    flat = forward_transform(f).ravel()
    out = []
    for idx, vals in frame._sparse:
        g = np.zeros(flat.shape, dtype=complex)
        g[idx] = vals * flat[idx]
        out.append(inverse_transform(g.reshape(frame.spec.shape), frame.spec))
    return out


def frame_synthesize(collection, frame: ParabolicFrame) -> GridField:
    """Sum_l w_l m(D) g_l — inverts frame_analyze on |zeta| >= 1/2 spectra."""
    if len(collection) != frame.n_directions:
        raise ParameterError("collection size does not match frame directions")
    acc = np.zeros(frame.spec.shape, dtype=complex)
    for w, g in zip(frame.directions.weights, collection):
        if g.spec != frame.spec:
            raise ParameterError("collection member grid differs from frame grid")
        acc += w * forward_transform(g)
    return inverse_transform(frame.m.values * acc, frame.spec)


_FD_STENCILS = {
    0: ((0, 1.0),),
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
}


def _fd_derivative(fun, pts, a1, a2, h1, h2) -> np.ndarray:
    """Centered finite-difference d^{a1}_1 d^{a2}_2 fun at pts (K, 2)."""
    out = np.zeros(len(pts))
    for o1, c1 in _FD_STENCILS[a1]:
        for o2, c2 in _FD_STENCILS[a2]:
            shifted = pts.copy()
            shifted[:, 0] += o1 * h1
            shifted[:, 1] += o2 * h2
            out += c1 * c2 * fun(shifted)
    return out / (h1**a1 * h2**a2)


def anisotropic_bound_check(
    frame: ParabolicFrame, alpha_max: int = 2, n_radii: int = 20, n_angles: int = 15
) -> dict:
    """Sampled suprema of |xi^alpha d^alpha (<xi>^{-1/4} phi_{e1})(xi)|.

    Derivatives use centered differences of the analytic construction
    at off-lattice points, with steps matched to the parabolic scaling
    (radial scale ~ rho, angular scale ~ sqrt(rho)).
    """
    if alpha_max > 3:
        raise ParameterError("alpha_max must be <= 3")
    geom = frame.geometry
    e1 = np.array([1.0, 0.0])

    def fun(pts):
        w = (1.0 + (pts**2).sum(axis=-1)) ** -0.125
        return w * geom.phi_values(pts, e1)

    radii = np.geomspace(0.25, frame.spec.xi_max, n_radii)
    report = {}
    for a1 in range(alpha_max + 1):
        for a2 in range(alpha_max + 1 - a1):
            best = 0.0
            for rho in radii:
                span = min(np.pi, 2.5 / np.sqrt(rho))
                theta = np.linspace(-span, span, n_angles)
                pts = rho * np.stack([np.cos(theta), np.sin(theta)], axis=1)
                h1 = 1e-3 * max(1.0, rho)
                h2 = 1e-3 * max(1.0, np.sqrt(rho))
                deriv = _fd_derivative(fun, pts, a1, a2, h1, h2)
                weight = np.abs(pts[:, 0]) ** a1 * np.abs(pts[:, 1]) ** a2
                best = max(best, float((weight * np.abs(deriv)).max()))
            report[(a1, a2)] = best
    return report
