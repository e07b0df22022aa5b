"""Function-space norms and exponent bookkeeping.

Classical Bessel-Sobolev norms, the Zygmund norm, the directional-
decomposition norm

    ||f|| = ||q(D) f||_p + (sum_l w_l ||phi_{omega_l}(D) f||_{H^{s,p}}^p)^{1/p},

and the loss/smoothing exponents (tau, gamma, sigma, rho) together
with the admissible smoothness interval they determine.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import LittlewoodPaleyFamily, build_lp_family
from .errors import DimensionError, ParameterError
from .grid import (
    GridField,
    bessel_potential,
    bessel_values,
    forward_transform,
    inverse_transform,
    lattice,
    lp_norm,
)
from .parabolic import ParabolicFrame
from .profiles import falling


def sobolev_s(p: float, n: int) -> float:
    """s(p) = (n-1)/2 |1/p - 1/2|."""
    if not (1.0 <= p <= np.inf):
        raise ParameterError(f"p={p} out of range")
    return (n - 1) / 2.0 * abs(1.0 / p - 0.5)


def classical_norm(f: GridField, s: float, p: float) -> float:
    """Bessel-Sobolev norm ||<D>^s f||_{L^p}."""
    return lp_norm(bessel_potential(f, s), p)


def zygmund_norm(f: GridField, r: float, fam: LittlewoodPaleyFamily | None = None) -> float:
    """sup_j 2^{jr} max_x |psi_j(D) f(x)| over the finite band range."""
    if not r > 0:
        raise ParameterError(f"regularity r={r} must be positive")
    if fam is None:
        fam = build_lp_family(f.spec)
    spectrum = forward_transform(f)
    best = 0.0
    for j in range(fam.J_max + 1):
        band = inverse_transform(fam.values[j] * spectrum, f.spec)
        best = max(best, 2.0 ** (j * r) * float(np.abs(band.samples).max()))
    return best


def hpfio_norm(f: GridField, s: float, p: float, frame: ParabolicFrame) -> float:
    """Directional-decomposition norm; streams one direction at a time."""
    if not (1.0 < p < np.inf):
        raise ParameterError(f"p={p} must lie in (1, inf)")
    if f.spec != frame.spec:
        raise DimensionError("field and frame grids differ")
    spec = f.spec
    spectrum = forward_transform(f)
    q = falling(lattice(spec).mags, 2.0, 4.0)
    low_part = lp_norm(inverse_transform(q * spectrum, spec), p)
    bess = bessel_values(spec, s).ravel()
    flat = spectrum.ravel()
    total = 0.0
    for l in range(frame.n_directions):
        idx, vals = frame.sparse(l)
        g = np.zeros(flat.shape, dtype=complex)
        g[idx] = vals * bess[idx] * flat[idx]
        gl = inverse_transform(g.reshape(spec.shape), spec)
        total += frame.directions.weights[l] * lp_norm(gl, p) ** p
    return low_part + total ** (1.0 / p)


@dataclass(frozen=True)
class ExponentBudget:
    """Loss and smoothing exponents for a symbol of regularity r, type delta."""

    p: float
    n: int
    r: float
    delta: float
    s_p: float
    tau: float
    gamma: float
    sigma: float
    rho: float
    eps_slack: float
    s_interval: tuple

    def admissible_s(self, frac: float = 0.5) -> float:
        """A point inside the admissible smoothness interval."""
        lo, hi = self.s_interval
        return lo + frac * (hi - lo)


def budget(r: float, delta: float, p: float, n: int, eps_slack: float = 0.01) -> ExponentBudget:
    """Exponent bookkeeping:

    tau: extra source smoothness at criticality — 0 when r > n-1 or
         s(p) = 0, a small slack at r = n-1, else 2 s(p)(1 - r/(n-1));
    gamma: smoothing split parameter 1/2 + 2 s(p)/max(r, n-1);
    sigma = max(0, 2 s(p) - (1/2 - delta) r);
    rho = max(0, tau - (1/2 - delta) r);
    admissible s: -(1-gamma) r - s(p) < s < r - s(p).
    """
    if not r > 0:
        raise ParameterError(f"r={r} must be positive")
    if not (0.0 <= delta <= 0.5):
        raise ParameterError(f"delta={delta} must lie in [0, 1/2]")
    if not (1.0 < p < np.inf):
        raise ParameterError(f"p={p} must lie in (1, inf)")
    if not eps_slack > 0:
        raise ParameterError("eps_slack must be positive")
    s_p = sobolev_s(p, n)
    if r > n - 1 or s_p == 0.0:
        tau = 0.0
    elif r == n - 1:
        tau = eps_slack
    else:
        tau = 2.0 * s_p * (1.0 - r / (n - 1))
    gamma = 0.5 + 2.0 * s_p / max(r, float(n - 1))
    sigma = max(0.0, 2.0 * s_p - (0.5 - delta) * r)
    rho = max(0.0, tau - (0.5 - delta) * r)
    interval = (-(1.0 - gamma) * r - s_p, r - s_p)
    return ExponentBudget(p, n, r, delta, s_p, tau, gamma, sigma, rho, eps_slack, interval)
