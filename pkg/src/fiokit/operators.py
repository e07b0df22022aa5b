"""Application of rough pseudodifferential operators and empirical
operator-norm probing.

The dense path is the literal frequency-sum definition (quadratic in
the number of lattice points, restricted to small grids); the
separable path is a short sum of band projections and pointwise
multiplications and scales to large grids.  Probing reports
norm ratios over a test family; at p = 2 a power-iteration spectral
bound on a conjugated operator certifies an upper bound the probe
must not exceed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    DegenerateInputError,
    DimensionError,
    ParameterError,
    ResolutionError,
)
from .families import TestFamily
from .grid import (
    GridField,
    GridSpec,
    SpectralMultiplier,
    forward_transform,
    inverse_transform,
    lattice,
    lp_norm,
)
from .norms import ExponentBudget, hpfio_norm
from .parabolic import ParabolicFrame
from .profiles import falling
from .symbols import DenseSymbol, SeparableSymbol


def _phase_table(spec: GridSpec) -> np.ndarray:
    """E[l, i] = e^{i x_l xi_i} for the axis grid and axis frequencies."""
    x = spec.x_axis()
    xi = 2.0 * np.pi * np.fft.fftfreq(spec.N, d=spec.dx)
    return np.exp(1j * np.outer(x, xi))


def apply_dense(a: DenseSymbol, f: GridField, max_dense_n: int = 128) -> GridField:
    """Direct frequency sum: (a(x,D)f)(x) = L^{-n} sum_eta a(x,eta) f^(eta) e^{ix.eta}."""
    spec = f.spec
    if a.spec != spec:
        raise DimensionError("symbol and field grids differ")
    if spec.N > max_dense_n:
        raise ResolutionError(f"dense application restricted to N <= {max_dense_n}")
    spectrum = forward_transform(f)
    E = _phase_table(spec)
    out = np.zeros(spec.shape, dtype=complex)
    scale = spec.L ** -spec.n
    axis = 2.0 * np.pi * np.fft.fftfreq(spec.N, d=spec.dx)
    for i1 in range(spec.N):
        col = E[:, i1][:, None]
        for i2 in range(spec.N):
            coef = spectrum[i1, i2]
            if coef == 0.0:
                continue
            eta = np.array([axis[i1], axis[i2]])
            out += a.eval(eta) * (coef * scale) * (col * E[:, i2][None, :])
    return GridField(spec, out)


def apply_dense_adjoint(a: DenseSymbol, g: GridField, max_dense_n: int = 128) -> GridField:
    """Adjoint of apply_dense on the grid inner product, computed exactly:
    (T*g)^(eta) = sum_x conj(a(x,eta)) g(x) e^{-ix.eta} dx^n."""
    spec = g.spec
    if a.spec != spec:
        raise DimensionError("symbol and field grids differ")
    if spec.N > max_dense_n:
        raise ResolutionError(f"dense application restricted to N <= {max_dense_n}")
    E = _phase_table(spec)
    axis = 2.0 * np.pi * np.fft.fftfreq(spec.N, d=spec.dx)
    spectrum = np.zeros(spec.shape, dtype=complex)
    dv = spec.cell_volume
    for i1 in range(spec.N):
        row = np.conj(E[:, i1])[:, None]
        for i2 in range(spec.N):
            eta = np.array([axis[i1], axis[i2]])
            phase = row * np.conj(E[:, i2])[None, :]
            spectrum[i1, i2] = (np.conj(a.eval(eta)) * g.samples * phase).sum() * dv
    return inverse_transform(spectrum, spec)


def apply_separable(a: SeparableSymbol, f: GridField) -> GridField:
    """Sum_k a_k(x) (chi_k(D) f)(x)."""
    if a.spec != f.spec:
        raise DimensionError("symbol and field grids differ")
    spectrum = forward_transform(f)
    out = np.zeros(f.spec.shape, dtype=complex)
    for k, a_k in a.bands.items():
        fk = inverse_transform(a.chi.values[k] * spectrum, f.spec)
        out += a_k.samples * fk.samples
    return GridField(f.spec, out)


def apply_separable_adjoint(a: SeparableSymbol, g: GridField) -> GridField:
    """Sum_k chi_k(D) (conj(a_k) g)."""
    if a.spec != g.spec:
        raise DimensionError("symbol and field grids differ")
    acc = np.zeros(g.spec.shape, dtype=complex)
    for k, a_k in a.bands.items():
        prod = GridField(g.spec, np.conj(a_k.samples) * g.samples)
        acc += a.chi.values[k] * forward_transform(prod)
    return inverse_transform(acc, g.spec)


def apply_symbol(a, f: GridField) -> GridField:
    if isinstance(a, SeparableSymbol):
        return apply_separable(a, f)
    return apply_dense(a, f)


# ---------------------------------------------------------------------------
# Band-support verification
# ---------------------------------------------------------------------------


def verify_band_support(
    a_k: GridField, f_k: GridField, k: int, gamma: float = 1.0, c: float = 0.25
):
    """Check that F(a_k f_k) vanishes outside [2^{k-3}, 2^{k+1}].

    Precondition (reported, not asserted): F(a_k) lives in the annulus
    c 2^{(k-2)/2} <= |xi| <= 2^{k gamma - 3}.  Returns (ok, report).
    """
    if a_k.spec != f_k.spec:
        raise DimensionError("band factors on different grids")
    mags = lattice(a_k.spec).mags
    ahat = np.abs(forward_transform(a_k))
    apeak = float(ahat.max())
    pre_out = (mags < c * 2.0 ** ((k - 2) / 2.0)) | (mags > 2.0 ** (k * gamma - 3.0))
    pre_leak = float(ahat[pre_out].max() / apeak) if (apeak > 0 and pre_out.any()) else 0.0
    precondition_ok = pre_leak <= 1e-12
    product = GridField(a_k.spec, a_k.samples * f_k.samples)
    phat = np.abs(forward_transform(product))
    peak = float(phat.max())
    outside = (mags < 2.0 ** (k - 3)) | (mags > 2.0 ** (k + 1))
    leak = float(phat[outside].max() / peak) if (peak > 0 and outside.any()) else 0.0
    # ok reflects the product-support identity only; a violated
    # precondition is reported, not treated as a failure by itself
    ok = leak <= 1e-12
    report = {
        "k": k,
        "precondition_ok": precondition_ok,
        "precondition_leak": pre_leak,
        "leak": leak,
        "peak": peak,
        "window": (2.0 ** (k - 3), 2.0 ** (k + 1)),
    }
    return ok, report


# ---------------------------------------------------------------------------
# Operator-norm probing
# ---------------------------------------------------------------------------


def power_iteration(
    apply_fn, adjoint_fn, spec: GridSpec, iters: int = 200, tol: float = 1e-8, seed: int = 0
) -> float:
    """Spectral norm estimate via power iteration on T*T (fixed seed)."""
    rng = np.random.default_rng(seed)
    v = GridField(spec, rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape))
    nv = lp_norm(v, 2.0)
    v = GridField(spec, v.samples / nv)
    sigma = 0.0
    for _ in range(iters):
        w = adjoint_fn(apply_fn(v))
        nw = lp_norm(w, 2.0)
        if nw < 1e-300:
            return 0.0
        new_sigma = np.sqrt(nw)
        v = GridField(spec, w.samples / nw)
        if sigma > 0 and abs(new_sigma - sigma) < tol * sigma:
            return float(new_sigma)
        sigma = new_sigma
    return float(sigma)


def _frame_weight_multipliers(frame: ParabolicFrame):
    """Phi = sqrt(q^2 + sum_l w_l phi_l^2), positive on the whole lattice,
    and its reciprocal."""
    spec = frame.spec
    q = falling(lattice(spec).mags, 2.0, 4.0)
    w2 = np.zeros(spec.N**spec.n)
    for l in range(frame.n_directions):
        idx, vals = frame.sparse(l)
        w2[idx] += frame.directions.weights[l] * vals**2
    phi = np.sqrt(q.ravel() ** 2 + w2).reshape(spec.shape)
    if float(phi.min()) <= 0.0:
        raise ParameterError("frame weight vanishes somewhere; cannot conjugate")
    return SpectralMultiplier(spec, phi), SpectralMultiplier(spec, 1.0 / phi)


def certified_l2_bound(a, frame: ParabolicFrame, iters: int = 200, seed: int = 0) -> float:
    """Upper bound for ratios of the (p=2, s=0) directional norm.

    With |||g|||^2 = ||q(D)g||_2^2 + sum_l w_l ||phi_l(D)g||_2^2, the
    reported norm N1 + N2 satisfies ||| . ||| <= N1 + N2 <= sqrt(2) ||| . |||,
    and ||| . ||| = ||Phi(D) . ||_2 by Parseval.  Hence every probe ratio
    is at most sqrt(2) times the L^2 spectral norm of Phi(D) T Phi(D)^{-1}.
    """
    phi, phi_inv = _frame_weight_multipliers(frame)
    spec = frame.spec

    def conj_apply(v):
        u = inverse_transform(phi_inv.values * forward_transform(v), spec)
        return inverse_transform(phi.values * forward_transform(apply_symbol(a, u)), spec)

    if isinstance(a, SeparableSymbol):
        adj = apply_separable_adjoint
    else:
        adj = apply_dense_adjoint

    def conj_adjoint(v):
        u = inverse_transform(phi.values * forward_transform(v), spec)
        return inverse_transform(phi_inv.values * forward_transform(adj(a, u)), spec)

    return np.sqrt(2.0) * power_iteration(conj_apply, conj_adjoint, spec, iters=iters, seed=seed)


@dataclass
class BoundednessReport:
    spec: GridSpec
    p: float
    s_in: float
    s_out: float
    rows: list = dc_field(default_factory=list)
    budget: ExponentBudget | None = None
    spectral_bound: float | None = None
    frame_directions: int = 0

    def add(self, member, in_norm, out_norm):
        self.rows.append(
            {
                "p": self.p,
                "s_in": self.s_in,
                "s_out": self.s_out,
                "k": member.band,
                "member": member.name,
                "in_norm": in_norm,
                "out_norm": out_norm,
                "ratio": out_norm / in_norm,
            }
        )

    @property
    def sup_ratio(self) -> float:
        return max(row["ratio"] for row in self.rows)

    def band_profile(self) -> dict:
        prof = {}
        for row in self.rows:
            prof[row["k"]] = max(prof.get(row["k"], 0.0), row["ratio"])
        return prof

    def trend_slope(self) -> float:
        """Least-squares slope of log2(max band ratio) against band index."""
        prof = self.band_profile()
        if len(prof) < 2:
            return 0.0
        ks = np.array(sorted(prof))
        ys = np.log2([prof[k] for k in ks])
        return float(np.polyfit(ks, ys, 1)[0])


def operator_norm_probe(
    a,
    s_in: float,
    s_out: float,
    p: float,
    frame: ParabolicFrame,
    family: TestFamily,
    budget: ExponentBudget | None = None,
    pi_iters: int = 200,
) -> BoundednessReport:
    """Ratios of directional norms over the family; at p = 2, s = 0 the
    certified power-iteration bound is recorded alongside."""
    if not (1.0 < p < np.inf):
        raise ParameterError(f"p={p} must lie in (1, inf)")
    if len(family) == 0:
        raise ParameterError("empty test family")
    report = BoundednessReport(
        frame.spec, p, s_in, s_out, budget=budget, frame_directions=frame.n_directions
    )
    for member in family:
        in_norm = hpfio_norm(member.field, s_in, p, frame)
        if in_norm < 1e-14:
            raise DegenerateInputError(f"member {member.name} has vanishing input norm")
        out = apply_symbol(a, member.field)
        out_norm = hpfio_norm(out, s_out, p, frame)
        report.add(member, in_norm, out_norm)
    if p == 2.0 and s_in == 0.0 and s_out == 0.0:
        report.spectral_bound = certified_l2_bound(a, frame, iters=pi_iters)
    return report
