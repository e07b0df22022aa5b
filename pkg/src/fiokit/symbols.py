"""Rough symbols a(x, eta): representation, seminorm estimation,
symbol smoothing, paraproducts, and the per-band Fourier-mode
(separation-of-variables) decomposition.

Dense symbols are kept lazy — a callable producing the x-grid slice
a(., eta) for any requested frequency eta — so the full N^n x N^n
table is never materialized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .dyadic import AuxiliaryFamilies, LittlewoodPaleyFamily, build_auxiliary
from .errors import DimensionError, InvalidInputError, ParameterError, ResolutionError
from .grid import (
    GridField,
    GridSpec,
    forward_transform,
    inverse_transform,
    lattice,
    read_fiof,
)
from .norms import zygmund_norm

_FD_STENCILS = {
    0: ((0, 1.0),),
    1: ((-1, -0.5), (1, 0.5)),
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    3: ((-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)),
}


@dataclass
class DenseSymbol:
    """Symbol a(x, eta) with lazy x-slices and declared class (r, m, delta)."""

    spec: GridSpec
    field: callable
    r: float = 1.0
    m: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if not self.r > 0:
            raise ParameterError(f"r={self.r} must be positive")
        if not (0.0 <= self.delta <= 1.0):
            raise ParameterError(f"delta={self.delta} must lie in [0, 1]")

    def eval(self, eta) -> np.ndarray:
        """x-grid slice a(., eta), always a full complex array."""
        eta = np.asarray(eta, dtype=float)
        out = np.asarray(self.field(eta), dtype=complex)
        if out.ndim == 0:
            out = np.full(self.spec.shape, complex(out))
        if out.shape != self.spec.shape:
            raise InvalidInputError("symbol slice shape does not match grid")
        return out


@dataclass
class SeparableSymbol:
    """a(x, eta) = Sum_k a_k(x) chi_k(eta) against a dyadic band family."""

    spec: GridSpec
    bands: dict
    chi: LittlewoodPaleyFamily
    r: float = 1.0
    delta: float = 0.0
    residual: float = 0.0

    def __post_init__(self):
        for k, a_k in self.bands.items():
            if not (0 <= k <= self.chi.J_max):
                raise ParameterError(f"band index {k} outside family range")
            if a_k.spec != self.spec:
                raise DimensionError("band field grid differs from symbol grid")

    def densify(self) -> DenseSymbol:
        def fn(eta):
            rho = float(np.hypot(eta[0], eta[1]))
            out = np.zeros(self.spec.shape, dtype=complex)
            for k, a_k in self.bands.items():
                w = float(self.chi.band_profile(k, rho))
                if w != 0.0:
                    out += w * a_k.samples
            return out

        return DenseSymbol(self.spec, fn, r=self.r, m=0.0, delta=self.delta)

    def constants(self) -> dict:
        """Recorded size constants: sup_k of the sup norm and of the
        2^{-kr delta}-weighted Zygmund norm (delta = 1/2 reproduces the
        classical normalization)."""
        sup = 0.0
        zyg = 0.0
        for k, a_k in self.bands.items():
            sup = max(sup, float(np.abs(a_k.samples).max()))
            zyg = max(zyg, 2.0 ** (-k * self.r * self.delta) * zygmund_norm(a_k, self.r, self.chi))
        return {"sup": sup, "weighted_zygmund": zyg}


@dataclass
class SmoothingSplit:
    """Exact split a = sharp + flat with sharp the x-smoothed part."""

    gamma: float
    sharp: DenseSymbol
    flat: DenseSymbol


def smooth_split(a: DenseSymbol, gamma: float, fam: LittlewoodPaleyFamily | None = None) -> SmoothingSplit:
    """Per eta-band k, low-pass a(., eta) in x below scale 2^{gamma k};
    the flat part is the closure a - sharp, so the split is exact."""
    if not (a.delta <= gamma <= 1.0):
        raise ParameterError(f"gamma={gamma} must lie in [delta={a.delta}, 1]")
    if fam is None:
        fam = LittlewoodPaleyFamily(a.spec)
    mags = lattice(a.spec).mags

    def sharp_fn(eta):
        rho = float(np.hypot(eta[0], eta[1]))
        out = np.zeros(a.spec.shape, dtype=complex)
        slice_cache = None
        for k in range(fam.J_max + 1):
            w = float(fam.band_profile(k, rho))
            if w == 0.0:
                continue
            if slice_cache is None:
                slice_cache = a.eval(eta)
            cut = fam.lowpass_profile(2.0 ** (-gamma * k) * mags)
            spectrum = np.fft.fftn(slice_cache)
            out += w * np.fft.ifftn(cut * spectrum)
        return out

    sharp = DenseSymbol(a.spec, sharp_fn, r=a.r, m=a.m, delta=gamma)
    flat = DenseSymbol(
        a.spec,
        lambda eta: a.eval(eta) - sharp_fn(eta),
        r=a.r,
        m=a.m - (gamma - a.delta) * a.r,
        delta=gamma,
    )
    return SmoothingSplit(gamma, sharp, flat)


def _band_eta_samples(fam: LittlewoodPaleyFamily, k: int, n_radii: int = 3, n_angles: int = 4):
    """Representative eta points inside supp psi_k."""
    eps = fam.eps
    if k == 0:
        radii = np.array([0.0, 0.3, 0.7]) * (1.0 - eps / 2.0)
    else:
        lo, hi = (1.0 + eps) / 2.0, 2.0 - eps
        radii = 2.0 ** (k - 1) * np.linspace(lo, hi, n_radii + 2)[1:-1]
    angles = np.linspace(0.0, 2.0 * np.pi, n_angles, endpoint=False) + 0.3
    return [
        np.array([rho * np.cos(t), rho * np.sin(t)]) for rho in radii for t in angles
    ]


def _check_band_resolution(spec: GridSpec, fam: LittlewoodPaleyFamily, k: int) -> bool:
    """True if band k should be sampled; bands entirely beyond the axis
    frequency range (corner-only content) are skipped, under-resolved
    bands inside the range are an error."""
    axis_max = np.pi * spec.N / spec.L
    if k > 0 and 2.0 ** (k - 1) * (1.0 + fam.eps) / 2.0 >= axis_max:
        return False
    axis = np.abs(2.0 * np.pi * np.fft.fftfreq(spec.N, d=spec.dx))
    count = int((fam.band_profile(k, axis) > 0).sum())
    if k > 0 and count < 5:
        raise ResolutionError(f"band {k} has only {count} lattice frequencies per axis")
    return True


def estimate_seminorms(
    a: DenseSymbol, alpha_max: int, fam: LittlewoodPaleyFamily | None = None
) -> dict:
    """Sampled seminorm constants C_alpha of the class C^r_* S^m_{1,delta}.

    For each eta-derivative order alpha (centered finite differences in
    eta), takes the max over sampled (x, eta) of both normalizations:
    the pointwise one |d^alpha a| <eta>^{|alpha|-m} and the x-Zygmund
    one ||d^alpha a(., eta)||_{C^r_*} <eta>^{|alpha|-m-r delta}.
    """
    if alpha_max > 3:
        raise ParameterError("alpha_max must be <= 3")
    if fam is None:
        fam = LittlewoodPaleyFamily(a.spec)
    report = {}
    etas = []
    for k in range(fam.J_max + 1):
        if _check_band_resolution(a.spec, fam, k):
            etas.extend(_band_eta_samples(fam, k))
    for a1 in range(alpha_max + 1):
        for a2 in range(alpha_max + 1 - a1):
            best = 0.0
            for eta in etas:
                rho = float(np.hypot(eta[0], eta[1]))
                h = 0.02 * (1.0 + rho)
                deriv = np.zeros(a.spec.shape, dtype=complex)
                for o1, c1 in _FD_STENCILS[a1]:
                    for o2, c2 in _FD_STENCILS[a2]:
                        deriv += c1 * c2 * a.eval(eta + np.array([o1 * h, o2 * h]))
                deriv /= h ** (a1 + a2)
                w = (1.0 + rho * rho) ** 0.5
                point = float(np.abs(deriv).max()) * w ** (a1 + a2 - a.m)
                zyg = (
                    zygmund_norm(GridField(a.spec, deriv), a.r, fam)
                    * w ** (a1 + a2 - a.m - a.r * a.delta)
                )
                best = max(best, point, zyg)
            report[(a1, a2)] = best
    return report


# ---------------------------------------------------------------------------
# Paraproducts
# ---------------------------------------------------------------------------


def _band_stack(f: GridField, fam: LittlewoodPaleyFamily) -> np.ndarray:
    spectrum = forward_transform(f)
    return np.stack(
        [
            inverse_transform(fam.values[j] * spectrum, f.spec).samples
            for j in range(fam.J_max + 1)
        ]
    )


def _paraproduct(b: GridField, f: GridField, fam, selector) -> GridField:
    if b.spec != f.spec:
        raise DimensionError("paraproduct operands on different grids")
    if fam is None:
        fam = LittlewoodPaleyFamily(b.spec)
    bj = _band_stack(b, fam)
    fk = _band_stack(f, fam)
    out = np.zeros(b.spec.shape, dtype=complex)
    for k in range(fam.J_max + 1):
        for j in range(fam.J_max + 1):
            if selector(j, k):
                out += bj[j] * fk[k]
    return GridField(b.spec, out)


def paraproduct_hh(b: GridField, f: GridField, fam: LittlewoodPaleyFamily | None = None) -> GridField:
    """Comparable-frequency piece: bands with |j - k| <= 5."""
    return _paraproduct(b, f, fam, lambda j, k: abs(j - k) <= 5)


def paraproduct_hl(b: GridField, f: GridField, fam: LittlewoodPaleyFamily | None = None) -> GridField:
    """High-b, low-f piece: j >= k + 6."""
    return _paraproduct(b, f, fam, lambda j, k: j >= k + 6)


def paraproduct_lh(b: GridField, f: GridField, fam: LittlewoodPaleyFamily | None = None) -> GridField:
    """Low-b, high-f remainder: j <= k - 6; completes b*f with the other two."""
    return _paraproduct(b, f, fam, lambda j, k: j <= k - 6)


# ---------------------------------------------------------------------------
# Per-band Fourier-mode decomposition
# ---------------------------------------------------------------------------


@dataclass
class FourierModeDecomposition:
    """Coefficients c_{k,beta}(x) of the band symbol a psi_k expanded in
    frequency modes e^{i beta 2^{-k} eta} over the rescaled band cell."""

    spec: GridSpec
    beta_max: int
    subgrid: int
    coeffs: dict
    aux: AuxiliaryFamilies

    def modes(self, k: int):
        return sorted(self.coeffs[k].keys())


def coifman_meyer_decompose(
    a: DenseSymbol,
    beta_max: int,
    bands=None,
    aux: AuxiliaryFamilies | None = None,
) -> FourierModeDecomposition:
    """Exact discrete Fourier coefficients of zeta -> a(x, 2^{k+1} pi zeta)
    psi_k(2^{k+1} pi zeta) on a uniform sub-grid of [-1/2, 1/2)^n."""
    if beta_max < 0:
        raise ParameterError("beta_max must be >= 0")
    if aux is None:
        aux = build_auxiliary(a.spec)
    P = 32
    while P < 4 * max(beta_max, 1):
        P *= 2
    if beta_max >= P // 2:
        raise ParameterError("beta_max exceeds the alias-free mode range")
    fam = aux.psi
    if bands is None:
        bands = range(fam.J_max + 1)
    zeta_axis = (np.arange(P) - P / 2) / P
    coeffs = {}
    for k in bands:
        scale = 2.0 ** (k + 1) * np.pi
        g = np.zeros((P, P) + a.spec.shape, dtype=complex)
        for i1, z1 in enumerate(zeta_axis):
            for i2, z2 in enumerate(zeta_axis):
                eta = scale * np.array([z1, z2])
                w = float(fam.band_profile(k, np.hypot(eta[0], eta[1])))
                if w != 0.0:
                    g[i1, i2] = w * a.eval(eta)
        ghat = np.fft.fft2(g, axes=(0, 1)) / P**2
        table = {}
        for b1 in range(-beta_max, beta_max + 1):
            for b2 in range(-beta_max, beta_max + 1):
                sign = -1.0 if (b1 + b2) % 2 else 1.0
                table[(b1, b2)] = sign * ghat[b1 % P, b2 % P]
        coeffs[k] = table
    return FourierModeDecomposition(a.spec, beta_max, P, coeffs, aux)


def reconstruct_modes(d: FourierModeDecomposition, k: int, eta) -> np.ndarray:
    """Partial-sum approximation of a(., eta) psi_k(eta) from the modes."""
    if k not in d.coeffs:
        raise ParameterError(f"band {k} not present in the decomposition")
    eta = np.asarray(eta, dtype=float)
    rho = float(np.hypot(eta[0], eta[1]))
    wide = float(d.aux.tilde_profile(k, rho))
    out = np.zeros(d.spec.shape, dtype=complex)
    if wide == 0.0:
        return out
    for (b1, b2), c in d.coeffs[k].items():
        phase = np.exp(1j * (b1 * eta[0] + b2 * eta[1]) * 2.0 ** (-k))
        out += c * phase
    return wide * out


def to_separable(
    a: DenseSymbol, chi: LittlewoodPaleyFamily | None = None
) -> SeparableSymbol:
    """Band-center sampling a_k(x) = a(x, eta_k*) with eta_k* on the chi_k
    plateau; exact when a is eta-flat within each band (residual reported)."""
    if chi is None:
        chi = LittlewoodPaleyFamily(a.spec)
    eps = chi.eps
    bands = {}
    for k in range(chi.J_max + 1):
        if k == 0:
            eta_star = np.zeros(2)
        else:
            eta_star = np.array([2.0 ** (k - 1) * (1.0 + eps / 4.0), 0.0])
        bands[k] = GridField(a.spec, a.eval(eta_star))
    residual = 0.0
    # The finite family sums to 1 only up to this radius; beyond it the
    # lattice has no content, so residual sampling stops there.
    cover = 2.0**chi.J_max * (1.0 + eps) / 2.0
    for k in range(chi.J_max + 1):
        for eta in _band_eta_samples(chi, k):
            rho = float(np.hypot(eta[0], eta[1]))
            if rho > cover:
                continue
            approx = np.zeros(a.spec.shape, dtype=complex)
            for kk, a_kk in bands.items():
                w = float(chi.band_profile(kk, rho))
                if w != 0.0:
                    approx += w * a_kk.samples
            residual = max(residual, float(np.abs(a.eval(eta) - approx).max()))
    return SeparableSymbol(a.spec, bands, chi, r=a.r, delta=a.delta, residual=residual)


# ---------------------------------------------------------------------------
# Analytic presets and symbol files
# ---------------------------------------------------------------------------


def preset_identity(spec: GridSpec, r: float = 1.0) -> DenseSymbol:
    return DenseSymbol(spec, lambda eta: np.ones(spec.shape, dtype=complex), r=r)


def preset_multiplier_bessel(spec: GridSpec, order: float, r: float = 1.0) -> DenseSymbol:
    def fn(eta):
        w = (1.0 + eta[0] ** 2 + eta[1] ** 2) ** (order / 2.0)
        return np.full(spec.shape, w, dtype=complex)

    return DenseSymbol(spec, fn, r=r, m=order)


def preset_multiplication(b: GridField, r: float = 1.0) -> DenseSymbol:
    return DenseSymbol(b.spec, lambda eta: b.samples, r=r)


def preset_rough_chirp(
    spec: GridSpec,
    r: float,
    delta: float,
    seed: int = 0,
    chi: LittlewoodPaleyFamily | None = None,
) -> SeparableSymbol:
    """Built-in C^r_* S^0_{1,delta} test family: per eta-band k, a real
    random field whose x-spectrum fills dyadic bands up to scale
    2^{k delta}, with lacunary amplitudes 2^{(k delta - j) r} capped at 1,
    rescaled so the recorded size constants equal 1."""
    if chi is None:
        chi = LittlewoodPaleyFamily(spec)
    rng = np.random.default_rng(seed)
    bands = {}
    for k in range(chi.J_max + 1):
        if k == 0:
            bands[0] = GridField(spec, np.ones(spec.shape, dtype=complex))
            continue
        j_top = min(chi.J_max, max(1, int(np.ceil(k * delta))))
        noise = rng.standard_normal(spec.shape)
        spectrum = np.fft.fftn(noise)
        mask = np.zeros(spec.shape)
        for j in range(1, j_top + 1):
            amp = min(1.0, 2.0 ** ((k * delta - j) * r))
            mask += amp * chi.values[j]
        v = np.real(np.fft.ifftn(mask * spectrum))
        v_field = GridField(spec, v.astype(complex))
        size = max(
            float(np.abs(v).max()),
            2.0 ** (-k * r * delta) * zygmund_norm(v_field, r, chi),
        )
        if size < 1e-14:
            raise ResolutionError(f"chirp band {k} has no resolvable x-content")
        bands[k] = GridField(spec, (v / size).astype(complex))
    sym = SeparableSymbol(spec, bands, chi, r=r, delta=delta)
    return sym


def load_symbol(path, spec: GridSpec | None = None):
    """Load a symbol from a JSON descriptor.

    kinds: "separable" (FIOF payload per band), "analytic-preset" /
    "dense" (named preset with parameters; "dense" forces the dense
    representation).
    """
    import os

    with open(path) as fh:
        doc = json.load(fh)
    kind = doc.get("kind")
    base = os.path.dirname(os.path.abspath(path))
    if spec is None and "grid" in doc:
        g = doc["grid"]
        spec = GridSpec(n=g.get("n", 2), N=g["N"], L=g["L"])
    if kind == "separable":
        fields = {}
        for entry in doc["bands"]:
            f = read_fiof(os.path.join(base, entry["file"]))
            fields[int(entry["k"])] = f
            spec = f.spec
        chi = LittlewoodPaleyFamily(spec, doc.get("eps", 0.125))
        return SeparableSymbol(
            spec, fields, chi, r=doc.get("r", 1.0), delta=doc.get("delta", 0.0)
        )
    if kind in ("analytic-preset", "dense"):
        if spec is None:
            raise InvalidInputError(f"{path}: symbol descriptor lacks a grid")
        name = doc["preset"]
        params = doc.get("params", {})
        if name == "identity":
            sym = preset_identity(spec, r=doc.get("r", 1.0))
        elif name == "multiplier_bessel":
            sym = preset_multiplier_bessel(spec, params["m"], r=doc.get("r", 1.0))
        elif name == "multiplication":
            b = read_fiof(os.path.join(base, params["b_file"]))
            sym = preset_multiplication(b, r=doc.get("r", 1.0))
        elif name == "rough_chirp":
            sym = preset_rough_chirp(
                spec, params["r"], params["delta"], seed=params.get("seed", 0)
            )
            if kind == "dense":
                sym = sym.densify()
        else:
            raise InvalidInputError(f"{path}: unknown preset {name!r}")
        return sym
    raise InvalidInputError(f"{path}: unknown symbol kind {kind!r}")
