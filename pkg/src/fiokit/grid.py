"""Periodic grids, Fourier transforms and multiplier operators.

Conventions match the continuum: the forward transform carries the
cell volume (L/N)^n, the inverse carries (2pi)^(-n) times the
frequency-cell volume (2pi/L)^n.  A plane wave exp(i xi0.x) on the
lattice therefore has a single spectral entry of value L^n, and the
round trip is the identity to roundoff.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError, InvalidInputError, ParameterError


@dataclass(frozen=True)
class GridSpec:
    """Periodic grid on [0, L)^n with N samples per axis."""

    n: int = 2
    N: int = 128
    L: float = 2.0 * np.pi * 16.0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"dimension n={self.n} must be >= 1")
        if self.N < 16 or (self.N & (self.N - 1)) != 0:
            raise ParameterError(f"N={self.N} must be a power of two >= 16")
        if not (self.L > 0 and np.isfinite(self.L)):
            raise ParameterError(f"period L={self.L} must be positive")

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.n

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def cell_volume(self) -> float:
        return self.dx**self.n

    @property
    def xi_spacing(self) -> float:
        return 2.0 * np.pi / self.L

    @property
    def xi_max(self) -> float:
        """Largest lattice frequency magnitude (Nyquist corner)."""
        return np.pi * self.N * np.sqrt(self.n) / self.L

    def x_axis(self) -> np.ndarray:
        return np.arange(self.N) * self.dx

    def x_mesh(self) -> tuple:
        return np.meshgrid(*([self.x_axis()] * self.n), indexing="ij")


class FrequencyLattice:
    """Frequencies xi_k = 2 pi k / L per axis, in FFT (unshifted) order."""

    def __init__(self, spec: GridSpec):
        self.spec = spec
        self.axis = 2.0 * np.pi * np.fft.fftfreq(spec.N, d=spec.dx)
        mesh = np.meshgrid(*([self.axis] * spec.n), indexing="ij")
        self.mesh = mesh
        self.mags = np.sqrt(sum(m * m for m in mesh))

    def points(self) -> np.ndarray:
        """All lattice frequencies as an (N^n, n) array."""
        return np.stack([m.ravel() for m in self.mesh], axis=-1)


@lru_cache(maxsize=32)
def lattice(spec: GridSpec) -> FrequencyLattice:
    return FrequencyLattice(spec)


@dataclass
class GridField:
    """Complex samples of a function on a periodic grid."""

    spec: GridSpec
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != self.spec.shape:
            raise InvalidInputError(
                f"sample shape {self.samples.shape} != grid shape {self.spec.shape}"
            )
        if not np.all(np.isfinite(self.samples)):
            raise InvalidInputError("field contains non-finite samples")

    def copy(self) -> "GridField":
        return GridField(self.spec, self.samples.copy())

    def __add__(self, other: "GridField") -> "GridField":
        _check_specs(self.spec, other.spec)
        return GridField(self.spec, self.samples + other.samples)

    def __sub__(self, other: "GridField") -> "GridField":
        _check_specs(self.spec, other.spec)
        return GridField(self.spec, self.samples - other.samples)

    def __mul__(self, c) -> "GridField":
        return GridField(self.spec, self.samples * c)

    __rmul__ = __mul__


@dataclass
class SpectralMultiplier:
    """Scalar symbol tabulated on the frequency lattice (FFT order)."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.shape != self.spec.shape:
            raise InvalidInputError("multiplier shape does not match grid")
        if not np.all(np.isfinite(self.values)):
            raise InvalidInputError("multiplier contains non-finite values")


def _check_specs(a: GridSpec, b: GridSpec):
    if a != b:
        raise DimensionError(f"grid specs differ: {a} vs {b}")


def radial_multiplier(spec: GridSpec, profile) -> SpectralMultiplier:
    """Multiplier m(xi) = profile(|xi|) sampled on the lattice."""
    return SpectralMultiplier(spec, np.asarray(profile(lattice(spec).mags)))


def forward_transform(f: GridField) -> np.ndarray:
    """Continuum-normalized DFT: hat f(xi) = (L/N)^n sum_x e^{-i x.xi} f(x)."""
    return np.fft.fftn(f.samples) * f.spec.cell_volume


def inverse_transform(spectrum: np.ndarray, spec: GridSpec) -> GridField:
    """Inverse with (2pi)^{-n} (2pi/L)^n Riemann weight; exact round trip."""
    spectrum = np.asarray(spectrum, dtype=complex)
    if spectrum.shape != spec.shape:
        raise InvalidInputError("spectrum shape does not match grid")
    if not np.all(np.isfinite(spectrum)):
        raise InvalidInputError("spectrum contains non-finite values")
    return GridField(spec, np.fft.ifftn(spectrum) * (spec.N / spec.L) ** spec.n)


def apply_multiplier(f: GridField, m: SpectralMultiplier) -> GridField:
    _check_specs(f.spec, m.spec)
    return inverse_transform(m.values * forward_transform(f), f.spec)


def bessel_values(spec: GridSpec, s: float) -> np.ndarray:
    return (1.0 + lattice(spec).mags ** 2) ** (s / 2.0)


def bessel_potential(f: GridField, s: float) -> GridField:
    """<D>^s f, the Bessel potential of order s."""
    if not np.isfinite(s):
        raise ParameterError("smoothness s must be finite")
    return inverse_transform(bessel_values(f.spec, s) * forward_transform(f), f.spec)


def lp_norm(f: GridField, p: float) -> float:
    """Riemann-sum L^p norm, p strictly inside (1, inf)."""
    if not (1.0 < p < np.inf):
        raise ParameterError(f"p={p} must lie in (1, inf)")
    return float((np.abs(f.samples) ** p).sum() ** (1.0 / p) * f.spec.dx ** (f.spec.n / p))


def l2_inner(f: GridField, g: GridField) -> complex:
    _check_specs(f.spec, g.spec)
    return complex((f.samples * np.conj(g.samples)).sum() * f.spec.cell_volume)


# ---------------------------------------------------------------------------
# FIOF field file format: magic "FIOF", u32 version, u32 n, u32 N, f64 L
# (little-endian), then N^n complex samples as interleaved f64 pairs,
# row-major.
# ---------------------------------------------------------------------------

_FIOF_MAGIC = b"FIOF"
_FIOF_VERSION = 1


def write_fiof(path, f: GridField) -> None:
    with open(path, "wb") as fh:
        fh.write(_FIOF_MAGIC)
        fh.write(struct.pack("<III d", _FIOF_VERSION, f.spec.n, f.spec.N, f.spec.L))
        data = np.ascontiguousarray(f.samples, dtype=np.complex128)
        fh.write(data.astype("<c16").tobytes())


def read_fiof(path) -> GridField:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _FIOF_MAGIC:
            raise InvalidInputError(f"{path}: not a FIOF file")
        version, n, N, L = struct.unpack("<III d", fh.read(20))
        if version != _FIOF_VERSION:
            raise InvalidInputError(f"{path}: unsupported FIOF version {version}")
        spec = GridSpec(n=n, N=N, L=L)
        raw = np.frombuffer(fh.read(), dtype="<c16")
        if raw.size != N**n:
            raise InvalidInputError(f"{path}: truncated payload")
        return GridField(spec, raw.reshape(spec.shape).astype(complex))
