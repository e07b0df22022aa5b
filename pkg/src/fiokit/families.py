"""Seeded families of test fields for operator probing.

Members are built spectrally (plane waves at band centers, parabolic
wave packets with 2^{-k} x 2^{-k/2} spatial extents, random
band-limited noise, focusing superpositions over directions) and
unit-normalized in L^2.  Because every member is band-limited, a
member generated at one grid size can be embedded exactly on a finer
grid with the same period, which is how cross-resolution stability is
measured.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import LittlewoodPaleyFamily
from .errors import DegenerateInputError, ParameterError
from .grid import GridField, GridSpec, forward_transform, inverse_transform, lattice, lp_norm
from .parabolic import ParabolicFrame


@dataclass
class FamilyMember:
    name: str
    band: int
    field: GridField


@dataclass
class TestFamily:
    spec: GridSpec
    members: list

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def _normalize(spec: GridSpec, spectrum: np.ndarray) -> GridField:
    f = inverse_transform(spectrum, spec)
    norm = lp_norm(f, 2.0)
    if norm < 1e-14:
        raise DegenerateInputError("test member is numerically zero")
    return GridField(spec, f.samples / norm)


def _band_center(spec: GridSpec, k: int) -> float:
    # center magnitude 3*2^{k-2}, clipped inside the axis Nyquist range
    return min(3.0 * 2.0 ** (k - 2), 0.75 * np.pi * spec.N / spec.L)


def plane_wave_member(spec: GridSpec, k: int) -> FamilyMember:
    """e^{i xi0 x} at the lattice point nearest the band-k center."""
    h = spec.xi_spacing
    target = _band_center(spec, k)
    i = max(1, int(round(target / h)))
    if i >= spec.N // 2:
        raise ParameterError(f"band {k} exceeds the grid frequency range")
    spectrum = np.zeros(spec.shape, dtype=complex)
    spectrum[i, 0] = spec.L**spec.n
    return FamilyMember(f"plane_k{k}", k, _normalize(spec, spectrum))


def packet_member(spec: GridSpec, k: int, omega, freq_cutoff: float | None = None) -> FamilyMember:
    """Parabolic wave packet: spectral Gaussian centered at rho0*omega,
    width rho0/4 along omega and sqrt(rho0)/2 across."""
    omega = np.asarray(omega, dtype=float)
    rho0 = _band_center(spec, k)
    lat = lattice(spec)
    par = lat.mesh[0] * omega[0] + lat.mesh[1] * omega[1] - rho0
    perp = -lat.mesh[0] * omega[1] + lat.mesh[1] * omega[0]
    s_par = rho0 / 4.0
    s_perp = np.sqrt(rho0) / 2.0
    spectrum = np.exp(-(par**2) / (2 * s_par**2) - perp**2 / (2 * s_perp**2)).astype(complex)
    if freq_cutoff is not None:
        spectrum[lat.mags > freq_cutoff] = 0.0
    return FamilyMember(f"packet_k{k}", k, _normalize(spec, spectrum))


def random_band_member(
    spec: GridSpec, k: int, fam: LittlewoodPaleyFamily, rng: np.random.Generator
) -> FamilyMember:
    noise = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)
    spectrum = fam.values[k] * noise
    return FamilyMember(f"random_k{k}", k, _normalize(spec, spectrum))


def focusing_member(
    spec: GridSpec, k: int, frame: ParabolicFrame, stride: int = 4
) -> FamilyMember:
    """Superposition of packets over frame directions (every `stride`-th)."""
    acc = None
    for omega in frame.directions.omegas[::stride]:
        m = packet_member(spec, k, omega)
        acc = m.field.samples if acc is None else acc + m.field.samples
    spectrum = forward_transform(GridField(spec, acc))
    out = FamilyMember(f"focus_k{k}", k, _normalize(spec, spectrum))
    return out


def build_test_family(
    spec: GridSpec,
    frame: ParabolicFrame,
    bands,
    kinds=("plane", "packet", "random", "focus"),
    seed: int = 0,
    fam: LittlewoodPaleyFamily | None = None,
) -> TestFamily:
    if fam is None:
        fam = LittlewoodPaleyFamily(spec)
    rng = np.random.default_rng(seed)
    e1 = np.array([1.0, 0.0])
    members = []
    for k in bands:
        if not (0 <= k <= fam.J_max):
            raise ParameterError(f"band {k} outside the grid's dyadic range")
        if "plane" in kinds:
            members.append(plane_wave_member(spec, k))
        if "packet" in kinds:
            members.append(packet_member(spec, k, e1))
        if "random" in kinds:
            members.append(random_band_member(spec, k, fam, rng))
        if "focus" in kinds:
            members.append(focusing_member(spec, k, frame))
    return TestFamily(spec, members)


def embed(f: GridField, fine: GridSpec) -> GridField:
    """Exact embedding of a band-limited field on a finer grid with the
    same period: lattice spectra agree frequency-by-frequency."""
    coarse = f.spec
    if fine.L != coarse.L or fine.n != coarse.n or fine.N < coarse.N:
        raise ParameterError("target grid must refine the source grid (same period)")
    src = np.fft.fftshift(forward_transform(f))
    dst = np.zeros(fine.shape, dtype=complex)
    off = (fine.N - coarse.N) // 2
    dst[off : off + coarse.N, off : off + coarse.N] = src
    return inverse_transform(np.fft.ifftshift(dst), fine)
