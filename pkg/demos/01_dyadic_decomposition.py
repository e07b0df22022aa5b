"""Dyadic frequency decomposition on a periodic grid.

Builds a Littlewood-Paley family, splits a field into dyadic bands,
verifies the exact reconstruction, and evaluates the square-function
norm that is equivalent to the Sobolev norm.
"""

import numpy as np

import fiokit as fk

spec = fk.GridSpec(N=128, L=8.0 * np.pi)
fam = fk.build_lp_family(spec)
print(f"grid: {spec.N}x{spec.N}, period {spec.L:.3f}, max |xi| = {spec.xi_max:.2f}")
print(f"dyadic bands: j = 0..{fam.J_max}")

total = sum(fam.values)
print(f"partition of unity deviation: {np.abs(total - 1.0).max():.2e}")

rng = np.random.default_rng(0)
f = fk.GridField(spec, rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape))

pieces = [fk.lp_project(f, j, fam) for j in range(fam.J_max + 1)]
recon = sum(p.samples for p in pieces)
print(f"band reconstruction error: {np.abs(recon - f.samples).max():.2e}")

print("\nper-band energy (L2 norm of each dyadic piece):")
for j, piece in enumerate(pieces):
    print(f"  j={j}: ||psi_j(D)f||_2 = {fk.lp_norm(piece, 2.0):.4f}")

s, p = 0.5, 2.0
sq = fk.square_function_norm(f, s, p, fam)
cl = fk.classical_norm(f, s, p)
print(f"\nsquare-function norm (s={s}, p={p}): {sq:.4f}")
print(f"classical Sobolev norm:              {cl:.4f}")
print(f"ratio (equivalence constant):        {sq / cl:.4f}")
