"""Function-space norms and exponent budgets.

Compares the classical Sobolev norm, the Zygmund norm, and the
directional H^{s,p} norm on test fields, then prints the exponent
budgets (loss tau, smoothing gamma, reductions sigma and rho) for a
few symbol classes C^r_* S^0_{1,delta}.
"""

import numpy as np

import fiokit as fk

spec = fk.GridSpec(N=64, L=2.0 * np.pi)
frame = fk.ParabolicFrame(spec)
fam = fk.build_lp_family(spec)

rng = np.random.default_rng(3)
noise = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)
mags = fk.lattice(spec).mags
f = fk.inverse_transform(np.where((mags > 2) & (mags < 12), 1.0, 0.0) * noise, spec)

print("norms of a random band-limited field (2 < |xi| < 12):")
for p in (4.0 / 3.0, 2.0, 4.0):
    s_p = fk.sobolev_s(p, spec.n)
    print(
        f"  p={p:4.2f}: ||f||_p = {fk.lp_norm(f, p):7.4f}   "
        f"||f||_{{H^{{s(p),p}}}} = {fk.classical_norm(f, s_p, p):7.4f}   "
        f"directional (s=0) = {fk.hpfio_norm(f, 0.0, p, frame):7.4f}"
    )

g = fk.inverse_transform(fam.values[4] * noise, spec)
print(f"\nZygmund norm of a single-band (j=4) field, r=1.0: {fk.zygmund_norm(g, 1.0, fam):.4f}")
print(f"  (sup norm of the same field: {np.abs(g.samples).max():.4f}, weight 2^4 = 16)")

print("\nexponent budgets for C^r_* S^0_{1,delta} on n = 2:")
print(f"{'r':>5} {'delta':>6} {'p':>6} | {'tau':>6} {'gamma':>6} {'sigma':>6} {'rho':>6}  s-interval")
for r, delta, p in ((2.0, 0.0, 4.0), (2.0, 0.5, 2.0), (1.3, 0.25, 2.0), (0.5, 0.5, 4.0)):
    b = fk.budget(r, delta, p, 2)
    lo, hi = b.s_interval
    print(
        f"{r:5.2f} {delta:6.2f} {p:6.2f} | {b.tau:6.3f} {b.gamma:6.3f} "
        f"{b.sigma:6.3f} {b.rho:6.3f}  ({lo:+.3f}, {hi:+.3f})"
    )
print("\ntau = 0 when r > n-1: no loss of regularity; for r < n-1 the operator")
print("maps H^{s+tau,p} -> H^{s,p} and the budget quantifies the shift.")
