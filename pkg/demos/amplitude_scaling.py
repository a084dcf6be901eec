"""
Finite-size correction amplitude and its 1/N decay
==================================================

The sampled ratio density at matrix size N differs from the infinite-size
surmise by a correction of fixed shape whose amplitude C_N shrinks like
1/N.  Fitting that amplitude to full-spectrum GUE histograms at a ladder
of sizes exposes both the decay law and the extrapolated N -> infinity
amplitude of the shape itself.
"""

import numpy as np

from spacing_ratios import GUE, amplitude_scaling_curve, laws

sizes = (10, 20, 40, 80)
n_real = 30000

curve = amplitude_scaling_curve(
    GUE, sizes, n_real, bulk_fraction=1.0, seed=123,
)

c_ref = laws.surmise_constants(2).c_ref
print(f"GUE, {n_real} spectra per size, full spectra "
      f"(reference amplitude {c_ref})\n")
print("    N      C_N        stderr     C_N * N")
for n, a, s, p in zip(curve.sizes, curve.amplitudes, curve.stderrs,
                      curve.products()):
    print(f"  {int(n):4d}  {a:9.4f}  {s:9.4f}  {p:9.3f}")

# The raw amplitude flattens onto C_ref; the finite-size excess
# C_N - C_ref is the part that decays like 1/N.
resid = np.abs(curve.amplitudes - c_ref)
excess_slope = np.polyfit(np.log(curve.sizes), np.log(resid), 1)[0]
print(f"\nlog-log slope of (C_N - C_ref): {excess_slope:.3f}  "
      f"(a pure 1/N decay gives -1)")
print(f"distance from the asymptotic amplitude shrinks "
      f"{resid[0] / resid[-1]:.1f}x from N = {sizes[0]} to N = {sizes[-1]}")
