"""A c-bit and a photon run through the same Mach-Zehnder interferometer.

Beamsplitters are Hadamards and the phase sits on one arm.  The classical
mode energies |z_L|^2, |z_R|^2 trace exactly the same fringe as the photon's
detection probabilities.
"""

import math

import numpy as np

from cbitsim.complex_canonical import CBitState, bilinears, hadamard, mach_zehnder
from cbitsim.experiments import run_mz_sweep

# two beamsplitters and no phase take the light back to where it started
s = CBitState(1.0, 0.0)
print("after one beamsplitter :", hadamard(s).as_array().round(6), "bilinears", np.round(bilinears(hadamard(s)), 6))
print("after two beamsplitters:", hadamard(hadamard(s)).as_array().round(6))

for phi in (0.0, math.pi / 2, math.pi):
    out = mach_zehnder(s, phi)
    print(f"phi = {phi:5.3f}:  I_L = {abs(out.z_L) ** 2:.6f}  I_R = {abs(out.z_R) ** 2:.6f}")

res = run_mz_sweep("both", 256)
print(f"\n256-point sweep, max |classical - quantum| = {res.summary['max_abs_diff']:.2e}")
for v in res.verdicts:
    print(f"  [{'PASS' if v.passed else 'FAIL'}] {v.claim}")
