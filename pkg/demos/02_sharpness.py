"""X, Y and Z of a c-bit are sharp at once; a qubit's never are.

The c-bit bilinears are plain numbers, so their dispersion is zero and they
satisfy x^2 + y^2 + z^2 = |z|^4.  For any pure qubit the three Pauli
variances add up to 2, so at most one of them can vanish.
"""

import numpy as np

from cbitsim import quantum_core as qc
from cbitsim.complex_canonical import bilinears, random_cbit
from cbitsim.experiments import run_sharpness_report

rng = np.random.default_rng(1)
c = random_cbit(rng)
print("c-bit", c.as_array().round(4), "-> (x, y, z) =", np.round(bilinears(c), 6))

psi = qc.random_pure_state(rng)
var = [qc.variance(p, psi) for p in (qc.X, qc.Y, qc.Z)]
print("qubit", psi.round(4), "-> Var X, Y, Z =", np.round(var, 6), " sum =", round(sum(var), 12))
print("|0> variances:", [qc.variance(p, qc.ket(0)) for p in (qc.X, qc.Y, qc.Z)])

res = run_sharpness_report(1000, seed=42)
print()
for k, v in res.summary.items():
    print(f"  {k} = {v:.3g}")
