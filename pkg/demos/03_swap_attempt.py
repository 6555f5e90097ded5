"""Try to swap a c-bit and a qubit with H = g (X_c X + Y_c Y).

The c-bit bilinears can only steer the qubit around a rotation axis; there is
no term that writes the qubit back into the c-bit in a way that exchanges
them.  The scan below scores the best fidelity to a perfect swap over the
whole run, for the literal one-way coupling and for the mean-field
(Ehrenfest) completion, next to a quantum SWAP gate.
"""

import math

import numpy as np

from cbitsim import quantum_core as qc
from cbitsim.complex_canonical import CBitState
from cbitsim.experiments import run_swap_experiment
from cbitsim.hybrid import CouplingSpec, attempt_swap

R2 = 1 / math.sqrt(2)

rep = attempt_swap(CBitState(R2, R2), qc.ket(0), CouplingSpec(), dt=1e-3, t_end=20.0)
print(f"c-bit (1,1)/sqrt2 with |0>, one-way: best fidelity {rep.qubit_fidelity_best:.6f} "
      f"at t = {rep.best_time:.3f}, max entropy {rep.max_entropy}")

rep = attempt_swap(CBitState(1, 0), qc.ket(1), CouplingSpec(), dt=1e-2, t_end=5.0)
print(f"c-bit (1,0) with |1>: coefficients vanish, fidelity stays {rep.qubit_fidelity_best}")

res = run_swap_experiment(100, seed=42)
print()
for name in ("hybrid_one_way", "hybrid_one_way_frozen", "hybrid_ehrenfest"):
    q = [res.summary[f"{name}_best_fidelity_{s}"] for s in ("min", "median", "max")]
    print(f"{name:24s} best-time fidelity min/median/max = " + " / ".join(f"{v:.4f}" for v in q))
print(f"{'quantum SWAP':24s} min fidelity = {res.summary['quantum_min_fidelity']:.12f}")
fid = res.column("fidelity_best", "hybrid_ehrenfest")
print(f"ehrenfest trials above 0.999: {np.mean(fid > 0.999):.0%}")
