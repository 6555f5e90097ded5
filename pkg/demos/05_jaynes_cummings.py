"""Vacuum Rabi oscillation: a quantized mode against a classical one.

From |e, 0> the resonant Jaynes-Cummings model swaps the excitation into the
field and back, P_excited = cos^2(g t), entangling qubit and mode on the way
(ln 2 at g t = pi/4).  Replacing the mode by a classical complex amplitude
that starts empty gives no drive at all: the qubit stays excited and nothing
entangles.
"""

import math

from cbitsim.experiments import run_jc_compare

res = run_jc_compare(g=1.0, t_max=math.pi, n_steps=8, fock_dim=8)
print(f"{'t':>8s} {'P_e quantum':>12s} {'S quantum':>10s} {'P_e classical':>14s}")
quant = [r for r in res.records if r.backend == "quantum"]
semi = [r for r in res.records if r.backend == "hybrid_ehrenfest"]
for a, b in zip(quant, semi):
    print(f"{a.param_value:8.4f} {a.observables['p_excited']:12.6f} {a.observables['entropy']:10.6f} "
          f"{b.observables['p_excited']:14.6f}")
print(f"\nS(g t = pi/4) = {res.summary['entropy_at_quarter_period']:.9f}  (ln 2 = {math.log(2):.9f})")
for v in res.verdicts:
    print(f"  [{'PASS' if v.passed else 'FAIL'}] {v.claim}: {v.detail}")
