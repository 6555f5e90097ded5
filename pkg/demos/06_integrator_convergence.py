"""Implicit midpoint on complex coordinates: order and energy drift.

On the free oscillator the global error falls as dt^2.  On the Ehrenfest
hybrid the mean-field energy is quartic in the amplitudes, so midpoint does
not conserve it exactly; the drift also falls as dt^2.
"""

from cbitsim.experiments import ehrenfest_energy_drift, oscillator_convergence

rep = oscillator_convergence()
for row in rep.rows:
    print(f"dt = {row['dt']:<7g} steps = {row['steps']:<4d} error = {row['error']:.3e}")
print(f"fitted slope {rep.slope:.4f}\n")

prev = None
for dt in (4e-3, 2e-3, 1e-3):
    d = ehrenfest_energy_drift(dt, t_end=20.0)
    ratio = "" if prev is None else f"  ratio {prev / d:.3f}"
    print(f"Ehrenfest dt = {dt:g}: max relative energy drift {d:.3e}{ratio}")
    prev = d
