"""Dense-grid ODE scan that fixes the swap-failure margin used in acceptance.

Independent of the package's integrators: the hybrid equations are written in
Bloch-vector form,

    qubit:  dr/dt = 2 n x r,   n = g (b_x, b_y, 0)
    c-bit:  db/dt = 2 m x b,   m = g (r_x, r_y, 0)   (ehrenfest only)

and solved with scipy's DOP853 at rtol = atol = 1e-12 on a t grid of spacing
1e-3.  Trials are drawn exactly like ``cbitsim.experiments.draw_swap_inputs``
(per trial: c-bit then qubit, each amplitude as a (re, im) standard-normal
pair, then normalized).

Run:  python tools/calibrate_swap_margin.py [n_trials] [seed]
"""

import sys

import numpy as np
from scipy.integrate import solve_ivp


def bloch_of(amps):
    w = np.conj(amps[0]) * amps[1]
    return np.array([2 * w.real, 2 * w.imag, abs(amps[0]) ** 2 - abs(amps[1]) ** 2])


def draw(n, seed):
    d = np.random.default_rng(seed).standard_normal((n, 2, 2, 2))
    amps = d[..., 0] + 1j * d[..., 1]
    amps /= np.linalg.norm(amps, axis=2, keepdims=True)
    return amps[:, 0], amps[:, 1]


def rhs(g, back_reaction):
    def f(t, y):
        b, r = y[:3], y[3:]
        n = g * np.array([b[0], b[1], 0.0])
        dr = 2 * np.cross(n, r)
        if back_reaction == "ehrenfest":
            m = g * np.array([r[0], r[1], 0.0])
            db = 2 * np.cross(m, b)
        else:
            db = np.zeros(3)
        return np.concatenate([db, dr])

    return f


def best_fidelities(n_trials=1000, seed=42, g=1.0, t_end=20.0, dt=1e-3):
    cbits, qubits = draw(n_trials, seed)
    grid = np.linspace(0.0, t_end, int(round(t_end / dt)) + 1)
    out = {}
    for variant in ("one_way", "ehrenfest"):
        best = np.empty(n_trials)
        for k in range(n_trials):
            b0 = bloch_of(cbits[k])
            r0 = bloch_of(qubits[k])
            sol = solve_ivp(rhs(g, variant), (0.0, t_end), np.concatenate([b0, r0]),
                            method="DOP853", t_eval=grid, rtol=1e-12, atol=1e-12)
            target = b0 / np.linalg.norm(b0)
            best[k] = np.max((1.0 + target @ sol.y[3:]) / 2.0)
        out[variant] = best
    return out


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 42
    res = best_fidelities(n, seed)
    for variant, best in res.items():
        q = np.percentile(best, [0, 25, 50, 75, 100])
        print(f"{variant:10s} best-time fidelity min/q1/median/q3/max = "
              + " ".join(f"{v:.6f}" for v in q))
