"""Scenario runners producing tabular records.

Each ``run_*`` function returns an :class:`ExperimentResult`: a list of
:class:`ExperimentRecord` rows (one schema per experiment, see ``SCHEMAS``),
a dict of summary statistics, and pass/fail verdicts for the claim the
experiment tests.

Random states come from ``numpy.random.default_rng(seed)`` (PCG64).  Every
amplitude is drawn as a (re, im) pair of standard normals and each party is
normalized separately, which is uniform on the Bloch sphere.  In the swap
experiment trial ``k`` draws its c-bit and then its qubit, so the first
``m`` trials do not depend on ``n_trials``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quantum_core as qc
from ._linalg import hermitian_propagator
from .complex_canonical import (
    CBitState,
    bilinears,
    free_evolution,
    mach_zehnder,
    random_cbit,
)
from .errors import ConvergenceError, DomainError, TruncationError
from .hybrid import (
    CouplingSpec,
    attempt_swap_batch,
    mean_field_energy,
    quantum_contrast_entropy,
    run_batch,
    semiclassical_jaynes_cummings,
)
from .integrators import FlowProblem, convergence_report

RNG_ALGORITHM = "numpy.random.PCG64 via default_rng; standard-normal (re, im) pairs, normalized"

# Hybrid best-time fidelity must stay below 1 - SWAP_FIDELITY_MARGIN at the
# median.  Fixed by tools/calibrate_swap_margin.py (seed 42, 1000 trials,
# g = 1, t_end = 20, DOP853 at 1e-12 on a 1e-3 grid):
#   one_way   median 0.772729
#   ehrenfest median 0.997917
SWAP_FIDELITY_MARGIN = 1e-3
CONTRAST_ENTROPY_FLOOR = 1e-3

SCHEMAS = {
    "mz-sweep": ("phi", ("i_L", "i_R")),
    "sharpness": ("sample", ("x", "y", "z", "var_x", "var_y", "var_z", "residual")),
    "swap-test": ("trial", ("fidelity_final", "fidelity_best", "cbit_distance", "max_entropy", "failed")),
    "jc-compare": ("t", ("p_excited", "entropy")),
    "convergence": ("dt", ("error", "steps")),
}

BACKENDS = ("classical_cbit", "quantum", "hybrid_one_way", "hybrid_one_way_frozen", "hybrid_ehrenfest")


@dataclass(frozen=True)
class RngSpec:
    seed: int
    algorithm: str = RNG_ALGORITHM

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(frozen=True)
class ExperimentRecord:
    experiment: str
    backend: str
    param_value: float
    observables: dict
    seed: int | None = None

    def __post_init__(self):
        if self.experiment not in SCHEMAS:
            raise DomainError(f"unknown experiment {self.experiment!r}")
        if self.backend not in BACKENDS:
            raise DomainError(f"unknown backend {self.backend!r}")
        names = SCHEMAS[self.experiment][1]
        if tuple(self.observables) != names:
            raise DomainError(f"{self.experiment} records carry {names}, got {tuple(self.observables)}")

    @property
    def param_name(self) -> str:
        return SCHEMAS[self.experiment][0]


@dataclass(frozen=True)
class Verdict:
    claim: str
    passed: bool
    detail: str


@dataclass
class ExperimentResult:
    experiment: str
    records: list[ExperimentRecord]
    summary: dict = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def column(self, name, backend=None) -> np.ndarray:
        rows = [r for r in self.records if backend is None or r.backend == backend]
        if name == SCHEMAS[self.experiment][0]:
            return np.array([r.param_value for r in rows], dtype=float)
        return np.array([r.observables[name] for r in rows], dtype=float)


# -- Mach-Zehnder ---------------------------------------------------------------

def mz_intensities(backend: str, phi: float, phase_arm="L") -> tuple[float, float]:
    if backend == "classical_cbit":
        out = mach_zehnder(CBitState(1.0, 0.0), phi, phase_arm)
        return abs(out.z_L) ** 2, abs(out.z_R) ** 2
    if backend == "quantum":
        psi = qc.mz_quantum(phi, phase_arm)
        return float(abs(psi[0]) ** 2), float(abs(psi[1]) ** 2)
    raise DomainError(f"mz-sweep backend must be classical_cbit or quantum, got {backend!r}")


def run_mz_sweep(backend="both", n_points: int = 256, phase_arm="L") -> ExperimentResult:
    """Interference fringes over ``phi`` in ``[0, 2 pi]`` (both endpoints included)."""
    if n_points < 2:
        raise DomainError("n_points must be at least 2")
    backends = ("classical_cbit", "quantum") if backend == "both" else (backend,)
    phis = np.linspace(0.0, 2.0 * math.pi, n_points)
    records = []
    table = {}
    for b in backends:
        vals = [mz_intensities(b, float(phi), phase_arm) for phi in phis]
        table[b] = np.array(vals)
        records += [
            ExperimentRecord("mz-sweep", b, float(phi), {"i_L": il, "i_R": ir})
            for phi, (il, ir) in zip(phis, vals)
        ]
    res = ExperimentResult("mz-sweep", records)
    for b, arr in table.items():
        err = abs(arr[0, 0] - 1.0)
        res.verdicts.append(Verdict(f"{b}: phi=0 returns the photon to L", err < 1e-12, f"|I_L - 1| = {err:.3g}"))
    if len(table) == 2:
        diff = float(np.max(np.abs(table["classical_cbit"] - table["quantum"])))
        res.summary["max_abs_diff"] = diff
        res.verdicts.append(Verdict("classical and quantum fringes coincide", diff < 1e-10,
                                    f"max |classical - quantum| = {diff:.3g}"))
    return res


# -- sharpness ------------------------------------------------------------------

def cbit_sharpness_row(state: CBitState) -> dict:
    """Bilinears of a c-bit; they are point values, so all dispersions are zero."""
    x, y, z = bilinears(state)
    return {"x": x, "y": y, "z": z, "var_x": 0.0, "var_y": 0.0, "var_z": 0.0,
            "residual": abs(x * x + y * y + z * z - state.norm() ** 2)}


def qubit_sharpness_row(psi) -> dict:
    m = [qc.expectation(P, psi) for P in (qc.X, qc.Y, qc.Z)]
    v = [qc.variance(P, psi) for P in (qc.X, qc.Y, qc.Z)]
    return {"x": m[0], "y": m[1], "z": m[2], "var_x": v[0], "var_y": v[1], "var_z": v[2],
            "residual": abs(sum(v) - 2.0)}


def run_sharpness_report(n_samples: int = 1000, seed: int = 42) -> ExperimentResult:
    """Sample 0 is the basis state (c-bit (1, 0), qubit |0>); samples 1..n are random."""
    if n_samples < 1:
        raise DomainError("n_samples must be at least 1")
    rng = RngSpec(seed).generator()
    cbits = [CBitState(1.0, 0.0)] + [random_cbit(rng) for _ in range(n_samples)]
    # same stream again, so qubit k carries the amplitudes of c-bit k
    rng = RngSpec(seed).generator()
    qubits = [qc.ket(0)] + [qc.random_pure_state(rng) for _ in range(n_samples)]
    records = [ExperimentRecord("sharpness", "classical_cbit", k, cbit_sharpness_row(c), seed)
               for k, c in enumerate(cbits)]
    records += [ExperimentRecord("sharpness", "quantum", k, qubit_sharpness_row(q), seed)
                for k, q in enumerate(qubits)]
    res = ExperimentResult("sharpness", records)
    c_res = max(r.observables["residual"] for r in records if r.backend == "classical_cbit")
    q_res = max(r.observables["residual"] for r in records if r.backend == "quantum")
    min_var_sum = min(sum(r.observables[k] for k in ("var_x", "var_y", "var_z"))
                      for r in records if r.backend == "quantum")
    res.summary.update(classical_max_residual=c_res, quantum_max_residual=q_res,
                       quantum_min_variance_sum=min_var_sum)
    res.verdicts += [
        Verdict("c-bit X, Y, Z are simultaneously sharp point values", c_res < 1e-9,
                f"max |x^2+y^2+z^2-1| = {c_res:.3g}, dispersions 0"),
        Verdict("qubit variances always sum to 2 (never all sharp)", q_res < 1e-9,
                f"max |Var X + Var Y + Var Z - 2| = {q_res:.3g}"),
    ]
    return res


# -- swap ---------------------------------------------------------------------------

def draw_swap_inputs(n_trials: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    d = RngSpec(seed).generator().standard_normal((n_trials, 2, 2, 2))
    amps = d[..., 0] + 1j * d[..., 1]
    amps /= np.linalg.norm(amps, axis=2, keepdims=True)
    return amps[:, 0].copy(), amps[:, 1].copy()


HYBRID_VARIANTS = {
    "hybrid_one_way": {"back_reaction": "one_way", "cbit_free": True},
    "hybrid_one_way_frozen": {"back_reaction": "one_way", "cbit_free": False},
    "hybrid_ehrenfest": {"back_reaction": "ehrenfest", "cbit_free": True},
}


def _variant_spec(spec: CouplingSpec, backend: str) -> CouplingSpec:
    kw = HYBRID_VARIANTS[backend]
    return CouplingSpec(g=spec.g, schedule=spec.schedule, qubit_omega=spec.qubit_omega,
                        tol=spec.tol, max_iter=spec.max_iter, **kw)


def _swap_variant(cbits, qubits, spec, dt, t_end):
    """Batch run with per-trial fallback so one failing trial does not sink the rest."""
    try:
        b = attempt_swap_batch(cbits, qubits, spec, dt, t_end)
        return (b.fidelity_final, b.fidelity_best, b.cbit_distance_final, b.max_entropy,
                np.zeros(len(cbits), dtype=int))
    except ConvergenceError:
        pass
    cols = [np.full(len(cbits), np.nan) for _ in range(4)]
    failed = np.zeros(len(cbits), dtype=int)
    for k in range(len(cbits)):
        try:
            b = attempt_swap_batch(cbits[k:k + 1], qubits[k:k + 1], spec, dt, t_end)
        except ConvergenceError:
            failed[k] = 1
            continue
        for col, val in zip(cols, (b.fidelity_final, b.fidelity_best, b.cbit_distance_final, b.max_entropy)):
            col[k] = val[0]
    return (*cols, failed)


def quantum_swap_reference(cbits, qubits) -> tuple[np.ndarray, np.ndarray]:
    """Apply SWAP to the quantum encoding ``|c> x |q>``.

    Returns the fidelity to ``|q> x |c>`` and the distance between the first
    qubit's output Bloch vector and the input qubit's Bloch vector.
    """
    swap = qc.swap_gate()
    fid = np.empty(len(cbits))
    dist = np.empty(len(cbits))
    for k, (c, q) in enumerate(zip(cbits, qubits)):
        c = c / np.linalg.norm(c)
        out = qc.apply(swap, qc.tensor(c, q))
        fid[k] = qc.fidelity(out, qc.tensor(q, c))
        rho_a = qc.partial_trace(np.outer(out, out.conj()), (2, 2), "A")
        dist[k] = np.linalg.norm(qc.bloch_vector(rho_a) - qc.bloch_vector(q))
    return fid, dist


def run_swap_experiment(n_trials: int = 100, spec: CouplingSpec | None = None, seed: int = 42,
                        dt: float = 1e-3, t_end: float = 20.0,
                        variants=tuple(HYBRID_VARIANTS)) -> ExperimentResult:
    """Attempt to swap a c-bit and a qubit with the hybrid coupling, next to a quantum SWAP.

    Quantum rows carry the SWAP-gate fidelity; their ``max_entropy`` column is
    the peak entanglement reached by the ``g (XX + YY)`` contrast from the
    same encoded inputs over the same horizon.
    """
    if n_trials < 1:
        raise DomainError("n_trials must be at least 1")
    spec = spec or CouplingSpec()
    cbits, qubits = draw_swap_inputs(n_trials, seed)
    per_backend = {}
    for name in variants:
        per_backend[name] = _swap_variant(cbits, qubits, _variant_spec(spec, name), dt, t_end)
    n_steps = max(1, math.ceil(t_end / dt - 1e-9))
    times = np.linspace(0.0, t_end, n_steps + 1)
    contrast = quantum_contrast_entropy(cbits, qubits, spec.g, times).max(axis=0)
    q_fid, q_dist = quantum_swap_reference(cbits, qubits)
    per_backend["quantum"] = (q_fid, q_fid, q_dist, contrast, np.zeros(n_trials, dtype=int))

    records = []
    for k in range(n_trials):
        for name, (ff, fb, cd, me, failed) in per_backend.items():
            records.append(ExperimentRecord("swap-test", name, k, {
                "fidelity_final": float(ff[k]), "fidelity_best": float(fb[k]),
                "cbit_distance": float(cd[k]), "max_entropy": float(me[k]),
                "failed": int(failed[k])}, seed))
    res = ExperimentResult("swap-test", records)
    s = res.summary
    s["quantum_min_fidelity"] = float(q_fid.min())
    s["contrast_entangled_fraction"] = float(np.mean(contrast > CONTRAST_ENTROPY_FLOOR))
    res.verdicts.append(Verdict("quantum SWAP reaches fidelity 1", bool(np.all(q_fid >= 1 - 1e-10)),
                                f"min fidelity {q_fid.min():.12f}"))
    res.verdicts.append(Verdict(f"quantum XX+YY contrast entangles (> {CONTRAST_ENTROPY_FLOOR:g} nats) in > 99% of trials",
                                s["contrast_entangled_fraction"] > 0.99,
                                f"fraction {s['contrast_entangled_fraction']:.4f}"))
    for name in variants:
        ff, fb, cd, me, failed = per_backend[name]
        ok = failed == 0
        s[f"{name}_failures"] = int(failed.sum())
        if not ok.any():
            res.verdicts.append(Verdict(f"{name}: runs completed", False, "every trial failed"))
            continue
        q = np.percentile(fb[ok], [0, 50, 100])
        s[f"{name}_best_fidelity_min"], s[f"{name}_best_fidelity_median"], s[f"{name}_best_fidelity_max"] = map(float, q)
        s[f"{name}_max_entropy"] = float(me[ok].max())
        res.verdicts.append(Verdict(f"{name}: hybrid never entangles", bool(np.all(me[ok] == 0.0)),
                                    f"max entropy {me[ok].max():.3g} nats"))
        res.verdicts.append(Verdict(f"{name}: median best-time fidelity < 1 - {SWAP_FIDELITY_MARGIN:g}",
                                    bool(q[1] < 1 - SWAP_FIDELITY_MARGIN),
                                    f"min/median/max {q[0]:.6f}/{q[1]:.6f}/{q[2]:.6f}"))
    return res


# -- Jaynes-Cummings ------------------------------------------------------------------

def jc_quantum(g: float, times, fock_dim: int = 8, omega: float = 1.0, nu: float = 1.0):
    """``P_excited(t)`` and qubit-mode entanglement entropy from ``|e, 0>``."""
    h = qc.jaynes_cummings_hamiltonian(omega, nu, g, fock_dim)
    psi0 = qc.tensor(qc.ket(0), qc.FockMode(fock_dim).vacuum())
    psi = hermitian_propagator(h, np.asarray(times, dtype=float)) @ psi0
    amp = psi.reshape(len(psi), 2, fock_dim)
    p_exc = np.sum(np.abs(amp[:, 0, :]) ** 2, axis=1)
    ent = np.array([qc.entanglement_entropy(p / np.linalg.norm(p), (2, fock_dim)) for p in psi])
    return p_exc, ent


def run_jc_compare(g: float = 1.0, t_max: float = math.pi, n_steps: int = 400, fock_dim: int = 8,
                   omega: float = 1.0, nu: float = 1.0) -> ExperimentResult:
    """Vacuum Rabi oscillation of a quantized mode next to a classical complex mode."""
    if fock_dim < 2:
        raise DomainError("fock_dim must be at least 2")
    if n_steps < 1 or not t_max > 0:
        raise DomainError("need n_steps >= 1 and t_max > 0")
    times = np.linspace(0.0, t_max, n_steps + 1)
    p_q, s_q = jc_quantum(g, times, fock_dim, omega, nu)
    p_big, s_big = jc_quantum(g, times, fock_dim + 4, omega, nu)
    trunc = float(max(np.max(np.abs(p_q - p_big)), np.max(np.abs(s_q - s_big))))
    if trunc > 1e-6:
        raise TruncationError(
            f"fock_dim {fock_dim} and {fock_dim + 4} disagree by {trunc:.3g}; use a larger fock_dim")
    p_c, s_c, _ = semiclassical_jaynes_cummings(g, times, omega, nu)
    records = [ExperimentRecord("jc-compare", "quantum", float(t), {"p_excited": float(p), "entropy": float(s)})
               for t, p, s in zip(times, p_q, s_q)]
    records += [ExperimentRecord("jc-compare", "hybrid_ehrenfest", float(t), {"p_excited": float(p), "entropy": float(s)})
                for t, p, s in zip(times, p_c, s_c)]
    res = ExperimentResult("jc-compare", records)
    res.summary.update(truncation_gap=trunc, quantum_max_entropy=float(s_q.max()),
                       semiclassical_max_entropy=float(s_c.max()))
    if omega == nu:
        dev = float(np.max(np.abs(p_q - np.cos(g * times) ** 2)))
        res.summary["rabi_deviation"] = dev
        res.verdicts.append(Verdict("quantum P_excited = cos^2(g t)", dev < 1e-8, f"max deviation {dev:.3g}"))
        s_peak = float(jc_quantum(g, [math.pi / (4 * g)], fock_dim, omega, nu)[1][0])
        res.summary["entropy_at_quarter_period"] = s_peak
        res.verdicts.append(Verdict("quantum entropy reaches ln 2 at g t = pi/4",
                                    abs(s_peak - math.log(2)) < 1e-6,
                                    f"S = {s_peak:.9f} nats = {s_peak / math.log(2):.9f} bits"))
    res.verdicts.append(Verdict("semiclassical branch never entangles", bool(np.all(s_c == 0.0)),
                                f"max entropy {s_c.max():.3g}"))
    return res


# -- integrator convergence -----------------------------------------------------

def oscillator_problem(state=(1.0, 0.0)) -> FlowProblem:
    """Two free c-bit modes, ``i dz/dt = z``, with the norm as invariant."""
    s = np.asarray(state, dtype=complex)
    return FlowProblem(s, lambda z: -1j * z, (("norm", lambda z: float(np.sum(np.abs(z) ** 2))),))


def oscillator_convergence(dts=(0.1, 0.05, 0.025, 0.0125), t_end: float = 1.0):
    problem = oscillator_problem()
    exact = lambda t: free_evolution(CBitState(1.0, 0.0), t).as_array()
    return convergence_report(problem, dts, t_end, exact)


def ehrenfest_scenario(seed: int = 42) -> tuple[np.ndarray, np.ndarray]:
    """Initial (c-bit, qubit) for the energy-drift benchmark: trial 0 of the swap draw."""
    c, q = draw_swap_inputs(1, seed)
    return c, q


def ehrenfest_energy_drift(dt: float, t_end: float = 20.0, g: float = 1.0, seed: int = 42) -> float:
    """Maximum relative deviation of the mean-field energy along an Ehrenfest run."""
    spec = CouplingSpec(g=g, back_reaction="ehrenfest")
    cbits, qubits = ehrenfest_scenario(seed)
    e0 = mean_field_energy(cbits, qubits, spec)[0]
    worst = [0.0]

    def observe(t, c, q):
        worst[0] = max(worst[0], abs(mean_field_energy(c, q, spec, t)[0] - e0) / abs(e0))

    run_batch(cbits, qubits, spec, dt, t_end, observe)
    return worst[0]


def run_convergence(dts=(0.1, 0.05, 0.025, 0.0125), ehrenfest_dts=(2e-3, 1e-3),
                    t_end: float = 20.0, g: float = 1.0, seed: int = 42) -> ExperimentResult:
    """Midpoint global error on the oscillator, and Ehrenfest energy drift per step size."""
    rep = oscillator_convergence(dts)
    records = [ExperimentRecord("convergence", "classical_cbit", dt, {"error": err, "steps": n})
               for dt, err, n in zip(rep.dts, rep.errors, rep.steps)]
    drifts = []
    for dt in ehrenfest_dts:
        d = ehrenfest_energy_drift(dt, t_end, g, seed)
        drifts.append(d)
        records.append(ExperimentRecord("convergence", "hybrid_ehrenfest", dt,
                                        {"error": d, "steps": int(round(t_end / dt))}, seed))
    res = ExperimentResult("convergence", records)
    res.summary["midpoint_slope"] = rep.slope
    res.verdicts.append(Verdict("implicit midpoint is second order", 1.8 <= rep.slope <= 2.2,
                                f"fitted slope {rep.slope:.4f}"))
    if drifts:
        res.summary["ehrenfest_drift_min_dt"] = drifts[-1]
        res.verdicts.append(Verdict("Ehrenfest energy drift < 1e-8 at the finest dt", drifts[-1] < 1e-8,
                                    f"relative drift {drifts[-1]:.3g} at dt={ehrenfest_dts[-1]:g}"))
    if len(drifts) >= 2:
        ratio = drifts[-2] / drifts[-1] if drifts[-1] > 0 else math.inf
        res.summary["ehrenfest_drift_ratio"] = ratio
        res.verdicts.append(Verdict("Ehrenfest drift shrinks ~4x per halving of dt", 2.5 <= ratio <= 6.0,
                                    f"ratio {ratio:.3f}"))
    return res
