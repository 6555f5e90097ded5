"""Hybrid coupling between a classical complex bit and a qubit.

The coupling Hamiltonian is

    H = g [ X_c(z) X + Y_c(z) Y ]

where ``X_c, Y_c`` are the real bilinears of the c-bit and ``X, Y`` are qubit
Pauli operators.  The classical side can only enter as real numbers
multiplying qubit operators, so the joint object is always a product of a
c-bit and a qubit state: there is no joint amplitude to become entangled.

Two back-reaction rules are provided:

``one_way``
    The bilinears drive the qubit; the c-bit only follows its own free flow
    (or is frozen with ``cbit_free=False``).  Each step is an exact 2x2
    exponential.
``ehrenfest``
    Mean-field completion: the c-bit also feels the qubit through
    ``i dz/dt = dH_total/dz*`` with ``H_total = |z|^2 + g (X_c <X> + Y_c <Y>)``,
    which works out to ``i dz/dt = z + g (<X> sigma_x + <Y> sigma_y) z``.  The
    free part of the c-bit is a global phase that commutes with the coupled
    flow, so it is applied exactly and the remainder is integrated with the
    implicit midpoint rule.

An optional free qubit term ``(qubit_omega / 2) Z`` can be switched on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from . import quantum_core as qc
from ._linalg import hermitian_propagator
from .complex_canonical import CBitState, bilinears, bilinears_array, from_bloch
from .errors import DomainError
from .integrators import FlowProblem, StepperConfig, implicit_midpoint_step

BackReaction = Literal["one_way", "ehrenfest"]

COEFF_IMAG_TOL = 1e-14
_PAULIS = np.stack([qc.X, qc.Y, qc.Z])


@dataclass(frozen=True)
class CouplingSpec:
    """Coupling strength, back-reaction rule and on/off schedule.

    ``schedule`` is a sequence of ``(t_on, t_off)`` intervals during which the
    coupling is on; ``None`` means always on.  A step uses the schedule value
    at its midpoint time.
    """

    g: float = 1.0
    back_reaction: BackReaction = "one_way"
    schedule: tuple[tuple[float, float], ...] | None = None
    cbit_free: bool = True
    qubit_omega: float = 0.0
    tol: float = 1e-13
    max_iter: int = 50

    def __post_init__(self):
        if not math.isfinite(self.g):
            raise DomainError("g must be finite")
        if self.back_reaction not in ("one_way", "ehrenfest"):
            raise DomainError(f"unknown back-reaction {self.back_reaction!r}")
        if not math.isfinite(self.qubit_omega):
            raise DomainError("qubit_omega must be finite")
        if self.schedule is not None:
            sched = tuple((float(a), float(b)) for a, b in self.schedule)
            last = -math.inf
            for a, b in sched:
                if not (a < b and a >= last):
                    raise DomainError("schedule intervals must be increasing and non-overlapping")
                last = b
            object.__setattr__(self, "schedule", sched)

    def strength(self, t: float) -> float:
        if self.schedule is None:
            return self.g
        for a, b in self.schedule:
            if a <= t < b:
                return self.g
        return 0.0


@dataclass(frozen=True)
class HybridState:
    """A c-bit next to a qubit.  There is deliberately no joint state."""

    cbit: CBitState
    qubit: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        q = np.asarray(self.qubit, dtype=complex)
        if q.shape == (2,):
            q = qc.as_pure_state(q)
        elif q.shape == (2, 2):
            q = qc.as_density_matrix(q, tol=1e-10)
        else:
            raise DomainError(f"qubit must be a 2-vector or 2x2 matrix, got shape {q.shape}")
        object.__setattr__(self, "qubit", q)

    @property
    def is_pure(self) -> bool:
        return self.qubit.ndim == 1


def coupling_coefficients(cbit: CBitState) -> tuple[float, float]:
    """Real coefficients ``(X_c, Y_c)`` multiplying the qubit's X and Y."""
    zl, zr = cbit.z_L, cbit.z_R
    x = zl * zr.conjugate() + zr * zl.conjugate()
    y = 1j * (zl * zr.conjugate() - zr * zl.conjugate())
    scale = max(1.0, cbit.norm())
    if abs(x.imag) > COEFF_IMAG_TOL * scale or abs(y.imag) > COEFF_IMAG_TOL * scale:
        raise DomainError("coupling coefficients acquired an imaginary part")
    return x.real, y.real


# -- batched dynamics ---------------------------------------------------------

def _bloch(q):
    """Qubit Bloch vectors for pure (n, 2) or density (n, 2, 2) batches."""
    if q.ndim == 2:
        return qc.bloch_vector_array(q)
    return np.einsum("kij,nji->nk", _PAULIS, q).real


def _rotate(field_vec, dt, q):
    """Apply ``exp(-i dt n.sigma)`` to a batch of pure (n, 2) or density (n, 2, 2) qubits."""
    norm = np.sqrt(np.sum(field_vec * field_vec, axis=-1))
    angle = norm * dt
    safe = np.where(norm > 0, norm, 1.0)
    s = np.sin(angle) / safe
    c = np.cos(angle)
    nx, ny, nz = field_vec[:, 0] * s, field_vec[:, 1] * s, field_vec[:, 2] * s
    # U = c I - i (nx X + ny Y + nz Z) with n already scaled by sin/|n|
    u00 = c - 1j * nz
    u01 = -1j * nx - ny
    u10 = -1j * nx + ny
    u11 = c + 1j * nz
    if q.ndim == 2:
        return np.stack([u00 * q[:, 0] + u01 * q[:, 1], u10 * q[:, 0] + u11 * q[:, 1]], axis=1)
    u = np.stack([np.stack([u00, u01], axis=1), np.stack([u10, u11], axis=1)], axis=1)
    return u @ q @ np.conj(np.swapaxes(u, 1, 2))


def _qubit_field(cbits, g, omega):
    """Real field ``n`` with ``H_q = n . sigma`` for each trial."""
    b = bilinears_array(cbits)
    n = np.zeros_like(b)
    n[:, 0] = g * b[:, 0]
    n[:, 1] = g * b[:, 1]
    n[:, 2] = 0.5 * omega
    return n


def _ehrenfest_field(g, omega, pure):
    """Vector field of the coupled (non-free) part on a packed state.

    Packed layout per trial: ``[z_L, z_R, qubit...]`` with the qubit as its
    2 amplitudes (pure) or the 4 entries of rho in row-major order.
    """

    def f(s):
        zl, zr = s[:, 0], s[:, 1]
        w = zl * np.conj(zr)
        bx, by = 2.0 * w.real, -2.0 * w.imag
        if pure:
            p0, p1 = s[:, 2], s[:, 3]
            v = np.conj(p0) * p1
            rx, ry = 2.0 * v.real, 2.0 * v.imag
        else:
            rho = s[:, 2:].reshape(-1, 2, 2)
            rx, ry = 2.0 * rho[:, 1, 0].real, 2.0 * rho[:, 1, 0].imag
        # g (rx X + ry Y) has off-diagonals g (rx -+ i ry)
        kz = g * (rx - 1j * ry)
        kq = g * (bx - 1j * by)
        out = np.empty_like(s)
        out[:, 0] = -1j * kz * zr
        out[:, 1] = -1j * np.conj(kz) * zl
        if pure:
            out[:, 2] = -1j * (0.5 * omega * p0 + kq * p1)
            out[:, 3] = -1j * (np.conj(kq) * p0 - 0.5 * omega * p1)
        else:
            hq = np.zeros((len(s), 2, 2), dtype=complex)
            hq[:, 0, 0], hq[:, 1, 1] = 0.5 * omega, -0.5 * omega
            hq[:, 0, 1], hq[:, 1, 0] = kq, np.conj(kq)
            out[:, 2:] = (-1j * (hq @ rho - rho @ hq)).reshape(-1, 4)
        return out

    return f


def mean_field_energy(cbits, qubits, spec: CouplingSpec, t: float = 0.0) -> np.ndarray:
    """``|z|^2 + g (X_c <X> + Y_c <Y>) + (omega/2) <Z>`` for each trial.

    Batched: ``cbits`` is (n, 2), ``qubits`` (n, 2) or (n, 2, 2).
    """
    cbits = np.asarray(cbits, dtype=complex)
    qubits = np.asarray(qubits, dtype=complex)
    b = bilinears_array(cbits)
    r = _bloch(qubits)
    g = spec.strength(t)
    return (
        np.sum(np.abs(cbits) ** 2, axis=1)
        + g * (b[:, 0] * r[:, 0] + b[:, 1] * r[:, 1])
        + 0.5 * spec.qubit_omega * r[:, 2]
    )


Observer = Callable[[float, np.ndarray, np.ndarray], None]


def run_batch(cbits, qubits, spec: CouplingSpec, dt: float, t_end: float,
              observer: Observer, t0: float = 0.0, sample_every: int = 1) -> None:
    """Evolve a batch of hybrid pairs and report samples to ``observer``.

    ``cbits`` has shape (n, 2); ``qubits`` (n, 2) for pure or (n, 2, 2) for
    density-matrix qubits.  ``observer(t, cbits, qubits)`` is called at ``t0``
    and after every ``sample_every`` steps, always including ``t_end``.  The
    last step is shortened if ``dt`` does not divide the horizon.

    The c-bit's free flow is a global phase that commutes with both coupled
    flows, so the c-bit is carried in the co-rotating frame and the phase
    ``exp(-i (t - t0))`` is applied once per sample rather than once per step.
    """
    if not (dt > 0 and math.isfinite(dt)):
        raise DomainError("dt must be positive")
    if t_end < t0:
        raise DomainError("t_end precedes the start time")
    cbits = np.array(cbits, dtype=complex)
    qubits = np.array(qubits, dtype=complex)
    pure = qubits.ndim == 2
    n_steps = max(0, math.ceil((t_end - t0) / dt - 1e-9))
    rotating = spec.back_reaction == "ehrenfest" or spec.cbit_free
    observer(t0, cbits, qubits)
    t = t0
    for k in range(n_steps):
        h = min(dt, t_end - t) if k == n_steps - 1 else dt
        g = spec.strength(t + 0.5 * h)
        if spec.back_reaction == "one_way":
            qubits = _rotate(_qubit_field(cbits, g, spec.qubit_omega), h, qubits)
        else:
            packed = np.concatenate([cbits, qubits.reshape(len(qubits), -1)], axis=1)
            problem = FlowProblem(packed, _ehrenfest_field(g, spec.qubit_omega, pure))
            packed = implicit_midpoint_step(
                problem, StepperConfig(h, tol=spec.tol, max_iter=spec.max_iter)
            )
            cbits = packed[:, :2]
            qubits = packed[:, 2:] if pure else packed[:, 2:].reshape(-1, 2, 2)
        t = t0 + (k + 1) * dt if k < n_steps - 1 else t_end
        if (k + 1) % sample_every == 0 or k == n_steps - 1:
            observer(t, cbits * np.exp(-1j * (t - t0)) if rotating else cbits, qubits)


# -- single trajectories ------------------------------------------------------

@dataclass
class HybridTrajectory:
    """Sampled hybrid run; sample ``k`` is the pair ``(cbit[k], qubit[k])``."""

    times: np.ndarray
    cbit: np.ndarray
    qubit: np.ndarray
    spec: CouplingSpec
    unnormalized: bool = False

    def __len__(self):
        return len(self.times)

    def __getitem__(self, k) -> HybridState:
        return HybridState(
            CBitState.from_array(self.cbit[k], unnormalized=self.unnormalized),
            self.qubit[k],
            float(self.times[k]),
        )

    @property
    def is_pure(self) -> bool:
        return self.qubit.ndim == 2

    def bilinears(self) -> np.ndarray:
        return bilinears_array(self.cbit)

    def qubit_bloch(self) -> np.ndarray:
        return _bloch(self.qubit)

    def qubit_purity(self) -> np.ndarray:
        if self.is_pure:
            return np.sum(np.abs(self.qubit) ** 2, axis=1) ** 2
        return np.einsum("nij,nji->n", self.qubit, self.qubit).real

    def energy(self) -> np.ndarray:
        return np.array([
            mean_field_energy(self.cbit[k:k + 1], self.qubit[k:k + 1], self.spec, t)[0]
            for k, t in enumerate(self.times)
        ])

    def entropies(self) -> np.ndarray:
        """Entanglement entropy of the quantum encoding of every sample.

        The c-bit is read as the qubit ``z_L|0> + z_R|1>``; since each sample is
        a product, every entry is exactly 0.0.
        """
        if not self.is_pure:
            return np.zeros(len(self.times))
        return qc.qubit_pair_entropy(_encode_pairs(self.cbit, self.qubit))


def _encode_pairs(cbits, qubits):
    c = cbits / np.linalg.norm(cbits, axis=-1, keepdims=True)
    return np.einsum("...i,...j->...ij", c, qubits).reshape(*np.shape(qubits)[:-1], 4)


def evolve_hybrid(state: HybridState, spec: CouplingSpec, dt: float, t_end: float,
                  sample_every: int = 1) -> HybridTrajectory:
    times, cs, qs = [], [], []

    def keep(t, c, q):
        times.append(t)
        cs.append(c[0].copy())
        qs.append(q[0].copy())

    run_batch(state.cbit.as_array()[None], state.qubit[None], spec, dt, t_end,
              keep, t0=state.time, sample_every=sample_every)
    return HybridTrajectory(np.array(times), np.array(cs), np.array(qs), spec,
                            unnormalized=state.cbit.unnormalized)


# -- swap attempt ---------------------------------------------------------------

def swap_targets(cbit: CBitState, qubit) -> tuple[np.ndarray, CBitState]:
    """What a perfect swap would produce.

    Qubit target: the pure state whose Bloch vector is the c-bit's normalized
    bilinear triple.  C-bit target: the unit-norm c-bit whose bilinears equal
    the qubit's Bloch vector (unique up to global phase).
    """
    qubit_target = qc.qubit_from_bloch(bilinears(cbit))
    cbit_target = from_bloch(qc.bloch_vector(qubit))
    return qubit_target, cbit_target


@dataclass
class SwapReport:
    qubit_fidelity_final: float
    qubit_fidelity_best: float
    best_time: float
    cbit_distance_final: float
    cbit_distance_best: float
    max_entropy: float
    qubit_target: np.ndarray
    cbit_target: CBitState
    trajectory: HybridTrajectory | None = field(default=None, repr=False)


def attempt_swap(cbit0: CBitState, qubit0, spec: CouplingSpec, dt: float, t_end: float,
                 sample_every: int = 1) -> SwapReport:
    """Drive the pair with the hybrid coupling and score it against a true swap."""
    qubit0 = qc.as_pure_state(qubit0)
    traj = evolve_hybrid(HybridState(cbit0, qubit0), spec, dt, t_end, sample_every)
    q_target, c_target = swap_targets(cbit0, qubit0)
    fids = np.abs(traj.qubit @ q_target.conj()) ** 2
    dists = np.linalg.norm(traj.bilinears() - np.array(bilinears(c_target)), axis=1)
    best = int(np.argmax(fids))
    return SwapReport(
        qubit_fidelity_final=float(fids[-1]),
        qubit_fidelity_best=float(fids[best]),
        best_time=float(traj.times[best]),
        cbit_distance_final=float(dists[-1]),
        cbit_distance_best=float(dists.min()),
        max_entropy=float(traj.entropies().max()),
        qubit_target=q_target,
        cbit_target=c_target,
        trajectory=traj,
    )


@dataclass
class SwapBatch:
    fidelity_final: np.ndarray
    fidelity_best: np.ndarray
    cbit_distance_final: np.ndarray
    max_entropy: np.ndarray


def attempt_swap_batch(cbits, qubits, spec: CouplingSpec, dt: float, t_end: float) -> SwapBatch:
    """Vectorised :func:`attempt_swap` over many trials, sampling every step.

    Only running reductions are kept, so memory does not grow with the horizon.
    """
    cbits = np.asarray(cbits, dtype=complex)
    qubits = np.asarray(qubits, dtype=complex)
    norms = np.linalg.norm(cbits, axis=1, keepdims=True)
    q_target = np.array([qc.qubit_from_bloch(b) for b in bilinears_array(cbits)])
    c_target_triple = qc.bloch_vector_array(qubits)
    n = len(cbits)
    best = np.zeros(n)
    max_s = np.zeros(n)
    last = {}

    def observe(t, c, q):
        fid = np.abs(np.sum(q_target.conj() * q, axis=1)) ** 2
        np.maximum(best, fid, out=best)
        np.maximum(max_s, qc.qubit_pair_entropy(_encode_pairs(c, q)), out=max_s)
        last["fid"], last["c"] = fid, c

    run_batch(cbits, qubits, spec, dt, t_end, observe)
    dist = np.linalg.norm(bilinears_array(last["c"] / norms) - c_target_triple, axis=1)
    return SwapBatch(np.minimum(last["fid"], 1.0), np.minimum(best, 1.0), dist, max_s)


# -- quantum contrast and certificate ------------------------------------------

def xx_yy_hamiltonian(g: float) -> np.ndarray:
    return g * (qc.tensor(qc.X, qc.X) + qc.tensor(qc.Y, qc.Y))


def quantum_contrast_entropy(cbits, qubits, g: float, times, chunk: int = 512) -> np.ndarray:
    """Entanglement entropy of ``exp(-i g (XX + YY) t) |c> x |q>`` over ``times``.

    The c-bit enters as the qubit ``z_L|0> + z_R|1>`` (normalized).  Returns
    shape ``(len(times), n_trials)``.
    """
    psi0 = _encode_pairs(np.atleast_2d(cbits), np.atleast_2d(qubits))
    h = xx_yy_hamiltonian(g)
    times = np.asarray(times, dtype=float)
    out = np.empty((len(times), len(psi0)))
    for start in range(0, len(times), chunk):
        u = hermitian_propagator(h, times[start:start + chunk])
        psi = np.einsum("tij,nj->tni", u, psi0)
        out[start:start + chunk] = qc.qubit_pair_entropy(psi)
    return out


@dataclass
class NoEntanglementCertificate:
    product_structure: bool
    hybrid_max_entropy: float
    quantum_max_entropy: float
    contrast_g: float
    n_samples: int

    @property
    def holds(self) -> bool:
        return self.product_structure and self.hybrid_max_entropy == 0.0


def no_entanglement_certificate(trajectory: HybridTrajectory, contrast_g: float | None = None,
                                contrast_times=None) -> NoEntanglementCertificate:
    """Certify the hybrid run never entangles, next to a fully quantum run that does.

    The contrast evolves the quantum encoding of the initial pair under
    ``g (X x X + Y x Y)`` over ``contrast_times`` (default: the trajectory's
    own sample times) with ``g`` defaulting to the run's coupling strength.
    """
    n = len(trajectory.times)
    product = (
        trajectory.cbit.shape == (n, 2)
        and trajectory.qubit.shape in ((n, 2), (n, 2, 2))
    )
    hybrid_s = float(trajectory.entropies().max(initial=0.0))
    g = trajectory.spec.g if contrast_g is None else contrast_g
    if trajectory.is_pure:
        times = trajectory.times - trajectory.times[0] if contrast_times is None else contrast_times
        q_s = float(quantum_contrast_entropy(trajectory.cbit[0], trajectory.qubit[0], g, times).max())
    else:
        q_s = float("nan")
    return NoEntanglementCertificate(product, hybrid_s, q_s, g, n)


@dataclass
class BatchCertificate:
    """Per-trial maxima of hybrid and quantum-contrast entanglement entropy."""

    hybrid_max_entropy: np.ndarray
    quantum_max_entropy: np.ndarray
    product_structure: bool

    def entangled_fraction(self, floor: float = 1e-3) -> float:
        return float(np.mean(self.quantum_max_entropy > floor))


def certify_batch(cbits, qubits, spec: CouplingSpec, dt: float, t_end: float) -> BatchCertificate:
    """:func:`no_entanglement_certificate` for many trials without storing trajectories.

    Every step is sampled.  The contrast uses the same time grid and ``spec.g``.
    """
    cbits = np.asarray(cbits, dtype=complex)
    qubits = np.asarray(qubits, dtype=complex)
    n = len(cbits)
    hybrid_s = np.zeros(n)
    shapes_ok = [True]
    times = []

    def observe(t, c, q):
        shapes_ok[0] &= c.shape == (n, 2) and q.shape == (n, 2)
        np.maximum(hybrid_s, qc.qubit_pair_entropy(_encode_pairs(c, q)), out=hybrid_s)
        times.append(t)

    run_batch(cbits, qubits, spec, dt, t_end, observe)
    contrast = quantum_contrast_entropy(cbits, qubits, spec.g, np.array(times) - times[0])
    return BatchCertificate(hybrid_s, contrast.max(axis=0), shapes_ok[0])


# -- semiclassical Jaynes-Cummings ---------------------------------------------

def semiclassical_jaynes_cummings(g: float, times, omega: float = 1.0, nu: float = 1.0,
                                  alpha0: complex = 0.0, qubit0=None, max_dt: float = 1e-3):
    """Qubit coupled to one classical complex mode amplitude ``alpha``.

    Mean-field equations from ``H = nu |alpha|^2 + (omega/2) <Z>
    + g (alpha <sigma+> + alpha* <sigma->)``, integrated with implicit midpoint.
    ``times`` must be an increasing uniform grid starting at 0.  Returns
    ``(p_excited, entropy, alpha)`` arrays over ``times``; the entropy column is
    0 because the pair is a product at every instant.
    """
    times = np.asarray(times, dtype=float)
    psi = qc.ket(0) if qubit0 is None else qc.as_pure_state(qubit0)
    state = np.array([[complex(alpha0), psi[0], psi[1]]])
    sp, sm = qc.SIGMA_PLUS, qc.SIGMA_MINUS

    def f(s):
        a, q = s[:, 0], s[:, 1:]
        sm_exp = np.conj(q[:, 1]) * q[:, 0]
        da = -1j * (nu * a + g * sm_exp)
        h = 0.5 * omega * qc.Z + g * (a[:, None, None] * sp + np.conj(a)[:, None, None] * sm)
        dq = -1j * np.einsum("nij,nj->ni", h, q)
        return np.concatenate([da[:, None], dq], axis=1)

    out = np.empty((len(times), 3), dtype=complex)
    out[0] = state[0]
    for k in range(1, len(times)):
        span = times[k] - times[k - 1]
        sub = max(1, math.ceil(span / max_dt - 1e-9))
        cfg = StepperConfig(span / sub)
        for _ in range(sub):
            state = implicit_midpoint_step(FlowProblem(state, f), cfg)
        out[k] = state[0]
    p_exc = np.abs(out[:, 1]) ** 2
    # (alpha, qubit) is a product at every sample; there is no joint state to trace
    return p_exc, np.zeros(len(times)), out[:, 0]
