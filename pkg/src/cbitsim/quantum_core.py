"""Finite-dimensional quantum mechanics on dense numpy arrays.

States are plain arrays: a pure state is a normalized complex vector, a
density matrix a Hermitian, unit-trace, positive semidefinite matrix, and an
operator a square complex matrix.  Validation helpers enforce the invariants
at the boundaries of each operation.

Conventions
-----------
* Qubit basis: index 0 is ``|0>`` (the L arm, the +1 eigenvector of Z), index 1
  is ``|1>`` (the R arm).
* Composite systems are ordered with the first factor as the major index:
  ``tensor(a, b)[i * dim_b + j] = a[i] * b[j]``.  This holds for
  (qubit, qubit) and for (qubit, Fock mode).
* In the Jaynes-Cummings model the excited level is qubit index 0, so
  ``(omega/2) Z`` puts it on top and ``sigma_plus = |0><1|``.
* Entropies are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np

from ._linalg import hermitian_propagator, is_hermitian, is_unitary
from .errors import DimensionError, DomainError, NotHermitianError, NotUnitaryError

Axis = Literal["X", "Y", "Z"]

DIM_CAP = 4096
STATE_NORM_TOL = 1e-10
IMAG_TOL = 1e-12
ZERO_EIGENVALUE = 1e-12
NEGATIVE_CLIP = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.T.copy()

_PAULI = {"X": X, "Y": Y, "Z": Z}


def pauli(axis: Axis) -> np.ndarray:
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise DomainError(f"axis must be one of X, Y, Z; got {axis!r}") from None


def ket(index: int, dim: int = 2) -> np.ndarray:
    if not 0 <= index < dim:
        raise DimensionError(f"basis index {index} out of range for dim {dim}")
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def as_pure_state(psi, tol=STATE_NORM_TOL) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size == 0:
        raise DimensionError(f"pure state must be a non-empty vector, got shape {psi.shape}")
    if not np.all(np.isfinite(psi)):
        raise DomainError("state has non-finite amplitudes")
    n = np.linalg.norm(psi)
    if abs(n - 1.0) > tol:
        raise DomainError(f"state is not normalized (norm {n!r})")
    return psi


def as_density_matrix(rho, tol=1e-12) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"density matrix must be square, got shape {rho.shape}")
    if not is_hermitian(rho, atol=tol):
        raise NotHermitianError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise DomainError(f"density matrix trace {np.trace(rho).real!r} != 1")
    if np.linalg.eigvalsh(rho).min() < -NEGATIVE_CLIP:
        raise DomainError("density matrix has a negative eigenvalue")
    return rho


def projector(psi) -> np.ndarray:
    psi = as_pure_state(psi)
    return np.outer(psi, psi.conj())


def apply(gate, state) -> np.ndarray:
    """``gate @ state`` for a unitary gate, renormalized."""
    gate = np.asarray(gate, dtype=complex)
    state = as_pure_state(state)
    if gate.shape != (state.size, state.size):
        raise DimensionError(f"gate shape {gate.shape} does not act on dim {state.size}")
    if not is_unitary(gate):
        raise NotUnitaryError("gate is not unitary")
    out = gate @ state
    return out / np.linalg.norm(out)


def phase_shift(phi: float, arm: Literal["L", "R"] = "L") -> np.ndarray:
    if arm == "L":
        return np.diag([np.exp(1j * phi), 1.0]).astype(complex)
    if arm == "R":
        return np.diag([1.0, np.exp(1j * phi)]).astype(complex)
    raise DomainError(f"arm must be 'L' or 'R', got {arm!r}")


def mz_quantum(phi: float, phase_arm: Literal["L", "R"] = "L") -> np.ndarray:
    """Single photon entering the L port of a Mach-Zehnder interferometer.

    Beamsplitters are Hadamards; ``P_L = cos^2(phi/2)``, ``P_R = sin^2(phi/2)``.
    """
    if not math.isfinite(phi):
        raise DomainError("phi must be finite")
    psi = apply(HADAMARD, ket(0))
    psi = apply(phase_shift(phi, phase_arm), psi)
    return apply(HADAMARD, psi)


def _check_observable(op, dim):
    op = np.asarray(op, dtype=complex)
    if op.shape != (dim, dim):
        raise DimensionError(f"operator shape {op.shape} does not match dim {dim}")
    if not is_hermitian(op):
        raise NotHermitianError("observable must be Hermitian")
    return op


def expectation(op, state) -> float:
    """``<psi|A|psi>`` for a vector, ``Tr(rho A)`` for a matrix."""
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        psi = as_pure_state(state)
        value = np.vdot(psi, _check_observable(op, psi.size) @ psi)
    else:
        rho = as_density_matrix(state)
        value = np.trace(rho @ _check_observable(op, rho.shape[0]))
    if abs(value.imag) > IMAG_TOL:
        raise DomainError(f"expectation has imaginary residue {value.imag!r}")
    return float(value.real)


def variance(op, state) -> float:
    op = np.asarray(op, dtype=complex)
    mean = expectation(op, state)
    return expectation(op @ op, state) - mean * mean


def bloch_vector(state) -> np.ndarray:
    return np.array([expectation(P, state) for P in (X, Y, Z)])


def bloch_vector_array(psi) -> np.ndarray:
    """Vectorised qubit Bloch vectors for states of shape ``(..., 2)``."""
    psi = np.asarray(psi, dtype=complex)
    w = np.conj(psi[..., 0]) * psi[..., 1]
    zz = np.abs(psi[..., 0]) ** 2 - np.abs(psi[..., 1]) ** 2
    return np.stack([2.0 * w.real, 2.0 * w.imag, zz], axis=-1)


def qubit_from_bloch(r) -> np.ndarray:
    """Pure qubit state with Bloch vector along ``r`` (normalized; global phase fixed)."""
    x, y, z = (float(c) for c in r)
    n = math.sqrt(x * x + y * y + z * z)
    if not n > 0.0:
        raise DomainError("Bloch vector must be nonzero")
    x, y, z = x / n, y / n, z / n
    theta = math.acos(max(-1.0, min(1.0, z)))
    phi = math.atan2(y, x)
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)], dtype=complex)


def tensor(a, b) -> np.ndarray:
    """Kronecker product of two states (vectors) or two operators (matrices)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise DimensionError("tensor needs two vectors or two matrices")
    dim = a.shape[0] * b.shape[0]
    if dim > DIM_CAP:
        raise DimensionError(f"composite dimension {dim} exceeds cap {DIM_CAP}")
    return np.kron(a, b)


def partial_trace(rho, dims: tuple[int, int], keep: Literal["A", "B"]) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    d_a, d_b = dims
    if rho.shape != (d_a * d_b, d_a * d_b):
        raise DimensionError(f"shape {rho.shape} does not factor as {d_a} x {d_b}")
    r = rho.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")


def _entropy_from_probabilities(lam) -> float:
    lam = np.asarray(lam, dtype=float)
    if lam.min(initial=0.0) < -NEGATIVE_CLIP:
        raise DomainError(f"negative eigenvalue {lam.min()!r} in reduced state")
    lam = lam[lam >= ZERO_EIGENVALUE]
    if lam.size <= 1:
        return 0.0
    lam = lam / lam.sum()
    return float(-np.sum(lam * np.log(lam)))


def von_neumann_entropy(rho) -> float:
    rho = as_density_matrix(rho, tol=1e-10)
    return _entropy_from_probabilities(np.linalg.eigvalsh(rho))


def schmidt_coefficients(psi, dims: tuple[int, int]) -> np.ndarray:
    """Squared Schmidt coefficients (reduced-state eigenvalues), descending."""
    psi = as_pure_state(psi)
    d_a, d_b = dims
    if psi.size != d_a * d_b:
        raise DimensionError(f"state of dim {psi.size} does not factor as {d_a} x {d_b}")
    s = np.linalg.svd(psi.reshape(d_a, d_b), compute_uv=False)
    return s * s


def entanglement_entropy(psi, dims: tuple[int, int]) -> float:
    """Von Neumann entropy of either reduced state of a bipartite pure state.

    Schmidt weights below 1e-12 count as exact zeros, so product states give
    exactly 0.0.
    """
    return _entropy_from_probabilities(schmidt_coefficients(psi, dims))


def qubit_pair_entropy(psi) -> np.ndarray:
    """Entanglement entropy of normalized two-qubit states, shape ``(..., 4)``.

    Closed form through the Schmidt weights ``(1 +- sqrt(1 - 4|det M|^2)) / 2``
    where ``M`` is the 2x2 coefficient matrix; same zero threshold as
    :func:`entanglement_entropy`.
    """
    m = np.asarray(psi, dtype=complex).reshape(*np.shape(psi)[:-1], 2, 2)
    det2 = np.abs(m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]) ** 2
    root = np.sqrt(np.clip(1.0 - 4.0 * det2, 0.0, None))
    small = 2.0 * det2 / (1.0 + root)
    large = 1.0 - small
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -(small * np.log(small) + large * np.log(large))
    return np.where(small < ZERO_EIGENVALUE, 0.0, h)


def purity(rho) -> float:
    rho = as_density_matrix(rho, tol=1e-10)
    return float(np.real(np.trace(rho @ rho)))


def swap_gate() -> np.ndarray:
    s = np.zeros((4, 4), dtype=complex)
    s[0, 0] = s[3, 3] = s[1, 2] = s[2, 1] = 1.0
    return s


def fidelity(a, b) -> float:
    """``|<a|b>|^2`` for pure states."""
    a = as_pure_state(a)
    b = as_pure_state(b)
    if a.size != b.size:
        raise DimensionError(f"dims differ: {a.size} vs {b.size}")
    return float(min(1.0, abs(np.vdot(a, b)) ** 2))


@dataclass(frozen=True)
class FockMode:
    """Single bosonic mode truncated to the lowest ``n_levels`` number states.

    ``[a, a_dag]`` is the identity except in the last diagonal entry, which is
    ``-(n_levels - 1)``.
    """

    n_levels: int

    def __post_init__(self):
        if int(self.n_levels) != self.n_levels or self.n_levels < 1:
            raise DimensionError("Fock truncation must be a positive integer")

    @cached_property
    def annihilation(self) -> np.ndarray:
        return np.diag(np.sqrt(np.arange(1, self.n_levels)), k=1).astype(complex)

    @property
    def creation(self) -> np.ndarray:
        return self.annihilation.conj().T

    @property
    def number(self) -> np.ndarray:
        return self.creation @ self.annihilation

    def vacuum(self) -> np.ndarray:
        return ket(0, self.n_levels)

    def number_state(self, n: int) -> np.ndarray:
        return ket(n, self.n_levels)


def jaynes_cummings_hamiltonian(omega: float, nu: float, g: float, n_levels: int) -> np.ndarray:
    """``(omega/2) Z x I + nu I x a_dag a + g (sigma+ x a + sigma- x a_dag)`` on qubit x mode."""
    if n_levels < 2:
        raise DimensionError("Jaynes-Cummings needs at least 2 Fock levels")
    for name, v in (("omega", omega), ("nu", nu), ("g", g)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite")
    mode = FockMode(n_levels)
    a, ad = mode.annihilation, mode.creation
    eye = np.eye(n_levels)
    return (
        0.5 * omega * np.kron(Z, eye)
        + nu * np.kron(I2, ad @ a)
        + g * (np.kron(SIGMA_PLUS, a) + np.kron(SIGMA_MINUS, ad))
    )


def evolve_unitary(h, state, t: float) -> np.ndarray:
    """``exp(-i H t) |psi>`` via Hermitian eigendecomposition."""
    state = as_pure_state(state)
    h = np.asarray(h, dtype=complex)
    if h.shape != (state.size, state.size):
        raise DimensionError(f"generator shape {h.shape} does not act on dim {state.size}")
    return hermitian_propagator(h, t) @ state


def random_pure_state(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-random pure state: i.i.d. standard-normal (re, im) per amplitude, normalized."""
    draw = rng.standard_normal((dim, 2))
    psi = draw[:, 0] + 1j * draw[:, 1]
    return psi / np.linalg.norm(psi)


def random_pure_states(rng: np.random.Generator, n: int, dim: int = 2) -> np.ndarray:
    """``n`` states at once; consumes the stream exactly like ``n`` calls of :func:`random_pure_state`."""
    draw = rng.standard_normal((n, dim, 2))
    psi = draw[..., 0] + 1j * draw[..., 1]
    return psi / np.linalg.norm(psi, axis=1, keepdims=True)
