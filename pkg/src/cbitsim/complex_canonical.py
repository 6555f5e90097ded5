"""The classical complex bit.

Two harmonic-oscillator modes, L and R, each described by a complex canonical
coordinate ``z = (q + i p) / sqrt(2)``.  With unit mass and frequency the
Hamiltonian of the pair is ``H = z_L z_L* + z_R z_R*`` and Hamilton's equations
take the form ``i dz/dt = dH/dz*``, so free motion is a common phase rotation
``z(t) = exp(-i t) z(0)``.

Only ``z`` is stored; ``z*`` is always obtained by conjugation.

The three real bilinears

    Z = |z_L|^2 - |z_R|^2
    X = z_L z_R* + z_R z_L*        =  2 Re(z_L z_R*)
    Y = i (z_L z_R* - z_R z_L*)    = -2 Im(z_L z_R*)

play the role of Pauli components.  They coincide with the Bloch vector of
the qubit ``z_L|0> + z_R|1>`` (L is basis index 0).

Phase-gate sign convention: multiplying ``z_L`` by ``exp(i theta)`` rotates the
(X, Y) pair by ``-theta``; multiplying ``z_R`` rotates it by ``+theta``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np

from .errors import DomainError

Mode = Literal["L", "R"]

SQRT2 = math.sqrt(2.0)
NORM_TOL = 1e-12


class RealCanonicalPair(NamedTuple):
    q: float
    p: float


class BlochTriple(NamedTuple):
    x: float
    y: float
    z: float

    def norm_squared(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def _check_finite_complex(value, name):
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class CBitState:
    """Pair of complex mode amplitudes ``(z_L, z_R)``.

    By default the single-photon convention is enforced: ``|z_L|^2 + |z_R|^2 = 1``
    to within 1e-12.  Pass ``unnormalized=True`` to admit any finite, nonzero norm.
    """

    z_L: complex
    z_R: complex
    unnormalized: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "z_L", _check_finite_complex(self.z_L, "z_L"))
        object.__setattr__(self, "z_R", _check_finite_complex(self.z_R, "z_R"))
        n = self.norm()
        if not n > 0.0:
            raise DomainError("c-bit norm must be strictly positive")
        if not math.isfinite(n):
            raise DomainError("c-bit norm overflows")
        if not self.unnormalized and abs(n - 1.0) > NORM_TOL:
            raise DomainError(
                f"c-bit norm {n!r} differs from 1; pass unnormalized=True to allow it"
            )

    @classmethod
    def from_array(cls, z, unnormalized=False) -> "CBitState":
        z = np.asarray(z, dtype=complex)
        if z.shape != (2,):
            raise DomainError(f"expected two amplitudes, got shape {z.shape}")
        return cls(complex(z[0]), complex(z[1]), unnormalized=unnormalized)

    @classmethod
    def normalized(cls, z_L, z_R) -> "CBitState":
        """Rescale ``(z_L, z_R)`` onto the unit-norm convention."""
        z_L, z_R = complex(z_L), complex(z_R)
        n = math.sqrt(abs(z_L) ** 2 + abs(z_R) ** 2)
        if not (n > 0.0 and math.isfinite(n)):
            raise DomainError("cannot normalize a zero or non-finite c-bit")
        return cls(z_L / n, z_R / n)

    def norm(self) -> float:
        return abs(self.z_L) ** 2 + abs(self.z_R) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.z_L, self.z_R], dtype=complex)

    def conjugates(self) -> tuple[complex, complex]:
        return self.z_L.conjugate(), self.z_R.conjugate()

    def _with(self, z_L, z_R) -> "CBitState":
        return CBitState(z_L, z_R, unnormalized=self.unnormalized)


# -- real <-> complex coordinates -------------------------------------------

def from_real_canonical(q: float, p: float) -> complex:
    """``z = (q + i p) / sqrt(2)``."""
    q, p = float(q), float(p)
    if not (math.isfinite(q) and math.isfinite(p)):
        raise DomainError(f"q and p must be finite, got ({q!r}, {p!r})")
    return complex(q / SQRT2, p / SQRT2)


def to_real_canonical(z: complex) -> RealCanonicalPair:
    z = _check_finite_complex(z, "z")
    return RealCanonicalPair(SQRT2 * z.real, SQRT2 * z.imag)


def real_oscillator_flow(q: float, p: float, t: float) -> RealCanonicalPair:
    """Exact solution of ``dq/dt = p, dp/dt = -q``."""
    c, s = math.cos(t), math.sin(t)
    return RealCanonicalPair(q * c + p * s, -q * s + p * c)


# -- dynamics and gates -------------------------------------------------------

def oscillator_energy(state: CBitState) -> float:
    """``H = z_L z_L* + z_R z_R*`` (equals ``sum (q^2 + p^2) / 2`` over both modes)."""
    return state.norm()


def free_evolution(state: CBitState, t: float) -> CBitState:
    t = float(t)
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    phase = cmath.exp(-1j * t)
    return state._with(phase * state.z_L, phase * state.z_R)


def hadamard(state: CBitState) -> CBitState:
    """Beamsplitter as a Hadamard: ``z_L -> (z_L + z_R)/sqrt2``, ``z_R -> (z_L - z_R)/sqrt2``."""
    return state._with((state.z_L + state.z_R) / SQRT2, (state.z_L - state.z_R) / SQRT2)


def phase_gate(state: CBitState, theta: float, mode: Mode = "L") -> CBitState:
    """Multiply one amplitude by ``exp(i theta)``.

    Rotates the (X, Y) bilinears by ``-theta`` for mode L, ``+theta`` for mode R;
    Z is untouched.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError("theta must be finite")
    phase = cmath.exp(1j * theta)
    if mode == "L":
        return state._with(phase * state.z_L, state.z_R)
    if mode == "R":
        return state._with(state.z_L, phase * state.z_R)
    raise DomainError(f"mode must be 'L' or 'R', got {mode!r}")


def mach_zehnder(state: CBitState, phi: float, phase_arm: Mode = "L") -> CBitState:
    """Hadamard, relative phase ``phi`` on one arm, Hadamard."""
    return hadamard(phase_gate(hadamard(state), phi, phase_arm))


def bilinears(state: CBitState) -> BlochTriple:
    """All three bilinears of the c-bit at once, as exact reals."""
    w = state.z_L * state.z_R.conjugate()
    return BlochTriple(
        2.0 * w.real,
        -2.0 * w.imag,
        abs(state.z_L) ** 2 - abs(state.z_R) ** 2,
    )


def bilinears_array(z) -> np.ndarray:
    """Vectorised bilinears for amplitude arrays of shape ``(..., 2)``; returns ``(..., 3)``."""
    z = np.asarray(z, dtype=complex)
    w = z[..., 0] * np.conj(z[..., 1])
    zz = np.abs(z[..., 0]) ** 2 - np.abs(z[..., 1]) ** 2
    return np.stack([2.0 * w.real, -2.0 * w.imag, zz], axis=-1)


def from_bloch(triple, norm: float = 1.0) -> CBitState:
    """A c-bit whose bilinears equal ``triple`` (unique up to a global phase).

    ``triple`` must have length ``norm``; the returned ``z_L`` is real and non-negative.
    """
    x, y, z = (float(c) for c in triple)
    r = math.sqrt(x * x + y * y + z * z)
    if not r > 0.0:
        raise DomainError("Bloch triple must be nonzero")
    # |z_L|^2 = (r + z)/2, |z_R|^2 = (r - z)/2, z_L z_R* = (x - i y)/2
    a = math.sqrt(max(r + z, 0.0) / 2.0)
    if a > 1e-300:
        b = complex(x, y) / (2.0 * a)
    else:
        b = complex(math.sqrt(max(r - z, 0.0) / 2.0), 0.0)
    scale = math.sqrt(norm / r)
    return CBitState(a * scale, b * scale, unnormalized=abs(norm - 1.0) > NORM_TOL)


def random_cbit(rng: np.random.Generator) -> CBitState:
    """Draw a c-bit uniformly on the unit sphere of C^2.

    Real and imaginary parts of each amplitude are independent standard normals
    (drawn as one ``(2, 2)`` block, last axis = (re, im)), then normalized.
    """
    draw = rng.standard_normal((2, 2))
    return CBitState.normalized(complex(*draw[0]), complex(*draw[1]))
