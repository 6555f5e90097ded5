"""Small dense linear-algebra helpers shared by the dynamics modules."""

import numpy as np

from .errors import NotHermitianError

HERMITIAN_TOL = 1e-10


def is_hermitian(a, atol=HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.allclose(a, a.conj().T, rtol=0.0, atol=atol)


def is_unitary(u, atol=1e-10) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0.0, atol=atol)


def hermitian_propagator(h, t):
    """``exp(-i h t)`` for Hermitian ``h`` by eigendecomposition.

    ``t`` may be a scalar or a 1-d array of times; in the latter case the
    result has shape ``(len(t), n, n)``.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise NotHermitianError("generator must be Hermitian")
    evals, evecs = np.linalg.eigh(h)
    t = np.asarray(t, dtype=float)
    phases = np.exp(-1j * np.multiply.outer(t, evals))
    return np.einsum("ij,...j,kj->...ik", evecs, phases, evecs.conj())
