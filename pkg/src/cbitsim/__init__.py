"""Classical complex bits, a desk-scale qubit simulator, and hybrid couplings between them."""

from .complex_canonical import (
    BlochTriple,
    CBitState,
    RealCanonicalPair,
    bilinears,
    free_evolution,
    from_real_canonical,
    hadamard,
    mach_zehnder,
    oscillator_energy,
    phase_gate,
    to_real_canonical,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    NotHermitianError,
    NotUnitaryError,
    TruncationError,
)
from .hybrid import (
    CouplingSpec,
    HybridState,
    attempt_swap,
    coupling_coefficients,
    evolve_hybrid,
    no_entanglement_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BlochTriple", "CBitState", "RealCanonicalPair", "bilinears", "free_evolution",
    "from_real_canonical", "hadamard", "mach_zehnder", "oscillator_energy", "phase_gate",
    "to_real_canonical", "ConvergenceError", "DimensionError", "DomainError",
    "NotHermitianError", "NotUnitaryError", "TruncationError", "CouplingSpec", "HybridState",
    "attempt_swap", "coupling_coefficients", "evolve_hybrid", "no_entanglement_certificate",
]
