"""Minimal dense statevector simulator.

Conventions used by every module in this package:

- States are 1-D ``numpy.complex128`` arrays of unit norm; unitaries are
  square ``complex128`` arrays with ``U.conj().T @ U == I``.
- Qubit 0 is the most significant basis index (big-endian): for two qubits,
  basis index 2 is ``|10>``.
- Randomness is never ambient.  Every sampling operation takes a
  ``numpy.random.Generator``; identical seeds give identical transcripts.

Values are treated as immutable: operations return fresh arrays and never
write into their inputs.
"""

from __future__ import annotations

import numpy as np

NORM_TOL = 1e-10
UNITARY_TOL = 1e-10

# Common single-qubit gates.
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)


def make_rng(seed=0) -> np.random.Generator:
    """Deterministic random source; the same seed replays the same draws.

    Accepts anything ``numpy.random.default_rng`` does (ints, tuples of
    ints, None for entropy).
    """
    return np.random.default_rng(seed)


def as_state(amplitudes, *, normalize: bool = False) -> np.ndarray:
    """Validate a complex vector as a quantum state.

    Raises ValueError on non-finite entries or norm drift beyond NORM_TOL
    unless ``normalize=True``, in which case the vector is rescaled.
    """
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if psi.size == 0:
        raise ValueError("state vector must be non-empty")
    if not np.all(np.isfinite(psi)):
        raise ValueError("state vector contains non-finite amplitudes")
    norm2 = float(np.sum(np.abs(psi) ** 2))
    if normalize:
        if norm2 <= 0.0:
            raise ValueError("cannot normalize a zero vector")
        return psi / np.sqrt(norm2)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise ValueError(f"state vector norm^2 = {norm2!r}, expected 1 within {NORM_TOL}")
    return psi.copy()


def renormalize(psi: np.ndarray) -> np.ndarray:
    """Explicitly rescale to unit norm (the only sanctioned norm correction)."""
    return as_state(psi, normalize=True)


def as_unitary(entries) -> np.ndarray:
    """Validate a square matrix as unitary within UNITARY_TOL."""
    u = np.asarray(entries, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary must be square, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise ValueError("matrix contains non-finite entries")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary: max |U†U - I| = {defect:.3e}")
    return u.copy()


def basis_state(dim: int, index: int) -> np.ndarray:
    """The computational basis vector |index> in a dim-dimensional space."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dim {dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def apply(u: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Evolve a state by a unitary: returns U @ psi."""
    u = np.asarray(u, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if u.shape[1] != psi.shape[0]:
        raise ValueError(f"dimension mismatch: unitary is {u.shape}, state has dim {psi.shape[0]}")
    return u @ psi


def inner(phi: np.ndarray, psi: np.ndarray) -> complex:
    """<phi|psi>, conjugating phi."""
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if phi.shape != psi.shape:
        raise ValueError(f"dimension mismatch: {phi.shape} vs {psi.shape}")
    return complex(np.vdot(phi, psi))


def outcome_probability(psi: np.ndarray, k: int) -> float:
    """|<k|psi>|^2 for a computational-basis outcome."""
    psi = np.asarray(psi, dtype=complex)
    if not 0 <= k < psi.shape[0]:
        raise ValueError(f"basis index {k} out of range for dim {psi.shape[0]}")
    return float(np.abs(psi[k]) ** 2)


def measure_subset(
    psi: np.ndarray, subset, rng: np.random.Generator
) -> tuple[str, float, np.ndarray]:
    """Projectively measure "is the state in the span of these basis indices".

    Returns ``(outcome, prob, collapsed)`` where outcome is ``"in"`` or
    ``"out"``, prob is the probability of the outcome that was actually
    sampled, and collapsed is the renormalized projection onto that branch.
    """
    psi = np.asarray(psi, dtype=complex)
    dim = psi.shape[0]
    indices = sorted(set(int(k) for k in subset))
    if not indices:
        raise ValueError("measurement subset must be non-empty")
    if indices[0] < 0 or indices[-1] >= dim:
        raise ValueError(f"measurement subset {indices} out of range for dim {dim}")
    if len(indices) == dim:
        raise ValueError("measurement subset must be a proper subset of the basis")

    mask = np.zeros(dim, dtype=bool)
    mask[indices] = True
    p_in = float(np.sum(np.abs(psi[mask]) ** 2))
    p_in = min(max(p_in, 0.0), 1.0)

    if rng.random() < p_in:
        outcome, prob, keep = "in", p_in, mask
    else:
        outcome, prob, keep = "out", 1.0 - p_in, ~mask
    if prob <= 0.0:
        raise RuntimeError("sampled a zero-probability measurement branch")

    collapsed = np.where(keep, psi, 0.0)
    return outcome, prob, collapsed / np.sqrt(prob)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two states or two operators."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise ValueError("tensor expects two vectors or two matrices")
    return np.kron(a, b)


def adjoint(u: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(u, dtype=complex).conj().T.copy()


def build_controlled_not(
    n: int, control: int, target: int, anti: bool = False
) -> np.ndarray:
    """CNOT on an n-qubit register as a dense 2^n unitary.

    Qubit 0 is the most significant index.  With ``anti=True`` the X fires
    when the control reads 0 instead of 1.
    """
    if control == target:
        raise ValueError("control and target qubits must differ")
    if not (0 <= control < n and 0 <= target < n):
        raise ValueError(f"qubit indices ({control}, {target}) out of range for n={n}")
    dim = 2**n
    fire_value = 0 if anti else 1
    u = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        control_bit = (col >> (n - 1 - control)) & 1
        row = col ^ (1 << (n - 1 - target)) if control_bit == fire_value else col
        u[row, col] = 1.0
    return u
