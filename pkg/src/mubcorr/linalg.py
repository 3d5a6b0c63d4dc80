"""Dense complex linear algebra used by every other module.

All entropies are in bits (base-2 logarithms).  Eigenvalues that are
negative by less than a rounding-noise window are clamped to zero;
anything more negative is treated as an invalid state rather than
silently repaired.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EIG_CLAMP_WINDOW",
    "EIG_HARD_FLOOR",
    "DensityMatrix",
    "InvalidStateError",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "binary_entropy",
    "eigvals_hermitian",
    "max_entangled_projector",
    "partial_trace",
    "swap_operator",
    "tensor_product",
    "von_neumann_entropy",
]

# Eigenvalues in [EIG_CLAMP_WINDOW, 0) are rounding noise and clamp to 0.
# Below EIG_HARD_FLOOR the matrix is not a state and we refuse to proceed.
EIG_CLAMP_WINDOW = -1e-10
EIG_HARD_FLOOR = -1e-8

_LN2 = float(np.log(2.0))

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class InvalidStateError(ValueError):
    """A matrix that was supposed to be a density matrix is not one."""


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor acting on the first subsystem."""
    return np.kron(np.asarray(a), np.asarray(b))


def swap_operator(dim: int) -> np.ndarray:
    """Operator exchanging the two factors of a dim x dim bipartite space."""
    if dim < 2:
        raise ValueError(f"swap operator needs dim >= 2, got {dim}")
    p = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            p[i * dim + j, j * dim + i] = 1.0
    return p


def max_entangled_projector(dim: int) -> np.ndarray:
    """Projector onto the canonical maximally entangled state of two qudits."""
    if dim < 2:
        raise ValueError(f"maximally entangled projector needs dim >= 2, got {dim}")
    psi = np.zeros(dim * dim, dtype=complex)
    for i in range(dim):
        psi[i * dim + i] = 1.0
    psi /= np.sqrt(dim)
    return np.outer(psi, psi.conj())


def eigvals_hermitian(a: np.ndarray, herm_tol: float = 1e-10) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Raises ValueError if the matrix deviates from Hermiticity by more than
    herm_tol in any entry.  The input is symmetrized before the solve so the
    result is a deterministic function of the input values.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    dev = np.max(np.abs(a - a.conj().T))
    if dev > herm_tol:
        raise ValueError(f"matrix is not Hermitian: max |A - A^dag| = {dev:.3e}")
    return np.linalg.eigvalsh((a + a.conj().T) / 2.0)


def _clamp_spectrum(w: np.ndarray, context: str) -> np.ndarray:
    """Zero out rounding-noise negatives; reject genuinely negative spectra."""
    lo = float(w.min()) if w.size else 0.0
    if lo < EIG_HARD_FLOOR:
        raise InvalidStateError(f"{context}: eigenvalue {lo:.3e} below {EIG_HARD_FLOOR:.0e}")
    return np.where((w >= EIG_CLAMP_WINDOW) & (w < 0.0), 0.0, w)


def von_neumann_entropy(rho: np.ndarray, trace_tol: float = 1e-10) -> float:
    """Von Neumann entropy in bits of a density matrix given as an array."""
    rho = np.asarray(rho, dtype=complex)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise InvalidStateError(f"trace {tr:.12g} is not 1 within {trace_tol:.0e}")
    w = _clamp_spectrum(eigvals_hermitian(rho), "von_neumann_entropy")
    w = w[w > 0.0]
    return float(-(w * np.log(w)).sum() / _LN2)


def binary_entropy(x: float, clamp: float = 1e-12) -> float:
    """Shannon entropy in bits of the distribution (x, 1 - x)."""
    x = float(x)
    if x < -clamp or x > 1.0 + clamp:
        raise ValueError(f"binary_entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-(x * np.log(x) + (1.0 - x) * np.log(1.0 - x)) / _LN2)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated bipartite density matrix on C^dim_a tensor C^dim_b.

    The matrix is checked once at construction: Hermitian to 1e-12,
    unit trace to 1e-12, and no eigenvalue below the hard floor.  The
    stored array is a read-only copy.
    """

    dim_a: int
    dim_b: int
    mat: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValueError(f"invalid dimensions ({self.dim_a}, {self.dim_b})")
        mat = np.array(self.mat, dtype=complex, copy=True)
        n = self.dim_a * self.dim_b
        if mat.shape != (n, n):
            raise ValueError(f"matrix shape {mat.shape} does not match dim_a*dim_b = {n}")
        dev = np.max(np.abs(mat - mat.conj().T))
        if dev > 1e-12:
            raise InvalidStateError(f"not Hermitian: max |rho - rho^dag| = {dev:.3e}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > 1e-12:
            raise InvalidStateError(f"trace {tr:.15g} is not 1 within 1e-12")
        w = eigvals_hermitian(mat)
        if float(w.min()) < EIG_HARD_FLOOR:
            raise InvalidStateError(f"eigenvalue {w.min():.3e} below {EIG_HARD_FLOOR:.0e}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def blocks(self) -> np.ndarray:
        """View of the matrix as a (dim_a, dim_b, dim_a, dim_b) tensor."""
        return self.mat.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)


def partial_trace(rho: DensityMatrix, traced_out: str) -> np.ndarray:
    """Reduced density matrix after tracing out subsystem "A" or "B"."""
    four = rho.blocks()
    if traced_out == "B":
        return np.einsum("irjr->ij", four)
    if traced_out == "A":
        return np.einsum("iris->rs", four)
    raise ValueError(f'traced_out must be "A" or "B", got {traced_out!r}')
