"""Construction and validation of mutually unbiased bases.

Two orthonormal bases are mutually unbiased when every cross overlap has
modulus 1/sqrt(dim).  For prime dimensions a full set of dim + 1 such
bases exists and is built here from quadratic phases; dimension 2 uses
the three Pauli eigenbases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "MU_TOL",
    "UNITARY_TOL",
    "Basis",
    "MubSet",
    "computational_basis",
    "fourier_basis",
    "is_mutually_unbiased",
    "mub_set_from_json",
    "mub_set_to_json",
    "rotate_mub_set",
    "wootters_fields_mubs",
]

UNITARY_TOL = 1e-10
MU_TOL = 1e-10

_SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)


def _unitarity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True)
class Basis:
    """Orthonormal basis stored as the columns of a unitary matrix."""

    dim: int
    columns: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        cols = np.array(self.columns, dtype=complex, copy=True)
        if cols.shape != (self.dim, self.dim):
            raise ValueError(f"columns shape {cols.shape} does not match dim {self.dim}")
        defect = _unitarity_defect(cols)
        if defect > UNITARY_TOL:
            raise ValueError(f"basis is not unitary: defect {defect:.3e} > {UNITARY_TOL:.0e}")
        cols.setflags(write=False)
        object.__setattr__(self, "columns", cols)

    def vector(self, k: int) -> np.ndarray:
        return self.columns[:, k]


def is_mutually_unbiased(b1: Basis, b2: Basis, tol: float = MU_TOL) -> bool:
    """Whether all cross overlaps have modulus 1/sqrt(dim) within tol."""
    if b1.dim != b2.dim:
        raise ValueError(f"dimension mismatch: {b1.dim} vs {b2.dim}")
    overlaps = np.abs(b1.columns.conj().T @ b2.columns)
    return bool(np.max(np.abs(overlaps - 1.0 / np.sqrt(b1.dim))) <= tol)


@dataclass(frozen=True)
class MubSet:
    """A tuple of bases that are pairwise mutually unbiased."""

    dim: int
    bases: tuple[Basis, ...]

    def __post_init__(self) -> None:
        bases = tuple(self.bases)
        if len(bases) < 2:
            raise ValueError("a MUB set needs at least two bases")
        for b in bases:
            if b.dim != self.dim:
                raise ValueError(f"basis of dim {b.dim} in a set of dim {self.dim}")
        for i in range(len(bases)):
            for j in range(i + 1, len(bases)):
                if not is_mutually_unbiased(bases[i], bases[j]):
                    raise ValueError(f"bases {i} and {j} are not mutually unbiased")
        object.__setattr__(self, "bases", bases)

    def __len__(self) -> int:
        return len(self.bases)


def computational_basis(dim: int) -> Basis:
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    return Basis(dim, np.eye(dim, dtype=complex))


def fourier_basis(dim: int) -> Basis:
    """Discrete Fourier basis, columns F[j, k] = omega^(j k) / sqrt(dim)."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    cols = np.exp(2.0j * np.pi * j * k / dim) / np.sqrt(dim)
    return Basis(dim, cols)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, int(n**0.5) + 1):
        if n % p == 0:
            return False
    return True


def wootters_fields_mubs(dim: int) -> MubSet:
    """Full set of dim + 1 mutually unbiased bases for prime dim in [2, 13].

    dim 2 returns the Z, X, Y eigenbases in that order.  Odd prime dim
    returns the computational basis followed by the dim quadratic-phase
    bases with columns B_r[j, k] = omega^(r j^2 + k j) / sqrt(dim).
    """
    if dim not in _SUPPORTED_PRIMES or not _is_prime(dim):
        raise ValueError(f"full MUB sets are built for prime dim in {_SUPPORTED_PRIMES}, got {dim}")
    if dim == 2:
        z = computational_basis(2)
        x = fourier_basis(2)
        y = Basis(2, np.array([[1.0, 1.0], [1.0j, -1.0j]], dtype=complex) / np.sqrt(2.0))
        return MubSet(2, (z, x, y))
    bases = [computational_basis(dim)]
    j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    for r in range(dim):
        phase = (r * j * j + k * j) % dim
        cols = np.exp(2.0j * np.pi * phase / dim) / np.sqrt(dim)
        bases.append(Basis(dim, cols))
    return MubSet(dim, tuple(bases))


def rotate_mub_set(u: np.ndarray, mubs: MubSet) -> MubSet:
    """Left-multiply every basis by a common unitary; unbiasedness survives."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (mubs.dim, mubs.dim):
        raise ValueError(f"unitary shape {u.shape} does not match dim {mubs.dim}")
    defect = _unitarity_defect(u)
    if defect > UNITARY_TOL:
        raise ValueError(f"rotation is not unitary: defect {defect:.3e}")
    return MubSet(mubs.dim, tuple(Basis(mubs.dim, u @ b.columns) for b in mubs.bases))


def _basis_to_json(b: Basis) -> list:
    # columns -> entries -> [re, im]
    return [[[float(z.real), float(z.imag)] for z in b.columns[:, c]] for c in range(b.dim)]


def _basis_from_json(dim: int, data: list) -> Basis:
    cols = np.empty((dim, dim), dtype=complex)
    if len(data) != dim:
        raise ValueError(f"expected {dim} columns, got {len(data)}")
    for c, col in enumerate(data):
        if len(col) != dim:
            raise ValueError(f"column {c} has {len(col)} entries, expected {dim}")
        for r, (re, im) in enumerate(col):
            cols[r, c] = complex(re, im)
    return Basis(dim, cols)


def mub_set_to_json(mubs: MubSet) -> str:
    return json.dumps({"dim": mubs.dim, "bases": [_basis_to_json(b) for b in mubs.bases]})


def mub_set_from_json(text: str) -> MubSet:
    data = json.loads(text)
    dim = int(data["dim"])
    return MubSet(dim, tuple(_basis_from_json(dim, b) for b in data["bases"]))
