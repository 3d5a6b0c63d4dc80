"""Constructors for the state families under study, random sampling, and file I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from mubcorr.linalg import (
    DensityMatrix,
    InvalidStateError,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    max_entangled_projector,
    swap_operator,
    tensor_product,
)

__all__ = [
    "BlochTriple",
    "SchmidtVector",
    "bell_diagonal",
    "bell_diagonal_rho1",
    "bell_diagonal_rho2",
    "isotropic_state",
    "load_state",
    "pure_from_schmidt",
    "random_density_matrix",
    "save_state",
    "werner_state",
]


@dataclass(frozen=True)
class BlochTriple:
    """Diagonal correlation coefficients of a two-qubit Bell-diagonal state.

    The four Bell-state weights derived from (r1, r2, r3) must all be
    nonnegative up to rounding noise, otherwise the triple does not
    describe a state.
    """

    r1: float
    r2: float
    r3: float

    def __post_init__(self) -> None:
        lo = min(self.bell_weights())
        if lo < -1e-12:
            raise ValueError(f"triple ({self.r1}, {self.r2}, {self.r3}) gives weight {lo:.3e}")

    def bell_weights(self) -> tuple[float, float, float, float]:
        """Weights of (psi-, phi-, phi+, psi+) in that order."""
        r1, r2, r3 = self.r1, self.r2, self.r3
        return (
            (1.0 - r1 - r2 - r3) / 4.0,
            (1.0 - r1 + r2 + r3) / 4.0,
            (1.0 + r1 - r2 + r3) / 4.0,
            (1.0 + r1 + r2 - r3) / 4.0,
        )

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3])

    def sorted_magnitudes(self) -> tuple[float, float, float]:
        """|r| values in descending order."""
        m = sorted((abs(self.r1), abs(self.r2), abs(self.r3)), reverse=True)
        return (m[0], m[1], m[2])


@dataclass(frozen=True)
class SchmidtVector:
    """Schmidt probabilities of a bipartite pure state."""

    lambdas: tuple[float, ...]

    def __post_init__(self) -> None:
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) < 1:
            raise ValueError("empty Schmidt vector")
        if min(lam) < 0.0:
            raise ValueError(f"negative Schmidt probability in {lam}")
        total = sum(lam)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"Schmidt probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "lambdas", lam)


def werner_state(d: int, alpha: float) -> DensityMatrix:
    """Exchange-symmetric family (I - alpha*P) / (d(d - alpha)), P the swap."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not -1.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [-1, 1], got {alpha}")
    n = d * d
    mat = (np.eye(n, dtype=complex) - alpha * swap_operator(d)) / (d * (d - alpha))
    return DensityMatrix(d, d, mat)


def isotropic_state(d: int, beta: float) -> DensityMatrix:
    """Mixture of white noise with the maximally entangled state, fidelity beta."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    n = d * d
    mat = ((1.0 - beta) * np.eye(n, dtype=complex) + (n * beta - 1.0) * max_entangled_projector(d)) / (n - 1)
    return DensityMatrix(d, d, mat)


def bell_diagonal(r: BlochTriple) -> DensityMatrix:
    """Two-qubit state (I + sum_j r_j sigma_j x sigma_j) / 4."""
    mat = np.eye(4, dtype=complex)
    for rj, sigma in zip((r.r1, r.r2, r.r3), (PAULI_X, PAULI_Y, PAULI_Z)):
        mat += rj * tensor_product(sigma, sigma)
    return DensityMatrix(2, 2, mat / 4.0)


def pure_from_schmidt(s: SchmidtVector) -> DensityMatrix:
    """Projector onto sum_i sqrt(lambda_i) |ii> with equal local dimensions."""
    d = len(s.lambdas)
    if d < 2:
        raise ValueError("need at least two Schmidt terms for a bipartite state")
    psi = np.zeros(d * d, dtype=complex)
    for i, lam in enumerate(s.lambdas):
        psi[i * d + i] = np.sqrt(lam)
    return DensityMatrix(d, d, np.outer(psi, psi.conj()))


def _bell_vectors() -> dict[str, np.ndarray]:
    s = 1.0 / np.sqrt(2.0)
    return {
        "phi+": np.array([s, 0.0, 0.0, s], dtype=complex),
        "phi-": np.array([s, 0.0, 0.0, -s], dtype=complex),
        "psi+": np.array([0.0, s, s, 0.0], dtype=complex),
        "psi-": np.array([0.0, s, -s, 0.0], dtype=complex),
    }


def _bell_mixture(weights: dict[str, float]) -> tuple[DensityMatrix, BlochTriple]:
    vecs = _bell_vectors()
    mat = np.zeros((4, 4), dtype=complex)
    for name, w in weights.items():
        v = vecs[name]
        mat += w * np.outer(v, v.conj())
    rho = DensityMatrix(2, 2, mat)
    r = tuple(
        float(np.real(np.trace(rho.mat @ tensor_product(s, s))))
        for s in (PAULI_X, PAULI_Y, PAULI_Z)
    )
    return rho, BlochTriple(*r)


def bell_diagonal_rho1(p: float) -> tuple[DensityMatrix, BlochTriple]:
    """Bell mixture psi+ / phi+ / phi- with weights 1/2, p/2, (1-p)/2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return _bell_mixture({"psi+": 0.5, "phi+": p / 2.0, "phi-": (1.0 - p) / 2.0})


def bell_diagonal_rho2(p: float) -> tuple[DensityMatrix, BlochTriple]:
    """Bell mixture psi- with weight p plus psi+ and phi+ with weights (1-p)/2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return _bell_mixture({"psi-": p, "psi+": (1.0 - p) / 2.0, "phi+": (1.0 - p) / 2.0})


def random_density_matrix(d_a: int, d_b: int, rank: int, seed: int) -> DensityMatrix:
    """Seeded random state from the induced measure with controlled rank.

    Draws a Haar-random pure state on the system times a rank-dimensional
    ancilla and traces the ancilla out; at full rank this is the
    Hilbert-Schmidt ensemble.
    """
    n = d_a * d_b
    if not 1 <= rank <= n:
        raise ValueError(f"rank must lie in [1, {n}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1.0j * rng.standard_normal((n, rank))
    mat = g @ g.conj().T
    mat /= np.trace(mat).real
    return DensityMatrix(d_a, d_b, mat)


def save_state(rho: DensityMatrix, path: str) -> None:
    """Write a state as JSON with explicit real/imaginary entry pairs."""
    rows = [[[float(z.real), float(z.imag)] for z in row] for row in rho.mat]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"dim_a": rho.dim_a, "dim_b": rho.dim_b, "matrix": rows}, fh)


def load_state(path: str) -> DensityMatrix:
    """Read a state written by save_state, re-validating all invariants."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        dim_a = int(data["dim_a"])
        dim_b = int(data["dim_b"])
        rows = data["matrix"]
    except (KeyError, TypeError) as exc:
        raise InvalidStateError(f"malformed state file {path}: {exc}") from exc
    n = dim_a * dim_b
    if len(rows) != n:
        raise InvalidStateError(f"state file has {len(rows)} rows, expected {n}")
    mat = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidStateError(f"row {i} has {len(row)} entries, expected {n}")
        for j, entry in enumerate(row):
            re, im = entry
            mat[i, j] = complex(re, im)
    dev = np.abs(mat - mat.conj().T)
    worst = np.unravel_index(int(np.argmax(dev)), dev.shape)
    if dev[worst] > 1e-12:
        raise InvalidStateError(
            f"matrix entry {tuple(int(x) for x in worst)} breaks Hermiticity by {dev[worst]:.3e}"
        )
    return DensityMatrix(dim_a, dim_b, mat)
