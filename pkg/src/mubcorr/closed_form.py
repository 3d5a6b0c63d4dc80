"""Analytic formulas for the Werner, isotropic, and Bell-diagonal families.

These serve as ground truth for the numerical optimizer and as the fast
path for sweeps.  Bell-diagonal pair correlation ships in two variants:
one using the first two triple components verbatim, one using the two
largest magnitudes; the test suite records which of the two the
optimizer actually attains (the sorted variant, which the sweep code
therefore uses).
"""

from __future__ import annotations

import enum

import numpy as np

from mubcorr.linalg import DensityMatrix, PAULI_Y, binary_entropy, tensor_product
from mubcorr.states import BlochTriple

__all__ = [
    "MeasureKind",
    "discord_isotropic",
    "entanglement_of_formation_isotropic",
    "entanglement_of_formation_two_qubit",
    "entanglement_of_formation_werner",
    "pair_correlation_bell_diagonal",
    "pair_correlation_bell_diagonal_sorted",
    "pair_correlation_isotropic",
    "pair_correlation_werner",
    "residual_correlation_bell_diagonal",
    "triple_correlation_bell_diagonal",
]


class MeasureKind(str, enum.Enum):
    """Measure tags understood by the command-line interface."""

    C = "C"     # MUB-pair correlation
    C3 = "C3"   # MUB-triple correlation
    Q2 = "Q2"   # residual correlation
    C1 = "C1"   # classical correlation
    D = "D"     # quantum discord
    Ef = "Ef"   # entanglement of formation


def _xlog2x(x: float) -> float:
    """x log2 x extended by continuity with value 0 at x = 0."""
    if x < 0.0:
        if x < -1e-12:
            raise ValueError(f"negative probability {x!r}")
        return 0.0
    if x == 0.0:
        return 0.0
    return float(x * np.log2(x))


def _check_werner_domain(d: int, alpha: float) -> None:
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not -1.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [-1, 1], got {alpha}")


def _check_isotropic_domain(d: int, beta: float) -> None:
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")


def pair_correlation_werner(d: int, alpha: float) -> float:
    """MUB-pair correlation of the exchange-symmetric family."""
    _check_werner_domain(d, alpha)
    return float(np.log2(d / (d - alpha)) + _xlog2x(1.0 - alpha) / (d - alpha))


def entanglement_of_formation_werner(d: int, alpha: float) -> float:
    """Entanglement of formation of the exchange-symmetric family."""
    _check_werner_domain(d, alpha)
    con = max(0.0, (d * alpha - 1.0) / (d - alpha))
    return binary_entropy(0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - con * con))))


def pair_correlation_isotropic(d: int, beta: float) -> float:
    """MUB-pair correlation of the maximally-entangled-plus-noise family."""
    _check_isotropic_domain(d, beta)
    a = (d * beta + 1.0) / (d + 1.0)
    b = (d - d * beta) / (d + 1.0)
    second = _xlog2x(a)
    third = 0.0 if b == 0.0 else float(b * np.log2((d - d * beta) / (d * d - 1.0)))
    return float(np.log2(d) + second + third)


def entanglement_of_formation_isotropic(d: int, beta: float) -> float:
    """Entanglement of formation of the isotropic family (piecewise)."""
    _check_isotropic_domain(d, beta)
    if beta <= 1.0 / d:
        return 0.0
    upper = 4.0 * (d - 1.0) / (d * d)
    # the linear branch is 0/0 at d=2, where its interval shrinks to the
    # single point beta=1; the concave branch extends there by continuity
    if d > 2 and beta >= upper:
        return float((beta - 1.0) * d * np.log2(d - 1.0) / (d - 2.0) + np.log2(d))
    gamma = (np.sqrt(beta) + np.sqrt((d - 1.0) * (1.0 - beta))) ** 2 / d
    return float(binary_entropy(gamma) + (1.0 - gamma) * np.log2(d - 1.0))


def discord_isotropic(d: int, beta: float) -> float:
    """Quantum discord of the isotropic family."""
    _check_isotropic_domain(d, beta)
    first = _xlog2x(beta)
    if beta == 1.0:
        second = 0.0
    else:
        second = float((1.0 - beta) / (d + 1.0) * np.log2((1.0 - beta) / (d * d - 1.0)))
    # the argument below is 1 - 1/d + beta(d-1), strictly positive on the domain
    third_arg = (1.0 - beta - 1.0 / d + d * beta) / (d * d - 1.0)
    third = float((1.0 + d * beta) / (d + 1.0) * np.log2(third_arg))
    return first + second - third


def _sorted_magnitudes(r: BlochTriple) -> tuple[float, float, float]:
    return r.sorted_magnitudes()


def pair_correlation_bell_diagonal(r: BlochTriple) -> float:
    """Pair correlation from the first two triple components, verbatim."""
    s = np.sqrt((r.r1 ** 2 + r.r2 ** 2) / 2.0)
    return 1.0 - binary_entropy((1.0 + s) / 2.0)


def pair_correlation_bell_diagonal_sorted(r: BlochTriple) -> float:
    """Pair correlation from the two largest magnitudes of the triple."""
    m1, m2, _ = _sorted_magnitudes(r)
    s = np.sqrt((m1 * m1 + m2 * m2) / 2.0)
    return 1.0 - binary_entropy((1.0 + s) / 2.0)


def triple_correlation_bell_diagonal(r: BlochTriple) -> float:
    """Stated three-basis correlation, from the two smallest magnitudes."""
    _, m2, m3 = _sorted_magnitudes(r)
    s = np.sqrt((m2 * m2 + m3 * m3) / 2.0)
    return 1.0 - binary_entropy((1.0 + s) / 2.0)


def residual_correlation_bell_diagonal(r: BlochTriple) -> float:
    """Residual correlation: second-largest magnitude sets the best MU axis."""
    _, m2, _ = _sorted_magnitudes(r)
    return 1.0 - binary_entropy((1.0 + m2) / 2.0)


def entanglement_of_formation_two_qubit(rho: DensityMatrix) -> float:
    """Entanglement of formation of any two-qubit state via the concurrence."""
    if (rho.dim_a, rho.dim_b) != (2, 2):
        raise ValueError(f"need a 2x2 bipartite state, got ({rho.dim_a}, {rho.dim_b})")
    yy = tensor_product(PAULI_Y, PAULI_Y)
    m = rho.mat @ yy @ rho.mat.conj() @ yy
    w = np.linalg.eigvals(m).real
    w = np.sqrt(np.clip(w, 0.0, None))
    w.sort()
    con = max(0.0, w[3] - w[2] - w[1] - w[0])
    return binary_entropy(0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - con * con))))
