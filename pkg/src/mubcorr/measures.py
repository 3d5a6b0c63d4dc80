"""Correlation measures built on the Holevo quantity of local measurements.

All optimizations are multi-start Nelder-Mead descents over smooth
parameterizations of bases (see kernels).  Results are lower bounds on
the true maxima; for one-qubit/qutrit/ququint A sides the MUB-pair
parameterization is exhaustive, so the bound is tight up to optimizer
tolerance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from mubcorr import kernels
from mubcorr.linalg import DensityMatrix, partial_trace, von_neumann_entropy
from mubcorr.mub import Basis, MubSet, fourier_basis, wootters_fields_mubs

__all__ = [
    "MeasurementEnsemble",
    "OptimizerConfig",
    "OptimizerResult",
    "classical_correlation",
    "holevo",
    "measure_and_condition",
    "mub_pair_correlation",
    "mub_tuple_correlation",
    "mutual_information",
    "quantum_discord",
    "residual_correlation",
]

_PROB_FLOOR = 1e-14

# Seed salts keeping the restart streams of different operations disjoint.
_SALT_C1 = 1
_SALT_PAIR = 2
_SALT_TUPLE = 3
_SALT_MU_FIXED = 1000


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs of the multi-start optimizer.

    chi_basis_slack is the window below the best classical-correlation
    value within which a restart still counts as having found a
    maximizing basis (used by residual_correlation).
    """

    restarts: int = 24
    max_iters: int = 8000
    simplex_tol: float = 1e-7
    value_tol: float = 1e-9
    seed: int = 0
    chi_basis_slack: float = 1e-6

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.simplex_tol <= 0 or self.value_tol <= 0 or self.chi_basis_slack <= 0:
            raise ValueError("tolerances must be positive")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")


@dataclass(frozen=True)
class OptimizerResult:
    """Outcome of one maximization: best value plus per-restart diagnostics."""

    value: float
    basis_params: np.ndarray = field(repr=False)
    bases: Basis | MubSet = field(repr=False)
    restarts_converged: int
    per_restart_values: tuple[float, ...]


@dataclass(frozen=True)
class MeasurementEnsemble:
    """Outcome probabilities and Bob's conditional states for an A-side measurement."""

    probs: tuple[float, ...]
    conditionals: tuple[np.ndarray, ...]


def _rho4(rho: DensityMatrix) -> np.ndarray:
    return np.ascontiguousarray(rho.blocks())


def _check_basis(rho: DensityMatrix, basis: Basis) -> None:
    if basis.dim != rho.dim_a:
        raise ValueError(f"basis dim {basis.dim} does not match dim_a {rho.dim_a}")


def measure_and_condition(rho: DensityMatrix, basis: Basis) -> MeasurementEnsemble:
    """Project A onto the basis states; outcomes below 1e-14 are dropped."""
    _check_basis(rho, basis)
    four = rho.blocks()
    cols = basis.columns
    t1 = np.tensordot(cols.conj().T, four, axes=(1, 0))
    blocks = np.einsum("krjs,jk->krs", t1, cols)
    probs: list[float] = []
    conds: list[np.ndarray] = []
    for k in range(rho.dim_a):
        p = float(np.trace(blocks[k]).real)
        if p < _PROB_FLOOR:
            continue
        probs.append(p)
        conds.append(blocks[k] / p)
    return MeasurementEnsemble(tuple(probs), tuple(conds))


def holevo(rho: DensityMatrix, basis: Basis) -> float:
    """Holevo quantity in bits of the ensemble induced by measuring A."""
    _check_basis(rho, basis)
    return kernels.holevo_chi(_rho4(rho), np.ascontiguousarray(basis.columns))


def mutual_information(rho: DensityMatrix) -> float:
    """Total correlation S(rho_a) + S(rho_b) - S(rho_ab) in bits."""
    s_a = von_neumann_entropy(partial_trace(rho, "B"))
    s_b = von_neumann_entropy(partial_trace(rho, "A"))
    return s_a + s_b - von_neumann_entropy(rho.mat)


def _multistart(kind: int, rho4: np.ndarray, wstack: np.ndarray, efix: np.ndarray,
                f0: np.ndarray, nparams: int, cfg: OptimizerConfig,
                salt: int) -> tuple[list[float], list[np.ndarray], int]:
    """Run cfg.restarts independent descents; per-restart seeds come from
    (cfg.seed, salt, restart index) so results are scheduling-independent."""
    values: list[float] = []
    params: list[np.ndarray] = []
    converged = 0
    for k in range(cfg.restarts):
        rng = np.random.default_rng((cfg.seed, salt, k))
        x0 = rng.uniform(-np.pi, np.pi, nparams)
        fmin, xmin, _, ok = kernels.minimize(
            kind, rho4, wstack, efix, f0, x0, cfg.max_iters, cfg.simplex_tol, cfg.value_tol
        )
        values.append(-fmin)
        params.append(xmin)
        converged += int(ok)
    return values, params, converged


def _warn_if_unconverged(converged: int, cfg: OptimizerConfig, what: str) -> None:
    if converged == 0:
        warnings.warn(
            f"{what}: none of {cfg.restarts} restarts converged within "
            f"{cfg.max_iters} iterations; value is a best-effort lower bound",
            RuntimeWarning,
            stacklevel=3,
        )


_EMPTY = np.zeros((0, 0), dtype=complex)


def classical_correlation(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> OptimizerResult:
    """Maximal Holevo quantity over all A-side projective bases (C1)."""
    d = rho.dim_a
    wstack = np.eye(d, dtype=complex)[None, :, :]
    values, params, converged = _multistart(
        kernels.KIND_TUPLE, _rho4(rho), wstack, _EMPTY, _EMPTY, d * d, cfg, _SALT_C1
    )
    _warn_if_unconverged(converged, cfg, "classical_correlation")
    best = int(np.argmax(values))
    u = kernels.unitary_from_params(params[best], d)
    return OptimizerResult(
        value=values[best],
        basis_params=params[best],
        bases=Basis(d, u),
        restarts_converged=converged,
        per_restart_values=tuple(values),
    )


def _row_phased(f0: np.ndarray, phi: np.ndarray) -> np.ndarray:
    out = f0.copy()
    out[1:] *= np.exp(1.0j * np.asarray(phi))[:, None]
    return out


def mub_pair_correlation(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> OptimizerResult:
    """Max over MU basis pairs of the worse of the two Holevo quantities.

    The pair is parameterized as (U, U D_phi F) with F the Fourier basis,
    which is exhaustive for dim_a in {2, 3, 5} and a lower-bound
    parameterization otherwise.
    """
    d = rho.dim_a
    f0 = np.ascontiguousarray(fourier_basis(d).columns)
    values, params, converged = _multistart(
        kernels.KIND_PAIR, _rho4(rho), np.empty((0, d, d), dtype=complex), _EMPTY, f0,
        d * d + d - 1, cfg, _SALT_PAIR
    )
    _warn_if_unconverged(converged, cfg, "mub_pair_correlation")
    best = int(np.argmax(values))
    u = kernels.unitary_from_params(params[best][: d * d], d)
    pair = MubSet(d, (Basis(d, u), Basis(d, u @ _row_phased(f0, params[best][d * d:]))))
    return OptimizerResult(
        value=values[best],
        basis_params=params[best],
        bases=pair,
        restarts_converged=converged,
        per_restart_values=tuple(values),
    )


def mub_tuple_correlation(rho: DensityMatrix, m: int,
                          cfg: OptimizerConfig = OptimizerConfig()) -> OptimizerResult:
    """Max over m-tuples of pairwise MU bases of the worst Holevo quantity.

    Tuples are parameterized as a common unitary applied to the first m
    reference MUBs, so dim_a must be a supported prime when m >= 3; m = 2
    delegates to mub_pair_correlation.
    """
    if m == 2:
        return mub_pair_correlation(rho, cfg)
    d = rho.dim_a
    if not 2 <= m <= d + 1:
        raise ValueError(f"m must lie in [2, {d + 1}], got {m}")
    ref = wootters_fields_mubs(d)  # rejects non-prime dim_a
    wstack = np.ascontiguousarray(np.stack([b.columns for b in ref.bases[:m]]))
    values, params, converged = _multistart(
        kernels.KIND_TUPLE, _rho4(rho), wstack, _EMPTY, _EMPTY, d * d, cfg, _SALT_TUPLE
    )
    _warn_if_unconverged(converged, cfg, "mub_tuple_correlation")
    best = int(np.argmax(values))
    u = kernels.unitary_from_params(params[best], d)
    bases = MubSet(d, tuple(Basis(d, u @ w) for w in wstack))
    return OptimizerResult(
        value=values[best],
        basis_params=params[best],
        bases=bases,
        restarts_converged=converged,
        per_restart_values=tuple(values),
    )


def residual_correlation(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> OptimizerResult:
    """Max Holevo quantity over bases unbiased to a maximizing basis (Q2).

    Every restart of the classical-correlation search that lands within
    cfg.chi_basis_slack of the best value is treated as a candidate
    maximizing basis; the returned value is the largest inner maximum.
    per_restart_values holds one entry per candidate basis.
    """
    d = rho.dim_a
    f0 = np.ascontiguousarray(fourier_basis(d).columns)
    rho4 = _rho4(rho)
    wstack = np.eye(d, dtype=complex)[None, :, :]
    c1_values, c1_params, _ = _multistart(
        kernels.KIND_TUPLE, rho4, wstack, _EMPTY, _EMPTY, d * d, cfg, _SALT_C1
    )
    c1_best = max(c1_values)
    candidates = [k for k, v in enumerate(c1_values) if v >= c1_best - cfg.chi_basis_slack]

    best_value = -np.inf
    best_phi = np.zeros(d - 1)
    best_pair: MubSet | None = None
    best_converged = 0
    outer_values: list[float] = []
    for rank, k in enumerate(candidates):
        e = np.ascontiguousarray(kernels.unitary_from_params(c1_params[k], d))
        values, params, converged = _multistart(
            kernels.KIND_MU_FIXED, rho4, np.empty((0, d, d), dtype=complex), e, f0,
            d - 1, cfg, _SALT_MU_FIXED + rank
        )
        inner_best = int(np.argmax(values))
        outer_values.append(values[inner_best])
        if values[inner_best] > best_value:
            best_value = values[inner_best]
            best_phi = params[inner_best]
            best_pair = MubSet(d, (Basis(d, e), Basis(d, e @ _row_phased(f0, best_phi))))
            best_converged = converged
    _warn_if_unconverged(best_converged, cfg, "residual_correlation")
    assert best_pair is not None
    return OptimizerResult(
        value=best_value,
        basis_params=best_phi,
        bases=best_pair,
        restarts_converged=best_converged,
        per_restart_values=tuple(outer_values),
    )


def quantum_discord(rho: DensityMatrix, cfg: OptimizerConfig = OptimizerConfig()) -> float:
    """Mutual information minus classical correlation, projective measurements on A."""
    d = mutual_information(rho) - classical_correlation(rho, cfg).value
    if -1e-6 <= d < 0.0:
        return 0.0
    return d
