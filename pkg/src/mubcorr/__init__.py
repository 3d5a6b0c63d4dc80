"""Correlation measures for bipartite quantum states built on mutually unbiased bases."""

from mubcorr.linalg import (
    DensityMatrix,
    InvalidStateError,
    binary_entropy,
    eigvals_hermitian,
    partial_trace,
    tensor_product,
    von_neumann_entropy,
)
from mubcorr.measures import (
    MeasurementEnsemble,
    OptimizerConfig,
    OptimizerResult,
    classical_correlation,
    holevo,
    measure_and_condition,
    mub_pair_correlation,
    mub_tuple_correlation,
    mutual_information,
    quantum_discord,
    residual_correlation,
)
from mubcorr.mub import Basis, MubSet, fourier_basis, is_mutually_unbiased, wootters_fields_mubs
from mubcorr.verify import (
    VerificationReport,
    Witness,
    find_witness_mub_pair,
    is_product_state,
    verify_nullity_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "DensityMatrix",
    "InvalidStateError",
    "MeasurementEnsemble",
    "MubSet",
    "OptimizerConfig",
    "OptimizerResult",
    "VerificationReport",
    "Witness",
    "binary_entropy",
    "classical_correlation",
    "eigvals_hermitian",
    "find_witness_mub_pair",
    "fourier_basis",
    "holevo",
    "is_mutually_unbiased",
    "measure_and_condition",
    "mub_pair_correlation",
    "mub_tuple_correlation",
    "mutual_information",
    "partial_trace",
    "quantum_discord",
    "residual_correlation",
    "tensor_product",
    "is_product_state",
    "verify_nullity_theorem",
    "von_neumann_entropy",
    "wootters_fields_mubs",
]
