"""Constructive witness search and batch theorem verification."""

import json

import numpy as np
import pytest

from mubcorr.linalg import DensityMatrix, tensor_product
from mubcorr.measures import OptimizerConfig, classical_correlation, holevo
from mubcorr.mub import Basis, fourier_basis, is_mutually_unbiased
from mubcorr.states import (
    BlochTriple,
    SchmidtVector,
    bell_diagonal,
    pure_from_schmidt,
    random_density_matrix,
)
from mubcorr.verify import (
    CHI_NONZERO,
    DEFAULT_EPS_SCHEDULE,
    Witness,
    WitnessSearchError,
    _embed_two_level,
    find_witness_mub_pair,
    is_product_state,
    report_to_json,
    verify_nullity_theorem,
)

CFG = OptimizerConfig(restarts=8, seed=0)


def _product_state(da, db, seed):
    a = random_density_matrix(da, 1, da, seed=seed)
    b = random_density_matrix(1, db, db, seed=seed + 1)
    return DensityMatrix(da, db, tensor_product(a.mat, b.mat))


def test_is_product_state():
    assert is_product_state(_product_state(2, 2, 3))
    assert is_product_state(_product_state(3, 2, 4))
    assert not is_product_state(pure_from_schmidt(SchmidtVector((0.5, 0.5))))
    assert not is_product_state(bell_diagonal(BlochTriple(0.3, 0.2, 0.1)))


def test_embed_two_level_is_unitary():
    f = fourier_basis(3).columns
    for eps in (0.5, 0.2, 0.0):
        w = _embed_two_level(f, 0, 2, eps)
        np.testing.assert_allclose(w @ w.conj().T, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(_embed_two_level(f, 0, 1, 0.0), np.eye(3), atol=1e-12)


def test_witness_direct_path():
    w = find_witness_mub_pair(pure_from_schmidt(SchmidtVector((0.5, 0.5))), cfg=CFG)
    assert w.path == "direct"
    assert w.epsilon_used == 0.0
    assert w.chi_1 > CHI_NONZERO and w.chi_2 > CHI_NONZERO
    assert is_mutually_unbiased(w.basis_1, w.basis_2, tol=1e-8)


def test_witness_rotation_path():
    # the classical-classical state has chi = 0 on every basis unbiased to
    # its maximizing basis, so the paired Fourier partner must be rotated
    w = find_witness_mub_pair(bell_diagonal(BlochTriple(1.0, 0.0, 0.0)), cfg=CFG)
    assert w.path == "epsilon-rotation"
    assert w.epsilon_used in DEFAULT_EPS_SCHEDULE
    assert w.chi_1 > CHI_NONZERO and w.chi_2 > CHI_NONZERO
    assert is_mutually_unbiased(w.basis_1, w.basis_2, tol=1e-8)


def test_witness_rejects_product_input():
    with pytest.raises(ValueError, match="non-product"):
        find_witness_mub_pair(_product_state(2, 2, 5), cfg=CFG)


def test_witness_validation():
    b1 = Basis(2, np.eye(2, dtype=complex))
    b2 = fourier_basis(2)
    with pytest.raises(ValueError, match="unbiased"):
        Witness(b1, b1, 0.1, 0.1, 0.0, "direct")
    with pytest.raises(ValueError, match="negative"):
        Witness(b1, b2, -0.1, 0.1, 0.0, "direct")


def test_epsilon_monotonicity():
    # shrinking the rotation pushes chi_1 back toward the unrotated maximum
    rho = random_density_matrix(2, 2, 4, seed=23)
    res = classical_correlation(rho, cfg=CFG)
    e_cols = res.bases.columns
    f_cols = e_cols @ fourier_basis(2).columns
    gaps = []
    for eps in DEFAULT_EPS_SCHEDULE:
        w = _embed_two_level(f_cols, 0, 1, eps)
        chi_1 = holevo(rho, Basis(2, w @ e_cols))
        gaps.append(res.value - chi_1)
    for gap in gaps:
        assert gap >= -1e-9  # a rotated basis cannot beat the maximum
    for earlier, later in zip(gaps, gaps[1:]):
        assert later <= earlier + 1e-6
    assert gaps[-1] < gaps[0] + 1e-6
    assert abs(gaps[-1]) < 0.05


def test_verify_small_batch():
    report = verify_nullity_theorem(20, 2, 2, seed=7, cfg=CFG)
    assert report.samples == 20
    assert report.products_detected == 2  # indices 9 and 19
    assert report.witnesses_found == 18
    assert report.failures == ()
    assert report.min_chi_over_witnesses > CHI_NONZERO
    assert (
        report.products_detected + report.witnesses_found + len(report.failures)
        == report.samples
    )


def test_verify_preconditions():
    with pytest.raises(ValueError, match="samples"):
        verify_nullity_theorem(0, 2, 2, seed=0)


def test_report_json_round_trip():
    report = verify_nullity_theorem(10, 2, 2, seed=3, cfg=CFG)
    data = json.loads(report_to_json(report))
    assert data["samples"] == 10
    assert data["products_detected"] + data["witnesses_found"] + len(data["failures"]) == 10
    assert data["min_chi_over_witnesses"] > 0.0


def test_witness_search_full_corpus():
    # 500 seeded states across both supported dimensions and rank regimes
    checked = 0
    plan = ((2, (84, 84, 84)), (3, (83, 83, 82)))
    for d, counts in plan:
        for rank, count in zip((1, 2, d * d), counts):
            for _ in range(count):
                rho = random_density_matrix(d, d, rank, seed=7000 + checked)
                w = find_witness_mub_pair(rho, cfg=CFG)
                assert w.chi_1 > CHI_NONZERO and w.chi_2 > CHI_NONZERO
                checked += 1
    assert checked == 500
