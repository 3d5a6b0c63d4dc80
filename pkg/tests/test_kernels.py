"""Kernel correctness and parity between the compiled and pure-Python backends."""

import os
import subprocess
import sys

import numpy as np
import pytest
import scipy.linalg
from numpy.testing import assert_allclose

from mubcorr.kernels import pure
from mubcorr.linalg import von_neumann_entropy
from mubcorr.mub import fourier_basis
from mubcorr.states import bell_diagonal, BlochTriple, random_density_matrix

fast = pytest.importorskip("mubcorr.kernels._fast")

BACKENDS = [pure, fast]


def _hermitian_from_params(theta, d):
    h = np.zeros((d, d), dtype=complex)
    for i in range(d):
        h[i, i] = theta[i]
    pos = d
    for i in range(d):
        for j in range(i + 1, d):
            h[i, j] = theta[pos] + 1j * theta[pos + 1]
            h[j, i] = theta[pos] - 1j * theta[pos + 1]
            pos += 2
    return h


def _chi_oracle(rho, cols):
    """Holevo quantity by explicit projector algebra, in bits."""
    d_a, d_b = rho.dim_a, rho.dim_b
    blocks = []
    for k in range(d_a):
        v = cols[:, k]
        m = np.zeros((d_b, d_b), dtype=complex)
        for i in range(d_a):
            for j in range(d_a):
                m += np.conj(v[i]) * v[j] * rho.mat[
                    i * d_b: (i + 1) * d_b, j * d_b: (j + 1) * d_b
                ]
        blocks.append(m)
    avg = sum(blocks)
    chi = von_neumann_entropy(avg)
    for m in blocks:
        p = float(np.trace(m).real)
        if p > 1e-14:
            chi -= p * von_neumann_entropy(m / p)
    return chi


@pytest.mark.parametrize("backend", BACKENDS, ids=["python", "cython"])
@pytest.mark.parametrize("d", [2, 3, 5])
def test_unitary_from_params(backend, d):
    rng = np.random.default_rng(d)
    theta = rng.uniform(-np.pi, np.pi, d * d)
    u = backend.unitary_from_params(theta, d)
    assert_allclose(u.conj().T @ u, np.eye(d), atol=1e-12)
    expected = scipy.linalg.expm(1j * _hermitian_from_params(theta, d))
    assert_allclose(u, expected, atol=1e-11)
    assert_allclose(backend.unitary_from_params(np.zeros(d * d), d), np.eye(d), atol=1e-14)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_unitary_backend_parity(d):
    rng = np.random.default_rng(100 + d)
    theta = rng.uniform(-np.pi, np.pi, d * d)
    assert_allclose(
        fast.unitary_from_params(theta, d), pure.unitary_from_params(theta, d), atol=1e-12
    )


@pytest.mark.parametrize("backend", BACKENDS, ids=["python", "cython"])
def test_holevo_chi_bell_state(backend):
    bell = np.zeros((4, 4), dtype=complex)
    bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
    rho4 = np.ascontiguousarray(bell.reshape(2, 2, 2, 2))
    cols = np.eye(2, dtype=complex)
    assert backend.holevo_chi(rho4, cols) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("backend", BACKENDS, ids=["python", "cython"])
@pytest.mark.parametrize("da,db,seed", [(2, 2, 0), (2, 3, 1), (3, 3, 2), (3, 2, 3)])
def test_holevo_chi_against_oracle(backend, da, db, seed):
    rho = random_density_matrix(da, db, da * db, seed=seed)
    rng = np.random.default_rng(seed + 50)
    cols = backend.unitary_from_params(rng.uniform(-np.pi, np.pi, da * da), da)
    rho4 = np.ascontiguousarray(rho.blocks())
    got = backend.holevo_chi(rho4, np.ascontiguousarray(cols))
    assert got == pytest.approx(_chi_oracle(rho, cols), abs=1e-10)
    assert got >= 0.0


@pytest.mark.parametrize("da,db,seed", [(2, 2, 4), (3, 3, 5), (2, 3, 6)])
def test_holevo_chi_backend_parity(da, db, seed):
    rho = random_density_matrix(da, db, da * db, seed=seed)
    rng = np.random.default_rng(seed)
    cols = np.ascontiguousarray(
        pure.unitary_from_params(rng.uniform(-np.pi, np.pi, da * da), da)
    )
    rho4 = np.ascontiguousarray(rho.blocks())
    assert fast.holevo_chi(rho4, cols) == pytest.approx(
        pure.holevo_chi(rho4, cols), abs=1e-12
    )


@pytest.mark.parametrize("backend", BACKENDS, ids=["python", "cython"])
def test_minimize_classical_correlation_kind(backend):
    # single descent from the origin must reach the known axis maximum
    rho = bell_diagonal(BlochTriple(0.5, 0.3, 0.1))
    rho4 = np.ascontiguousarray(rho.blocks())
    wstack = np.eye(2, dtype=complex)[None, :, :]
    empty = np.zeros((0, 0), dtype=complex)
    fmin, xmin, iters, ok = backend.minimize(
        backend.KIND_TUPLE, rho4, wstack, empty, empty, np.zeros(4), 2000, 1e-7, 1e-9
    )
    assert ok
    assert iters > 0
    assert -fmin == pytest.approx(0.18872187554086717, abs=1e-6)
    assert xmin.shape == (4,)


@pytest.mark.parametrize("backend", BACKENDS, ids=["python", "cython"])
def test_minimize_respects_iteration_budget(backend):
    rho = bell_diagonal(BlochTriple(0.5, 0.3, 0.1))
    rho4 = np.ascontiguousarray(rho.blocks())
    wstack = np.eye(2, dtype=complex)[None, :, :]
    empty = np.zeros((0, 0), dtype=complex)
    fmin, _, iters, ok = backend.minimize(
        backend.KIND_TUPLE, rho4, wstack, empty, empty, np.zeros(4), 3, 1e-7, 1e-9
    )
    assert not ok
    assert iters == 3


def test_minimize_pair_kind_backend_parity():
    rho = bell_diagonal(BlochTriple(0.7, -0.3, 0.1))
    rho4 = np.ascontiguousarray(rho.blocks())
    f0 = np.ascontiguousarray(fourier_basis(2).columns)
    empty = np.zeros((0, 0), dtype=complex)
    nobases = np.empty((0, 2, 2), dtype=complex)
    rng = np.random.default_rng(9)
    for _ in range(3):
        x0 = rng.uniform(-np.pi, np.pi, 5)
        f_f, _, _, ok_f = fast.minimize(
            fast.KIND_PAIR, rho4, nobases, empty, f0, x0, 2000, 1e-7, 1e-9
        )
        f_p, _, _, ok_p = pure.minimize(
            pure.KIND_PAIR, rho4, nobases, empty, f0, x0, 2000, 1e-7, 1e-9
        )
        assert ok_f and ok_p
        assert f_f == pytest.approx(f_p, abs=1e-6)


def test_kind_constants_agree():
    assert (pure.KIND_TUPLE, pure.KIND_PAIR, pure.KIND_MU_FIXED) == (
        fast.KIND_TUPLE,
        fast.KIND_PAIR,
        fast.KIND_MU_FIXED,
    )
    assert pure.BACKEND_NAME == "python"
    assert fast.BACKEND_NAME == "cython"


def test_backend_env_override_full_measure():
    # a forced pure-Python process must reproduce the compiled result
    code = (
        "from mubcorr.states import bell_diagonal, BlochTriple\n"
        "from mubcorr.measures import mub_pair_correlation, OptimizerConfig\n"
        "import mubcorr.kernels as k\n"
        "assert k.BACKEND_NAME == 'python', k.BACKEND_NAME\n"
        "rho = bell_diagonal(BlochTriple(1.0, 0.0, 0.0))\n"
        "res = mub_pair_correlation(rho, cfg=OptimizerConfig(restarts=4, seed=3))\n"
        "print(f'{res.value:.12f}')\n"
    )
    env = dict(os.environ, MUBCORR_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    from mubcorr.measures import mub_pair_correlation, OptimizerConfig

    res = mub_pair_correlation(
        bell_diagonal(BlochTriple(1.0, 0.0, 0.0)), cfg=OptimizerConfig(restarts=4, seed=3)
    )
    assert float(out.stdout.strip()) == pytest.approx(res.value, abs=5e-6)


def test_backend_selection_rejects_unknown():
    code = "import mubcorr.kernels\n"
    env = dict(os.environ, MUBCORR_BACKEND="fortran")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.returncode != 0
    assert "MUBCORR_BACKEND" in out.stderr
