"""Reference numpy implementation of the optimizer kernels.

The compiled module _fast implements the same entry points with the same
semantics; this one is the fallback and the cross-check.  Everything here
works on raw arrays: rho4 is the state reshaped to (da, db, da, db) and a
basis is the (da, da) matrix of its column vectors.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

# Objective families: minimize the negated target over the parameter vector x.
#   KIND_TUPLE    x = theta[d*d];            -min_t chi(U(theta) @ wstack[t])
#   KIND_PAIR     x = theta[d*d], phi[d-1];  -min(chi(U), chi(U @ phased(f0, phi)))
#   KIND_MU_FIXED x = phi[d-1];              -chi(efix @ phased(f0, phi))
KIND_TUPLE = 0
KIND_PAIR = 1
KIND_MU_FIXED = 2

_LN2 = float(np.log(2.0))
_PROB_FLOOR = 1e-14
_SIMPLEX_STEP = 0.5


def unitary_from_params(theta: np.ndarray, d: int) -> np.ndarray:
    """exp(i H(theta)) with H Hermitian assembled from d*d real parameters.

    Layout: theta[:d] is the diagonal, the rest are (re, im) pairs filling
    the upper triangle row by row.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (d * d,):
        raise ValueError(f"expected {d * d} parameters, got shape {theta.shape}")
    h = np.zeros((d, d), dtype=complex)
    h[np.diag_indices(d)] = theta[:d]
    k = d
    for i in range(d):
        for j in range(i + 1, d):
            h[i, j] = complex(theta[k], theta[k + 1])
            h[j, i] = complex(theta[k], -theta[k + 1])
            k += 2
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1.0j * w)) @ v.conj().T


def _row_phased(f0: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Multiply row j of f0 by exp(i phi[j-1]); row 0 keeps phase 0."""
    out = f0.copy()
    out[1:] *= np.exp(1.0j * np.asarray(phi))[:, None]
    return out


def _entropy_bits(mat: np.ndarray) -> float:
    w = np.linalg.eigvalsh(mat)
    w = w[w > 0.0]
    return float(-(w * np.log(w)).sum() / _LN2)


def holevo_chi(rho4: np.ndarray, cols: np.ndarray) -> float:
    """Holevo quantity in bits for the A-side measurement in basis cols."""
    da = rho4.shape[0]
    t1 = np.tensordot(cols.conj().T, rho4, axes=(1, 0))   # (k, r, j, s)
    blocks = np.einsum("krjs,jk->krs", t1, cols)          # unnormalized conditionals
    probs = np.einsum("krr->k", blocks).real
    chi = _entropy_bits(blocks.sum(axis=0))
    eigs = np.linalg.eigvalsh(blocks)
    for k in range(da):
        p = probs[k]
        if p <= _PROB_FLOOR:
            continue
        w = eigs[k]
        w = w[w > 0.0]
        # p * S(M/p) written via eigenvalues of the unnormalized block
        chi -= (p * np.log(p) - (w * np.log(w)).sum()) / _LN2
    return max(chi, 0.0)


def _objective(kind: int, x: np.ndarray, rho4: np.ndarray, wstack: np.ndarray,
               efix: np.ndarray, f0: np.ndarray) -> float:
    da = rho4.shape[0]
    if kind == KIND_MU_FIXED:
        return -holevo_chi(rho4, efix @ _row_phased(f0, x))
    nu = da * da
    u = unitary_from_params(x[:nu], da)
    if kind == KIND_TUPLE:
        return -min(holevo_chi(rho4, u @ w) for w in wstack)
    if kind == KIND_PAIR:
        b2 = u @ _row_phased(f0, x[nu:])
        return -min(holevo_chi(rho4, u), holevo_chi(rho4, b2))
    raise ValueError(f"unknown objective kind {kind}")


def minimize(kind: int, rho4: np.ndarray, wstack: np.ndarray, efix: np.ndarray,
             f0: np.ndarray, x0: np.ndarray, max_iters: int, xatol: float,
             fatol: float) -> tuple[float, np.ndarray, int, bool]:
    """Nelder-Mead descent of the selected objective from one start point.

    Returns (f_min, x_min, iterations, converged).  Converged means both
    the value spread and the simplex diameter dropped below the
    tolerances before the iteration cap.
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size

    def f(x: np.ndarray) -> float:
        return _objective(kind, x, rho4, wstack, efix, f0)

    sim = np.tile(x0, (n + 1, 1))
    for i in range(n):
        sim[i + 1, i] += _SIMPLEX_STEP
    fs = np.array([f(sim[i]) for i in range(n + 1)])

    iters = 0
    converged = False
    while True:
        order = np.argsort(fs, kind="stable")
        sim = sim[order]
        fs = fs[order]
        if (fs[-1] - fs[0]) <= fatol and np.max(np.abs(sim[1:] - sim[0])) <= xatol:
            converged = True
            break
        if iters >= max_iters:
            break
        iters += 1

        centroid = sim[:-1].mean(axis=0)
        xr = 2.0 * centroid - sim[-1]
        fr = f(xr)
        if fr < fs[0]:
            xe = 3.0 * centroid - 2.0 * sim[-1]
            fe = f(xe)
            if fe < fr:
                sim[-1], fs[-1] = xe, fe
            else:
                sim[-1], fs[-1] = xr, fr
        elif fr < fs[-2]:
            sim[-1], fs[-1] = xr, fr
        else:
            if fr < fs[-1]:
                xc = centroid + 0.5 * (xr - centroid)      # outside contraction
                fc = f(xc)
                accept = fc <= fr
            else:
                xc = centroid + 0.5 * (sim[-1] - centroid)  # inside contraction
                fc = f(xc)
                accept = fc < fs[-1]
            if accept:
                sim[-1], fs[-1] = xc, fc
            else:
                for i in range(1, n + 1):                   # shrink toward best
                    sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
                    fs[i] = f(sim[i])

    best = int(np.argmin(fs))
    return float(fs[best]), sim[best].copy(), iters, converged
