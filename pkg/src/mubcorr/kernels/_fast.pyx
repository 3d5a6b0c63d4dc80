# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twin of the pure backend.

Entry points, parameter layouts and algorithmic behavior match
kernels/pure.py line for line; only the execution strategy differs
(flat C buffers, LAPACK zheev through scipy's Cython bindings, and a
closed-form path for 2x2 eigenproblems).
"""

from libc.math cimport cos, fabs, fmax, fmin, log, sin, sqrt
from libc.string cimport memcpy, memset

from scipy.linalg.cython_lapack cimport zheev

import numpy as np

BACKEND_NAME = "cython"

KIND_TUPLE = 0
KIND_PAIR = 1
KIND_MU_FIXED = 2

cdef double _LN2 = 0.6931471805599453094
cdef double _PROB_FLOOR = 1e-14
cdef double _SIMPLEX_STEP = 0.5


cdef struct WS:
    int kind
    int da
    int db
    int m                  # number of tuple members (KIND_TUPLE)
    double complex *rho4   # (da, db, da, db) row-major
    double complex *wstack # m matrices (da, da)
    double complex *efix   # (da, da)
    double complex *f0     # (da, da)
    double complex *u      # scratch (da, da)
    double complex *b1     # scratch (da, da)
    double complex *b2     # scratch (da, da)
    double complex *h      # scratch (da, da) column-major for zheev
    double complex *mblk   # scratch (db, db)
    double complex *mavg   # scratch (db, db)
    double complex *zwork  # zheev workspace
    double complex *zbuf   # eigenvalue-only copy buffer
    double *rwork
    double *evals
    int lwork
    # simplex state
    double *sim            # (n + 1, n)
    double *fs             # n + 1
    double *cent
    double *xr
    double *xc
    double *rowtmp


cdef int _eigvals_n(WS *ws, double complex *a, int n, double *w) noexcept nogil:
    """Ascending eigenvalues of Hermitian a (row-major); a is preserved."""
    cdef double a00, a11, tr2, delta, r
    cdef char jobz = b'N'
    cdef char uplo = b'L'
    cdef int info = 0
    cdef int lda = n
    if n == 1:
        w[0] = a[0].real
        return 0
    if n == 2:
        a00 = a[0].real
        a11 = a[3].real
        tr2 = 0.5 * (a00 + a11)
        delta = 0.5 * (a00 - a11)
        r = sqrt(delta * delta + a[1].real * a[1].real + a[1].imag * a[1].imag)
        w[0] = tr2 - r
        w[1] = tr2 + r
        return 0
    # row-major Hermitian buffer read column-major is its conjugate: same spectrum
    memcpy(ws.zbuf, a, n * n * sizeof(double complex))
    zheev(&jobz, &uplo, &n, ws.zbuf, &lda, w, ws.zwork, &ws.lwork, ws.rwork, &info)
    return info


cdef double _entropy_ln(double *w, int n) noexcept nogil:
    """-sum w_i ln w_i over positive eigenvalues (noise negatives skipped)."""
    cdef double s = 0.0
    cdef int i
    for i in range(n):
        if w[i] > 0.0:
            s -= w[i] * log(w[i])
    return s


cdef double _chi(WS *ws, double complex *b) noexcept nogil:
    """Holevo quantity in bits for the basis given by the columns of b."""
    cdef int da = ws.da, db = ws.db
    cdef int k, i, j, r, t
    cdef double complex s, ci
    cdef double complex *mblk = ws.mblk
    cdef double complex *mavg = ws.mavg
    cdef double p, cond_ln, avg_ln, chi
    cdef int base

    memset(mavg, 0, db * db * sizeof(double complex))
    cond_ln = 0.0
    for k in range(da):
        memset(mblk, 0, db * db * sizeof(double complex))
        for i in range(da):
            ci = b[i * da + k].conjugate()
            for j in range(da):
                s = ci * b[j * da + k]
                for r in range(db):
                    base = ((i * db + r) * da + j) * db
                    for t in range(db):
                        mblk[r * db + t] = mblk[r * db + t] + s * ws.rho4[base + t]
        p = 0.0
        for r in range(db):
            p += mblk[r * db + r].real
            for t in range(db):
                mavg[r * db + t] = mavg[r * db + t] + mblk[r * db + t]
        if p > _PROB_FLOOR:
            _eigvals_n(ws, mblk, db, ws.evals)
            # p * S(block/p) in nats equals p ln p + entropy of the raw block
            cond_ln += p * log(p) + _entropy_ln(ws.evals, db)
    _eigvals_n(ws, mavg, db, ws.evals)
    avg_ln = _entropy_ln(ws.evals, db)
    chi = (avg_ln - cond_ln) / _LN2
    return fmax(chi, 0.0)


cdef void _build_unitary(WS *ws, double *x, double complex *u) noexcept nogil:
    """exp(i H(x)) for the da-dimensional Hermitian H packed as in pure.py."""
    cdef int d = ws.da
    cdef int i, j, k, idx
    cdef double a, bx, by, bz, nb, c, sc
    cdef double complex phase
    cdef char jobz = b'V'
    cdef char uplo = b'L'
    cdef int info = 0

    if d == 2:
        # H = a I + b.sigma; exp(iH) = e^{ia}(cos|b| I + i sin|b| bhat.sigma)
        a = 0.5 * (x[0] + x[1])
        bz = 0.5 * (x[0] - x[1])
        bx = x[2]
        by = -x[3]
        nb = sqrt(bx * bx + by * by + bz * bz)
        phase = cos(a) + 1j * sin(a)
        if nb < 1e-300:
            u[0] = phase
            u[1] = 0
            u[2] = 0
            u[3] = phase
            return
        c = cos(nb)
        sc = sin(nb) / nb
        u[0] = phase * (c + 1j * (sc * bz))
        u[1] = phase * (1j * (sc * bx) + sc * by)
        u[2] = phase * (1j * (sc * bx) - sc * by)
        u[3] = phase * (c - 1j * (sc * bz))
        return

    # column-major H so zheev's eigenvector columns come out directly
    memset(ws.h, 0, d * d * sizeof(double complex))
    for i in range(d):
        ws.h[i * d + i] = x[i]
    idx = d
    for i in range(d):
        for j in range(i + 1, d):
            ws.h[j * d + i] = x[idx] + 1j * x[idx + 1]   # H[i, j]
            ws.h[i * d + j] = x[idx] - 1j * x[idx + 1]   # H[j, i]
            idx += 2
    zheev(&jobz, &uplo, &d, ws.h, &d, ws.evals, ws.zwork, &ws.lwork, ws.rwork, &info)
    memset(u, 0, d * d * sizeof(double complex))
    cdef double complex vik
    for k in range(d):
        phase = cos(ws.evals[k]) + 1j * sin(ws.evals[k])
        for i in range(d):
            vik = ws.h[k * d + i] * phase
            for j in range(d):
                u[i * d + j] = u[i * d + j] + vik * ws.h[k * d + j].conjugate()


cdef void _row_phased(WS *ws, double complex *f0, double *phi, double complex *out) noexcept nogil:
    """out = diag(1, e^{i phi_0}, ...) @ f0 (row phases, first row fixed)."""
    cdef int d = ws.da
    cdef int r, j
    cdef double complex phase
    for j in range(d):
        out[j] = f0[j]
    for r in range(1, d):
        phase = cos(phi[r - 1]) + 1j * sin(phi[r - 1])
        for j in range(d):
            out[r * d + j] = phase * f0[r * d + j]


cdef void _matmul(int d, double complex *a, double complex *b, double complex *out) noexcept nogil:
    cdef int i, j, k
    cdef double complex acc
    for i in range(d):
        for j in range(d):
            acc = 0
            for k in range(d):
                acc = acc + a[i * d + k] * b[k * d + j]
            out[i * d + j] = acc


cdef double _objective(WS *ws, double *x) noexcept nogil:
    cdef int d = ws.da
    cdef int t
    cdef double worst, v
    if ws.kind == 2:  # KIND_MU_FIXED
        _row_phased(ws, ws.f0, x, ws.b2)
        _matmul(d, ws.efix, ws.b2, ws.b1)
        return -_chi(ws, ws.b1)
    _build_unitary(ws, x, ws.u)
    if ws.kind == 0:  # KIND_TUPLE
        worst = 1e300
        for t in range(ws.m):
            _matmul(d, ws.u, ws.wstack + t * d * d, ws.b1)
            v = _chi(ws, ws.b1)
            if v < worst:
                worst = v
        return -worst
    # KIND_PAIR
    v = _chi(ws, ws.u)
    _row_phased(ws, ws.f0, x + d * d, ws.b2)
    _matmul(d, ws.u, ws.b2, ws.b1)
    worst = _chi(ws, ws.b1)
    return -fmin(v, worst)


cdef void _sort_simplex(WS *ws, int n) noexcept nogil:
    """Stable insertion sort of the n+1 simplex rows by objective value."""
    cdef int i, j
    cdef double fkey
    for i in range(1, n + 1):
        fkey = ws.fs[i]
        memcpy(ws.rowtmp, ws.sim + i * n, n * sizeof(double))
        j = i - 1
        while j >= 0 and ws.fs[j] > fkey:
            ws.fs[j + 1] = ws.fs[j]
            memcpy(ws.sim + (j + 1) * n, ws.sim + j * n, n * sizeof(double))
            j -= 1
        ws.fs[j + 1] = fkey
        memcpy(ws.sim + (j + 1) * n, ws.rowtmp, n * sizeof(double))


cdef double _simplex_spread(WS *ws, int n) noexcept nogil:
    cdef int i, j
    cdef double spread = 0.0, dev
    for i in range(1, n + 1):
        for j in range(n):
            dev = fabs(ws.sim[i * n + j] - ws.sim[j])
            if dev > spread:
                spread = dev
    return spread


cdef void _nelder_mead(WS *ws, double *x0, int n, int max_iters, double xatol,
                       double fatol, double *out_f, double *out_x,
                       int *out_iters, int *out_conv) noexcept nogil:
    cdef int i, j, iters, best
    cdef double fr, fe, fc
    cdef bint accept, converged

    for i in range(n + 1):
        memcpy(ws.sim + i * n, x0, n * sizeof(double))
        if i > 0:
            ws.sim[i * n + (i - 1)] += _SIMPLEX_STEP
    for i in range(n + 1):
        ws.fs[i] = _objective(ws, ws.sim + i * n)

    iters = 0
    converged = False
    while True:
        _sort_simplex(ws, n)
        if (ws.fs[n] - ws.fs[0]) <= fatol and _simplex_spread(ws, n) <= xatol:
            converged = True
            break
        if iters >= max_iters:
            break
        iters += 1

        for j in range(n):
            ws.cent[j] = 0.0
        for i in range(n):
            for j in range(n):
                ws.cent[j] += ws.sim[i * n + j]
        for j in range(n):
            ws.cent[j] /= n

        for j in range(n):
            ws.xr[j] = 2.0 * ws.cent[j] - ws.sim[n * n + j]
        fr = _objective(ws, ws.xr)
        if fr < ws.fs[0]:
            for j in range(n):
                ws.xc[j] = 3.0 * ws.cent[j] - 2.0 * ws.sim[n * n + j]
            fe = _objective(ws, ws.xc)
            if fe < fr:
                memcpy(ws.sim + n * n, ws.xc, n * sizeof(double))
                ws.fs[n] = fe
            else:
                memcpy(ws.sim + n * n, ws.xr, n * sizeof(double))
                ws.fs[n] = fr
        elif fr < ws.fs[n - 1]:
            memcpy(ws.sim + n * n, ws.xr, n * sizeof(double))
            ws.fs[n] = fr
        else:
            if fr < ws.fs[n]:
                for j in range(n):   # outside contraction
                    ws.xc[j] = ws.cent[j] + 0.5 * (ws.xr[j] - ws.cent[j])
                fc = _objective(ws, ws.xc)
                accept = fc <= fr
            else:
                for j in range(n):   # inside contraction
                    ws.xc[j] = ws.cent[j] + 0.5 * (ws.sim[n * n + j] - ws.cent[j])
                fc = _objective(ws, ws.xc)
                accept = fc < ws.fs[n]
            if accept:
                memcpy(ws.sim + n * n, ws.xc, n * sizeof(double))
                ws.fs[n] = fc
            else:
                for i in range(1, n + 1):  # shrink toward best
                    for j in range(n):
                        ws.sim[i * n + j] = ws.sim[j] + 0.5 * (ws.sim[i * n + j] - ws.sim[j])
                    ws.fs[i] = _objective(ws, ws.sim + i * n)

    best = 0
    for i in range(1, n + 1):
        if ws.fs[i] < ws.fs[best]:
            best = i
    out_f[0] = ws.fs[best]
    memcpy(out_x, ws.sim + best * n, n * sizeof(double))
    out_iters[0] = iters
    out_conv[0] = 1 if converged else 0


def _flat_complex(arr) -> np.ndarray:
    return np.array(arr, dtype=complex, order="C", copy=True).reshape(-1)


cdef class _Scratch:
    """Owns the numpy buffers the workspace pointers alias."""
    cdef object keep

    def __cinit__(self):
        self.keep = []

    cdef double complex* zalloc(self, int count):
        a = np.zeros(count if count > 0 else 1, dtype=complex)
        self.keep.append(a)
        cdef double complex[::1] view = a
        return &view[0]

    cdef double* dalloc(self, int count):
        a = np.zeros(count if count > 0 else 1, dtype=float)
        self.keep.append(a)
        cdef double[::1] view = a
        return &view[0]


cdef void _alloc_scratch(WS *ws, _Scratch sc, int n):
    cdef int da = ws.da, db = ws.db
    cdef int ne = da if da > db else db
    ws.u = sc.zalloc(da * da)
    ws.b1 = sc.zalloc(da * da)
    ws.b2 = sc.zalloc(da * da)
    ws.h = sc.zalloc(da * da)
    ws.mblk = sc.zalloc(db * db)
    ws.mavg = sc.zalloc(db * db)
    ws.lwork = 4 * ne + 16
    ws.zwork = sc.zalloc(ws.lwork)
    ws.zbuf = sc.zalloc(ne * ne)
    ws.rwork = sc.dalloc(4 * ne + 16)
    ws.evals = sc.dalloc(ne)
    ws.sim = sc.dalloc((n + 1) * n if n > 0 else 1)
    ws.fs = sc.dalloc(n + 1 if n > 0 else 1)
    ws.cent = sc.dalloc(n if n > 0 else 1)
    ws.xr = sc.dalloc(n if n > 0 else 1)
    ws.xc = sc.dalloc(n if n > 0 else 1)
    ws.rowtmp = sc.dalloc(n if n > 0 else 1)


def holevo_chi(rho4, cols):
    """Holevo quantity in bits for the A-side measurement in basis cols."""
    cdef WS ws
    rho4 = np.array(rho4, dtype=complex, order="C", copy=True)
    cdef double complex[::1] crho = rho4.reshape(-1)
    cdef double complex[::1] ccols = _flat_complex(cols)
    cdef double complex[::1] cempty = np.zeros(1, dtype=complex)
    ws.kind = 0
    ws.da = rho4.shape[0]
    ws.db = rho4.shape[1]
    ws.m = 0
    ws.rho4 = &crho[0]
    ws.wstack = NULL
    ws.efix = NULL
    ws.f0 = NULL
    sc = _Scratch()
    _alloc_scratch(&ws, sc, 0)
    cdef double out
    with nogil:
        out = _chi(&ws, &ccols[0])
    return float(out)


def unitary_from_params(theta, d):
    """exp(i H(theta)); layout identical to the pure backend."""
    cdef int dd = d
    theta = np.array(theta, dtype=float, copy=True).reshape(-1)
    if theta.shape != (dd * dd,):
        raise ValueError(f"expected {dd * dd} parameters, got shape {theta.shape}")
    cdef double[::1] cx = theta
    cdef WS ws
    ws.da = dd
    ws.db = 1
    sc = _Scratch()
    _alloc_scratch(&ws, sc, 0)
    out = np.empty((dd, dd), dtype=complex)
    cdef double complex[:, ::1] cout = out
    with nogil:
        _build_unitary(&ws, &cx[0], &cout[0, 0])
    return out


def minimize(kind, rho4, wstack, efix, f0, x0, max_iters, xatol, fatol):
    """Nelder-Mead descent; same contract as the pure backend's minimize."""
    cdef WS ws
    rho4 = np.array(rho4, dtype=complex, order="C", copy=True)
    x0 = np.array(x0, dtype=float, copy=True).reshape(-1)
    cdef double complex[::1] crho = rho4.reshape(-1)
    cdef double complex[::1] cwstack = _flat_complex(wstack) if wstack is not None and wstack.size else np.zeros(0, dtype=complex)
    cdef double complex[::1] cefix = _flat_complex(efix) if efix is not None and efix.size else np.zeros(0, dtype=complex)
    cdef double complex[::1] cf0 = _flat_complex(f0) if f0 is not None and f0.size else np.zeros(0, dtype=complex)
    cdef double[::1] cx0 = x0

    ws.kind = kind
    ws.da = rho4.shape[0]
    ws.db = rho4.shape[1]
    ws.m = len(wstack) if wstack is not None else 0
    ws.rho4 = &crho[0]
    ws.wstack = &cwstack[0] if cwstack.shape[0] > 0 else NULL
    ws.efix = &cefix[0] if cefix.shape[0] > 0 else NULL
    ws.f0 = &cf0[0] if cf0.shape[0] > 0 else NULL

    cdef int n = x0.shape[0]
    sc = _Scratch()
    _alloc_scratch(&ws, sc, n)

    xout = np.empty(n, dtype=float)
    cdef double[::1] cxout = xout
    cdef double fbest = 0.0
    cdef int iters = 0
    cdef int conv = 0
    cdef int c_iters = max_iters
    cdef double c_xatol = xatol
    cdef double c_fatol = fatol
    with nogil:
        _nelder_mead(&ws, &cx0[0], n, c_iters, c_xatol, c_fatol,
                     &fbest, &cxout[0], &iters, &conv)
    return float(fbest), xout, int(iters), bool(conv)
