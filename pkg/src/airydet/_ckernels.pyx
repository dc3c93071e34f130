# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot loops in ``_pykernels``.

Same call signatures and return layouts; results agree with the numpy
fallback to rounding (checked in tests/test_backends.py).
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sqrt, cos, sin, fabs, pow, M_PI, INFINITY, isfinite

from ._airy_tables import ANCHOR_STEP, ANCHOR_X0, ASYM_EDGE, N_TAYLOR, TAYLOR_TABLE, U_COEF, V_COEF

cnp.import_array()

cdef double[:, ::1] _TABLE = np.ascontiguousarray(TAYLOR_TABLE)
cdef double[::1] _U = np.ascontiguousarray(U_COEF)
cdef double[::1] _V = np.ascontiguousarray(V_COEF)
cdef double _STEP = ANCHOR_STEP
cdef double _X0 = ANCHOR_X0
cdef double _EDGE = ASYM_EDGE
cdef int _NT = N_TAYLOR
cdef int _NA = U_COEF.shape[0]
cdef int _NANCH = TAYLOR_TABLE.shape[0]

cdef double _RESCALE = 1e200
cdef double _LOG_RESCALE = log(1e200)


cdef double _asym_sum(double[::1] coef, double zeta, int start, int stride) nogil:
    cdef double total = 0.0, prev = INFINITY, term, sign = 1.0
    cdef double inv = 1.0 / zeta
    cdef double zp = 1.0 if start == 0 else inv
    cdef double zstep = inv if stride == 1 else inv * inv
    cdef int k = start
    while k < _NA:
        term = sign * coef[k] * zp
        if fabs(term) >= prev:
            break
        total += term
        prev = fabs(term)
        sign = -sign
        zp *= zstep
        k += stride
    return total


cdef void _airy_one(double x, double* ai, double* aip) nogil:
    cdef double zeta, e, q, t, theta, c, s, rpi, h
    cdef double pu, qu, pv, qv, y, dy
    cdef int idx, k
    if x >= _EDGE:
        zeta = 2.0 / 3.0 * x * sqrt(x)
        e = exp(-zeta) / (2.0 * sqrt(M_PI))
        q = pow(x, 0.25)
        ai[0] = e / q * _asym_sum(_U, zeta, 0, 1)
        aip[0] = -e * q * _asym_sum(_V, zeta, 0, 1)
    elif x <= -_EDGE:
        t = -x
        zeta = 2.0 / 3.0 * t * sqrt(t)
        pu = _asym_sum(_U, zeta, 0, 2)
        qu = _asym_sum(_U, zeta, 1, 2)
        pv = _asym_sum(_V, zeta, 0, 2)
        qv = _asym_sum(_V, zeta, 1, 2)
        theta = zeta - M_PI / 4.0
        c = cos(theta)
        s = sin(theta)
        q = pow(t, 0.25)
        rpi = 1.0 / sqrt(M_PI)
        ai[0] = rpi / q * (c * pu + s * qu)
        aip[0] = rpi * q * (s * pv - c * qv)
    else:
        idx = <int>((x - _X0) / _STEP + 0.5)
        if idx < 0:
            idx = 0
        elif idx >= _NANCH:
            idx = _NANCH - 1
        h = x - (_X0 + idx * _STEP)
        y = _TABLE[idx, _NT - 1]
        dy = (_NT - 1) * _TABLE[idx, _NT - 1]
        for k in range(_NT - 2, -1, -1):
            y = y * h + _TABLE[idx, k]
            if k >= 1:
                dy = dy * h + k * _TABLE[idx, k]
        ai[0] = y
        aip[0] = dy


def airy_pair(x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    ai = np.empty(n)
    aip = np.empty(n)
    cdef double[::1] a = ai, b = aip
    with nogil:
        for i in range(n):
            _airy_one(xv[i], &a[i], &b[i])
    return ai, aip


def airy_kernel_matrix(x, y, double delta):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], m = yv.shape[0], i, j
    ax_, apx_ = airy_pair(xv)
    ay_, apy_ = airy_pair(yv)
    cdef double[::1] ax = ax_, apx = apx_, ay = ay_, apy = apy_
    out = np.empty((n, m))
    cdef double[:, ::1] o = out
    cdef double d, mid, am, apm
    with nogil:
        for i in range(n):
            for j in range(m):
                d = xv[i] - yv[j]
                if fabs(d) < delta:
                    mid = 0.5 * (xv[i] + yv[j])
                    _airy_one(mid, &am, &apm)
                    o[i, j] = apm * apm - mid * am * am
                else:
                    o[i, j] = (ax[i] * apy[j] - ay[j] * apx[i]) / d
    return out


cdef double _unscale(double mant, double logs) nogil:
    if mant == 0.0:
        return 0.0
    if mant > 0:
        return exp(log(mant) + logs)
    return -exp(log(-mant) + logs)


def _hermite_run(int n_max, x, bint keep_all):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t npt = xv.shape[0], p
    cdef int k
    out = np.empty((npt, n_max)) if keep_all else np.empty((0, 0))
    last = np.empty((npt, 2))
    cdef double[:, ::1] o = out
    cdef double[:, ::1] lt = last
    kk = np.arange(n_max, dtype=np.float64)
    cdef double[::1] ca = np.sqrt(2.0 / (kk + 1.0))
    cdef double[::1] cb = np.sqrt(kk / (kk + 1.0))
    cdef double xx, prev, cur, nxt, logs, scale, val
    cdef double pq = pow(M_PI, -0.25)
    cdef bint bad = False
    with nogil:
        for p in range(npt):
            xx = xv[p]
            prev = 0.0
            cur = pq
            logs = -0.5 * xx * xx
            # exp(logs) is cached while it is safely representable
            scale = exp(logs) if logs > -600.0 else 0.0
            for k in range(n_max + 1):
                if keep_all or k >= n_max - 1:
                    val = cur * scale if scale != 0.0 else _unscale(cur, logs)
                    if not isfinite(val):
                        bad = True
                    if keep_all and k < n_max:
                        o[p, k] = val
                    if k >= n_max - 1:
                        lt[p, k - (n_max - 1)] = val
                if k == n_max:
                    break
                nxt = xx * ca[k] * cur - cb[k] * prev
                if fabs(nxt) > _RESCALE:
                    nxt = nxt / _RESCALE
                    cur = cur / _RESCALE
                    logs = logs + _LOG_RESCALE
                    scale = exp(logs) if logs > -600.0 and logs < 600.0 else 0.0
                prev = cur
                cur = nxt
    if bad:
        raise OverflowError("Hermite recurrence left the representable range")
    return out, last


def hermite_table(int n_max, x):
    out, _ = _hermite_run(n_max, x, True)
    return out


def hermite_tail(int n, x):
    _, last = _hermite_run(n, x, False)
    return np.ascontiguousarray(last[:, 0]), np.ascontiguousarray(last[:, 1])


def cd_kernel_matrix(int n, x, y, double delta):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t nx = xv.shape[0], ny = yv.shape[0], i, j
    pxm_, px_ = hermite_tail(n, xv)
    pym_, py_ = hermite_tail(n, yv)
    cdef double[::1] pxm = pxm_, px = px_, pym = pym_, py = py_
    out = np.empty((nx, ny))
    cdef double[:, ::1] o = out
    cdef double c = sqrt(n / 2.0), d
    near = []
    for i in range(nx):
        for j in range(ny):
            d = xv[i] - yv[j]
            if fabs(d) < delta:
                near.append((i, j))
            else:
                o[i, j] = c * (px[i] * pym[j] - pxm[i] * py[j]) / d
    if near:
        ii = np.array([t[0] for t in near], dtype=np.intp)
        jj = np.array([t[1] for t in near], dtype=np.intp)
        mid = 0.5 * (np.asarray(xv)[ii] + np.asarray(yv)[jj])
        pm, p0 = hermite_tail(n, mid)
        out[ii, jj] = n * (pm * pm + p0 * p0) - sqrt(2.0 * n) * mid * p0 * pm
    return out
