# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: batched Hermitian Jacobi eigenvalues and convex clipping.

The pure-Python twin lives in ``_kernels_py``; both expose the same two
functions with the same signatures.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot

cnp.import_array()

cdef extern from "complex.h" nogil:
    double creal(double complex)
    double cimag(double complex)
    double complex conj(double complex)
    double cabs(double complex)


cdef int _jacobi_one(double complex[:, ::1] h, int n, double tol, int max_sweeps) nogil:
    cdef int sweep, p, q, k
    cdef double off, fro, thresh, r, a, b, theta, t, cs, sn
    cdef double complex e, g_qp, g_qq, hkp, hkq, hpk, hqk
    fro = 0.0
    for p in range(n):
        for q in range(n):
            fro += creal(h[p, q]) * creal(h[p, q]) + cimag(h[p, q]) * cimag(h[p, q])
    fro = sqrt(fro)
    thresh = tol * (fro if fro > 1.0 else 1.0)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * (creal(h[p, q]) * creal(h[p, q]) + cimag(h[p, q]) * cimag(h[p, q]))
        if sqrt(off) <= thresh:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = cabs(h[p, q])
                if r < 1e-300:
                    continue
                a = creal(h[p, p])
                b = creal(h[q, q])
                e = h[p, q] / r
                theta = (b - a) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + hypot(theta, 1.0))
                else:
                    t = -1.0 / (-theta + hypot(theta, 1.0))
                cs = 1.0 / sqrt(1.0 + t * t)
                sn = t * cs
                g_qp = -sn * conj(e)
                g_qq = cs * conj(e)
                for k in range(n):
                    hkp = h[k, p]
                    hkq = h[k, q]
                    h[k, p] = hkp * cs + hkq * g_qp
                    h[k, q] = hkp * sn + hkq * g_qq
                for k in range(n):
                    hpk = h[p, k]
                    hqk = h[q, k]
                    h[p, k] = cs * hpk + conj(g_qp) * hqk
                    h[q, k] = sn * hpk + conj(g_qq) * hqk
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = a - t * r
                h[q, q] = b + t * r
    return -1


def eigvalsh_batch(stack, double tol=1e-13, int max_sweeps=100):
    """Ascending eigenvalues of each Hermitian matrix in a (B, n, n) stack.

    Returns ``(values, sweeps)``; ``sweeps[i] == -1`` marks a matrix that did
    not converge within ``max_sweeps`` cyclic sweeps.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] work = np.array(stack, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t nb = work.shape[0]
    cdef int n = <int>work.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] vals = np.empty((nb, n), dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] sweeps = np.empty(nb, dtype=np.int64)
    cdef long long[::1] sv = sweeps
    cdef double complex[:, :, ::1] wv = work
    cdef double[:, ::1] vv = vals
    cdef Py_ssize_t i
    cdef int j, m
    cdef double x
    with nogil:
        for i in range(nb):
            sv[i] = _jacobi_one(wv[i], n, tol, max_sweeps)
            for j in range(n):
                vv[i, j] = creal(wv[i, j, j])
            # insertion sort; n is small
            for j in range(1, n):
                x = vv[i, j]
                m = j - 1
                while m >= 0 and vv[i, m] > x:
                    vv[i, m + 1] = vv[i, m]
                    m -= 1
                vv[i, m + 1] = x
    return vals, sweeps


def clip_convex(poly, normals, offsets, double slack=1e-12):
    """Clip a closed vertex loop by half-planes ``Re(conj(n) * w) <= c``.

    Vertices within ``slack`` of a boundary line are kept; an edge is split
    only where its endpoints lie strictly on opposite sides of the slack band.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] nv = np.ascontiguousarray(normals, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cv = np.ascontiguousarray(offsets, dtype=np.float64)
    cdef Py_ssize_t m0 = len(poly)
    cdef Py_ssize_t cap = m0 + 2 * nv.shape[0] + 4
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] buf_a = np.zeros(cap, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] buf_b = np.zeros(cap, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dist = np.zeros(cap, dtype=np.float64)
    cdef double complex[::1] src = buf_a
    cdef double complex[::1] dst = buf_b
    cdef double complex[::1] tmp
    cdef double complex[::1] nvv = nv
    cdef double[::1] cvv = cv
    cdef double[::1] dd = dist
    cdef Py_ssize_t count = m0, out, i, j, h
    cdef double complex nrm, vi, vj
    cdef double di, dj, s
    buf_a[:m0] = np.asarray(poly, dtype=np.complex128)
    with nogil:
        for h in range(nvv.shape[0]):
            if count == 0:
                break
            nrm = nvv[h]
            for i in range(count):
                dd[i] = creal(conj(nrm) * src[i]) - cvv[h]
            out = 0
            for i in range(count):
                j = i + 1
                if j == count:
                    j = 0
                vi = src[i]
                vj = src[j]
                di = dd[i]
                dj = dd[j]
                if di <= slack:
                    dst[out] = vi
                    out += 1
                if count > 1 and ((di < -slack and dj > slack) or (di > slack and dj < -slack)):
                    s = di / (di - dj)
                    dst[out] = vi + (vj - vi) * s
                    out += 1
            # drop consecutive duplicates
            count = 0
            for i in range(out):
                if count == 0 or cabs(dst[i] - dst[count - 1]) > slack:
                    dst[count] = dst[i]
                    count += 1
            if count > 1 and cabs(dst[count - 1] - dst[0]) <= slack:
                count -= 1
            tmp = src
            src = dst
            dst = tmp
    return np.asarray(src)[:count].copy()
