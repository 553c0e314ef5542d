# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cyclic Jacobi eigensolver for complex Hermitian matrices.

Sweeps over all off-diagonal pairs, annihilating each entry with a
phase rotation composed with a real Jacobi rotation, until the
off-diagonal Frobenius mass falls below 1e-13 times the Frobenius
norm of the input (or 100 sweeps, whichever comes first).
"""

import numpy as np

from libc.math cimport hypot, sqrt


def jacobi_eigh(H):
    """Return (w, V) with H = V @ diag(w) @ V.conj().T, w unsorted."""
    A = np.array(H, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    if n == 1:
        return A.real.reshape(1).copy(), V

    cdef double complex[:, ::1] a = A
    cdef double complex[:, ::1] v = V
    cdef double fro = 0.0
    cdef Py_ssize_t i, j, p, q, k
    cdef double complex apq, ph, phc, t1, t2
    cdef double off, app, aqq, r, tau, t, c, s, thresh

    for i in range(n):
        for j in range(n):
            fro += (a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag)
    fro = sqrt(fro)
    thresh = 1e-13 * fro
    if fro == 0.0:
        return np.zeros(n), V

    cdef int sweep
    for sweep in range(100):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * (a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag)
        off = sqrt(off)
        if off <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = hypot(apq.real, apq.imag)
                if r <= 1e-300:
                    continue
                ph = apq / r
                phc = ph.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # pair rotation G = [[c, s*ph], [-s*conj(ph), c]];
                # apply A <- G^H A G on columns then rows, V <- V G
                for k in range(n):
                    t1 = a[k, p]
                    t2 = a[k, q]
                    a[k, p] = c * t1 - s * phc * t2
                    a[k, q] = s * ph * t1 + c * t2
                for k in range(n):
                    t1 = a[p, k]
                    t2 = a[q, k]
                    a[p, k] = c * t1 - s * ph * t2
                    a[q, k] = s * phc * t1 + c * t2
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    t1 = v[k, p]
                    t2 = v[k, q]
                    v[k, p] = c * t1 - s * phc * t2
                    v[k, q] = s * ph * t1 + c * t2

    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, V
