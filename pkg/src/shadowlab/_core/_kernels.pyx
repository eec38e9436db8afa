# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: statevector gate application, Born sampling,
snapshot-overlap Gram accumulation and Gaussian-covariance bit sampling.

Signatures mirror shadowlab._core.fallback; buffers are modified in place.
"""
import numpy as np

cimport numpy as cnp

IMPL = "cython"

ctypedef double complex cplx


def apply_1q(cplx[:, ::1] psi, int q, cplx[:, ::1] u):
    cdef Py_ssize_t b = psi.shape[0], n = psi.shape[1]
    cdef Py_ssize_t step = 1 << q, block = step << 1
    cdef Py_ssize_t r, base, off, i0, i1
    cdef cplx u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    cdef cplx a0, a1
    with nogil:
        for r in range(b):
            base = 0
            while base < n:
                for off in range(step):
                    i0 = base + off
                    i1 = i0 + step
                    a0 = psi[r, i0]
                    a1 = psi[r, i1]
                    psi[r, i0] = u00 * a0 + u01 * a1
                    psi[r, i1] = u10 * a0 + u11 * a1
                base += block


def apply_1q_distinct(cplx[:, ::1] psi, int q, cplx[:, :, ::1] u):
    cdef Py_ssize_t b = psi.shape[0], n = psi.shape[1]
    cdef Py_ssize_t step = 1 << q, block = step << 1
    cdef Py_ssize_t r, base, off, i0, i1
    cdef cplx u00, u01, u10, u11, a0, a1
    with nogil:
        for r in range(b):
            u00 = u[r, 0, 0]
            u01 = u[r, 0, 1]
            u10 = u[r, 1, 0]
            u11 = u[r, 1, 1]
            base = 0
            while base < n:
                for off in range(step):
                    i0 = base + off
                    i1 = i0 + step
                    a0 = psi[r, i0]
                    a1 = psi[r, i1]
                    psi[r, i0] = u00 * a0 + u01 * a1
                    psi[r, i1] = u10 * a0 + u11 * a1
                base += block


def apply_2q(cplx[:, ::1] psi, int q1, int q2, cplx[:, ::1] u):
    """4x4 unitary on qubits (q1, q2); index of u is bit(q2)*2 + bit(q1)."""
    cdef Py_ssize_t b = psi.shape[0], n = psi.shape[1]
    cdef Py_ssize_t m1 = 1 << q1, m2 = 1 << q2
    cdef Py_ssize_t r, i, i00, i01, i10, i11
    cdef cplx v0, v1, v2, v3
    cdef cplx u00 = u[0, 0], u01 = u[0, 1], u02 = u[0, 2], u03 = u[0, 3]
    cdef cplx u10 = u[1, 0], u11 = u[1, 1], u12 = u[1, 2], u13 = u[1, 3]
    cdef cplx u20 = u[2, 0], u21 = u[2, 1], u22 = u[2, 2], u23 = u[2, 3]
    cdef cplx u30 = u[3, 0], u31 = u[3, 1], u32 = u[3, 2], u33 = u[3, 3]
    with nogil:
        for r in range(b):
            for i in range(n):
                if (i & m1) or (i & m2):
                    continue
                i00 = i
                i01 = i | m1
                i10 = i | m2
                i11 = i | m1 | m2
                v0 = psi[r, i00]
                v1 = psi[r, i01]
                v2 = psi[r, i10]
                v3 = psi[r, i11]
                psi[r, i00] = u00 * v0 + u01 * v1 + u02 * v2 + u03 * v3
                psi[r, i01] = u10 * v0 + u11 * v1 + u12 * v2 + u13 * v3
                psi[r, i10] = u20 * v0 + u21 * v1 + u22 * v2 + u23 * v3
                psi[r, i11] = u30 * v0 + u31 * v1 + u32 * v2 + u33 * v3


def apply_cx(cplx[:, ::1] psi, int control, int target):
    cdef Py_ssize_t b = psi.shape[0], n = psi.shape[1]
    cdef Py_ssize_t mc = 1 << control, mt = 1 << target
    cdef Py_ssize_t r, i, j
    cdef cplx tmp
    with nogil:
        for r in range(b):
            for i in range(n):
                if (i & mc) and not (i & mt):
                    j = i | mt
                    tmp = psi[r, i]
                    psi[r, i] = psi[r, j]
                    psi[r, j] = tmp


def apply_cz(cplx[:, ::1] psi, int q1, int q2):
    cdef Py_ssize_t b = psi.shape[0], n = psi.shape[1]
    cdef Py_ssize_t m1 = 1 << q1, m2 = 1 << q2
    cdef Py_ssize_t r, i
    with nogil:
        for r in range(b):
            for i in range(n):
                if (i & m1) and (i & m2):
                    psi[r, i] = -psi[r, i]


def born_sample(cplx[:, ::1] psi, double[::1] uniforms, long[::1] out):
    cdef Py_ssize_t b = psi.shape[0], n = psi.shape[1]
    cdef Py_ssize_t r, i
    cdef double total, acc, thr, p
    cdef cplx a
    with nogil:
        for r in range(b):
            total = 0.0
            for i in range(n):
                a = psi[r, i]
                total += a.real * a.real + a.imag * a.imag
            thr = uniforms[r] * total
            acc = 0.0
            out[r] = n - 1
            for i in range(n):
                a = psi[r, i]
                acc += a.real * a.real + a.imag * a.imag
                if acc > thr:
                    out[r] = i
                    break


def overlap_gram(cplx[:, :, ::1] rows_a, cplx[:, :, ::1] rows_b, double[:, ::1] out):
    """out[t,s] = sum_i (9|<row_a[t,i]|row_b[s,i]>|^2 - 4)."""
    cdef Py_ssize_t ta = rows_a.shape[0], tb = rows_b.shape[0], nq = rows_a.shape[1]
    cdef Py_ssize_t t, s, i
    cdef cplx z
    cdef double acc
    with nogil:
        for t in range(ta):
            for s in range(tb):
                acc = 0.0
                for i in range(nq):
                    z = (rows_a[t, i, 0] * rows_b[s, i, 0].conjugate()
                         + rows_a[t, i, 1] * rows_b[s, i, 1].conjugate())
                    acc += 9.0 * (z.real * z.real + z.imag * z.imag) - 4.0
                out[t, s] = acc


def rotate_block(double[:, :, ::1] m, int k0, double[:, ::1] o):
    """M <- O_emb M O_emb^T per row; o is 4x4 on coordinates k0..k0+3."""
    cdef Py_ssize_t b = m.shape[0], d = m.shape[1]
    cdef Py_ssize_t r, i, j
    cdef double t0, t1, t2, t3
    cdef double o00 = o[0, 0], o01 = o[0, 1], o02 = o[0, 2], o03 = o[0, 3]
    cdef double o10 = o[1, 0], o11 = o[1, 1], o12 = o[1, 2], o13 = o[1, 3]
    cdef double o20 = o[2, 0], o21 = o[2, 1], o22 = o[2, 2], o23 = o[2, 3]
    cdef double o30 = o[3, 0], o31 = o[3, 1], o32 = o[3, 2], o33 = o[3, 3]
    with nogil:
        for r in range(b):
            for j in range(d):
                t0 = m[r, k0, j]
                t1 = m[r, k0 + 1, j]
                t2 = m[r, k0 + 2, j]
                t3 = m[r, k0 + 3, j]
                m[r, k0, j] = o00 * t0 + o01 * t1 + o02 * t2 + o03 * t3
                m[r, k0 + 1, j] = o10 * t0 + o11 * t1 + o12 * t2 + o13 * t3
                m[r, k0 + 2, j] = o20 * t0 + o21 * t1 + o22 * t2 + o23 * t3
                m[r, k0 + 3, j] = o30 * t0 + o31 * t1 + o32 * t2 + o33 * t3
            for i in range(d):
                t0 = m[r, i, k0]
                t1 = m[r, i, k0 + 1]
                t2 = m[r, i, k0 + 2]
                t3 = m[r, i, k0 + 3]
                m[r, i, k0] = t0 * o00 + t1 * o01 + t2 * o02 + t3 * o03
                m[r, i, k0 + 1] = t0 * o10 + t1 * o11 + t2 * o12 + t3 * o13
                m[r, i, k0 + 2] = t0 * o20 + t1 * o21 + t2 * o22 + t3 * o23
                m[r, i, k0 + 3] = t0 * o30 + t1 * o31 + t2 * o32 + t3 * o33


def gaussian_sample(double[:, :, ::1] m, double[:, ::1] uniforms, cnp.uint8_t[:, ::1] bits):
    """Sample occupations from (B, 2n, 2n) pure-Gaussian covariances (destroyed)."""
    cdef Py_ssize_t b = m.shape[0], d = m.shape[1], n = d // 2
    cdef Py_ssize_t r, j, k, p, q
    cdef double mj, p1, s, denom, w, ap, cp
    with nogil:
        for r in range(b):
            for j in range(n):
                k = 2 * j
                mj = m[r, k, k + 1]
                if mj > 1.0:
                    mj = 1.0
                elif mj < -1.0:
                    mj = -1.0
                p1 = 0.5 * (1.0 + mj)
                if uniforms[r, j] < p1:
                    bits[r, j] = 1
                    s = 1.0
                else:
                    bits[r, j] = 0
                    s = -1.0
                if j == n - 1:
                    break
                denom = 1.0 + s * mj
                if denom < 1e-12:
                    w = 0.0
                else:
                    w = s / denom
                for p in range(k + 2, d):
                    ap = m[r, p, k]
                    cp = m[r, p, k + 1]
                    for q in range(k + 2, d):
                        m[r, p, q] += w * (cp * m[r, q, k] - ap * m[r, q, k + 1])
