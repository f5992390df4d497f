# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel: cyclic Jacobi diagonalization and complex matmul.

Twin of kernel_py.py.  The arithmetic (operation set, operand order) matches
the pure-Python implementation exactly; together with -ffp-contract=off this
makes the two kernels bit-identical.  See kernel_py.py for the storage and
in-place conventions.
"""

from libc.math cimport sqrt


def jacobi_eig(int n, double[::1] a_re, double[::1] a_im,
               double[::1] v_re, double[::1] v_im,
               double threshold, int max_sweeps):
    cdef int sweeps = 0
    cdef int p, q, i, pq, ip, iq, pi_, qi, base
    cdef double thr2, skip, skip2, off2, re, im, mod2, r, pr, pi, app, aqq
    cdef double tau, t, c, s, spr, spi, xr, xi, yr, yi, nipr, nipi, niqr, niqi
    if n < 2:
        return 0
    thr2 = threshold * threshold
    skip = threshold / (2.0 * n)
    skip2 = skip * skip
    while sweeps < max_sweeps:
        off2 = 0.0
        for p in range(n - 1):
            base = p * n
            for q in range(p + 1, n):
                re = a_re[base + q]
                im = a_im[base + q]
                off2 += 2.0 * (re * re + im * im)
        if off2 <= thr2:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                pq = p * n + q
                re = a_re[pq]
                im = a_im[pq]
                mod2 = re * re + im * im
                if mod2 <= skip2:
                    continue
                r = sqrt(mod2)
                pr = re / r
                pi = im / r
                app = a_re[p * n + p]
                aqq = a_re[q * n + q]
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = -1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                spr = s * pr
                spi = s * pi
                a_re[p * n + p] = app + t * r
                a_re[q * n + q] = aqq - t * r
                a_re[pq] = 0.0
                a_im[pq] = 0.0
                a_re[q * n + p] = 0.0
                a_im[q * n + p] = 0.0
                for i in range(n):
                    if i == p or i == q:
                        continue
                    ip = i * n + p
                    iq = i * n + q
                    xr = a_re[ip]
                    xi = a_im[ip]
                    yr = a_re[iq]
                    yi = a_im[iq]
                    nipr = c * xr + (spr * yr + spi * yi)
                    nipi = c * xi + (spr * yi - spi * yr)
                    niqr = c * yr - (spr * xr - spi * xi)
                    niqi = c * yi - (spr * xi + spi * xr)
                    a_re[ip] = nipr
                    a_im[ip] = nipi
                    a_re[iq] = niqr
                    a_im[iq] = niqi
                    pi_ = p * n + i
                    qi = q * n + i
                    a_re[pi_] = nipr
                    a_im[pi_] = -nipi
                    a_re[qi] = niqr
                    a_im[qi] = -niqi
                for i in range(n):
                    ip = i * n + p
                    iq = i * n + q
                    xr = v_re[ip]
                    xi = v_im[ip]
                    yr = v_re[iq]
                    yi = v_im[iq]
                    v_re[ip] = c * xr + (spr * yr + spi * yi)
                    v_im[ip] = c * xi + (spr * yi - spi * yr)
                    v_re[iq] = c * yr - (spr * xr - spi * xi)
                    v_im[iq] = c * yi - (spr * xi + spi * xr)
    return sweeps


def matmul(int m, int k, int n, double[::1] a_re, double[::1] a_im,
           double[::1] b_re, double[::1] b_im,
           double[::1] c_re, double[::1] c_im):
    cdef int i, j, l, arow, crow
    cdef double sr, si, ar, ai, br, bi
    for i in range(m):
        arow = i * k
        crow = i * n
        for j in range(n):
            sr = 0.0
            si = 0.0
            for l in range(k):
                ar = a_re[arow + l]
                ai = a_im[arow + l]
                br = b_re[l * n + j]
                bi = b_im[l * n + j]
                sr += ar * br - ai * bi
                si += ar * bi + ai * br
            c_re[crow + j] = sr
            c_im[crow + j] = si
