"""Pure-Python kernel: cyclic Jacobi diagonalization and complex matmul.

This is the fallback twin of the compiled kernel in _kernel_c.pyx.  Both
implement the same floating point operations in the same order (plain double
arithmetic plus sqrt, no fused multiply-adds), so they produce bit-identical
results on the same input.

Storage convention: a complex n x m matrix is a pair of flat row-major
buffers (real parts, imaginary parts).  jacobi_eig works in place.
"""

from __future__ import annotations

from math import sqrt


def jacobi_eig(n, a_re, a_im, v_re, v_im, threshold, max_sweeps):
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations, in place.

    a_re/a_im hold the full Hermitian matrix with an exactly real diagonal;
    on return the diagonal of a_re carries the (unsorted) eigenvalues.
    v_re/v_im must hold the identity on entry; their columns accumulate the
    eigenvectors.  Sweeping stops once the off-diagonal Frobenius mass is at
    most `threshold`.  Returns the number of sweeps performed.
    """
    if n < 2:
        return 0
    thr2 = threshold * threshold
    skip = threshold / (2.0 * n)
    skip2 = skip * skip
    sweeps = 0
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
                # unit phase of the pivot entry
                pr = re / r
                pi = im / r
                app = a_re[p * n + p]
                aqq = a_re[q * n + q]
                tau = (aqq - app) / (2.0 * r)
                # smaller root of t^2 - 2*tau*t - 1 = 0
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
                    # Hermitian mirror of the two updated columns
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


def matmul(m, k, n, a_re, a_im, b_re, b_im, c_re, c_im):
    """c = a @ b for an (m x k) times (k x n) product, flat row-major buffers."""
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
