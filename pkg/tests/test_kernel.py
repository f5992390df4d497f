"""Backend twin checks: the compiled kernel and the pure-Python fallback must
produce bit-identical output."""

from array import array

import numpy as np
import pytest

from mpideals._kernel import BACKEND, kernel_py
from mpideals.rng import SplitMix64

try:
    from mpideals._kernel import _kernel_c
except ImportError:
    _kernel_c = None

needs_compiled = pytest.mark.skipif(_kernel_c is None, reason="compiled kernel not built")


def herm_buffers(rng, n):
    a_re = [0.0] * (n * n)
    a_im = [0.0] * (n * n)
    for i in range(n):
        a_re[i * n + i] = rng.runif(-2.0, 2.0)
        for j in range(i + 1, n):
            re, im = rng.runif(-1.0, 1.0), rng.runif(-1.0, 1.0)
            a_re[i * n + j] = re
            a_im[i * n + j] = im
            a_re[j * n + i] = re
            a_im[j * n + i] = -im
    return a_re, a_im


def run_eig(kernel, n, a_re, a_im, threshold=1e-13):
    ar, ai = array("d", a_re), array("d", a_im)
    vr, vi = array("d", bytes(8 * n * n)), array("d", bytes(8 * n * n))
    for i in range(n):
        vr[i * n + i] = 1.0
    sweeps = kernel.jacobi_eig(n, ar, ai, vr, vi, threshold, 60)
    return sweeps, list(ar), list(ai), list(vr), list(vi)


def test_python_kernel_matches_numpy():
    rng = SplitMix64(1)
    for _ in range(100):
        n = 1 + rng.rint(8)
        a_re, a_im = herm_buffers(rng, n)
        _, ar, ai, vr, vi = run_eig(kernel_py, n, a_re, a_im)
        a = np.array(a_re).reshape(n, n) + 1j * np.array(a_im).reshape(n, n)
        d = np.array([ar[i * n + i] for i in range(n)])
        v = np.array(vr).reshape(n, n) + 1j * np.array(vi).reshape(n, n)
        assert np.linalg.norm(a @ v - v @ np.diag(d)) < 1e-12
        assert np.linalg.norm(v.conj().T @ v - np.eye(n)) < 1e-13
        assert np.allclose(np.sort(d), np.linalg.eigvalsh(a), atol=1e-12)


@needs_compiled
def test_backends_bit_identical_eig():
    rng = SplitMix64(2)
    for _ in range(200):
        n = 1 + rng.rint(10)
        a_re, a_im = herm_buffers(rng, n)
        assert run_eig(kernel_py, n, a_re, a_im) == run_eig(_kernel_c, n, a_re, a_im)


@needs_compiled
def test_backends_bit_identical_matmul():
    rng = SplitMix64(3)
    for _ in range(200):
        m, k, n = 1 + rng.rint(7), 1 + rng.rint(7), 1 + rng.rint(7)

        def go(kernel):
            ar = array("d", [rng_vals[i] for i in range(m * k)])
            ai = array("d", [rng_vals[m * k + i] for i in range(m * k)])
            br = array("d", [rng_vals[2 * m * k + i] for i in range(k * n)])
            bi = array("d", [rng_vals[2 * m * k + k * n + i] for i in range(k * n)])
            cr, ci = array("d", bytes(8 * m * n)), array("d", bytes(8 * m * n))
            kernel.matmul(m, k, n, ar, ai, br, bi, cr, ci)
            return list(cr), list(ci)

        rng_vals = [rng.runif(-1.0, 1.0) for _ in range(2 * m * k + 2 * k * n)]
        assert go(kernel_py) == go(_kernel_c)


def test_selected_backend_reported():
    assert BACKEND in ("c", "python")


def test_trivial_sizes():
    for kernel in filter(None, (kernel_py, _kernel_c)):
        assert run_eig(kernel, 0, [], [])[0] == 0
        sweeps, ar, _, vr, _ = run_eig(kernel, 1, [3.5], [0.0])
        assert sweeps == 0 and ar == [3.5] and vr == [1.0]
