import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpideals.errors import DimensionMismatch, NonFinite, NonHermitian, Singular
from mpideals.generators import random_hermitian, random_sigma_matrix
from mpideals.linalg import (
    CMatrix,
    herm_eig,
    inverse,
    kernel_projection,
    op_norm,
    power_norm,
    rank_of,
    singular_values,
    solve,
    spectral_pinv,
)
from mpideals.rng import SplitMix64

from conftest import to_numpy


class TestCMatrix:
    def test_rejects_nan(self):
        with pytest.raises(NonFinite):
            CMatrix(1, 1, [float("nan")])

    def test_rejects_bad_shape(self):
        with pytest.raises(DimensionMismatch):
            CMatrix(2, 2, [1, 2, 3])

    def test_empty_matrices_are_legal(self):
        z = CMatrix.zeros(0, 0)
        assert op_norm(z) == 0.0
        assert (z @ z).rows == 0
        assert singular_values(z) == ()

    def test_adjoint_involution(self, rng):
        a = random_sigma_matrix(rng, 4, 3, 3)
        assert a.h.h == a

    def test_matmul_against_numpy(self, rng):
        for _ in range(30):
            m, k, n = 1 + rng.rint(6), 1 + rng.rint(6), 1 + rng.rint(6)
            a = CMatrix(m, k, tuple(rng.rcomplex() for _ in range(m * k)))
            b = CMatrix(k, n, tuple(rng.rcomplex() for _ in range(k * n)))
            assert np.allclose(to_numpy(a @ b), to_numpy(a) @ to_numpy(b), atol=1e-13)


class TestHermEig:
    def test_diagonal(self):
        eig = herm_eig(CMatrix.diag([2.0, 3.0]))
        assert eig.eigenvalues == (2.0, 3.0)
        assert eig.eigenvectors == CMatrix.identity(2)

    def test_swap_matrix(self):
        eig = herm_eig(CMatrix.from_rows([[0, 1], [1, 0]]))
        assert eig.eigenvalues == pytest.approx((-1.0, 1.0), abs=1e-14)

    def test_analytic_two_by_two(self):
        # trace 5, det 4: eigenvalues 1 and 4
        eig = herm_eig(CMatrix.from_rows([[2, 1 - 1j], [1 + 1j, 3]]))
        assert eig.eigenvalues == pytest.approx((1.0, 4.0), abs=1e-12)

    def test_seeded_six_by_six_reconstruction(self):
        rng = SplitMix64(606)
        a = random_hermitian(rng, 6)
        eig = herm_eig(a)
        recon = eig.eigenvectors @ CMatrix.diag(eig.eigenvalues) @ eig.eigenvectors.h
        assert (a - recon).fro() <= 1e-10

    def test_invariants_over_seeded_batch(self):
        # unitarity, reconstruction, and the trace identity, sizes 1 to 8
        rng = SplitMix64(77)
        for _ in range(1000):
            n = 1 + rng.rint(8)
            a = random_hermitian(rng, n)
            eig = herm_eig(a)
            assert all(x <= y for x, y in zip(eig.eigenvalues, eig.eigenvalues[1:]))
            u = eig.eigenvectors
            assert (u.h @ u - CMatrix.identity(n)).fro() <= 1e-11
            recon = u @ CMatrix.diag(eig.eigenvalues) @ u.h
            scale = max(1.0, max(abs(w) for w in eig.eigenvalues))
            assert (a - recon).fro() <= 1e-11 * scale
            assert abs(sum(eig.eigenvalues) - a.trace().real) <= 1e-9 * max(1.0, op_norm(a))

    def test_deterministic(self):
        rng = SplitMix64(5)
        a = random_hermitian(rng, 5)
        e1, e2 = herm_eig(a), herm_eig(a)
        assert e1.eigenvalues == e2.eigenvalues
        assert e1.eigenvectors == e2.eigenvectors

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitian):
            herm_eig(CMatrix.from_rows([[0, 1], [0, 0]]))
        with pytest.raises(NonHermitian):
            herm_eig(CMatrix.zeros(2, 3))


class TestOpNorm:
    def test_identity(self):
        assert op_norm(CMatrix.identity(4)) == pytest.approx(1.0, abs=1e-13)

    def test_rank_one(self, rng):
        u = [rng.rcomplex() for _ in range(4)]
        v = [rng.rcomplex() for _ in range(3)]
        a = CMatrix(4, 3, tuple(ui * vj.conjugate() for ui in u for vj in v))
        nu = sum(abs(x) ** 2 for x in u) ** 0.5
        nv = sum(abs(x) ** 2 for x in v) ** 0.5
        assert op_norm(a) == pytest.approx(nu * nv, rel=1e-12)

    def test_seeded_five_by_four_against_power_oracle(self):
        rng = SplitMix64(54)
        a = CMatrix(5, 4, tuple(rng.rcomplex() for _ in range(20)))
        assert abs(op_norm(a) - power_norm(a)) <= 1e-9
        assert op_norm(a) == pytest.approx(np.linalg.norm(to_numpy(a), 2), abs=1e-12)

    def test_adjoint_invariance(self, rng):
        for _ in range(20):
            a = CMatrix(3, 5, tuple(rng.rcomplex() for _ in range(15)))
            assert abs(op_norm(a) - op_norm(a.h)) <= 1e-11

    def test_submultiplicative_on_random_pairs(self):
        rng = SplitMix64(808)
        for _ in range(200):
            n = 1 + rng.rint(6)
            a = CMatrix(n, n, tuple(rng.rcomplex() for _ in range(n * n)))
            b = CMatrix(n, n, tuple(rng.rcomplex() for _ in range(n * n)))
            assert op_norm(a @ b) <= op_norm(a) * op_norm(b) + 1e-9

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(st.floats(min_value=-4.0, max_value=4.0), st.integers(min_value=1, max_value=5),
           st.integers(min_value=0, max_value=2**31 - 1))
    def test_absolute_homogeneity(self, scalar, n, seed):
        rng = SplitMix64(seed)
        a = CMatrix(n, n, tuple(rng.rcomplex() for _ in range(n * n)))
        assert op_norm(scalar * a) == pytest.approx(abs(scalar) * op_norm(a), abs=1e-10)


class TestSolve:
    def test_identity_matrix(self, rng):
        b = CMatrix(3, 2, tuple(rng.rcomplex() for _ in range(6)))
        assert (solve(CMatrix.identity(3), b) - b).fro() <= 1e-14

    def test_diagonal(self):
        x = solve(CMatrix.diag([2.0, 4.0]), CMatrix.identity(2))
        assert x == CMatrix.diag([0.5, 0.25])

    def test_seeded_well_conditioned_residual(self):
        rng = SplitMix64(66)
        a = random_sigma_matrix(rng, 6, 6, 6)
        b = CMatrix(6, 6, tuple(rng.rcomplex() for _ in range(36)))
        x = solve(a, b)
        assert (a @ x - b).fro() <= 1e-10 * max(1.0, b.fro())

    def test_rejects_singular(self):
        with pytest.raises(Singular):
            solve(CMatrix.diag([1.0, 0.0]), CMatrix.identity(2))

    def test_inverse_roundtrip(self, rng):
        a = random_sigma_matrix(rng, 5, 5, 5)
        assert (a @ inverse(a) - CMatrix.identity(5)).fro() <= 1e-10


class TestRankAndPinv:
    def test_rank_decision_exact(self, rng):
        for _ in range(50):
            m, n = 1 + rng.rint(7), 1 + rng.rint(7)
            r = rng.rint(min(m, n) + 1)
            assert rank_of(random_sigma_matrix(rng, m, n, r)) == r

    def test_spectral_pinv_against_numpy(self, rng):
        for _ in range(50):
            m, n = 1 + rng.rint(6), 1 + rng.rint(6)
            r = rng.rint(min(m, n) + 1)
            a = random_sigma_matrix(rng, m, n, r)
            p = spectral_pinv(a)
            assert np.allclose(to_numpy(p), np.linalg.pinv(to_numpy(a), rcond=1e-9), atol=1e-10)

    def test_kernel_projection_annihilates(self, rng):
        for _ in range(30):
            m, n = 1 + rng.rint(6), 1 + rng.rint(6)
            r = rng.rint(min(m, n) + 1)
            a = random_sigma_matrix(rng, m, n, r)
            k = kernel_projection(a)
            assert op_norm(a @ k) <= 1e-10
            assert (k @ k - k).fro() <= 1e-11
            assert rank_of(k) == n - r

    def test_singular_values_match_numpy(self, rng):
        for _ in range(30):
            m, n = 1 + rng.rint(6), 1 + rng.rint(6)
            a = CMatrix(m, n, tuple(rng.rcomplex() for _ in range(m * n)))
            sv = singular_values(a)
            ref = np.linalg.svd(to_numpy(a), compute_uv=False)
            assert np.allclose(sv, ref, atol=1e-11)
