"""Seeded construction of matrices, elements, and ideals.

All generators draw from a SplitMix64 stream, so every instance is a pure
function of the seed.  Singular values are always placed either at exactly
zero or inside [0.25, 2.5]: the theorems quantify over hypotheses (clean
rank, spectral gaps) that the generators must establish by construction, and
the gray zone between rank_tol and cluster_gap is deliberately left empty.
"""

from __future__ import annotations

from .algebra import BlockElement, DimensionTable, DualIdeal
from . import linalg
from .linalg import CMatrix
from .rng import SplitMix64


def random_hermitian(rng: SplitMix64, n: int, scale: float = 1.0) -> CMatrix:
    rows = [[0.0j] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = complex(rng.runif(-scale, scale), 0.0)
        for j in range(i + 1, n):
            z = rng.rcomplex(scale)
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return CMatrix.from_rows(rows)


def random_unitary(rng: SplitMix64, n: int) -> CMatrix:
    """Unitary matrix: the eigenvector basis of a random Hermitian matrix."""
    if n == 0:
        return CMatrix.zeros(0, 0)
    return linalg.herm_eig(random_hermitian(rng, n)).eigenvectors


def random_matrix(rng: SplitMix64, m: int, n: int, scale: float = 1.0) -> CMatrix:
    return CMatrix(m, n, tuple(rng.rcomplex(scale) for _ in range(m * n)))


def random_sigma_matrix(
    rng: SplitMix64,
    m: int,
    n: int,
    rank: int,
    smin: float = 0.25,
    smax: float = 2.5,
) -> CMatrix:
    """m x n matrix with exactly `rank` singular values, all in [smin, smax]."""
    u = random_unitary(rng, m)
    v = random_unitary(rng, n)
    k = min(m, n)
    svals = sorted((rng.runif(smin, smax) for _ in range(rank)), reverse=True)
    svals += [0.0] * (k - rank)
    s = CMatrix(m, n, tuple(svals[i] if (i == j and i < k) else 0.0 for i in range(m) for j in range(n)))
    return u @ s @ v.h


def random_invertible(rng: SplitMix64, n: int) -> CMatrix:
    return random_sigma_matrix(rng, n, n, n)


def random_projection_matrix(rng: SplitMix64, n: int, rank: int) -> CMatrix:
    """Exact orthogonal projection of the given rank."""
    u = random_unitary(rng, n)
    flags = [1.0 if i < rank else 0.0 for i in range(n)]
    p = u @ CMatrix.diag(flags) @ u.h
    return 0.5 * (p + p.h)


def random_spectrum_hermitian(rng: SplitMix64, n: int, values) -> CMatrix:
    """Hermitian matrix with the given eigenvalues in a random basis."""
    u = random_unitary(rng, n)
    h = u @ CMatrix.diag([complex(v, 0.0) for v in values]) @ u.h
    return 0.5 * (h + h.h)


def random_skew(rng: SplitMix64, n: int, scale: float) -> CMatrix:
    """Skew-adjoint matrix (k.h == -k) of roughly the given norm scale."""
    m = random_matrix(rng, n, n, scale)
    return 0.5 * (m - m.h)


DEFAULT_PROFILE = ((0, 1), (1, 2), (2, 2), (3, 3), (4, 3), (5, 4), (6, 4), (7, 5))


def table_from_profile(profile=DEFAULT_PROFILE) -> DimensionTable:
    return DimensionTable({t: n for t, n in profile})


def random_ideal(rng: SplitMix64, table: DimensionTable, allow_empty: bool = False) -> DualIdeal:
    support = frozenset(t for t in table.indices if rng.rbool())
    if not support and not allow_empty:
        support = frozenset({table.indices[rng.rint(len(table.indices))]})
    return DualIdeal(table, support)


def random_element(
    rng: SplitMix64,
    table: DimensionTable,
    density: float = 0.6,
    scale: float = 1.0,
    gamma: complex | None = None,
) -> BlockElement:
    if gamma is None:
        gamma = rng.rcomplex(scale)
    blocks = {}
    for t in table.indices:
        if rng.rbool(density):
            n = table.dim(t)
            blocks[t] = random_matrix(rng, n, n, scale)
    return BlockElement(table, gamma, blocks)


def random_ideal_element(
    rng: SplitMix64,
    table: DimensionTable,
    ideal: DualIdeal,
    density: float = 0.8,
    scale: float = 1.0,
    self_adjoint: bool = False,
) -> BlockElement:
    blocks = {}
    for t in sorted(ideal.support):
        if rng.rbool(density):
            n = table.dim(t)
            m = random_matrix(rng, n, n, scale)
            blocks[t] = 0.5 * (m + m.h) if self_adjoint else m
    return BlockElement(table, 0.0j, blocks)


def random_invertible_element(rng: SplitMix64, table: DimensionTable, density: float = 0.6) -> BlockElement:
    """Element with |gamma| and every represented block comfortably invertible."""
    phase_re = rng.runif(-1.0, 1.0)
    phase_im = rng.runif(-1.0, 1.0)
    mag = rng.runif(0.3, 2.0)
    norm = (phase_re**2 + phase_im**2) ** 0.5 or 1.0
    gamma = complex(mag * phase_re / norm, mag * phase_im / norm)
    full = {}
    for t in table.indices:
        if rng.rbool(density):
            n = table.dim(t)
            full[t] = random_invertible(rng, n)
    return table.from_full_blocks(gamma, full)
