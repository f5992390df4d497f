"""Continuous functional calculus and spectral projections.

Works on self-adjoint matrices and block elements.  Floating-point spectra
are never exactly isolated, so eigenvalues within cluster_tol of each other
are merged into clusters first; scalar functions are evaluated once per
cluster representative.  Spectral projections additionally require the
cluster to be separated from the rest of the spectrum by cluster_gap.

Minimal projections in the block model are the rank-one projections living in
a single block; minimal_projection_decompose peels a positive ideal element
into scalar multiples of such projections, largest spectral value first, so
the error after finishing a cluster equals the next cluster value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    BlockElement,
    DualIdeal,
    cluster_points,
    frobenius_pairing,
    in_ideal,
    is_self_adjoint,
    norm,
)
from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    NonHermitian,
    NotInIdeal,
    NotIsolated,
    NotPositive,
    NotProjection,
    PreconditionFailed,
    UndefinedOnCluster,
    ZeroElement,
)
from . import linalg
from .linalg import CMatrix


@dataclass(frozen=True)
class SpectralCluster:
    value: float
    projection: object  # CMatrix or BlockElement
    multiplicity: int   # eigenvalue count across represented blocks
    contains_tail: bool  # block elements only: scalar part lies in this cluster


@dataclass(frozen=True)
class SpectralDecomposition:
    """Clusters in strictly decreasing order of spectral value."""

    clusters: tuple


def _matrix_sym(a: CMatrix) -> CMatrix:
    return 0.5 * (a + a.h)


def _check_matrix_sa(a: CMatrix, tols: Tolerances):
    if not a.is_square:
        raise NonHermitian("matrix is not square")
    if (a - a.h).fro() > tols.herm_tol * max(1.0, a.fro()):
        raise NonHermitian("matrix fails the self-adjointness check")


@dataclass(frozen=True)
class _BlockEig:
    """Per-block eigendata of a self-adjoint block element, plus the global
    clustering of {gamma} and all block eigenvalues."""

    gamma: float
    eigs: dict          # t -> HermEigen of the represented (symmetrized) block
    clusters: list      # list of Cluster over the flat value list
    values: list        # flat value list; index 0 is gamma
    owners: list        # parallel to values: None for gamma, else (t, position)


def _block_eigendata(a: BlockElement, tols: Tolerances) -> _BlockEig:
    if not is_self_adjoint(a, tols):
        raise NonHermitian("element fails the self-adjointness check")
    gamma = a.gamma.real
    values = [gamma]
    owners = [None]
    eigs = {}
    for t in a.support:
        eig = linalg.herm_eig(_matrix_sym(a.rep(t)), tols)
        eigs[t] = eig
        for pos, w in enumerate(eig.eigenvalues):
            values.append(w)
            owners.append((t, pos))
    width = tols.cluster_tol * max(1.0, norm(a, tols))
    clusters = cluster_points(values, width)
    return _BlockEig(gamma, eigs, clusters, values, owners)


def _eval_on_cluster(f, value: float) -> complex:
    try:
        out = f(value)
    except Exception as exc:
        raise UndefinedOnCluster(f"function undefined at spectral cluster {value!r}: {exc}") from exc
    if out is None:
        raise UndefinedOnCluster(f"function undefined at spectral cluster {value!r}")
    return complex(out)


def functional_calculus(a, f, tols: Tolerances = DEFAULT_TOLS):
    """Apply a scalar function to a self-adjoint matrix or block element.

    `f` is called once on each spectral cluster representative.  The result
    commutes with `a`, is self-adjoint when f is real on the spectrum, and
    reproduces `a` for the identity function, all at working precision.
    """
    if isinstance(a, CMatrix):
        _check_matrix_sa(a, tols)
        sym = _matrix_sym(a)
        n = a.rows
        if n == 0:
            return CMatrix.zeros(0, 0)
        eig = linalg.herm_eig(sym, tols)
        width = tols.cluster_tol * max(1.0, linalg.op_norm(a, tols))
        clusters = cluster_points(list(eig.eigenvalues), width)
        fval = {}
        for c in clusters:
            y = _eval_on_cluster(f, c.value)
            for i in c.members:
                fval[i] = y
        diag = [fval[i] for i in range(n)]
        out = eig.eigenvectors @ CMatrix.diag(diag) @ eig.eigenvectors.h
        if all(abs(d.imag) == 0.0 for d in diag):
            out = _matrix_sym(out)
        return out

    data = _block_eigendata(a, tols)
    cluster_of = {}
    cval = {}
    for ci, c in enumerate(data.clusters):
        cval[ci] = _eval_on_cluster(f, c.value)
        for i in c.members:
            cluster_of[i] = ci
    fgamma = cval[cluster_of[0]]
    blocks = {}
    flat_index = {}
    pos = 1
    for t in a.support:
        for p in range(len(data.eigs[t].eigenvalues)):
            flat_index[(t, p)] = pos
            pos += 1
    for t in a.support:
        eig = data.eigs[t]
        diag = [cval[cluster_of[flat_index[(t, p)]]] for p in range(len(eig.eigenvalues))]
        full = eig.eigenvectors @ CMatrix.diag(diag) @ eig.eigenvectors.h
        if all(abs(d.imag) == 0.0 for d in diag):
            full = _matrix_sym(full)
        n = a.table.dim(t)
        blocks[t] = full - fgamma * CMatrix.identity(n)
    return BlockElement(a.table, fgamma, blocks)


def spectral_decomposition(a, tols: Tolerances = DEFAULT_TOLS) -> SpectralDecomposition:
    """Spectral clusters with projections, values strictly decreasing."""
    out = []
    if isinstance(a, CMatrix):
        _check_matrix_sa(a, tols)
        if a.rows == 0:
            return SpectralDecomposition(())
        eig = linalg.herm_eig(_matrix_sym(a), tols)
        width = tols.cluster_tol * max(1.0, linalg.op_norm(a, tols))
        clusters = cluster_points(list(eig.eigenvalues), width)
        for c in clusters:
            flags = [1.0 if i in c.members else 0.0 for i in range(a.rows)]
            proj = eig.eigenvectors @ CMatrix.diag(flags) @ eig.eigenvectors.h
            out.append(SpectralCluster(c.value, _matrix_sym(proj), len(c.members), False))
        out.sort(key=lambda s: -s.value)
        return SpectralDecomposition(tuple(out))

    data = _block_eigendata(a, tols)
    for c in data.clusters:
        members = set(c.members)
        tail = 0 in members
        g = 1.0 if tail else 0.0
        blocks = {}
        for t in a.support:
            eig = data.eigs[t]
            base = 1 + sum(
                len(data.eigs[s].eigenvalues) for s in a.support if s < t
            )
            flags = [
                1.0 if (base + p) in members else 0.0
                for p in range(len(eig.eigenvalues))
            ]
            full = eig.eigenvectors @ CMatrix.diag(flags) @ eig.eigenvectors.h
            blocks[t] = _matrix_sym(full) - g * CMatrix.identity(a.table.dim(t))
        proj = BlockElement(a.table, g, blocks)
        mult = len(c.members) - (1 if tail else 0)
        out.append(SpectralCluster(c.value, proj, mult, tail))
    out.sort(key=lambda s: -s.value)
    return SpectralDecomposition(tuple(out))


def spectral_projection(a, lam: float, tols: Tolerances = DEFAULT_TOLS):
    """Projection onto the spectral cluster at `lam`.

    The cluster must exist and be separated from every other cluster by more
    than cluster_gap * max(1, ||a||), else NotIsolated.
    """
    dec = spectral_decomposition(a, tols)
    if not dec.clusters:
        raise PreconditionFailed("element has empty spectrum")
    scale = max(1.0, linalg.op_norm(a, tols) if isinstance(a, CMatrix) else norm(a, tols))
    width = tols.cluster_tol * scale
    target = None
    for c in dec.clusters:
        if abs(c.value - lam) <= max(width, 1e-12 * scale):
            target = c
            break
    if target is None:
        raise PreconditionFailed(f"{lam!r} is not a spectral cluster of the element")
    gap = min(
        (abs(c.value - target.value) for c in dec.clusters if c is not target),
        default=float("inf"),
    )
    if gap <= tols.cluster_gap * scale:
        raise NotIsolated(
            f"cluster at {target.value:.6g} is within {gap:.3e} of another cluster"
        )
    return target.projection


def is_projection(p, tols: Tolerances = DEFAULT_TOLS, bound: float = 1e-9) -> bool:
    if isinstance(p, CMatrix):
        scale = max(1.0, linalg.op_norm(p, tols))
        return (
            (p - p.h).fro() <= bound * scale
            and linalg.op_norm(p @ p - p, tols) <= bound * scale
        )
    scale = max(1.0, norm(p, tols))
    return (
        norm(p - p.h, tols) <= bound * scale
        and norm(p * p - p, tols) <= bound * scale
    )


def minimal_projection_decompose(
    j: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS
) -> list:
    """Peel a positive ideal element into rank-one projection terms.

    Returns [(lambda_i, p_i)] with the lambdas non-increasing (strictly
    decreasing across clusters, repeated inside a cluster of multiplicity
    above one) and each p_i a rank-one projection supported in one block of
    the ideal.  After the terms of the first k clusters the remainder norm is
    the (k+1)-th cluster value, matching the peeling order.
    """
    if not in_ideal(j, ideal, tols):
        raise NotInIdeal("element is not supported inside the ideal")
    data = _block_eigendata(j, tols)
    scale = max(1.0, norm(j, tols))
    low = min((min(e.eigenvalues) for e in data.eigs.values()), default=0.0)
    if low < -tols.herm_tol * scale:
        raise NotPositive(f"smallest eigenvalue {low:.3e} is negative")
    cutoff = tols.rank_tol * scale
    clusters = sorted(
        (c for c in data.clusters if c.value > cutoff), key=lambda c: -c.value
    )
    terms = []
    for c in clusters:
        members = set(c.members)
        for t in j.support:
            eig = data.eigs[t]
            base = 1 + sum(len(data.eigs[s].eigenvalues) for s in j.support if s < t)
            for p in range(len(eig.eigenvalues)):
                if (base + p) not in members:
                    continue
                v = eig.eigenvectors.col(p)
                n = j.table.dim(t)
                mat = CMatrix(
                    n, n, tuple(v[r] * v[s].conjugate() for r in range(n) for s in range(n))
                )
                proj = BlockElement(j.table, 0.0j, {t: _matrix_sym(mat)})
                terms.append((c.value, proj))
    return terms


@dataclass(frozen=True)
class RankOneVerdict:
    ok: bool
    alphas: tuple          # least-squares scalar per probe
    worst_residual: float
    worst_probe: int

    def __bool__(self):
        return self.ok


def is_rank_one(k: BlockElement, probes, tols: Tolerances = DEFAULT_TOLS) -> RankOneVerdict:
    """Probe-based algebraic rank-one test: k*a*k must be a scalar multiple
    of k for every probe a.

    The scalar is extracted by projecting k*a*k onto k in the Frobenius
    pairing; the verdict requires every probe residual to stay below
    mp_tol * ||k||^2 * ||a||.  For canonical elements this coincides with the
    structural description: zero scalar part, a single supported block, and
    block rank one (see structural_rank_one).
    """
    nk = norm(k, tols)
    if nk <= tols.zero_tol:
        raise ZeroElement("rank-one test on the zero element")
    denom = frobenius_pairing(k, k).real
    alphas = []
    worst = 0.0
    worst_probe = -1
    ok = True
    for idx, a in enumerate(probes):
        w = k * a * k
        alpha = frobenius_pairing(k, w) / denom
        alphas.append(alpha)
        resid = norm(w - alpha * k, tols)
        bound = tols.mp_tol * nk * nk * max(norm(a, tols), 1e-300)
        if resid > bound:
            ok = False
        if resid > worst:
            worst = resid
            worst_probe = idx
    return RankOneVerdict(ok, tuple(alphas), worst, worst_probe)


def structural_rank_one(k: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """Structural oracle: zero scalar part, single block, block rank one."""
    if abs(k.gamma) > tols.zero_tol:
        return False
    if len(k.support) != 1:
        return False
    (t,) = k.support
    return linalg.rank_of(k.blocks[t], tols) == 1


def decreasing_chain_check(
    q: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS
) -> list:
    """Maximal strictly decreasing chain of subprojections under q.

    Returns [q = q_0 > q_1 > ... > q_m] where each step removes a rank-one
    subprojection and q_m is minimal (rank one).  The chain has exactly
    total-rank many entries, which is the finiteness certificate.
    """
    if not in_ideal(q, ideal, tols):
        raise NotInIdeal("projection is not supported inside the ideal")
    if not is_projection(q, tols):
        raise NotProjection("element is not a projection at tolerance")
    chain = [q]
    current = q
    while True:
        data = _block_eigendata(current, tols)
        picked = None
        rank = 0
        for t in current.support:
            eig = data.eigs[t]
            for p, w in enumerate(eig.eigenvalues):
                if w > 0.5:
                    rank += 1
                    if picked is None:
                        picked = (t, p)
        if rank <= 1 or picked is None:
            break
        t, p = picked
        v = data.eigs[t].eigenvectors.col(p)
        n = current.table.dim(t)
        mat = CMatrix(n, n, tuple(v[r] * v[s].conjugate() for r in range(n) for s in range(n)))
        sub = BlockElement(current.table, 0.0j, {t: _matrix_sym(mat)})
        current = current - sub
        chain.append(current)
    return chain


def four_positive_parts(a: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> tuple:
    """Split a = (h+ - h-) + i(k+ - k-) into four positive elements.

    h and k are the self-adjoint real and imaginary parts; their positive and
    negative parts come from functional calculus with max(x, 0).
    """
    h = 0.5 * (a + a.h)
    k = (-0.5j) * (a - a.h)
    pos = lambda x: x if x > 0.0 else 0.0
    neg = lambda x: -x if x < 0.0 else 0.0
    return (
        functional_calculus(h, pos, tols),
        functional_calculus(h, neg, tols),
        functional_calculus(k, pos, tols),
        functional_calculus(k, neg, tols),
    )
