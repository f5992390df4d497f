"""The block model of a unital operator algebra.

An element is a complex multiple of the identity plus finitely many matrix
blocks: gamma*e + sum_t b_t, with b_t living in the registered block of size
n_t at index t.  The index set is treated as infinite ("tail semantics"):
every unregistered or absent index contributes the scalar gamma, which is why
|gamma| participates in norms and spectra and why invertibility forces
gamma != 0.  Ideals are exactly the subsets of registered block indices.

Elements are canonicalized on construction: blocks whose Frobenius norm is at
most zero_tol are dropped, so supports stay finite and membership tests are
decidable by support arithmetic.

Everything is immutable and every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

from .config import DEFAULT_TOLS, Tolerances
from .errors import ConfigInvalid, DimensionMismatch, NonFinite, NonHermitian
from . import linalg
from .linalg import CMatrix


@dataclass(frozen=True)
class DimensionTable:
    """Registered block sizes, index -> dimension.

    The ambient index set is conceptually infinite; only finitely many
    indices are registered, and every other index behaves as the scalar part.
    """

    dims: dict
    infinite_tail: bool = True

    def __post_init__(self):
        clean = {}
        for t, n in self.dims.items():
            t = int(t)
            n = int(n)
            if t < 0:
                raise ConfigInvalid(f"block index {t} must be nonnegative")
            if n < 1:
                raise ConfigInvalid(f"block dimension {n} at index {t} must be >= 1")
            clean[t] = n
        if not self.infinite_tail:
            raise ConfigInvalid("only the infinite-tail model is supported")
        object.__setattr__(self, "dims", clean)

    def __eq__(self, other):
        return isinstance(other, DimensionTable) and self.dims == other.dims

    def __hash__(self):
        return hash(tuple(sorted(self.dims.items())))

    @property
    def indices(self) -> tuple:
        return tuple(sorted(self.dims))

    def dim(self, t: int) -> int:
        if t not in self.dims:
            raise DimensionMismatch(f"block index {t} is not registered")
        return self.dims[t]

    def zero(self) -> "BlockElement":
        return BlockElement(self, 0.0j, {})

    def one(self) -> "BlockElement":
        return BlockElement(self, 1.0 + 0.0j, {})

    def element(self, gamma, blocks=None) -> "BlockElement":
        return BlockElement(self, gamma, blocks or {})

    def from_full_blocks(self, gamma, full) -> "BlockElement":
        """Element whose value at index t is the given full matrix (the stored
        block is full - gamma*I)."""
        gamma = complex(gamma)
        blocks = {}
        for t, mat in full.items():
            n = self.dim(t)
            blocks[t] = mat - gamma * CMatrix.identity(n)
        return BlockElement(self, gamma, blocks)


@dataclass(frozen=True)
class DualIdeal:
    """An ideal of the block model: the elements supported on a set of
    registered block indices (with zero scalar part)."""

    table: DimensionTable
    support: frozenset

    def __post_init__(self):
        support = frozenset(int(t) for t in self.support)
        for t in support:
            if t not in self.table.dims:
                raise ConfigInvalid(f"ideal support index {t} is not registered")
        object.__setattr__(self, "support", support)

    @classmethod
    def all_blocks(cls, table: DimensionTable) -> "DualIdeal":
        return cls(table, frozenset(table.dims))

    @property
    def complement(self) -> frozenset:
        """Registered indices outside the support."""
        return frozenset(self.table.dims) - self.support

    def intersection(self, other: "DualIdeal") -> "DualIdeal":
        if self.table != other.table:
            raise DimensionMismatch("ideals over different dimension tables")
        return DualIdeal(self.table, self.support & other.support)


class BlockElement:
    """gamma*e plus finitely many stored block deviations.

    The full value represented at index t is gamma*I + blocks[t]; at any
    index without a stored block (registered or not) it is gamma*I.  Stored
    blocks with Frobenius norm <= zero_tol are dropped at construction.
    """

    __slots__ = ("table", "gamma", "blocks", "_norm_memo")

    def __init__(self, table: DimensionTable, gamma, blocks, zero_tol: float = DEFAULT_TOLS.zero_tol):
        gamma = complex(gamma)
        if not (isfinite(gamma.real) and isfinite(gamma.imag)):
            raise NonFinite("non-finite scalar part")
        kept = {}
        for t, mat in blocks.items():
            t = int(t)
            n = table.dim(t)
            if mat.rows != n or mat.cols != n:
                raise DimensionMismatch(
                    f"block at index {t} is {mat.rows}x{mat.cols}, registered size is {n}"
                )
            if mat.fro() > zero_tol:
                kept[t] = mat
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "blocks", kept)
        object.__setattr__(self, "_norm_memo", {})

    def __setattr__(self, name, value):
        raise AttributeError("BlockElement is immutable")

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.blocks))

    def rep(self, t: int) -> CMatrix:
        """Full represented value at index t: gamma*I + stored block."""
        n = self.table.dim(t)
        g = self.gamma * CMatrix.identity(n)
        return g + self.blocks[t] if t in self.blocks else g

    def block(self, t: int) -> CMatrix:
        """Stored deviation at index t (zero matrix when absent)."""
        n = self.table.dim(t)
        return self.blocks.get(t, CMatrix.zeros(n, n))

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "BlockElement"):
        if self.table != other.table:
            raise DimensionMismatch("elements over different dimension tables")

    def __add__(self, other: "BlockElement") -> "BlockElement":
        self._check(other)
        blocks = dict(self.blocks)
        for t, mat in other.blocks.items():
            blocks[t] = blocks[t] + mat if t in blocks else mat
        return BlockElement(self.table, self.gamma + other.gamma, blocks)

    def __sub__(self, other: "BlockElement") -> "BlockElement":
        return self + (-1.0) * other

    def __neg__(self) -> "BlockElement":
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, BlockElement):
            self._check(other)
            blocks = {}
            for t in set(self.blocks) | set(other.blocks):
                at = self.blocks.get(t)
                bt = other.blocks.get(t)
                parts = []
                if at is not None and bt is not None:
                    parts.append(at @ bt)
                if bt is not None and self.gamma != 0.0:
                    parts.append(self.gamma * bt)
                if at is not None and other.gamma != 0.0:
                    parts.append(other.gamma * at)
                if not parts:
                    continue
                acc = parts[0]
                for extra in parts[1:]:
                    acc = acc + extra
                blocks[t] = acc
            return BlockElement(self.table, self.gamma * other.gamma, blocks)
        z = complex(other)
        return BlockElement(self.table, z * self.gamma, {t: z * m for t, m in self.blocks.items()})

    def __rmul__(self, scalar) -> "BlockElement":
        z = complex(scalar)
        return BlockElement(self.table, z * self.gamma, {t: z * m for t, m in self.blocks.items()})

    @property
    def h(self) -> "BlockElement":
        """Adjoint."""
        return BlockElement(
            self.table, self.gamma.conjugate(), {t: m.h for t, m in self.blocks.items()}
        )

    def __repr__(self):
        return f"BlockElement(gamma={self.gamma:.4g}, support={list(self.support)})"


# -- operations ---------------------------------------------------------------


def norm(a: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Algebra norm: the supremum of the represented block norms.

    Since infinitely many tail blocks equal gamma*I, |gamma| always
    participates alongside the norms of the represented blocks.  Memoized per
    element and tolerance set (elements are immutable).
    """
    cached = a._norm_memo.get(tols)
    if cached is not None:
        return cached
    best = abs(a.gamma)
    for t in a.support:
        best = max(best, linalg.op_norm(a.rep(t), tols))
    a._norm_memo[tols] = best
    return best


def elements_close(a: BlockElement, b: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """Equality at working precision: ||a-b|| <= eq_tol * max(1, ||a||, ||b||)."""
    return norm(a - b, tols) <= tols.eq_tol * max(1.0, norm(a, tols), norm(b, tols))


def is_self_adjoint(a: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> bool:
    return norm(a - a.h, tols) <= tols.herm_tol * max(1.0, norm(a, tols))


def spectrum(a: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> list:
    """Spectrum of a self-adjoint element: {gamma} joined with all block
    eigenvalues, merged into clusters of width cluster_tol.

    gamma is always present because the unregistered tail blocks equal
    gamma*I.  Returns the sorted cluster representatives.
    """
    if not is_self_adjoint(a, tols):
        raise NonHermitian("spectrum requires a self-adjoint element")
    values = [a.gamma.real]
    for t in a.support:
        sym = 0.5 * (a.rep(t) + a.rep(t).h)
        values.extend(linalg.herm_eig(sym, tols).eigenvalues)
    width = tols.cluster_tol * max(1.0, norm(a, tols))
    return [c.value for c in cluster_points(values, width)]


@dataclass(frozen=True)
class Cluster:
    value: float
    members: tuple  # indices into the input list


def cluster_points(values, width: float) -> list:
    """Single-linkage merge of real points closer than `width`; each cluster
    is represented by the mean of its members.  Deterministic."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    clusters = []
    current = []
    prev = None
    for i in order:
        v = values[i]
        if prev is not None and v - prev > width:
            clusters.append(current)
            current = []
        current.append(i)
        prev = v
    if current:
        clusters.append(current)
    out = []
    for members in clusters:
        mean = sum(values[i] for i in members) / len(members)
        out.append(Cluster(mean, tuple(members)))
    return out


@dataclass(frozen=True)
class InvertibilityWitness:
    ok: bool
    inverse: BlockElement | None
    residual: float

    def __bool__(self):
        return self.ok


def invertible(a: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> InvertibilityWitness:
    """Invertibility in the full algebra, with a two-sided witness inverse.

    True iff |gamma| exceeds sing_tol (the tail blocks are gamma*I) and every
    represented block is comfortably nonsingular.
    """
    if abs(a.gamma) <= tols.sing_tol:
        return InvertibilityWitness(False, None, float("inf"))
    for t in a.support:
        sv = linalg.singular_values(a.rep(t), tols)
        if sv and sv[-1] <= tols.sing_tol:
            return InvertibilityWitness(False, None, float("inf"))
    ginv = 1.0 / a.gamma
    blocks = {}
    for t in a.support:
        n = a.table.dim(t)
        blocks[t] = linalg.inverse(a.rep(t), tols) - ginv * CMatrix.identity(n)
    b = BlockElement(a.table, ginv, blocks)
    e = a.table.one()
    residual = max(norm(a * b - e, tols), norm(b * a - e, tols))
    return InvertibilityWitness(residual <= tols.witness_tol, b, residual)


@dataclass(frozen=True)
class CosetWitness:
    ok: bool
    b: BlockElement | None
    j: BlockElement | None
    k: BlockElement | None
    residual: float

    def __bool__(self):
        return self.ok


def coset_invertible(a: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS) -> CosetWitness:
    """Invertibility of the coset a + J, with witnesses a*b = e + j, b*a = e + k.

    The complement of any ideal support is infinite under tail semantics, so
    the scalar part must be nonzero; represented blocks outside the support
    must be nonsingular, while defects inside the support are absorbed by J.
    """
    if a.table != ideal.table:
        raise DimensionMismatch("element and ideal over different dimension tables")
    if abs(a.gamma) <= tols.sing_tol:
        return CosetWitness(False, None, None, None, float("inf"))
    for t in a.support:
        if t in ideal.support:
            continue
        sv = linalg.singular_values(a.rep(t), tols)
        if sv and sv[-1] <= tols.sing_tol:
            return CosetWitness(False, None, None, None, float("inf"))
    ginv = 1.0 / a.gamma
    blocks = {}
    for t in a.support:
        n = a.table.dim(t)
        if t in ideal.support:
            blocks[t] = linalg.spectral_pinv(a.rep(t), tols) - ginv * CMatrix.identity(n)
        else:
            blocks[t] = linalg.inverse(a.rep(t), tols) - ginv * CMatrix.identity(n)
    b = BlockElement(a.table, ginv, blocks)
    e = a.table.one()
    j, j_resid = ideal_split(a * b - e, ideal)
    k, k_resid = ideal_split(b * a - e, ideal)
    residual = max(j_resid, k_resid)
    return CosetWitness(residual <= tols.witness_tol, b, j, k, residual)


def in_ideal(a: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS) -> bool:
    """Exact-support ideal membership of a canonicalized element."""
    if a.table != ideal.table:
        raise DimensionMismatch("element and ideal over different dimension tables")
    if abs(a.gamma) > tols.zero_tol:
        return False
    return all(t in ideal.support for t in a.support)


def ideal_split(a: BlockElement, ideal: DualIdeal) -> tuple:
    """Split a = (part in J) + remainder; returns (part, ||remainder||).

    The part inside J is the restriction of the stored blocks to the ideal
    support; the remainder carries the scalar and all off-support blocks.
    """
    inside = {t: m for t, m in a.blocks.items() if t in ideal.support}
    outside = {t: m for t, m in a.blocks.items() if t not in ideal.support}
    part = BlockElement(a.table, 0.0j, inside)
    rest = BlockElement(a.table, a.gamma, outside)
    return part, norm(rest)


def membership_residual(a: BlockElement, ideal: DualIdeal) -> float:
    """Distance witness for a in J: norm of the component outside the ideal."""
    return ideal_split(a, ideal)[1]


def frobenius_pairing(x: BlockElement, y: BlockElement) -> complex:
    """Inner product on (scalar part, stored blocks): conj(gamma_x) gamma_y
    plus the blockwise Frobenius pairings.  Basis-free and well conditioned,
    which is what the rank-one scalar extraction needs."""
    acc = x.gamma.conjugate() * y.gamma
    for t in set(x.blocks) & set(y.blocks):
        acc += (x.blocks[t].h @ y.blocks[t]).trace()
    return acc
