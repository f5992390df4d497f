"""Dense complex matrix arithmetic and a Hermitian eigensolver.

Self-contained: the only numerical engine is the Jacobi/matmul kernel (with
its pure-Python fallback).  All values are immutable and all operations are
pure functions, so everything here is safe to call concurrently.

The eigensolver is cyclic Jacobi on the full Hermitian matrix: simple,
unconditionally convergent, and free of external dependencies.  Sweeping
continues until the off-diagonal Frobenius mass is far enough below eig_tol
that the reconstruction invariant of HermEigen holds with margin.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from math import isfinite, sqrt

from . import _kernel
from .config import DEFAULT_TOLS, Tolerances
from .errors import ConvergenceFailure, DimensionMismatch, NonFinite, NonHermitian, Singular
from .rng import SplitMix64

_MAX_SWEEPS = 60


class CMatrix:
    """Immutable dense complex matrix, row-major entries.

    Size 0x0 (and 0xm, nx0) matrices are legal and behave as the empty
    operator with norm 0; empty blocks arise when an ideal support excludes
    an index.  NaN or Inf entries are rejected at construction, so they can
    never enter any operation.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(complex(z) for z in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        for z in entries:
            if not (isfinite(z.real) and isfinite(z.imag)):
                raise NonFinite(f"non-finite entry {z!r}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("CMatrix is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "CMatrix":
        return cls(n, n, tuple(1.0 + 0.0j if i == j else 0.0j for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "CMatrix":
        return cls(rows, cols, (0.0j,) * (rows * cols))

    @classmethod
    def diag(cls, values) -> "CMatrix":
        values = tuple(complex(v) for v in values)
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0.0j for i in range(n) for j in range(n)))

    @classmethod
    def from_rows(cls, rows) -> "CMatrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(nr, nc, tuple(z for r in rows for z in r))

    # -- access ---------------------------------------------------------------

    def entry(self, i: int, j: int) -> complex:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic -----------------------------------------------------------

    def _same_shape(self, other: "CMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "CMatrix") -> "CMatrix":
        self._same_shape(other)
        return CMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        self._same_shape(other)
        return CMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "CMatrix":
        return CMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __mul__(self, scalar) -> "CMatrix":
        z = complex(scalar)
        return CMatrix(self.rows, self.cols, tuple(z * x for x in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        m, k, n = self.rows, self.cols, other.cols
        if m == 0 or n == 0:
            return CMatrix.zeros(m, n)
        if k == 0:
            return CMatrix.zeros(m, n)
        a_re = array("d", (z.real for z in self.entries))
        a_im = array("d", (z.imag for z in self.entries))
        b_re = array("d", (z.real for z in other.entries))
        b_im = array("d", (z.imag for z in other.entries))
        c_re = array("d", bytes(8 * m * n))
        c_im = array("d", bytes(8 * m * n))
        _kernel.matmul(m, k, n, a_re, a_im, b_re, b_im, c_re, c_im)
        return CMatrix(m, n, tuple(complex(r, i) for r, i in zip(c_re, c_im)))

    @property
    def h(self) -> "CMatrix":
        """Conjugate transpose."""
        return CMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j].conjugate()
                  for j in range(self.cols) for i in range(self.rows)),
        )

    def trace(self) -> complex:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.entries[i * self.cols + i] for i in range(self.rows)), 0.0j)

    def fro(self) -> float:
        """Frobenius norm."""
        return sqrt(sum(z.real * z.real + z.imag * z.imag for z in self.entries))

    def max_abs(self) -> float:
        return max((abs(z) for z in self.entries), default=0.0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"CMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class HermEigen:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are ascending; the columns of `eigenvectors` are the matching
    eigenvectors and form a unitary matrix.  Construction via herm_eig
    guarantees ||A - U diag(w) U*|| <= eig_tol * max(1, ||A||) and
    ||U*U - I|| <= eig_tol.
    """

    eigenvalues: tuple
    eigenvectors: CMatrix


def _hermitian_part(a: CMatrix) -> CMatrix:
    n = a.rows
    ent = list(a.entries)
    out = [0.0j] * (n * n)
    for i in range(n):
        out[i * n + i] = complex((ent[i * n + i].real + ent[i * n + i].real) / 2.0, 0.0)
        for j in range(i + 1, n):
            z = (ent[i * n + j] + ent[j * n + i].conjugate()) * 0.5
            out[i * n + j] = z
            out[j * n + i] = z.conjugate()
    return CMatrix(n, n, out)


def herm_eig(a: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> HermEigen:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Deterministic for identical input: eigenvalues are sorted ascending and
    exact ties are broken by the phase-normalized eigenvector columns in
    lexicographic order, so repeated runs (and both kernel backends) produce
    the same decomposition.
    """
    if not a.is_square:
        raise NonHermitian(f"matrix is {a.rows}x{a.cols}, not square")
    n = a.rows
    fro = a.fro()
    if (a - a.h).fro() > tols.herm_tol * max(fro, 1e-300):
        raise NonHermitian("matrix fails the self-adjointness check")
    if n == 0:
        return HermEigen((), CMatrix.zeros(0, 0))
    b = _hermitian_part(a)
    if n == 1:
        return HermEigen((b.entries[0].real,), CMatrix.identity(1))

    a_re = array("d", (z.real for z in b.entries))
    a_im = array("d", (z.imag for z in b.entries))
    v_re = array("d", bytes(8 * n * n))
    v_im = array("d", bytes(8 * n * n))
    for i in range(n):
        v_re[i * n + i] = 1.0
    # Converge well below eig_tol so the reconstruction invariant holds in the
    # operator norm with margin even after accumulation error.
    threshold = (tols.eig_tol / 8.0) * max(1.0, fro)
    _kernel.jacobi_eig(n, a_re, a_im, v_re, v_im, threshold, _MAX_SWEEPS)

    diag = [a_re[i * n + i] for i in range(n)]
    columns = []
    for j in range(n):
        col = [complex(v_re[i * n + j], v_im[i * n + j]) for i in range(n)]
        cmax = max(abs(z) for z in col)
        phase = 1.0 + 0.0j
        for z in col:
            if abs(z) >= 1e-6 * cmax and cmax > 0.0:
                phase = z.conjugate() / abs(z)
                break
        columns.append([z * phase for z in col])

    order = sorted(
        range(n),
        key=lambda j: (diag[j],) + tuple(c for z in columns[j] for c in (z.real, z.imag)),
    )
    eigenvalues = tuple(diag[j] for j in order)
    vectors = CMatrix(n, n, tuple(columns[j][i] for i in range(n) for j in order))

    scale = max(1.0, max(abs(w) for w in eigenvalues))
    recon = vectors @ CMatrix.diag(eigenvalues) @ vectors.h
    if (b - recon).fro() > tols.eig_tol * scale or (vectors.h @ vectors - CMatrix.identity(n)).fro() > tols.eig_tol:
        raise ConvergenceFailure("jacobi sweeps did not reach the eigensolver tolerance")
    return HermEigen(eigenvalues, vectors)


def op_norm(a: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Operator (spectral) norm: the square root of the top eigenvalue of a*a.

    Computed at unit Frobenius scale and rescaled, so the relative accuracy
    does not degrade for very small or very large matrices."""
    if a.rows == 0 or a.cols == 0:
        return 0.0
    f = a.fro()
    if f == 0.0:
        return 0.0
    b = a * (1.0 / f)
    # diagonalize the smaller of b*b and bb*; the top eigenvalue is shared
    h = b.h @ b if b.cols <= b.rows else b @ b.h
    eig = herm_eig(_hermitian_part(h), tols)
    top = eig.eigenvalues[-1] if eig.eigenvalues else 0.0
    return f * sqrt(max(top, 0.0))


def singular_values(a: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> tuple:
    """Singular values, descending.

    Computed from the augmented Hermitian [[0, a], [a*, 0]], whose spectrum
    is {+s, -s} plus zeros.  Unlike the a*a route this keeps the absolute
    error of small singular values at machine level instead of sqrt(eps),
    which is what makes the relative rank_tol cutoff trustworthy.
    """
    if a.rows == 0 or a.cols == 0:
        return ()
    f = a.fro()
    if f == 0.0:
        return (0.0,) * min(a.rows, a.cols)
    m, n = a.rows, a.cols
    k = m + n
    scale = 1.0 / f
    ent = [0.0j] * (k * k)
    for i in range(m):
        for j in range(n):
            z = a.entry(i, j) * scale
            ent[i * k + (m + j)] = z
            ent[(m + j) * k + i] = z.conjugate()
    eig = herm_eig(CMatrix(k, k, ent), tols)
    top = eig.eigenvalues[-min(m, n):]
    return tuple(f * max(w, 0.0) for w in reversed(top))


def solve(a: CMatrix, b: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> CMatrix:
    """Solve a @ x = b by Gaussian elimination with partial pivoting.

    Requires a square and comfortably nonsingular: the smallest singular
    value must exceed sing_tol, otherwise Singular is raised.
    """
    if not a.is_square:
        raise DimensionMismatch("solve needs a square matrix")
    if a.rows != b.rows:
        raise DimensionMismatch("right-hand side row count mismatch")
    n = a.rows
    if n == 0:
        return CMatrix.zeros(0, b.cols)
    sv = singular_values(a, tols)
    if sv[-1] <= tols.sing_tol:
        raise Singular(f"smallest singular value {sv[-1]:.3e} <= sing_tol")
    m = b.cols
    aug = [[a.entry(i, j) for j in range(n)] + [b.entry(i, j) for j in range(m)] for i in range(n)]
    for k in range(n):
        piv, pmax = k, abs(aug[k][k])
        for i in range(k + 1, n):
            v = abs(aug[i][k])
            if v > pmax:
                piv, pmax = i, v
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1.0 / aug[k][k]
        for i in range(k + 1, n):
            f = aug[i][k] * inv
            if f != 0.0:
                row_i, row_k = aug[i], aug[k]
                for j in range(k, n + m):
                    row_i[j] -= f * row_k[j]
    x = [[0.0j] * m for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = aug[i]
        for j in range(m):
            s = row[n + j]
            for l in range(i + 1, n):
                s -= row[l] * x[l][j]
            x[i][j] = s / row[i]
    return CMatrix.from_rows(x)


def inverse(a: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> CMatrix:
    return solve(a, CMatrix.identity(a.rows), tols)


def rank_of(a: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> int:
    """Numerical rank: singular values at or below rank_tol * max(1, s_max)
    are treated as zero.  This is the central rank decision of the package."""
    sv = singular_values(a, tols)
    if not sv:
        return 0
    cutoff = tols.rank_tol * max(1.0, sv[0])
    return sum(1 for s in sv if s > cutoff)


def spectral_pinv(a: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> CMatrix:
    """Pseudoinverse by reciprocal nonzero singular values.

    The rank comes from the augmented-matrix singular values; reciprocals are
    applied on the span of the matching top eigenvectors of a*a.  This is the
    oracle route, kept independent of the resolvent-formula route in
    moore_penrose.
    """
    if a.rows == 0 or a.cols == 0:
        return CMatrix.zeros(a.cols, a.rows)
    r = rank_of(a, tols)
    h = _hermitian_part(a.h @ a)
    eig = herm_eig(h, tols)
    n = a.cols
    recip = [0.0] * n
    for i in range(n - r, n):
        recip[i] = 1.0 / eig.eigenvalues[i]
    u = eig.eigenvectors
    return (u @ CMatrix.diag(recip) @ u.h) @ a.h


def kernel_projection(a: CMatrix, tols: Tolerances = DEFAULT_TOLS) -> CMatrix:
    """Orthogonal projection onto the null space of `a` (rank_tol decision)."""
    if a.cols == 0:
        return CMatrix.zeros(0, 0)
    if a.rows == 0:
        return CMatrix.identity(a.cols)
    r = rank_of(a, tols)
    h = _hermitian_part(a.h @ a)
    eig = herm_eig(h, tols)
    n = a.cols
    flags = [1.0 if i < n - r else 0.0 for i in range(n)]
    u = eig.eigenvectors
    p = u @ CMatrix.diag(flags) @ u.h
    return _hermitian_part(p)


def power_norm(a: CMatrix, squarings: int = 32) -> float:
    """Operator norm by power iteration with repeated squaring.

    Independent oracle for op_norm: forms a*a, squares it `squarings` times
    (renormalizing by the Frobenius norm), applies the result to a seeded
    pseudo-random start vector, and takes a Rayleigh quotient in the original
    matrix.  Shares no code path with the Jacobi eigensolver.
    """
    if a.rows == 0 or a.cols == 0:
        return 0.0
    h0 = a.h @ a if a.cols <= a.rows else a @ a.h
    h0 = _hermitian_part(h0)
    n = h0.rows
    fro = h0.fro()
    if fro == 0.0:
        return 0.0
    b = h0 * (1.0 / fro)
    for _ in range(squarings):
        b = b @ b
        bf = b.fro()
        if bf == 0.0:
            return 0.0
        b = b * (1.0 / bf)
    rng = SplitMix64(0x5EEDED)
    for _ in range(4):
        v = [rng.rcomplex(1.0) for _ in range(n)]
        w = [sum(b.entry(i, j) * v[j] for j in range(n)) for i in range(n)]
        nw2 = sum(z.real * z.real + z.imag * z.imag for z in w)
        if nw2 > 1e-24:
            hv = [sum(h0.entry(i, j) * w[j] for j in range(n)) for i in range(n)]
            num = sum(w[i].conjugate() * hv[i] for i in range(n)).real
            return sqrt(max(num / nw2, 0.0))
    return 0.0
