"""Lifting constructions on the block model.

Covers: Moore-Penrose lifting of coset-invertible elements through blockwise
kernel projections, the two-ideal generalized-inverse identity, projection
lifting by symmetrize / peel / split, the same lift routed through
Moore-Penrose machinery, decomposition into (ideal part) + (MP invertible
part), and the compact-spectral report for self-adjoint ideal elements.

Every operation returns a report carrying named certificate residuals; the
success flag is true exactly when every residual is at or below its stated
tolerance.  Seeded generators for theorem instances live at the bottom of the
module: the theorems quantify over hypotheses (coset invertibility,
projection cosets) that the generators establish by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from . import generators, linalg
from .algebra import (
    BlockElement,
    DimensionTable,
    DualIdeal,
    coset_invertible,
    ideal_split,
    in_ideal,
    invertible,
    membership_residual,
    norm,
    spectrum,
)
from .calculus import functional_calculus, spectral_decomposition
from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    DegenerateSpectrum,
    NotCosetInvertible,
    NotCosetMPInvertible,
    NotInIdeal,
    NotProjectionCoset,
    PeelNotInIdeal,
    PreconditionFailed,
)
from .linalg import CMatrix
from .moore_penrose import mp_inverse
from .rng import SplitMix64

# wire-format tags for report files
THEOREM_MP_LIFT = "tb1.15"
THEOREM_N_IDEALS = "lb1.15a"
THEOREM_PROJECTION_LIFT = "tb1.4"
THEOREM_MP_LIFT_VIA_PROJECTION = "pb1.4a"
THEOREM_MP_SUM = "tb1.16"
THEOREM_COMPACT_SPECTRAL = "pb1.20a"


@dataclass(frozen=True)
class LiftReport:
    theorem: str
    success: bool
    residuals: dict
    lift: BlockElement | None
    extras: dict = field(default_factory=dict)

    def __bool__(self):
        return self.success


def mp_lift(a: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS) -> LiftReport:
    """Moore-Penrose data for a coset-invertible element.

    Builds p as the sum of the kernel projections of the singular represented
    blocks (all of which sit inside the ideal, since the coset is
    invertible), then pseudoinverts by solving against a*a + p.  Certifies:
    p in J, a*a p vanishes, a*a + p invertible, and the Penrose relations.
    """
    cw = coset_invertible(a, ideal, tols)
    if not cw:
        raise NotCosetInvertible("the coset of the element is not invertible")
    table = a.table
    p_blocks = {}
    for t in a.support:
        rep = a.rep(t)
        n = table.dim(t)
        if linalg.rank_of(rep, tols) < n:
            p_blocks[t] = linalg.kernel_projection(rep, tols)
    p = BlockElement(table, 0.0j, p_blocks)

    h = a.h * a
    hp = h + p
    inv = invertible(hp, tols)
    scale = max(1.0, norm(a, tols))
    residuals = {
        "p_membership": membership_residual(p, ideal),
        "aap": norm(h * p, tols),
        "aap_invertible_witness": inv.residual if inv.ok else inf,
    }
    if not inv.ok:
        return LiftReport(THEOREM_MP_LIFT, False, residuals, None)
    a_dagger = inv.inverse * a.h
    ms = max(1.0, norm(a, tols), norm(a_dagger, tols))
    residuals.update(
        {
            "axa": norm(a * a_dagger * a - a, tols),
            "xax": norm(a_dagger * a * a_dagger - a_dagger, tols),
            "ax_sym": norm(a * a_dagger - (a * a_dagger).h, tols),
            "xa_sym": norm(a_dagger * a - (a_dagger * a).h, tols),
        }
    )
    success = (
        in_ideal(p, ideal, tols)
        and residuals["aap"] <= tols.mp_tol * scale
        and residuals["aap_invertible_witness"] <= tols.witness_tol
        and all(residuals[k] <= tols.mp_tol * ms for k in ("axa", "xax", "ax_sym", "xa_sym"))
    )
    return LiftReport(
        THEOREM_MP_LIFT, success, residuals, a_dagger, extras={"projection": p}
    )


@dataclass(frozen=True)
class NIdealsCertificate:
    ok: bool
    g: BlockElement
    support_exact: bool
    residual: float

    def __bool__(self):
        return self.ok


def n_ideals_identity(
    a: BlockElement,
    b: BlockElement,
    c: BlockElement,
    ideal1: DualIdeal,
    ideal2: DualIdeal,
    tols: Tolerances = DEFAULT_TOLS,
) -> NIdealsCertificate:
    """Combine a generalized inverse modulo one ideal with a one-sided inverse
    modulo another: g = b + c - b a c is a generalized inverse modulo the
    intersection, because (aba - a)(e - ca) = a(b + c - bac)a - a.
    """
    scale = max(1.0, norm(a, tols))
    j1 = a * b * a - a
    if membership_residual(j1, ideal1) > tols.membership_tol * scale:
        raise PreconditionFailed("a*b*a - a is not in the first ideal")
    j2 = a.table.one() - c * a
    if membership_residual(j2, ideal2) > tols.membership_tol * scale:
        raise PreconditionFailed("e - c*a is not in the second ideal")
    g = b + c - b * a * c
    d = a * g * a - a
    meet = ideal1.intersection(ideal2)
    support_exact = in_ideal(d, meet, tols)
    residual = membership_residual(d, meet)
    ok = support_exact and residual <= tols.membership_tol
    return NIdealsCertificate(ok, g, support_exact, residual)


def _check_projection_coset(a: BlockElement, ideal: DualIdeal, tols: Tolerances):
    scale = max(1.0, norm(a, tols))
    if membership_residual(a - a.h, ideal) > tols.membership_tol * scale:
        raise NotProjectionCoset("a - a* is not in the ideal")
    if membership_residual(a - a * a, ideal) > tols.membership_tol * scale:
        raise NotProjectionCoset("a - a*a is not in the ideal")


def _symmetrize_and_peel(
    a: BlockElement, ideal: DualIdeal, tols: Tolerances
) -> tuple:
    """Shared first phase of the projection lifts.

    Symmetrizes the representative, then subtracts lambda * (spectral
    projection) for every isolated cluster with |lambda| >= 1/2 and
    |1 - lambda| >= 1/2, verifying each peeled piece lies in the ideal.
    Clusters within peel_margin of the 1/2 knife edge are rejected.
    Returns (b, peeled) with the spectrum of b inside the two half-width
    intervals around 0 and 1.
    """
    _check_projection_coset(a, ideal, tols)
    b = 0.5 * (a + a.h)
    peeled = []
    scale = max(1.0, norm(b, tols))
    for _ in range(8):
        dec = spectral_decomposition(b, tols)
        targets = []
        for cl in dec.clusters:
            edge = min(abs(abs(cl.value) - 0.5), abs(abs(1.0 - cl.value) - 0.5))
            if edge <= tols.peel_margin:
                raise DegenerateSpectrum(
                    f"spectral cluster {cl.value:.8g} sits on the 1/2 classification edge"
                )
            if abs(cl.value) >= 0.5 and abs(1.0 - cl.value) >= 0.5:
                targets.append(cl)
        if not targets:
            break
        for cl in targets:
            r = cl.value * cl.projection
            if membership_residual(r, ideal) > tols.membership_tol * scale:
                raise PeelNotInIdeal(
                    f"peeled component at {cl.value:.6g} is not inside the ideal"
                )
            peeled.append((cl.value, cl.projection))
            b = b - r
    return b, peeled


def _sigma1_indicator(x: float) -> float:
    return 1.0 if abs(1.0 - x) < 0.5 else 0.0


def projection_lift(a: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS) -> LiftReport:
    """Lift a projection coset to an exact projection.

    Steps: symmetrize the representative; peel the finitely many isolated
    spectral clusters outside the two half-width intervals around 0 and 1
    (each peeled piece must lie in the ideal); split with the indicator of
    the interval around 1.  Certifies p^2 = p = p*, membership of a - p in
    the ideal, and the factorization (b - p) = c(b - b^2) with c the
    standard bounded spectral multiplier.
    """
    b, peeled = _symmetrize_and_peel(a, ideal, tols)
    p = functional_calculus(b, _sigma1_indicator, tols)

    def c_fun(x: float) -> float:
        return 1.0 / (1.0 - x) if abs(x) < 0.5 else -1.0 / x

    c_elem = functional_calculus(b, c_fun, tols)
    factor_residual = norm((b - p) - c_elem * (b - b * b), tols)
    scale = max(1.0, norm(a, tols))
    proj_defect = max(norm(p * p - p, tols), norm(p - p.h, tols))
    residuals = {
        "projection_defect": proj_defect,
        "membership": membership_residual(a - p, ideal),
        "factorization": factor_residual,
    }
    success = (
        proj_defect <= 1e-9 * max(1.0, norm(p, tols))
        and residuals["membership"] <= tols.membership_tol * scale
        and factor_residual <= tols.mp_tol * scale
    )
    return LiftReport(
        THEOREM_PROJECTION_LIFT,
        success,
        residuals,
        p,
        extras={"symmetrized": b, "peeled": tuple(peeled)},
    )


def mp_lift_via_projection(
    a: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS
) -> LiftReport:
    """Projection lift routed through Moore-Penrose machinery.

    Compresses the symmetrized, peeled representative onto its spectral part
    near 1 (an MP-invertible representative of the same coset), takes the MP
    projection r of that element, and returns e - r.  The final projection is
    found by the rank machinery of mp_inverse rather than by indicator
    calculus, which is what makes the cross-check against projection_lift
    meaningful.
    """
    b, peeled = _symmetrize_and_peel(a, ideal, tols)
    compressed = functional_calculus(
        b, lambda x: x if abs(1.0 - x) < 0.5 else 0.0, tols
    )
    res = mp_inverse(compressed, tols)
    r = res.mp_projection
    p = a.table.one() - r
    scale = max(1.0, norm(a, tols))
    proj_defect = max(norm(p * p - p, tols), norm(p - p.h, tols))
    residuals = {
        "projection_defect": proj_defect,
        "membership": membership_residual(a - p, ideal),
        "penrose_worst": max(res.residuals.values()),
    }
    success = (
        proj_defect <= 1e-9 * max(1.0, norm(p, tols))
        and residuals["membership"] <= tols.membership_tol * scale
        and all(res.verdicts.values())
    )
    return LiftReport(
        THEOREM_MP_LIFT_VIA_PROJECTION,
        success,
        residuals,
        p,
        extras={"mp_result": res, "symmetrized": b},
    )


def _quotient_gap(a: BlockElement, ideal: DualIdeal, tols: Tolerances) -> tuple:
    """(gap, isolated) for the coset of `a`: singular values of the scalar
    tail and of the represented blocks outside the ideal support."""
    sigmas = [abs(a.gamma)]
    for t in a.support:
        if t in ideal.support:
            continue
        sigmas.extend(linalg.singular_values(a.rep(t), tols))
    smax = max(sigmas)
    scale = max(1.0, smax * smax)
    cutoff = tols.rank_tol * max(1.0, smax)
    nonzero = [s for s in sigmas if s > cutoff]
    if not nonzero:
        return inf, True
    gap = min(nonzero) ** 2
    if len(nonzero) < len(sigmas):
        return gap, gap > tols.cluster_gap * scale
    return gap, gap > tols.sing_tol


def mp_sum_decompose(
    a: BlockElement, ideal: DualIdeal, tols: Tolerances = DEFAULT_TOLS
) -> LiftReport:
    """Split a = k + m with k in the ideal and m Moore-Penrose invertible.

    Follows the quotient construction: take the MP projection of the coset of
    a*a (realized inside the algebra generated by e and a*a via functional
    calculus), lift it to an exact projection p, and put k = a p, m = a(e-p).
    In this finite-block model every coset is MP invertible; the hypothesis
    is still checked on the quotient representative and NotCosetMPInvertible
    is raised when the quotient spectral gap at zero collapses.
    """
    gap_q, isolated = _quotient_gap(a, ideal, tols)
    if not isolated:
        raise NotCosetMPInvertible(
            f"quotient spectral value {gap_q:.3e} of a*a is not isolated from zero"
        )
    h = a.h * a
    if gap_q is inf:
        threshold = tols.cluster_gap * max(1.0, norm(h, tols))
    else:
        threshold = 0.5 * gap_q
    pi = functional_calculus(h, lambda x: 1.0 if abs(x) <= threshold else 0.0, tols)
    inner = projection_lift(pi, ideal, tols)
    p = inner.lift
    k0 = a * p
    k, off = ideal_split(k0, ideal)
    m = a - k
    res = mp_inverse(m, tols)
    residuals = {
        "ap_off_ideal": off,
        "reassembly": norm(a - k - m, tols),
        "penrose_worst": max(res.residuals.values()),
    }
    scale = max(1.0, norm(a, tols))
    success = (
        inner.success
        and in_ideal(k, ideal, tols)
        and off <= tols.membership_tol * scale
        and residuals["reassembly"] <= 1e-10
        and all(res.verdicts.values())
    )
    return LiftReport(
        THEOREM_MP_SUM,
        success,
        residuals,
        m,
        extras={"ideal_part": k, "mp_part": m, "projection": p, "mp_result": res},
    )


@dataclass(frozen=True)
class CompactSpectralReport:
    counts: dict                 # epsilon -> number of spectrum points with |v| >= epsilon
    min_nonzero: float | None    # smallest nonzero spectral cluster magnitude
    witnesses: tuple             # (lambda, penrose_worst, verdicts_all_true) per nonzero cluster
    success: bool

    def __bool__(self):
        return self.success


def compact_spectral_report(
    j: BlockElement,
    ideal: DualIdeal,
    epsilons,
    tols: Tolerances = DEFAULT_TOLS,
) -> CompactSpectralReport:
    """Spectral profile of a self-adjoint ideal element.

    For each epsilon the number of spectrum points of magnitude >= epsilon is
    finite and reported.  Every nonzero cluster must be isolated at
    cluster_gap resolution, witnessed by Moore-Penrose inverting j - lambda*e.
    """
    if not in_ideal(j, ideal, tols):
        raise NotInIdeal("element is not supported inside the ideal")
    spec = spectrum(j, tols)  # raises NonHermitian when not self-adjoint
    scale = max(1.0, norm(j, tols))
    cutoff = tols.rank_tol * scale
    nonzero = [v for v in spec if abs(v) > cutoff]
    counts = {float(eps): sum(1 for v in spec if abs(v) >= eps) for eps in epsilons}
    witnesses = []
    ok = True
    for lam in nonzero:
        gap = min(abs(lam - other) for other in spec if other != lam) if len(spec) > 1 else inf
        isolated = gap > tols.cluster_gap * scale
        shifted = j - lam * j.table.one()
        res = mp_inverse(shifted, tols)
        all_true = all(res.verdicts.values()) and isolated
        witnesses.append((lam, max(res.residuals.values()), all_true))
        ok = ok and all_true
    return CompactSpectralReport(
        counts, min((abs(v) for v in nonzero), default=None), tuple(witnesses), ok
    )


# -- seeded theorem instances -------------------------------------------------


def coset_invertible_instance(
    rng: SplitMix64, table: DimensionTable
) -> tuple:
    """(a, J) with the coset of a invertible: an invertible element plus an
    ideal perturbation, with some blocks inside the ideal forced singular."""
    ideal = generators.random_ideal(rng, table)
    a0 = generators.random_invertible_element(rng, table, density=0.6)
    full = {}
    for t in sorted(ideal.support):
        n = table.dim(t)
        style = rng.rint(3)
        if style == 0:
            continue  # leave the block as the scalar tail
        if style == 1:
            full[t] = generators.random_sigma_matrix(rng, n, n, n)
        else:
            rank = rng.rint(n)  # deliberately singular (rank < n)
            full[t] = generators.random_sigma_matrix(rng, n, n, rank)
    blocks = dict(a0.blocks)
    for t, mat in full.items():
        blocks[t] = mat - a0.gamma * CMatrix.identity(table.dim(t))
    return BlockElement(table, a0.gamma, blocks), ideal


def equivalence_instance(rng: SplitMix64, table: DimensionTable) -> tuple:
    """(a, J) exercising both sides of the invertibility equivalence: cases
    mix full invertibility, singular blocks inside and outside the ideal
    support, and vanishing scalar part."""
    ideal = generators.random_ideal(rng, table)
    case = rng.rint(4)
    if case == 0:
        return generators.random_invertible_element(rng, table), ideal
    if case == 3:
        elem = generators.random_ideal_element(rng, table, DualIdeal.all_blocks(table), density=0.5)
        return elem, ideal
    a0 = generators.random_invertible_element(rng, table, density=0.6)
    indices = table.indices
    t = indices[rng.rint(len(indices))]
    n = table.dim(t)
    rank = rng.rint(n)
    blocks = dict(a0.blocks)
    blocks[t] = generators.random_sigma_matrix(rng, n, n, rank) - a0.gamma * CMatrix.identity(n)
    return BlockElement(table, a0.gamma, blocks), ideal


def projection_coset_instance(
    rng: SplitMix64, table: DimensionTable, outliers: bool = True
) -> tuple:
    """(a, J, n_outliers): the coset of a is a projection.

    Outside the ideal the represented blocks are exact projections and the
    scalar part is 0 or 1.  Inside the ideal: a projection plus self-adjoint
    spread of at most 0.2 (spectrum stays inside the two half-width
    intervals), skew noise, and optionally peelable spectral outliers
    bounded away from the 1/2 knife edge.
    """
    ideal = generators.random_ideal(rng, table)
    gamma = 1.0 if rng.rbool() else 0.0
    full = {}
    n_outliers = 0
    for t in table.indices:
        n = table.dim(t)
        if t not in ideal.support:
            if rng.rbool(0.6):
                full[t] = generators.random_projection_matrix(rng, n, rng.rint(n + 1))
            continue
        if not rng.rbool(0.85):
            continue
        values = []
        for _ in range(n):
            if outliers and rng.rbool(0.25):
                if rng.rbool():
                    values.append(rng.runif(1.6, 3.0))
                else:
                    values.append(rng.runif(-2.5, -0.6))
                n_outliers += 1
            elif rng.rbool():
                values.append(1.0 + rng.runif(-0.2, 0.2))
            else:
                values.append(rng.runif(-0.2, 0.2))
        mat = generators.random_spectrum_hermitian(rng, n, values)
        full[t] = mat + generators.random_skew(rng, n, 0.05)
    blocks = {}
    for t, mat in full.items():
        blocks[t] = mat - gamma * CMatrix.identity(table.dim(t))
    return BlockElement(table, complex(gamma, 0.0), blocks), ideal, n_outliers


def mp_sum_instance(rng: SplitMix64, table: DimensionTable) -> tuple:
    """(a, J) for the sum decomposition: a seeded MP-invertible element plus
    an ideal element, or occasionally an element lying entirely in the ideal."""
    ideal = generators.random_ideal(rng, table)
    case = rng.rint(4)
    if case == 0:
        return generators.random_ideal_element(rng, table, ideal, density=0.7), ideal
    gamma = 0.0 if case == 1 else None
    m0_full = {}
    for t in table.indices:
        if rng.rbool(0.6):
            n = table.dim(t)
            rank = n if rng.rbool(0.6) else rng.rint(n)
            m0_full[t] = generators.random_sigma_matrix(rng, n, n, rank)
    if gamma is None:
        g = generators.random_invertible_element(rng, table, density=0.0).gamma
    else:
        g = complex(gamma, 0.0)
    m0 = table.from_full_blocks(g, m0_full)
    j0 = generators.random_ideal_element(rng, table, ideal, density=0.6)
    return m0 + j0, ideal


def n_ideals_instance(rng: SplitMix64, table: DimensionTable) -> tuple:
    """(a, b, c, J1, J2) satisfying the two membership preconditions."""
    style = rng.rint(3)
    if style == 0:
        # disjoint ideals; perturb an exact inverse inside each
        idx = list(table.indices)
        half = len(idx) // 2
        ideal1 = DualIdeal(table, frozenset(idx[:half]))
        ideal2 = DualIdeal(table, frozenset(idx[half:]))
        a = generators.random_invertible_element(rng, table, density=0.5)
        ainv = invertible(a).inverse
        b = ainv + generators.random_ideal_element(rng, table, ideal1, density=0.6)
        c = ainv + generators.random_ideal_element(rng, table, ideal2, density=0.6)
        return a, b, c, ideal1, ideal2
    if style == 1:
        # shared ideal; b from the blockwise MP inverse, c from a coset witness
        a, ideal = coset_invertible_instance(rng, table)
        b = mp_inverse(a).pseudoinverse
        c = coset_invertible(a, ideal).b
        return a, b, c, ideal, ideal
    a = generators.random_invertible_element(rng, table, density=0.5)
    ainv = invertible(a).inverse
    ideal1 = generators.random_ideal(rng, table)
    ideal2 = generators.random_ideal(rng, table)
    return a, ainv, ainv, ideal1, ideal2


def _separated_palette(rng: SplitMix64, count: int, lo: float, hi: float, min_gap: float) -> list:
    values: list = []
    while len(values) < count:
        v = rng.runif(lo, hi)
        if all(abs(v - w) >= min_gap for w in values):
            values.append(v)
    return values


def psd_ideal_instance(rng: SplitMix64, table: DimensionTable) -> tuple:
    """(j, J) with j positive semidefinite and supported inside J."""
    ideal = generators.random_ideal(rng, table)
    if rng.rbool(0.5):
        x = generators.random_ideal_element(rng, table, ideal, density=0.8)
        return x.h * x, ideal
    # structured spectra with repeated values to exercise multiplicity
    palette = _separated_palette(rng, 3, 0.3, 3.0, 0.15)
    blocks = {}
    for t in sorted(ideal.support):
        if not rng.rbool(0.8):
            continue
        n = table.dim(t)
        values = [palette[rng.rint(3)] if rng.rbool(0.8) else 0.0 for _ in range(n)]
        blocks[t] = generators.random_spectrum_hermitian(rng, n, values)
    return BlockElement(table, 0.0j, blocks), ideal


def separated_ideal_instance(rng: SplitMix64, table: DimensionTable) -> tuple:
    """(j, J) self-adjoint in J with pairwise well-separated spectral values,
    so that every nonzero spectral point is isolated with a comfortable gap
    and every shift j - lambda*e stays far from the zero cutoff."""
    ideal = generators.random_ideal(rng, table)
    magnitudes = _separated_palette(rng, 4, 0.3, 3.0, 0.25)
    palette = [m if rng.rbool() else -m for m in magnitudes]
    blocks = {}
    for t in sorted(ideal.support):
        if not rng.rbool(0.85):
            continue
        n = table.dim(t)
        values = [palette[rng.rint(len(palette))] if rng.rbool(0.8) else 0.0 for _ in range(n)]
        blocks[t] = generators.random_spectrum_hermitian(rng, n, values)
    return BlockElement(table, 0.0j, blocks), ideal
