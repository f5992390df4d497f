"""Moore-Penrose inversion and its equivalent characterizations.

The main computation path follows the resolvent formula: build the kernel
projection q of a*a, then pseudoinvert as (a*a + q)^{-1} a*.  The oracle path
(spectral reciprocals, linalg.spectral_pinv) is deliberately separate so the
two can arbitrate each other.

The rank decision behind "0 is isolated in the spectrum of a*a" is the
relative singular-value cutoff rank_tol; the isolation itself is enforced at
cluster_gap resolution and failing it raises NotMPInvertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf, sqrt

from . import linalg
from .algebra import BlockElement, cluster_points, frobenius_pairing, norm
from .algebra import invertible as element_invertible
from .calculus import functional_calculus, is_projection
from .config import DEFAULT_TOLS, Tolerances
from .errors import NotInSubalgebra, NotMPInvertible
from .linalg import CMatrix


@dataclass(frozen=True)
class MPResult:
    """Pseudoinverse with its certificates.

    spectral_gap is the smallest nonzero spectral cluster of a*a (inf for the
    zero element).  verdicts holds the five equivalent characterizations
    keyed "a".."e"; they must agree for a healthy input.
    """

    pseudoinverse: object
    mp_projection: object
    spectral_gap: float
    verdicts: dict
    residuals: dict
    norm_formula_residual: float


def _is_matrix(a) -> bool:
    return isinstance(a, CMatrix)


def _aa_spectrum_values(a, tols: Tolerances) -> list:
    """Eigenvalues of a*a: matrix eigenvalues, plus |gamma|^2 for the tail of
    a block element."""
    if _is_matrix(a):
        h = 0.5 * ((a.h @ a) + (a.h @ a).h)
        return list(linalg.herm_eig(h, tols).eigenvalues)
    values = [abs(a.gamma) ** 2]
    for t in a.support:
        rep = a.rep(t)
        h = 0.5 * ((rep.h @ rep) + (rep.h @ rep).h)
        values.extend(linalg.herm_eig(h, tols).eigenvalues)
    return values


def _gap_and_isolation(a, tols: Tolerances) -> tuple:
    """(gap, isolated, scale): smallest nonzero spectral value of a*a, whether
    the zero part is isolated from it at cluster_gap resolution, and the
    spectral scale used.

    Zero versus nonzero is decided on singular values from the augmented
    route (accurate to machine level), never on eigenvalues of a*a, whose
    noise floor sits far above rank_tol squared."""
    sigmas = []
    if _is_matrix(a):
        sigmas.extend(linalg.singular_values(a, tols))
    else:
        sigmas.append(abs(a.gamma))
        for t in a.support:
            sigmas.extend(linalg.singular_values(a.rep(t), tols))
    if not sigmas:
        return inf, True, 1.0
    smax = max(sigmas)
    scale = max(1.0, smax * smax)
    cutoff = tols.rank_tol * max(1.0, smax)
    nonzero = [s for s in sigmas if s > cutoff]
    has_zero = len(nonzero) < len(sigmas)
    if not nonzero:
        return inf, True, scale
    gap = min(nonzero) ** 2
    if has_zero:
        isolated = gap > tols.cluster_gap * scale
    else:
        # full spectrum away from zero; still require solvability headroom
        isolated = gap > tols.sing_tol
    return gap, isolated, scale


def _zero_indicator(threshold: float):
    return lambda x: 1.0 if abs(x) <= threshold else 0.0


def mp_inverse(a, tols: Tolerances = DEFAULT_TOLS) -> MPResult:
    """Moore-Penrose inverse of a matrix or block element.

    Route: q0 = kernel projection of a (rank_tol decision), then
    x = (a*a + q0)^{-1} a* and q = e - x a.  Raises NotMPInvertible when the
    zero part of the spectrum of a*a is not isolated at cluster_gap
    resolution (for block elements this needs adversarially small scalar or
    singular values; seeded instances never trigger it).
    """
    gap, isolated, scale = _gap_and_isolation(a, tols)
    if not isolated:
        raise NotMPInvertible(
            f"smallest nonzero spectral value {gap:.3e} of a*a is not isolated from 0"
        )

    if _is_matrix(a):
        pseudo, q = _mp_matrix(a, tols)
        anorm = linalg.op_norm(a, tols)
        xnorm = linalg.op_norm(pseudo, tols)
        ms = max(1.0, anorm, xnorm)
        residuals = {
            "axa": linalg.op_norm(a @ pseudo @ a - a, tols),
            "xax": linalg.op_norm(pseudo @ a @ pseudo - pseudo, tols),
            "ax_sym": linalg.op_norm(a @ pseudo - (a @ pseudo).h, tols),
            "xa_sym": linalg.op_norm(pseudo @ a - (pseudo @ a).h, tols),
        }
        aq_norm = linalg.op_norm(a @ q, tols)
        h = 0.5 * ((a.h @ a) + (a.h @ a).h)
        hq = h + q
        sv = linalg.singular_values(hq, tols)
        hq_invertible = bool(sv) and sv[-1] > tols.sing_tol or not sv
    else:
        pseudo, q = _mp_element(a, tols)
        anorm = norm(a, tols)
        xnorm = norm(pseudo, tols)
        ms = max(1.0, anorm, xnorm)
        residuals = {
            "axa": norm(a * pseudo * a - a, tols),
            "xax": norm(pseudo * a * pseudo - pseudo, tols),
            "ax_sym": norm(a * pseudo - (a * pseudo).h, tols),
            "xa_sym": norm(pseudo * a - (pseudo * a).h, tols),
        }
        aq_norm = norm(a * q, tols)
        hq = a.h * a + q
        hq_invertible = bool(element_invertible(hq, tols))

    mp_bound = tols.mp_tol * ms
    verdict_a = residuals["axa"] <= mp_bound
    verdict_b = all(r <= mp_bound for r in residuals.values())
    verdict_c = isolated
    verdict_d = _verdict_d(a, gap, scale, tols)
    verdict_e = (
        is_projection(q, tols)
        and aq_norm <= mp_bound
        and hq_invertible
    )
    if gap is inf:
        nf_resid = abs(xnorm)
    else:
        nf_resid = abs(xnorm * xnorm * gap - 1.0)
    return MPResult(
        pseudoinverse=pseudo,
        mp_projection=q,
        spectral_gap=gap,
        verdicts={"a": verdict_a, "b": verdict_b, "c": verdict_c, "d": verdict_d, "e": verdict_e},
        residuals=dict(residuals, aq=aq_norm),
        norm_formula_residual=nf_resid,
    )


def _mp_matrix(a: CMatrix, tols: Tolerances) -> tuple:
    m, n = a.rows, a.cols
    if m == 0 or n == 0 or linalg.rank_of(a, tols) == 0:
        return CMatrix.zeros(n, m), CMatrix.identity(n)
    q0 = linalg.kernel_projection(a, tols)
    h = 0.5 * ((a.h @ a) + (a.h @ a).h)
    x = linalg.solve(h + q0, a.h, tols)
    q = CMatrix.identity(n) - x @ a
    q = 0.5 * (q + q.h)
    return x, q


def _mp_element(a: BlockElement, tols: Tolerances) -> tuple:
    table = a.table
    gamma = a.gamma
    if abs(gamma) <= tols.sing_tol:
        x_gamma = 0.0j
    else:
        x_gamma = 1.0 / gamma
    blocks = {}
    for t in a.support:
        rep = a.rep(t)
        n = table.dim(t)
        if linalg.rank_of(rep, tols) == 0:
            xt = CMatrix.zeros(n, n)
        else:
            q0 = linalg.kernel_projection(rep, tols)
            h = 0.5 * ((rep.h @ rep) + (rep.h @ rep).h)
            xt = linalg.solve(h + q0, rep.h, tols)
        blocks[t] = xt - x_gamma * CMatrix.identity(n)
    x = BlockElement(table, x_gamma, blocks)
    q = table.one() - x * a
    q = 0.5 * (q + q.h)
    return x, q


def _verdict_d(a, gap: float, scale: float, tols: Tolerances) -> bool:
    """Characterization (d): a projection p inside the unital algebra
    generated by a*a with ap = 0 and a*a + p invertible.  Built by
    functional calculus as the indicator of the zero spectral part, which is
    a limit of polynomials in a*a by construction."""
    threshold = tols.cluster_gap * scale
    ind = _zero_indicator(threshold)
    if _is_matrix(a):
        h = 0.5 * ((a.h @ a) + (a.h @ a).h)
        p = functional_calculus(h, ind, tols)
        ms = max(1.0, linalg.op_norm(a, tols))
        ap_small = linalg.op_norm(a @ p, tols) <= tols.mp_tol * ms
        sv = linalg.singular_values(h + p, tols)
        invert = (not sv) or sv[-1] > tols.sing_tol
        return is_projection(p, tols) and ap_small and invert
    h = a.h * a
    p = functional_calculus(h, ind, tols)
    ms = max(1.0, norm(a, tols))
    ap_small = norm(a * p, tols) <= tols.mp_tol * ms
    invert = bool(element_invertible(h + p, tols))
    return is_projection(p, tols) and ap_small and invert


def spectral_pinv_element(a: BlockElement, tols: Tolerances = DEFAULT_TOLS) -> BlockElement:
    """Blockwise spectral-reciprocal pseudoinverse (oracle route)."""
    gamma = a.gamma
    x_gamma = 0.0j if abs(gamma) <= tols.sing_tol else 1.0 / gamma
    blocks = {}
    for t in a.support:
        n = a.table.dim(t)
        blocks[t] = linalg.spectral_pinv(a.rep(t), tols) - x_gamma * CMatrix.identity(n)
    return BlockElement(a.table, x_gamma, blocks)


@dataclass(frozen=True)
class EquivalenceReport:
    result: MPResult
    oracle_agreement: float      # formula route vs spectral-reciprocal route
    uniqueness_residual: float   # q from the formula vs independent kernel projection
    all_agree: bool


def equivalence_report(a, tols: Tolerances = DEFAULT_TOLS) -> EquivalenceReport:
    """Run every characterization and cross-check the two computation routes."""
    res = mp_inverse(a, tols)
    if _is_matrix(a):
        oracle = linalg.spectral_pinv(a, tols)
        agreement = linalg.op_norm(res.pseudoinverse - oracle, tols)
        q_alt = linalg.kernel_projection(a, tols)
        uniq = linalg.op_norm(res.mp_projection - q_alt, tols)
    else:
        oracle = spectral_pinv_element(a, tols)
        agreement = norm(res.pseudoinverse - oracle, tols)
        q_alt = a.table.one() - oracle * a
        q_alt = 0.5 * (q_alt + q_alt.h)
        uniq = norm(res.mp_projection - q_alt, tols)
    verdicts = res.verdicts
    all_agree = len(set(verdicts.values())) == 1
    return EquivalenceReport(res, agreement, uniq, all_agree)


@dataclass(frozen=True)
class ClosednessReport:
    ok: bool
    distance: float
    word_length: int
    basis_size: int

    def __bool__(self):
        return self.ok


def _space_ops(x):
    """Pairing, norm, product and identity for the ambient space of x."""
    if _is_matrix(x):
        dot = lambda u, v: (u.h @ v).trace()
        nrm = lambda u: u.fro()
        mul = lambda u, v: u @ v
        one = CMatrix.identity(x.rows)
    else:
        dot = frobenius_pairing
        nrm = lambda u: sqrt(max(frobenius_pairing(u, u).real, 0.0))
        mul = lambda u, v: u * v
        one = x.table.one()
    return dot, nrm, mul, one


def inverse_closedness_check(a, generators, max_word_length: int | None = None,
                             tols: Tolerances = DEFAULT_TOLS) -> ClosednessReport:
    """Verify that the pseudoinverse of `a` lies in the unital *-subalgebra
    generated by `generators`, by least-squares distance to the span of words
    of bounded length.

    Raises NotInSubalgebra if `a` itself is not in that span (precondition).
    The default word-length budget is twice the number of distinct singular
    value clusters of `a`, plus one for the trailing adjoint factor.
    """
    dot, nrm, mul, one = _space_ops(a)
    target = mp_inverse(a, tols).pseudoinverse
    if max_word_length is None:
        values = _aa_spectrum_values(a, tols)
        top = max(values, default=0.0)
        width = tols.cluster_tol * max(1.0, top)
        distinct = len(cluster_points(values, width))
        max_word_length = min(2 * distinct + 1, 16)

    gens = []
    for g in generators:
        gens.append(g)
        gens.append(g.h)

    basis = []     # orthonormal
    def admit(v) -> bool:
        w = v
        for b in basis:
            w = w - dot(b, w) * b
        for b in basis:
            w = w - dot(b, w) * b
        nw = nrm(w)
        if nw > 1e-10 * max(1.0, nrm(v)):
            basis.append((1.0 / nw) * w)
            return True
        return False

    def distance(v) -> float:
        n2 = nrm(v) ** 2
        for b in basis:
            n2 -= abs(dot(b, v)) ** 2
        return sqrt(max(n2, 0.0))

    admit(one)
    frontier = [one]
    length = 0
    while length < max_word_length and frontier:
        length += 1
        new_frontier = []
        for w in frontier:
            for g in gens:
                cand = mul(w, g)
                if admit(cand):
                    new_frontier.append(cand)
        frontier = new_frontier
        if distance(target) <= tols.span_tol * max(1.0, nrm(target)):
            break

    if distance(a) > tols.span_tol * max(1.0, nrm(a)):
        raise NotInSubalgebra("the element itself is outside the generated subalgebra")
    d = distance(target)
    ok = d <= tols.span_tol * max(1.0, nrm(target))
    return ClosednessReport(ok, d, length, len(basis))
