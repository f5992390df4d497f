"""Grid-sampled model of continuous functions on an interval, a circle, and
the closed unit disk.

This is where the classical counterexamples live: the ideal of functions
vanishing on a subinterval lifts Moore-Penrose invertible elements, the
two-endpoint ideal does not lift projections, and the boundary ideal of the
disk lifts projections but not MP invertible elements, obstructed by the
winding number.

Grid functions carry a discrete continuity contract: a declared Lipschitz
constant, enforced edge by edge at construction.  Intermediate-value and
connectedness arguments are only valid for genuinely continuous functions,
and the contract is the grid proxy for that.  Quotient MP invertibility is
decided by value-set geometry (minimum modulus on the complement of the
vanishing set), never by matrix spectra: spectra of function algebras are
ranges.
"""

from __future__ import annotations

from cmath import phase
from dataclasses import dataclass
from math import cos, isfinite, pi, sin

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    ConfigInvalid,
    ContinuityViolation,
    InsufficientResolution,
    MixedBoundary,
    NonFinite,
    NotCosetMPInvertible,
    PreconditionFailed,
    VanishingValue,
)

_CONTINUITY_FACTOR = 10.0
_DEFAULT_LIPSCHITZ = 4.0


@dataclass(frozen=True)
class Interval:
    left: float
    right: float
    n_samples: int

    def __post_init__(self):
        if self.n_samples < 16:
            raise ConfigInvalid("interval grids need at least 16 samples")
        if not self.right > self.left:
            raise ConfigInvalid("interval must have positive length")

    @property
    def step(self) -> float:
        return (self.right - self.left) / (self.n_samples - 1)

    def points(self) -> list:
        h = self.step
        return [self.left + k * h for k in range(self.n_samples)]

    def edges(self):
        h = self.step
        return [(k, k + 1, h) for k in range(self.n_samples - 1)]

    @property
    def size(self) -> int:
        return self.n_samples


@dataclass(frozen=True)
class Circle:
    n_samples: int

    def __post_init__(self):
        if self.n_samples < 16:
            raise ConfigInvalid("circle grids need at least 16 samples")

    def points(self) -> list:
        n = self.n_samples
        return [complex(cos(2.0 * pi * k / n), sin(2.0 * pi * k / n)) for k in range(n)]

    def edges(self):
        n = self.n_samples
        arc = 2.0 * pi / n
        return [(k, (k + 1) % n, arc) for k in range(n)]

    @property
    def size(self) -> int:
        return self.n_samples


@dataclass(frozen=True)
class Disk:
    """Polar grid: the center point, then concentric circles of n_angles
    samples at radii i/(n_radii-1) up to and including the boundary."""

    n_radii: int
    n_angles: int

    def __post_init__(self):
        if self.n_radii < 2:
            raise ConfigInvalid("disk grids need at least 2 radii")
        if self.n_angles < 16:
            raise ConfigInvalid("disk grids need at least 16 angles")

    @property
    def size(self) -> int:
        return 1 + (self.n_radii - 1) * self.n_angles

    def radius(self, i: int) -> float:
        return i / (self.n_radii - 1)

    def circle_indices(self, i: int) -> list:
        """Sample indices of the i-th circle; circle 0 is the center point."""
        if i == 0:
            return [0]
        base = 1 + (i - 1) * self.n_angles
        return list(range(base, base + self.n_angles))

    def points(self) -> list:
        pts = [0.0j]
        for i in range(1, self.n_radii):
            r = self.radius(i)
            for j in range(self.n_angles):
                th = 2.0 * pi * j / self.n_angles
                pts.append(complex(r * cos(th), r * sin(th)))
        return pts

    def edges(self):
        out = []
        dr = 1.0 / (self.n_radii - 1)
        for j in range(self.n_angles):
            out.append((0, 1 + j, dr))  # center to the first circle
        for i in range(1, self.n_radii):
            idx = self.circle_indices(i)
            arc = 2.0 * pi * self.radius(i) / self.n_angles
            for j in range(self.n_angles):
                out.append((idx[j], idx[(j + 1) % self.n_angles], arc))
            if i + 1 < self.n_radii:
                nxt = self.circle_indices(i + 1)
                for j in range(self.n_angles):
                    out.append((idx[j], nxt[j], dr))
        return out


def continuity_bound(domain, lipschitz: float) -> float:
    """Admissible jump across the longest grid edge.

    The contract itself is enforced edge by edge: a jump across an edge of
    length d may not exceed 10 * lipschitz * d.  On uniform grids (interval,
    circle) this is the single bound 10 * lipschitz * step; on the polar disk
    grid the radial and angular edges get proportionate budgets."""
    longest = max(length for _, _, length in domain.edges())
    return _CONTINUITY_FACTOR * lipschitz * longest


class GridFunction:
    """Complex samples over a grid domain, continuity-checked at construction."""

    __slots__ = ("domain", "values", "lipschitz")

    def __init__(self, domain, values, lipschitz: float = _DEFAULT_LIPSCHITZ):
        values = tuple(complex(v) for v in values)
        if len(values) != domain.size:
            raise ConfigInvalid(
                f"domain holds {domain.size} samples, got {len(values)} values"
            )
        for v in values:
            if not (isfinite(v.real) and isfinite(v.imag)):
                raise NonFinite("non-finite sample value")
        if lipschitz <= 0.0:
            raise ConfigInvalid("Lipschitz constant must be positive")
        budget = _CONTINUITY_FACTOR * lipschitz
        for u, w, length in domain.edges():
            jump = abs(values[u] - values[w])
            if jump > budget * length:
                raise ContinuityViolation(
                    f"jump {jump:.4g} between samples {u} and {w} exceeds the "
                    f"continuity bound {budget * length:.4g} for an edge of length {length:.4g}"
                )
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "lipschitz", lipschitz)

    def __setattr__(self, name, value):
        raise AttributeError("GridFunction is immutable")

    @classmethod
    def sample(cls, domain, fn, lipschitz: float = _DEFAULT_LIPSCHITZ) -> "GridFunction":
        return cls(domain, [fn(x) for x in domain.points()], lipschitz)

    def sup_abs(self) -> float:
        return max(abs(v) for v in self.values)

    def min_abs(self) -> float:
        return min(abs(v) for v in self.values)


@dataclass(frozen=True)
class GridIdeal:
    """Functions vanishing on a closed subset of the domain.

    kind "subinterval" (with bounds) applies to interval domains, kind
    "endpoints" to interval domains, kind "boundary" to disk domains.
    """

    kind: str
    left: float = 0.0
    right: float = 0.0

    def __post_init__(self):
        if self.kind not in ("subinterval", "endpoints", "boundary"):
            raise ConfigInvalid(f"unknown grid ideal kind {self.kind!r}")
        if self.kind == "subinterval" and not self.right > self.left:
            raise ConfigInvalid("subinterval ideal needs left < right")

    def vanishing_indices(self, domain) -> list:
        eps = 1e-12
        if self.kind == "subinterval":
            if not isinstance(domain, Interval):
                raise ConfigInvalid("subinterval ideal needs an interval domain")
            pts = domain.points()
            idx = [k for k, x in enumerate(pts) if self.left - eps <= x <= self.right + eps]
        elif self.kind == "endpoints":
            if not isinstance(domain, Interval):
                raise ConfigInvalid("endpoints ideal needs an interval domain")
            idx = [0, domain.n_samples - 1]
        else:
            if not isinstance(domain, Disk):
                raise ConfigInvalid("boundary ideal needs a disk domain")
            idx = domain.circle_indices(domain.n_radii - 1)
        if not idx or len(idx) == domain.size:
            raise ConfigInvalid("vanishing set must be nonempty and proper")
        return idx


def _arg_increments(values, tols: Tolerances) -> list:
    """Principal-branch argument increments along a closed loop of samples."""
    n = len(values)
    out = []
    for k in range(n):
        v0 = values[k]
        v1 = values[(k + 1) % n]
        d = phase(v1 / v0)
        if abs(d) >= pi / 2.0:
            raise InsufficientResolution(
                f"argument jump {d:.3f} at sample {k} exceeds pi/2"
            )
        out.append(d)
    return out


def winding_number(f: GridFunction, tols: Tolerances = DEFAULT_TOLS) -> int:
    """Winding number of a nonvanishing closed curve around the origin.

    Sums principal-branch argument increments between consecutive samples and
    divides by 2*pi.  Requires minimum modulus above wind_tol and adjacent
    argument jumps below pi/2; invariant under rotation of the start sample.
    """
    if not isinstance(f.domain, Circle):
        raise PreconditionFailed("winding numbers are defined on circle grids")
    if f.min_abs() <= tols.wind_tol:
        raise VanishingValue("curve passes through or too close to the origin")
    total = sum(_arg_increments(f.values, tols))
    return round(total / (2.0 * pi))


@dataclass(frozen=True)
class IntervalLiftReport:
    lift: GridFunction
    case: str                 # "zero" or "extension"
    ideal_residual: float     # sup of |lift - f| on the vanishing set
    min_modulus: float        # min |lift| over the grid (extension case)
    success: bool

    def __bool__(self):
        return self.success


def mp_lift_interval(
    f: GridFunction, ideal: GridIdeal, tols: Tolerances = DEFAULT_TOLS
) -> IntervalLiftReport:
    """Lift an MP-invertible coset of the subinterval-vanishing ideal.

    Either f vanishes on the whole subinterval (lift by the zero function) or
    it vanishes nowhere on it (continue the restriction by constants).  A sign
    change inside the subinterval means the coset is not MP invertible:
    NotCosetMPInvertible.
    """
    if ideal.kind != "subinterval":
        raise ConfigInvalid("interval lifting needs a subinterval ideal")
    dom = f.domain
    vanish = ideal.vanishing_indices(dom)
    on = [abs(f.values[k]) for k in vanish]
    if max(on) <= tols.lift_tol:
        lift = GridFunction(dom, [0.0j] * dom.size, f.lipschitz)
        residual = max(abs(lift.values[k] - f.values[k]) for k in vanish)
        return IntervalLiftReport(lift, "zero", residual, 0.0, residual <= tols.lift_tol)
    if min(on) <= tols.lift_tol:
        raise NotCosetMPInvertible(
            "f vanishes somewhere on the subinterval without vanishing identically"
        )
    lo, hi = min(vanish), max(vanish)
    values = list(f.values)
    for k in range(dom.size):
        if k < lo:
            values[k] = f.values[lo]
        elif k > hi:
            values[k] = f.values[hi]
    lift = GridFunction(dom, values, f.lipschitz)
    residual = max(abs(lift.values[k] - f.values[k]) for k in vanish)
    min_mod = lift.min_abs()
    success = residual <= tols.lift_tol and min_mod > tols.lift_tol
    return IntervalLiftReport(lift, "extension", residual, min_mod, success)


@dataclass(frozen=True)
class NonLiftWitness:
    index: int
    point: float
    defect: float     # |g(x)^2 - g(x)| at the witness sample

    def __bool__(self):
        return self.defect >= 0.125


def projection_nonlift_witness(
    a: GridFunction,
    ideal: GridIdeal,
    candidate: GridFunction | None = None,
    tols: Tolerances = DEFAULT_TOLS,
) -> NonLiftWitness:
    """Exhibit the failure of a candidate projection lift on the interval.

    For a real function with a(0) near 0 and a(1) near 1 and the two-endpoint
    ideal, any continuous real candidate that agrees with a at the endpoints
    must cross the band [1/4, 3/4], where |g^2 - g| >= 1/8.  Returns the
    sample maximizing the defect.
    """
    if ideal.kind != "endpoints":
        raise ConfigInvalid("the non-lift witness needs the endpoints ideal")
    dom = a.domain
    first, last = 0, dom.size - 1
    if abs(a.values[first]) > tols.lift_tol:
        raise PreconditionFailed("a must vanish at the left endpoint")
    if abs(a.values[last] - 1.0) > tols.lift_tol:
        raise PreconditionFailed("a must be 1 at the right endpoint")
    if max(abs(v.imag) for v in a.values) > tols.lift_tol:
        raise PreconditionFailed("a must be real-valued")
    g = candidate if candidate is not None else a
    if candidate is not None:
        if max(abs(v.imag) for v in g.values) > tols.lift_tol:
            raise PreconditionFailed("candidate must be real-valued")
        for k in (first, last):
            if abs(g.values[k] - a.values[k]) > tols.lift_tol:
                raise PreconditionFailed("candidate must agree with a at the endpoints")
    best_k = max(range(dom.size), key=lambda k: abs(g.values[k] ** 2 - g.values[k]))
    defect = abs(g.values[best_k] ** 2 - g.values[best_k])
    if defect < 0.125:
        raise InsufficientResolution(
            f"largest idempotency defect {defect:.4g} below 1/8; grid too coarse"
        )
    return NonLiftWitness(best_k, dom.points()[best_k], defect)


@dataclass(frozen=True)
class CircleProfile:
    radius: float
    winding: int | None    # None when vanishing or unresolved
    vanishing: bool
    degenerate: bool       # the single-sample center circle
    unresolved: bool = False  # nonvanishing but argument jumps too large


@dataclass(frozen=True)
class DiskObstructionReport:
    verdict: str            # "obstructed" or "consistent"
    profile: tuple          # CircleProfile per grid radius
    windings: tuple         # the defined winding values, center first

    def __bool__(self):
        return self.verdict == "obstructed"


def disk_obstruction_check(
    candidate: GridFunction, ideal: GridIdeal, tols: Tolerances = DEFAULT_TOLS
) -> DiskObstructionReport:
    """Winding-number obstruction against lifting the boundary coset of z.

    The candidate must agree with the coordinate function on the boundary
    circle.  Sweeping the winding number over the grid radii, the report is
    "obstructed" when some circle vanishes (so the candidate is not
    invertible and zero cannot be isolated in its connected value set) or the
    winding profile is nonconstant.  The degenerate center circle is a
    constant loop and carries winding 0.  "consistent" never occurs for a
    valid candidate; it signals insufficient resolution.
    """
    if ideal.kind != "boundary":
        raise ConfigInvalid("the disk obstruction needs the boundary ideal")
    dom = candidate.domain
    if not isinstance(dom, Disk):
        raise ConfigInvalid("the disk obstruction needs a disk domain")
    pts = dom.points()
    for k in dom.circle_indices(dom.n_radii - 1):
        if abs(candidate.values[k] - pts[k]) > tols.lift_tol:
            raise PreconditionFailed(
                "candidate does not represent the boundary coset of the coordinate"
            )
    profile = []
    windings = []
    center = candidate.values[0]
    center_vanishing = abs(center) <= tols.wind_tol
    profile.append(CircleProfile(0.0, 0, center_vanishing, True))
    windings.append(0)
    for i in range(1, dom.n_radii):
        vals = [candidate.values[k] for k in dom.circle_indices(i)]
        r = dom.radius(i)
        if min(abs(v) for v in vals) <= tols.wind_tol:
            profile.append(CircleProfile(r, None, True, False))
            continue
        try:
            w = round(sum(_arg_increments(vals, tols)) / (2.0 * pi))
        except InsufficientResolution:
            # the curve dives near the origin between samples; usable circles
            # elsewhere can still decide the verdict
            profile.append(CircleProfile(r, None, False, False, unresolved=True))
            continue
        profile.append(CircleProfile(r, w, False, False))
        windings.append(w)
    any_vanishing = any(c.vanishing for c in profile)
    nonconstant = len(set(windings)) > 1
    if any_vanishing or nonconstant:
        verdict = "obstructed"
    elif any(c.unresolved for c in profile):
        raise InsufficientResolution(
            "winding profile undecided: some circles could not be resolved"
        )
    else:
        verdict = "consistent"
    return DiskObstructionReport(verdict, tuple(profile), tuple(windings))


@dataclass(frozen=True)
class BoundaryLiftReport:
    lift: GridFunction
    constant: float
    boundary_residual: float
    success: bool

    def __bool__(self):
        return self.success


def grid_projection_lift(
    p: GridFunction, ideal: GridIdeal, tols: Tolerances = DEFAULT_TOLS
) -> BoundaryLiftReport:
    """Lift a projection coset of the boundary ideal of the disk.

    Boundary values of a projection coset sit near {0, 1}; by connectedness
    of the boundary circle they all sit near the same constant, which is the
    lift.  Mixed boundary values raise MixedBoundary.
    """
    if ideal.kind != "boundary":
        raise ConfigInvalid("the boundary projection lift needs the boundary ideal")
    dom = p.domain
    if not isinstance(dom, Disk):
        raise ConfigInvalid("the boundary projection lift needs a disk domain")
    boundary = dom.circle_indices(dom.n_radii - 1)
    for k in boundary:
        v = p.values[k]
        if abs(v * v - v) > tols.lift_tol or abs(v.imag) > tols.lift_tol:
            raise PreconditionFailed("boundary values are not idempotent at tolerance")
    near_one = [k for k in boundary if abs(p.values[k] - 1.0) < 0.5]
    near_zero = [k for k in boundary if abs(p.values[k]) < 0.5]
    if near_one and near_zero:
        raise MixedBoundary("boundary values cluster near both 0 and 1")
    kappa = 1.0 if near_one else 0.0
    residual = max(abs(p.values[k] - kappa) for k in boundary)
    lift = GridFunction(dom, [complex(kappa, 0.0)] * dom.size, p.lipschitz)
    return BoundaryLiftReport(lift, kappa, residual, residual <= tols.lift_tol)
