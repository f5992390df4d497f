"""Named verification suites over seeded instance batteries.

Each suite is a pure function of (seed, trials, block profile, tolerance
overrides): per-trial substreams come from child_seed, so trial outcomes are
order-independent and the emitted report is byte-stable for a fixed
configuration.  Reports carry per-trial residuals, pass counts, and the
maximum residual per check; timestamps are added only by the command line
layer, in a single top-level field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, pi, sin

from . import generators, linalg
from .algebra import coset_invertible, in_ideal, invertible, norm
from .calculus import is_rank_one, minimal_projection_decompose, structural_rank_one
from .commutative import (
    Disk,
    GridFunction,
    GridIdeal,
    Interval,
    disk_obstruction_check,
    grid_projection_lift,
    mp_lift_interval,
    projection_nonlift_witness,
)
from .config import DEFAULT_TOLS, Tolerances, with_overrides
from .errors import ConfigInvalid, UnknownSuite
from .lifting import (
    compact_spectral_report,
    coset_invertible_instance,
    equivalence_instance,
    mp_lift,
    mp_lift_via_projection,
    mp_sum_decompose,
    mp_sum_instance,
    n_ideals_identity,
    n_ideals_instance,
    projection_coset_instance,
    projection_lift,
    psd_ideal_instance,
    separated_ideal_instance,
)
from .moore_penrose import equivalence_report
from .rng import SplitMix64, child_seed
from .generators import DEFAULT_PROFILE, table_from_profile

SUITE_NAMES = (
    "t31-2",
    "lifting",
    "mp-ideal",
    "projections",
    "mp-sum",
    "minimal-projections",
    "counterexamples",
)

DEFAULT_TRIALS = {
    "t31-2": 1000,
    "lifting": 500,
    "mp-ideal": 300,
    "projections": 300,
    "mp-sum": 300,
    "minimal-projections": 200,
    "counterexamples": 20,
}


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    trials: int | None = None       # None: per-suite default
    tol_overrides: dict = field(default_factory=dict)
    profile: tuple = DEFAULT_PROFILE

    def __post_init__(self):
        if self.trials is not None and self.trials < 1:
            raise ConfigInvalid("trials must be at least 1")
        for t, n in self.profile:
            if n < 1:
                raise ConfigInvalid(f"block dimension {n} at index {t} must be >= 1")

    def tolerances(self) -> Tolerances:
        return with_overrides(DEFAULT_TOLS, dict(self.tol_overrides))


def _trial_rng(seed: int, check_tag: int, index: int) -> SplitMix64:
    return SplitMix64(child_seed(child_seed(seed, check_tag), index))


def _check(name: str, records: list) -> dict:
    residual_values = [v for r in records for v in r["residuals"].values()]
    return {
        "name": name,
        "trials": len(records),
        "pass_count": sum(1 for r in records if r["pass"]),
        "fail_count": sum(1 for r in records if not r["pass"]),
        "max_residual": max(residual_values, default=0.0),
        "records": records,
    }


# -- individual checks ---------------------------------------------------------


def thm_equivalence_check(seed: int, trials: int, tols: Tolerances) -> dict:
    """Equivalence of the five pseudoinversion characterizations on seeded
    matrices of sizes 1..8, half deliberately rank-deficient."""
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 1, i)
        m = 1 + rng.rint(8)
        n = 1 + rng.rint(8)
        if i % 2 == 0:
            rank = min(m, n)
        else:
            if min(m, n) == 1:
                m, n = max(m, 2), max(n, 2)
            rank = rng.rint(min(m, n))
        a = generators.random_sigma_matrix(rng, m, n, rank)
        rep = equivalence_report(a, tols)
        penrose = max(rep.result.residuals.values())
        residuals = {
            "penrose": penrose,
            "norm_formula": rep.result.norm_formula_residual,
            "oracle_agreement": rep.oracle_agreement,
            "uniqueness": rep.uniqueness_residual,
        }
        ok = (
            rep.all_agree
            and all(rep.result.verdicts.values())
            and penrose <= 1e-8
            and rep.result.norm_formula_residual <= 1e-6
            and rep.oracle_agreement <= 1e-8
            and rep.uniqueness_residual <= 1e-7
        )
        records.append({"trial": i, "pass": ok, "residuals": residuals})
    return _check("mp-equivalence", records)


def lifting_equivalence_check(seed: int, trials: int, tols: Tolerances, profile) -> dict:
    """Invertibility in the algebra against coset invertibility plus blockwise
    invertibility plus a nonzero scalar part: the two sides must agree."""
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 2, i)
        table = table_from_profile(profile)
        a, ideal = equivalence_instance(rng, table)
        lhs = invertible(a, tols)
        cw = coset_invertible(a, ideal, tols)
        blocks_ok = True
        for t in a.support:
            sv = linalg.singular_values(a.rep(t), tols)
            if sv and sv[-1] <= tols.sing_tol:
                blocks_ok = False
        rhs = bool(cw) and blocks_ok and abs(a.gamma) > tols.sing_tol
        residuals = {}
        if lhs.ok:
            residuals["inverse_witness"] = lhs.residual
        if cw.ok:
            residuals["coset_witness"] = cw.residual
        ok = bool(lhs) == rhs
        records.append({"trial": i, "pass": ok, "residuals": residuals})
    return _check("lifting-equivalence", records)


def norm_identity_check(seed: int, trials: int, tols: Tolerances, profile) -> dict:
    """The algebra norm against an independent per-block power-iteration
    oracle: norm(a) = max(|gamma|, sup_t power_norm(block))."""
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 3, i)
        table = table_from_profile(profile)
        a = generators.random_element(rng, table, density=0.7)
        direct = norm(a, tols)
        oracle = abs(a.gamma)
        for t in a.support:
            oracle = max(oracle, linalg.power_norm(a.rep(t)))
        diff = abs(direct - oracle)
        records.append({"trial": i, "pass": diff <= 1e-8, "residuals": {"norm_agreement": diff}})
    return _check("norm-identity", records)


def mp_lift_check(seed: int, trials: int, tols: Tolerances, profile) -> dict:
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 4, i)
        table = table_from_profile(profile)
        a, ideal = coset_invertible_instance(rng, table)
        rep = mp_lift(a, ideal, tols)
        records.append({"trial": i, "pass": rep.success, "residuals": dict(rep.residuals)})
    return _check("mp-lift", records)


def n_ideals_check(seed: int, trials: int, tols: Tolerances, profile) -> dict:
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 5, i)
        table = table_from_profile(profile)
        a, b, c, ideal1, ideal2 = n_ideals_instance(rng, table)
        cert = n_ideals_identity(a, b, c, ideal1, ideal2, tols)
        # the combined inverse must also work as a generalized inverse witness
        g_resid = norm(a * cert.g * a - a, tols)
        meet_off = cert.residual
        ok = bool(cert) and (g_resid <= 1e-7 or not ideal1.support == ideal2.support)
        records.append(
            {
                "trial": i,
                "pass": bool(cert),
                "residuals": {"off_ideal": meet_off, "inverse_defect_mod_ideal": g_resid},
            }
        )
    return _check("two-ideal-identity", records)


def compact_spectral_check(seed: int, trials: int, tols: Tolerances, profile) -> dict:
    records = []
    epsilons = (0.5, 0.1, 0.01)
    for i in range(trials):
        rng = _trial_rng(seed, 6, i)
        table = table_from_profile(profile)
        j, ideal = separated_ideal_instance(rng, table)
        rep = compact_spectral_report(j, ideal, epsilons, tols)
        worst = max((w[1] for w in rep.witnesses), default=0.0)
        records.append({"trial": i, "pass": rep.success, "residuals": {"witness_penrose": worst}})
    return _check("compact-spectral", records)


def projection_lift_check(seed: int, trials: int, tols: Tolerances, profile) -> dict:
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 7, i)
        table = table_from_profile(profile)
        a, ideal, n_outliers = projection_coset_instance(rng, table)
        rep = projection_lift(a, ideal, tols)
        rep2 = mp_lift_via_projection(a, ideal, tols)
        agreement = norm(rep.lift - rep2.lift, tols) if rep.lift and rep2.lift else float("inf")
        residuals = dict(rep.residuals)
        residuals["cross_method_agreement"] = agreement
        ok = rep.success and rep2.success and agreement <= 1e-7
        records.append(
            {
                "trial": i,
                "pass": ok,
                "peeled": len(rep.extras["peeled"]),
                "outliers_injected": n_outliers,
                "residuals": residuals,
            }
        )
    return _check("projection-lift", records)


def mp_sum_check(seed: int, trials: int, tols: Tolerances, profile) -> dict:
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 8, i)
        table = table_from_profile(profile)
        a, ideal = mp_sum_instance(rng, table)
        rep = mp_sum_decompose(a, ideal, tols)
        k = rep.extras["ideal_part"]
        ok = rep.success and in_ideal(k, ideal, tols)
        records.append({"trial": i, "pass": ok, "residuals": dict(rep.residuals)})
    return _check("mp-sum", records)


def minimal_projection_check(
    seed: int, trials: int, tols: Tolerances, profile, probes: int = 50
) -> dict:
    records = []
    for i in range(trials):
        rng = _trial_rng(seed, 9, i)
        table = table_from_profile(profile)
        j, ideal = psd_ideal_instance(rng, table)
        terms = minimal_projection_decompose(j, ideal, tols)
        total = table.zero()
        partial_defect = 0.0
        for k, (lam, proj) in enumerate(terms):
            total = total + lam * proj
            tail = norm(j - total, tols)
            bound = (terms[k + 1][0] if k + 1 < len(terms) else 0.0) + tols.decomp_tol
            partial_defect = max(partial_defect, tail - bound)
        recon = norm(j - total, tols)
        probe_list = [
            generators.random_element(rng, table, density=0.6) for _ in range(probes)
        ]
        rank_one_ok = True
        worst_probe_resid = 0.0
        for lam, proj in terms:
            verdict = is_rank_one(proj, probe_list, tols)
            rank_one_ok = rank_one_ok and bool(verdict) and structural_rank_one(proj, tols)
            worst_probe_resid = max(worst_probe_resid, verdict.worst_residual)
        ok = recon <= tols.decomp_tol and partial_defect <= 0.0 and rank_one_ok
        records.append(
            {
                "trial": i,
                "pass": ok,
                "residuals": {
                    "reconstruction": recon,
                    "partial_sum_defect": max(partial_defect, 0.0),
                    "rank_one_probe": worst_probe_resid,
                },
            }
        )
    return _check("minimal-projections", records)


# -- counterexample battery -----------------------------------------------------


def _disk_candidates(rng: SplitMix64, count: int) -> list:
    """Seeded family of valid boundary-coset candidates, the coordinate
    function first."""
    out = [("coordinate", lambda z: z, 4.0)]
    while len(out) < count:
        style = rng.rint(3)
        if style == 0:
            c_re = rng.runif(-1.0, 1.0)
            c_im = rng.runif(-1.0, 1.0)
            mag = rng.runif(0.5, 1.5)
            nrm = (c_re * c_re + c_im * c_im) ** 0.5 or 1.0
            c0 = complex(mag * c_re / nrm, mag * c_im / nrm)
            r0 = rng.runif(0.05, 0.3)
            r1 = rng.runif(0.6, 0.9)

            def fn(z, c0=c0, r0=r0, r1=r1):
                r = abs(z)
                if r <= r0:
                    chi = 0.0
                elif r >= r1:
                    chi = 1.0
                else:
                    chi = (r - r0) / (r1 - r0)
                return (1.0 - chi) * c0 + chi * z

            out.append(("plateau", fn, 8.0))
        elif style == 1:
            s = rng.runif(-0.5, 2.0)

            def fn(z, s=s):
                return z * (1.0 + s * (1.0 - abs(z)))

            out.append(("radial-factor", fn, 8.0))
        else:
            s = rng.runif(-2.0, 2.0)

            def fn(z, s=s):
                r = abs(z)
                w = s * r * (1.0 - r)
                return z * complex(cos(w), sin(w))

            out.append(("phase-twist", fn, 10.0))
    return out[:count]


def counterexample_check(seed: int, candidates: int, tols: Tolerances) -> dict:
    """The three commutative examples at once.

    Disk: every candidate lift of the boundary coset of the coordinate is
    obstructed, and the coordinate candidate's winding profile contains the
    values 0 and 1.  Interval [0, 2]: seeded functions nonvanishing on the
    vanishing subinterval lift.  Interval [0, 1]: every candidate projection
    lift shows an idempotency defect of at least 1/8.  The boundary ideal of
    the disk does lift projections, checked on a bump function.
    """
    records = []
    disk = Disk(17, 64)
    boundary = GridIdeal("boundary")
    rng = SplitMix64(child_seed(seed, 100))
    for idx, (label, fn, lip) in enumerate(_disk_candidates(rng, candidates)):
        cand = GridFunction.sample(disk, fn, lipschitz=lip)
        rep = disk_obstruction_check(cand, boundary, tols)
        ok = rep.verdict == "obstructed"
        if idx == 0:
            ok = ok and 0 in rep.windings and 1 in rep.windings
        records.append(
            {
                "trial": idx,
                "pass": ok,
                "candidate": label,
                "windings": sorted(set(rep.windings)),
                "residuals": {},
            }
        )
    check_disk = _check("disk-obstruction", records)

    records = []
    dom = Interval(0.0, 2.0, 129)
    sub = GridIdeal("subinterval", 0.0, 1.0)
    made = 0
    i = 0
    while made < candidates:
        rng = _trial_rng(seed, 11, i)
        i += 1
        c0 = rng.runif(0.8, 2.0)
        a1 = rng.runif(-0.5, 0.5)
        a2 = rng.runif(-0.3, 0.3)
        b0 = rng.runif(-0.5, 0.5)
        b1 = rng.runif(-0.5, 0.5)
        f = GridFunction.sample(
            dom, lambda x: complex(c0 + a1 * x + a2 * x * x, b0 + b1 * x)
        )
        if min(abs(v) for v in f.values[:65]) <= 0.3:
            continue
        rep = mp_lift_interval(f, sub, tols)
        made += 1
        records.append(
            {
                "trial": made - 1,
                "pass": rep.success and rep.case == "extension",
                "residuals": {"ideal_residual": rep.ideal_residual},
            }
        )
    check_interval = _check("interval-mp-lift", records)

    records = []
    dom01 = Interval(0.0, 1.0, 129)
    endpoints = GridIdeal("endpoints")
    base = GridFunction.sample(dom01, lambda x: x)
    for idx in range(candidates):
        rng = _trial_rng(seed, 12, idx)
        coeffs = [rng.runif(-0.1, 0.1) for _ in range(3)]

        def g_fn(x, coeffs=coeffs):
            return x + sum(c * sin((k + 1) * pi * x) for k, c in enumerate(coeffs))

        g = GridFunction.sample(dom01, g_fn)
        witness = projection_nonlift_witness(base, endpoints, candidate=g, tols=tols)
        records.append(
            {
                "trial": idx,
                "pass": witness.defect >= 0.125,
                "residuals": {"idempotency_defect": witness.defect},
            }
        )
    check_witness = _check("projection-nonlift-witness", records)

    bump = GridFunction.sample(disk, lambda z: 0.6 * max(0.0, 1.0 - 2.0 * abs(z)))
    lift = grid_projection_lift(bump, boundary, tols)
    check_boundary = _check(
        "boundary-projection-lift",
        [
            {
                "trial": 0,
                "pass": lift.success and lift.constant == 0.0,
                "residuals": {"boundary_residual": lift.boundary_residual},
            }
        ],
    )
    return {
        "name": "counterexamples",
        "checks": [check_disk, check_interval, check_witness, check_boundary],
    }


# -- suite orchestration ----------------------------------------------------------


def run_suite(name: str, config: SuiteConfig) -> dict:
    """Run a named suite; the report is a pure function of the configuration."""
    if name == "all":
        suites = [run_suite(s, config) for s in SUITE_NAMES]
        return {
            "schema": 1,
            "suite": "all",
            "seed": config.seed,
            "suites": suites,
            "pass": all(s["pass"] for s in suites),
        }
    if name not in SUITE_NAMES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES + ('all',))}")
    tols = config.tolerances()
    trials = config.trials if config.trials is not None else DEFAULT_TRIALS[name]
    seed = config.seed
    profile = config.profile
    if name == "t31-2":
        checks = [thm_equivalence_check(seed, trials, tols)]
    elif name == "lifting":
        checks = [
            lifting_equivalence_check(seed, trials, tols, profile),
            norm_identity_check(seed, trials, tols, profile),
        ]
    elif name == "mp-ideal":
        checks = [
            mp_lift_check(seed, trials, tols, profile),
            n_ideals_check(seed, max(1, (2 * trials) // 3), tols, profile),
            compact_spectral_check(seed, max(1, trials // 3), tols, profile),
        ]
    elif name == "projections":
        checks = [projection_lift_check(seed, trials, tols, profile)]
    elif name == "mp-sum":
        checks = [mp_sum_check(seed, trials, tols, profile)]
    elif name == "minimal-projections":
        checks = [minimal_projection_check(seed, trials, tols, profile)]
    else:
        checks = counterexample_check(seed, trials, tols)["checks"]
    return {
        "schema": 1,
        "suite": name,
        "seed": seed,
        "trials": trials,
        "blocks": [[t, n] for t, n in profile],
        "tolerance_overrides": dict(sorted(config.tol_overrides.items())),
        "checks": checks,
        "pass": all(c["fail_count"] == 0 for c in checks),
    }
