"""Acceptance criteria, one test per criterion.

Every criterion runs at its stated trial count and tolerance against the
fixed seed 42 and the default block profile, and prints one PASS/FAIL line
(run with -s to see them).  The per-trial tolerances live inside the suite
checks in mpideals.suites; the counts and runtime budgets are pinned here.
"""

import json
import time

import pytest
from click.testing import CliRunner

from mpideals.cli import main
from mpideals.suites import (
    counterexample_check,
    lifting_equivalence_check,
    minimal_projection_check,
    mp_lift_check,
    mp_sum_check,
    n_ideals_check,
    norm_identity_check,
    projection_lift_check,
    thm_equivalence_check,
)
from mpideals.config import DEFAULT_TOLS
from mpideals.generators import DEFAULT_PROFILE

SEED = 42


def report(label: str, check: dict, elapsed: float | None = None):
    ok = check["fail_count"] == 0
    extra = f"  ({elapsed:.1f}s)" if elapsed is not None else ""
    print(
        f"{'PASS' if ok else 'FAIL'} {label}: {check['pass_count']}/{check['trials']}"
        f" trials, max residual {check['max_residual']:.3e}{extra}"
    )
    return ok


def test_criterion_01_equivalence_suite():
    t0 = time.perf_counter()
    check = thm_equivalence_check(SEED, 1000, DEFAULT_TOLS)
    elapsed = time.perf_counter() - t0
    ok = report("criterion 1 (pseudoinversion equivalences, 1000 matrices)", check, elapsed)
    assert ok
    assert elapsed <= 30.0, f"runtime {elapsed:.1f}s exceeds the 30s budget"


def test_criterion_02_lifting_equivalence():
    check = lifting_equivalence_check(SEED, 500, DEFAULT_TOLS, DEFAULT_PROFILE)
    assert report("criterion 2 (invertibility lifting, 500 instances)", check)
    assert check["fail_count"] == 0  # zero disagreements


def test_criterion_03_norm_identity():
    check = norm_identity_check(SEED, 500, DEFAULT_TOLS, DEFAULT_PROFILE)
    assert report("criterion 3 (norm identity vs power oracle, 500 instances)", check)
    assert check["max_residual"] <= 1e-8


def test_criterion_04_mp_lift():
    check = mp_lift_check(SEED, 300, DEFAULT_TOLS, DEFAULT_PROFILE)
    assert report("criterion 4 (MP lifting certificates, 300 instances)", check)


def test_criterion_05_projection_lift():
    check = projection_lift_check(SEED, 300, DEFAULT_TOLS, DEFAULT_PROFILE)
    ok = report("criterion 5 (projection lifting + cross-method, 300 cosets)", check)
    assert ok
    # the battery must actually exercise peelable spectral outliers
    injected = sum(r["outliers_injected"] for r in check["records"])
    peeled = sum(r["peeled"] for r in check["records"])
    assert injected > 0 and peeled > 0
    assert all(r["residuals"]["cross_method_agreement"] <= 1e-7 for r in check["records"])


def test_criterion_06_mp_sum():
    check = mp_sum_check(SEED, 300, DEFAULT_TOLS, DEFAULT_PROFILE)
    assert report("criterion 6 (ideal + MP-invertible decomposition, 300 instances)", check)
    assert all(r["residuals"]["reassembly"] <= 1e-10 for r in check["records"])


def test_criterion_07_minimal_projections():
    check = minimal_projection_check(SEED, 200, DEFAULT_TOLS, DEFAULT_PROFILE, probes=50)
    assert report("criterion 7 (minimal projection decomposition, 200 elements)", check)
    assert all(r["residuals"]["reconstruction"] <= 1e-8 for r in check["records"])
    assert all(r["residuals"]["partial_sum_defect"] <= 0.0 + 1e-15 for r in check["records"])


def test_criterion_08_two_ideal_identity():
    check = n_ideals_check(SEED, 200, DEFAULT_TOLS, DEFAULT_PROFILE)
    assert report("criterion 8 (two-ideal inverse identity, 200 triples)", check)
    assert all(r["residuals"]["off_ideal"] <= 1e-9 for r in check["records"])


def test_criterion_09_counterexamples():
    t0 = time.perf_counter()
    result = counterexample_check(SEED, 20, DEFAULT_TOLS)
    elapsed = time.perf_counter() - t0
    ok = True
    for check in result["checks"]:
        ok = report(f"criterion 9 ({check['name']})", check) and ok
    assert ok
    disk = result["checks"][0]
    first = disk["records"][0]
    assert first["pass"] and 0 in first["windings"] and 1 in first["windings"]
    assert elapsed <= 10.0, f"runtime {elapsed:.1f}s exceeds the 10s budget"
    print(f"     criterion 9 total runtime {elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_10_determinism():
    runner = CliRunner()
    outputs = []
    for _ in range(2):
        result = runner.invoke(
            main, ["verify", "all", "--seed", "42", "--format", "json"],
            catch_exceptions=False,
        )
        assert result.exit_code == 0
        outputs.append(result.output)

    def normalize(raw: str) -> str:
        doc = json.loads(raw)
        doc.pop("generated_at", None)
        return json.dumps(doc, sort_keys=True)

    identical = normalize(outputs[0]) == normalize(outputs[1])
    print(f"{'PASS' if identical else 'FAIL'} criterion 10 (byte-identical reports modulo timestamp)")
    assert identical
