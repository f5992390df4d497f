"""Command line interface.

Two subcommands: `verify <suite>` runs a named verification suite over seeded
instances, `query <operation> <file>` runs a single operation on a JSON
instance file.  Exit status 0 means success, 1 a mathematical failure (a
precondition or certificate did not hold), 2 malformed input or
configuration.

Reports carry a schema version and isolate the timestamp in the single
top-level field "generated_at", so byte-level comparisons of repeated runs
only need to strip that field.
"""

from __future__ import annotations

import json
import sys
from datetime import datetime, timezone

import click

from . import serialize
from .algebra import in_ideal, invertible, norm, spectrum
from .algebra import coset_invertible as algebra_coset_invertible
from .calculus import minimal_projection_decompose, spectral_decomposition
from .commutative import (
    disk_obstruction_check,
    grid_projection_lift,
    mp_lift_interval,
    projection_nonlift_witness,
    winding_number,
)
from .config import DEFAULT_TOLS, with_overrides
from .errors import InputError, MathError, ParseError, UnknownOperation
from .lifting import (
    compact_spectral_report,
    mp_lift,
    mp_lift_via_projection,
    mp_sum_decompose,
    n_ideals_identity,
    projection_lift,
)
from .moore_penrose import equivalence_report, mp_inverse
from .suites import SuiteConfig, run_suite

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _parse_tols(pairs) -> dict:
    out = {}
    for pair in pairs:
        name, eq, value = pair.partition("=")
        if not eq:
            raise InputError(f"--tol expects name=value, got {pair!r}")
        try:
            out[name] = float(value)
        except ValueError:
            raise InputError(f"--tol {name}: {value!r} is not a number")
    return out


def _parse_blocks(spec: str | None):
    if spec is None:
        from .generators import DEFAULT_PROFILE

        return DEFAULT_PROFILE
    profile = []
    for part in spec.split(","):
        idx, colon, dim = part.partition(":")
        if not colon:
            raise InputError(f"--blocks expects index:dim pairs, got {part!r}")
        try:
            profile.append((int(idx), int(dim)))
        except ValueError:
            raise InputError(f"--blocks: {part!r} is not an index:dim pair")
    return tuple(profile)


def _emit(document: dict, fmt: str, renderer=None):
    if fmt == "json":
        click.echo(json.dumps(document, sort_keys=True, separators=(",", ":")))
    else:
        if renderer is None:
            click.echo(json.dumps(document, sort_keys=True, indent=2))
        else:
            for line in renderer(document):
                click.echo(line)


def _render_suite(document: dict):
    def render_one(rep):
        yield f"suite {rep['suite']}  seed={rep['seed']}  trials={rep['trials']}"
        for check in rep["checks"]:
            status = "PASS" if check["fail_count"] == 0 else "FAIL"
            yield (
                f"  {status}  {check['name']:28s} {check['pass_count']}/{check['trials']}"
                f"  max residual {check['max_residual']:.3e}"
            )
        yield f"  => {'PASS' if rep['pass'] else 'FAIL'}"

    if document.get("suite") == "all":
        for rep in document["suites"]:
            yield from render_one(rep)
        yield f"overall: {'PASS' if document['pass'] else 'FAIL'}"
    else:
        yield from render_one(document)


@click.group()
def main():
    """Verification toolkit for Moore-Penrose inversion and ideal lifting."""


@main.command()
@click.argument("suite")
@click.option("--seed", type=int, envvar="MPIDEALS_SEED", default=42, show_default=True,
              help="Seed for the deterministic instance stream (env: MPIDEALS_SEED).")
@click.option("--trials", type=int, default=None, help="Trial count override.")
@click.option("--tol", "tols", multiple=True, metavar="NAME=VALUE",
              help="Tolerance override; repeatable.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
@click.option("--blocks", default=None, metavar="T:N,T:N,...",
              help="Block profile override (index:dimension pairs).")
def verify(suite, seed, trials, tols, fmt, blocks):
    """Run a verification suite (or `all`) and report per-trial residuals."""
    try:
        config = SuiteConfig(
            seed=seed,
            trials=trials,
            tol_overrides=_parse_tols(tols),
            profile=_parse_blocks(blocks),
        )
        report = run_suite(suite, config)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except MathError as exc:
        click.echo(f"mathematical failure: {exc}", err=True)
        sys.exit(EXIT_MATH)
    document = {"generated_at": _timestamp(), **report}
    _emit(document, fmt, _render_suite)
    sys.exit(EXIT_OK if report["pass"] else EXIT_MATH)


def _need(envelope: dict, key: str):
    if key not in envelope:
        raise ParseError(f"instance file is missing the {key!r} field")
    return envelope[key]


def _load_element_and_table(envelope):
    table = serialize.table_from_json({"dims": _need(envelope, "dims")})
    element = serialize.element_from_json(_need(envelope, "element"), table)
    return table, element


def _load_ideal(envelope, table, key="ideal"):
    return serialize.ideal_from_json(_need(envelope, key), table, path=key)


def _matrix_or_element(envelope):
    if "matrix" in envelope:
        return serialize.matrix_from_json(envelope["matrix"])
    table, element = _load_element_and_table(envelope)
    return element


def _op_mp_inverse(env, tols):
    res = mp_inverse(_matrix_or_element(env), tols)
    return serialize.mp_result_to_json(res), all(res.verdicts.values())


def _op_equivalence(env, tols):
    rep = equivalence_report(_matrix_or_element(env), tols)
    doc = serialize.mp_result_to_json(rep.result)
    doc["oracle_agreement"] = rep.oracle_agreement
    doc["uniqueness_residual"] = rep.uniqueness_residual
    doc["all_agree"] = rep.all_agree
    return doc, rep.all_agree and all(rep.result.verdicts.values())


def _op_invertible(env, tols):
    _, element = _load_element_and_table(env)
    w = invertible(element, tols)
    doc = {"invertible": bool(w), "witness_residual": w.residual if w.ok else None}
    return doc, True


def _op_coset_invertible(env, tols):
    table, element = _load_element_and_table(env)
    ideal = _load_ideal(env, table)
    w = algebra_coset_invertible(element, ideal, tols)
    doc = {"coset_invertible": bool(w), "witness_residual": w.residual if w.ok else None}
    return doc, True


def _op_in_ideal(env, tols):
    table, element = _load_element_and_table(env)
    ideal = _load_ideal(env, table)
    return {"in_ideal": in_ideal(element, ideal, tols)}, True


def _op_norm(env, tols):
    _, element = _load_element_and_table(env)
    return {"norm": norm(element, tols)}, True


def _op_spectrum(env, tols):
    _, element = _load_element_and_table(env)
    return {"spectrum": spectrum(element, tols)}, True


def _op_spectral_decomposition(env, tols):
    _, element = _load_element_and_table(env)
    dec = spectral_decomposition(element, tols)
    return serialize.decomposition_to_json(dec), True


def _lift_op(fn):
    def run(env, tols):
        table, element = _load_element_and_table(env)
        ideal = _load_ideal(env, table)
        rep = fn(element, ideal, tols)
        return serialize.lift_report_to_json(rep), rep.success

    return run


def _op_minimal_projections(env, tols):
    table, element = _load_element_and_table(env)
    ideal = _load_ideal(env, table)
    terms = minimal_projection_decompose(element, ideal, tols)
    doc = {
        "terms": [
            {"lambda": lam, "projection": serialize.element_to_json(p)} for lam, p in terms
        ]
    }
    return doc, True


def _op_compact_spectral(env, tols):
    table, element = _load_element_and_table(env)
    ideal = _load_ideal(env, table)
    epsilons = env.get("epsilons", [0.5, 0.1, 0.01])
    rep = compact_spectral_report(element, ideal, epsilons, tols)
    doc = {
        "counts": {repr(eps): count for eps, count in sorted(rep.counts.items())},
        "min_nonzero": rep.min_nonzero,
        "witnesses": [
            {"lambda": lam, "penrose_worst": worst, "pass": ok}
            for lam, worst, ok in rep.witnesses
        ],
        "success": rep.success,
    }
    return doc, rep.success


def _op_n_ideals(env, tols):
    table = serialize.table_from_json({"dims": _need(env, "dims")})
    a = serialize.element_from_json(_need(env, "a"), table, path="a")
    b = serialize.element_from_json(_need(env, "b"), table, path="b")
    c = serialize.element_from_json(_need(env, "c"), table, path="c")
    ideal1 = _load_ideal(env, table, "ideal1")
    ideal2 = _load_ideal(env, table, "ideal2")
    cert = n_ideals_identity(a, b, c, ideal1, ideal2, tols)
    doc = {
        "ok": bool(cert),
        "support_exact": cert.support_exact,
        "residual": cert.residual,
        "g": serialize.element_to_json(cert.g),
    }
    return doc, bool(cert)


def _op_winding(env, tols):
    grid = serialize.grid_from_json(_need(env, "grid"))
    return {"winding": winding_number(grid, tols)}, True


def _op_interval_mp_lift(env, tols):
    grid = serialize.grid_from_json(_need(env, "grid"))
    ideal = serialize.grid_ideal_from_json(_need(env, "grid_ideal"))
    rep = mp_lift_interval(grid, ideal, tols)
    doc = {
        "case": rep.case,
        "ideal_residual": rep.ideal_residual,
        "min_modulus": rep.min_modulus,
        "success": rep.success,
        "lift": serialize.grid_to_json(rep.lift),
    }
    return doc, rep.success


def _op_nonlift_witness(env, tols):
    grid = serialize.grid_from_json(_need(env, "grid"))
    ideal = serialize.grid_ideal_from_json(_need(env, "grid_ideal"))
    candidate = None
    if "candidate" in env:
        candidate = serialize.grid_from_json(env["candidate"], path="candidate")
    w = projection_nonlift_witness(grid, ideal, candidate, tols)
    doc = {"index": w.index, "point": w.point, "defect": w.defect, "at_least_eighth": bool(w)}
    return doc, bool(w)


def _op_disk_obstruction(env, tols):
    grid = serialize.grid_from_json(_need(env, "grid"))
    ideal = serialize.grid_ideal_from_json(_need(env, "grid_ideal"))
    rep = disk_obstruction_check(grid, ideal, tols)
    doc = {
        "verdict": rep.verdict,
        "windings": list(rep.windings),
        "profile": [
            {
                "radius": c.radius,
                "winding": c.winding,
                "vanishing": c.vanishing,
                "degenerate": c.degenerate,
                "unresolved": c.unresolved,
            }
            for c in rep.profile
        ],
    }
    return doc, rep.verdict == "obstructed"


def _op_grid_projection_lift(env, tols):
    grid = serialize.grid_from_json(_need(env, "grid"))
    ideal = serialize.grid_ideal_from_json(_need(env, "grid_ideal"))
    rep = grid_projection_lift(grid, ideal, tols)
    doc = {
        "constant": rep.constant,
        "boundary_residual": rep.boundary_residual,
        "success": rep.success,
    }
    return doc, rep.success


OPERATIONS = {
    "mp-inverse": _op_mp_inverse,
    "equivalence": _op_equivalence,
    "invertible": _op_invertible,
    "coset-invertible": _op_coset_invertible,
    "in-ideal": _op_in_ideal,
    "norm": _op_norm,
    "spectrum": _op_spectrum,
    "spectral-decomposition": _op_spectral_decomposition,
    "mp-lift": _lift_op(mp_lift),
    "projection-lift": _lift_op(projection_lift),
    "mp-lift-via-projection": _lift_op(mp_lift_via_projection),
    "mp-sum": _lift_op(mp_sum_decompose),
    "minimal-projections": _op_minimal_projections,
    "compact-spectral": _op_compact_spectral,
    "n-ideals": _op_n_ideals,
    "winding": _op_winding,
    "interval-mp-lift": _op_interval_mp_lift,
    "nonlift-witness": _op_nonlift_witness,
    "disk-obstruction": _op_disk_obstruction,
    "grid-projection-lift": _op_grid_projection_lift,
}


def _render_query(document: dict):
    yield f"operation {document['operation']}: {'ok' if document['success'] else 'FAILED'}"
    for key, value in sorted(document["result"].items()):
        if isinstance(value, (dict, list)):
            text = json.dumps(value, sort_keys=True)
            if len(text) > 120:
                text = text[:117] + "..."
            yield f"  {key}: {text}"
        else:
            yield f"  {key}: {value}"


@main.command()
@click.argument("operation")
@click.argument("instance", type=click.Path())
@click.option("--tol", "tols", multiple=True, metavar="NAME=VALUE",
              help="Tolerance override; repeatable.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
def query(operation, instance, tols, fmt):
    """Run a single operation on a JSON instance file and print its
    certificate block."""
    try:
        if operation not in OPERATIONS:
            raise UnknownOperation(
                f"unknown operation {operation!r}; choose from {', '.join(sorted(OPERATIONS))}"
            )
        tolerances = with_overrides(DEFAULT_TOLS, _parse_tols(tols))
        try:
            with open(instance, "r", encoding="utf-8") as fh:
                envelope = json.load(fh)
        except FileNotFoundError:
            raise ParseError(f"no such file: {instance}")
        except json.JSONDecodeError as exc:
            raise ParseError(f"{instance}:{exc.lineno}:{exc.colno}: {exc.msg}")
        if not isinstance(envelope, dict):
            raise ParseError("instance file must hold a JSON object")
        result, success = OPERATIONS[operation](envelope, tolerances)
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except MathError as exc:
        click.echo(f"mathematical failure: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_MATH)
    document = {
        "schema": 1,
        "generated_at": _timestamp(),
        "operation": operation,
        "success": success,
        "result": result,
    }
    _emit(document, fmt, _render_query)
    sys.exit(EXIT_OK if success else EXIT_MATH)


if __name__ == "__main__":
    main()
