"""JSON encoding and decoding for the documented instance-file schemas.

Matrices: {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order.
Block elements: {"gamma": [re, im], "blocks": {"t": <matrix>}}.
Dimension tables: {"dims": {"t": n_t}}.
Ideals: {"support": [t, ...]} or {"support": "all"}.
Grid functions: {"domain": {...}, "values": [[re, im], ...], "lipschitz": L}.

Round-tripping is loss-free: floats are emitted as JSON numbers, which
recover the exact double on decode.  Decoding failures raise ParseError with
the offending field path.
"""

from __future__ import annotations

from .algebra import BlockElement, DimensionTable, DualIdeal
from .commutative import Circle, Disk, GridFunction, GridIdeal, Interval
from .errors import MPIdealsError, ParseError
from .linalg import CMatrix


def _fail(path: str, message: str):
    raise ParseError(f"{path}: {message}")


def _get(obj, key, path):
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        _fail(path, f"missing field {key!r}")
    return obj[key]


def _as_int(value, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    return value


def _as_real(value, path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    return float(value)


def _as_complex(value, path) -> complex:
    if not (isinstance(value, list) and len(value) == 2):
        _fail(path, f"expected a [re, im] pair, got {value!r}")
    return complex(_as_real(value[0], path + "[0]"), _as_real(value[1], path + "[1]"))


def _pair(z: complex) -> list:
    return [z.real, z.imag]


# -- matrices -----------------------------------------------------------------


def matrix_to_json(m: CMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "data": [_pair(z) for z in m.entries]}


def matrix_from_json(obj, path: str = "matrix") -> CMatrix:
    rows = _as_int(_get(obj, "rows", path), path + ".rows")
    cols = _as_int(_get(obj, "cols", path), path + ".cols")
    data = _get(obj, "data", path)
    if not isinstance(data, list):
        _fail(path + ".data", "expected a list")
    if len(data) != rows * cols:
        _fail(path + ".data", f"expected {rows * cols} entries, got {len(data)}")
    entries = [_as_complex(v, f"{path}.data[{i}]") for i, v in enumerate(data)]
    try:
        return CMatrix(rows, cols, entries)
    except MPIdealsError as exc:
        _fail(path, str(exc))


# -- dimension tables, ideals, elements ----------------------------------------


def table_to_json(table: DimensionTable) -> dict:
    return {"dims": {str(t): table.dims[t] for t in table.indices}}


def table_from_json(obj, path: str = "dims") -> DimensionTable:
    dims = _get(obj, "dims", path)
    if not isinstance(dims, dict):
        _fail(path + ".dims", "expected an object")
    out = {}
    for key, val in dims.items():
        try:
            t = int(key)
        except ValueError:
            _fail(f"{path}.dims.{key}", "block index must be an integer")
        out[t] = _as_int(val, f"{path}.dims.{key}")
    try:
        return DimensionTable(out)
    except MPIdealsError as exc:
        _fail(path, str(exc))


def ideal_to_json(ideal: DualIdeal) -> dict:
    if ideal.support == frozenset(ideal.table.dims):
        return {"support": "all"}
    return {"support": sorted(ideal.support)}


def ideal_from_json(obj, table: DimensionTable, path: str = "ideal") -> DualIdeal:
    support = _get(obj, "support", path)
    if support == "all":
        return DualIdeal.all_blocks(table)
    if not isinstance(support, list):
        _fail(path + ".support", 'expected a list of indices or "all"')
    idx = [_as_int(v, f"{path}.support[{i}]") for i, v in enumerate(support)]
    try:
        return DualIdeal(table, frozenset(idx))
    except MPIdealsError as exc:
        _fail(path, str(exc))


def element_to_json(a: BlockElement) -> dict:
    return {
        "gamma": _pair(a.gamma),
        "blocks": {str(t): matrix_to_json(a.blocks[t]) for t in a.support},
    }


def element_from_json(obj, table: DimensionTable, path: str = "element") -> BlockElement:
    gamma = _as_complex(_get(obj, "gamma", path), path + ".gamma")
    blocks_obj = _get(obj, "blocks", path)
    if not isinstance(blocks_obj, dict):
        _fail(path + ".blocks", "expected an object")
    blocks = {}
    for key, val in blocks_obj.items():
        try:
            t = int(key)
        except ValueError:
            _fail(f"{path}.blocks.{key}", "block index must be an integer")
        blocks[t] = matrix_from_json(val, f"{path}.blocks.{key}")
    try:
        return BlockElement(table, gamma, blocks)
    except MPIdealsError as exc:
        _fail(path, str(exc))


# -- grid model -----------------------------------------------------------------


def domain_to_json(domain) -> dict:
    if isinstance(domain, Interval):
        return {
            "kind": "interval",
            "left": domain.left,
            "right": domain.right,
            "n_samples": domain.n_samples,
        }
    if isinstance(domain, Circle):
        return {"kind": "circle", "n_samples": domain.n_samples}
    if isinstance(domain, Disk):
        return {"kind": "disk", "n_radii": domain.n_radii, "n_angles": domain.n_angles}
    raise ParseError(f"unknown domain type {type(domain).__name__}")


def domain_from_json(obj, path: str = "domain"):
    kind = _get(obj, "kind", path)
    try:
        if kind == "interval":
            return Interval(
                _as_real(_get(obj, "left", path), path + ".left"),
                _as_real(_get(obj, "right", path), path + ".right"),
                _as_int(_get(obj, "n_samples", path), path + ".n_samples"),
            )
        if kind == "circle":
            return Circle(_as_int(_get(obj, "n_samples", path), path + ".n_samples"))
        if kind == "disk":
            return Disk(
                _as_int(_get(obj, "n_radii", path), path + ".n_radii"),
                _as_int(_get(obj, "n_angles", path), path + ".n_angles"),
            )
    except MPIdealsError as exc:
        _fail(path, str(exc))
    _fail(path + ".kind", f"unknown domain kind {kind!r}")


def grid_to_json(f: GridFunction) -> dict:
    return {
        "domain": domain_to_json(f.domain),
        "values": [_pair(v) for v in f.values],
        "lipschitz": f.lipschitz,
    }


def grid_from_json(obj, path: str = "grid") -> GridFunction:
    domain = domain_from_json(_get(obj, "domain", path), path + ".domain")
    values_obj = _get(obj, "values", path)
    if not isinstance(values_obj, list):
        _fail(path + ".values", "expected a list")
    values = [_as_complex(v, f"{path}.values[{i}]") for i, v in enumerate(values_obj)]
    lipschitz = _as_real(obj.get("lipschitz", 4.0), path + ".lipschitz")
    try:
        return GridFunction(domain, values, lipschitz)
    except MPIdealsError as exc:
        _fail(path, str(exc))


def grid_ideal_to_json(ideal: GridIdeal) -> dict:
    if ideal.kind == "subinterval":
        return {"kind": "subinterval", "left": ideal.left, "right": ideal.right}
    return {"kind": ideal.kind}


def grid_ideal_from_json(obj, path: str = "grid_ideal") -> GridIdeal:
    kind = _get(obj, "kind", path)
    try:
        if kind == "subinterval":
            return GridIdeal(
                "subinterval",
                _as_real(_get(obj, "left", path), path + ".left"),
                _as_real(_get(obj, "right", path), path + ".right"),
            )
        return GridIdeal(kind)
    except MPIdealsError as exc:
        _fail(path, str(exc))


# -- result objects -------------------------------------------------------------


def _value_to_json(v):
    if isinstance(v, CMatrix):
        return matrix_to_json(v)
    if isinstance(v, BlockElement):
        return element_to_json(v)
    if isinstance(v, GridFunction):
        return grid_to_json(v)
    if isinstance(v, float) and v == float("inf"):
        return None
    return v


def mp_result_to_json(res) -> dict:
    return {
        "pseudoinverse": _value_to_json(res.pseudoinverse),
        "mp_projection": _value_to_json(res.mp_projection),
        "spectral_gap": _value_to_json(res.spectral_gap),
        "verdicts": dict(res.verdicts),
        "residuals": {k: v for k, v in sorted(res.residuals.items())},
        "norm_formula_residual": res.norm_formula_residual,
    }


def lift_report_to_json(rep) -> dict:
    return {
        "theorem": rep.theorem,
        "success": rep.success,
        "residuals": {k: _value_to_json(v) for k, v in sorted(rep.residuals.items())},
        "lift": _value_to_json(rep.lift) if rep.lift is not None else None,
    }


def decomposition_to_json(dec) -> dict:
    return {
        "clusters": [
            {
                "lambda": c.value,
                "multiplicity": c.multiplicity,
                "projection": _value_to_json(c.projection),
            }
            for c in dec.clusters
        ]
    }
