#!/usr/bin/env python3
"""Regenerate the JSON fixtures under fixtures/.

The three grid fixtures are the classical interval and disk examples; the
matrix and block fixtures are small instances for trying out `mpideals query`.
"""

import json
import pathlib

from mpideals.commutative import Disk, GridFunction, GridIdeal, Interval
from mpideals.algebra import DimensionTable, DualIdeal, BlockElement
from mpideals.linalg import CMatrix
from mpideals import serialize

OUT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def dump(name: str, obj: dict):
    path = OUT / name
    path.write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main():
    OUT.mkdir(exist_ok=True)

    # f(x) = 1 + x on [0, 2]; ideal of functions vanishing on [0, 1]
    dom = Interval(0.0, 2.0, 129)
    f = GridFunction.sample(dom, lambda x: 1.0 + x)
    dump(
        "interval_shift_function.json",
        {
            "grid": serialize.grid_to_json(f),
            "grid_ideal": serialize.grid_ideal_to_json(GridIdeal("subinterval", 0.0, 1.0)),
        },
    )

    # a(x) = x on [0, 1]; two-endpoint ideal
    dom01 = Interval(0.0, 1.0, 129)
    a = GridFunction.sample(dom01, lambda x: x)
    dump(
        "interval_ramp_function.json",
        {
            "grid": serialize.grid_to_json(a),
            "grid_ideal": serialize.grid_ideal_to_json(GridIdeal("endpoints")),
        },
    )

    # z -> z on the closed unit disk; boundary ideal
    disk = Disk(17, 64)
    z = GridFunction.sample(disk, lambda w: w)
    dump(
        "disk_coordinate_function.json",
        {
            "grid": serialize.grid_to_json(z),
            "grid_ideal": serialize.grid_ideal_to_json(GridIdeal("boundary")),
        },
    )

    # diag(2, 0) matrix for mp-inverse / equivalence queries
    dump("matrix_diag_2_0.json", {"matrix": serialize.matrix_to_json(CMatrix.diag([2.0, 0.0]))})

    # block element with a singular block inside the ideal, for mp-lift
    table = DimensionTable({0: 1, 1: 2, 2: 3})
    elem = BlockElement(
        table,
        1.0,
        {1: CMatrix.diag([-1.0, 0.5])},  # represented block diag(0, 1.5): singular
    )
    dump(
        "block_singular_inside_ideal.json",
        {
            "dims": serialize.table_to_json(table)["dims"],
            "element": serialize.element_to_json(elem),
            "ideal": serialize.ideal_to_json(DualIdeal(table, frozenset({1}))),
        },
    )


if __name__ == "__main__":
    main()
