import json

import pytest

from mpideals import serialize
from mpideals.algebra import DualIdeal
from mpideals.commutative import Circle, Disk, GridFunction, GridIdeal, Interval
from mpideals.errors import ParseError
from mpideals.generators import random_element, random_matrix
from mpideals.linalg import CMatrix


def through_json(obj):
    return json.loads(json.dumps(obj))


class TestMatrixRoundTrip:
    def test_exact_entries(self, rng):
        for _ in range(20):
            m = random_matrix(rng, 1 + rng.rint(5), 1 + rng.rint(5))
            back = serialize.matrix_from_json(through_json(serialize.matrix_to_json(m)))
            # JSON floats recover the exact doubles: no drift at all
            assert back == m

    def test_reencode_stable(self, rng):
        m = random_matrix(rng, 3, 4)
        doc1 = serialize.matrix_to_json(m)
        doc2 = serialize.matrix_to_json(serialize.matrix_from_json(through_json(doc1)))
        assert json.dumps(doc1) == json.dumps(doc2)

    def test_bad_entry_count(self):
        with pytest.raises(ParseError, match="data"):
            serialize.matrix_from_json({"rows": 2, "cols": 2, "data": [[1, 0]]})

    def test_bad_pair(self):
        with pytest.raises(ParseError, match=r"data\[0\]"):
            serialize.matrix_from_json({"rows": 1, "cols": 1, "data": [[1.0]]})

    def test_nan_rejected(self):
        with pytest.raises(ParseError):
            serialize.matrix_from_json(
                {"rows": 1, "cols": 1, "data": [[float("nan"), 0.0]]}
            )


class TestElementRoundTrip:
    def test_round_trip(self, table, rng):
        a = random_element(rng, table)
        doc = through_json(serialize.element_to_json(a))
        back = serialize.element_from_json(doc, table)
        assert back.gamma == a.gamma
        assert back.support == a.support
        for t in a.support:
            assert back.blocks[t] == a.blocks[t]

    def test_block_size_mismatch(self, table):
        doc = {"gamma": [0.0, 0.0], "blocks": {"1": serialize.matrix_to_json(CMatrix.identity(3))}}
        with pytest.raises(ParseError, match="registered size"):
            serialize.element_from_json(doc, table)

    def test_unregistered_index(self, table):
        doc = {"gamma": [0.0, 0.0], "blocks": {"9": serialize.matrix_to_json(CMatrix.identity(2))}}
        with pytest.raises(ParseError):
            serialize.element_from_json(doc, table)


class TestTableAndIdeal:
    def test_table_round_trip(self, table):
        back = serialize.table_from_json(through_json(serialize.table_to_json(table)))
        assert back == table

    def test_ideal_round_trip(self, table):
        ideal = DualIdeal(table, frozenset({1, 3}))
        back = serialize.ideal_from_json(through_json(serialize.ideal_to_json(ideal)), table)
        assert back.support == ideal.support

    def test_ideal_all(self, table):
        ideal = DualIdeal.all_blocks(table)
        doc = serialize.ideal_to_json(ideal)
        assert doc == {"support": "all"}
        assert serialize.ideal_from_json(doc, table).support == frozenset(table.dims)

    def test_unregistered_support(self, table):
        with pytest.raises(ParseError):
            serialize.ideal_from_json({"support": [99]}, table)


class TestGridRoundTrip:
    @pytest.mark.parametrize(
        "domain", [Interval(0.0, 2.0, 33), Circle(32), Disk(5, 16)], ids=["interval", "circle", "disk"]
    )
    def test_round_trip(self, domain):
        f = GridFunction.sample(domain, lambda x: 0.5 * x if isinstance(x, complex) else 0.5 * x + 1.0)
        doc = through_json(serialize.grid_to_json(f))
        back = serialize.grid_from_json(doc)
        assert back.values == f.values
        assert back.domain == f.domain
        assert back.lipschitz == f.lipschitz

    def test_grid_ideal_round_trip(self):
        for ideal in (GridIdeal("subinterval", 0.0, 1.0), GridIdeal("endpoints"), GridIdeal("boundary")):
            back = serialize.grid_ideal_from_json(through_json(serialize.grid_ideal_to_json(ideal)))
            assert back == ideal

    def test_unknown_domain_kind(self):
        with pytest.raises(ParseError, match="kind"):
            serialize.domain_from_json({"kind": "torus"})

    def test_value_count_checked(self):
        doc = {"domain": {"kind": "circle", "n_samples": 32}, "values": [[1.0, 0.0]] * 3}
        with pytest.raises(ParseError):
            serialize.grid_from_json(doc)


def test_mp_result_json_shape(table):
    from mpideals.moore_penrose import mp_inverse

    res = mp_inverse(CMatrix.diag([2.0, 0.0]))
    doc = serialize.mp_result_to_json(res)
    assert set(doc["verdicts"]) == {"a", "b", "c", "d", "e"}
    assert "norm_formula_residual" in doc
    assert doc["spectral_gap"] == pytest.approx(4.0)
    # infinite gap serializes as null
    doc0 = serialize.mp_result_to_json(mp_inverse(CMatrix.zeros(2, 2)))
    assert doc0["spectral_gap"] is None
    json.dumps(doc0)


def test_lift_report_json(table, ideal, rng):
    from mpideals.generators import random_invertible_element
    from mpideals.lifting import mp_lift

    rep = mp_lift(random_invertible_element(rng, table), ideal)
    doc = serialize.lift_report_to_json(rep)
    assert doc["theorem"] == "tb1.15"
    assert doc["success"] is True
    json.dumps(doc)
