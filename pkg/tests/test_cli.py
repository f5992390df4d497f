import json
import pathlib

from click.testing import CliRunner

from mpideals.cli import main

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def run(args, env=None):
    return CliRunner().invoke(main, args, env=env, catch_exceptions=False)


def strip_timestamp(output: str) -> dict:
    doc = json.loads(output)
    doc.pop("generated_at", None)
    return doc


class TestVerify:
    def test_small_suite_passes(self):
        result = run(["verify", "t31-2", "--trials", "5", "--seed", "1"])
        assert result.exit_code == 0
        assert "PASS" in result.output

    def test_unknown_suite_exit_two(self):
        result = run(["verify", "no-such-suite"])
        assert result.exit_code == 2
        assert "unknown suite" in result.output

    def test_bad_tolerance_exit_two(self):
        result = run(["verify", "t31-2", "--tol", "nope=1e-9", "--trials", "1"])
        assert result.exit_code == 2

    def test_bad_blocks_exit_two(self):
        result = run(["verify", "t31-2", "--blocks", "junk", "--trials", "1"])
        assert result.exit_code == 2

    def test_trials_must_be_positive(self):
        result = run(["verify", "t31-2", "--trials", "0"])
        assert result.exit_code == 2

    def test_json_report_deterministic(self):
        args = ["verify", "lifting", "--trials", "8", "--seed", "11", "--format", "json"]
        first = run(args)
        second = run(args)
        assert first.exit_code == 0 and second.exit_code == 0
        assert strip_timestamp(first.output) == strip_timestamp(second.output)
        # identical bytes once the timestamp line is normalized
        a = json.dumps(strip_timestamp(first.output), sort_keys=True)
        b = json.dumps(strip_timestamp(second.output), sort_keys=True)
        assert a == b

    def test_seed_changes_report(self):
        base = ["verify", "lifting", "--trials", "8", "--format", "json"]
        one = strip_timestamp(run(base + ["--seed", "1"]).output)
        two = strip_timestamp(run(base + ["--seed", "2"]).output)
        assert one != two

    def test_seed_env_fallback(self):
        direct = run(["verify", "lifting", "--trials", "6", "--seed", "123", "--format", "json"])
        env = run(["verify", "lifting", "--trials", "6", "--format", "json"],
                  env={"MPIDEALS_SEED": "123"})
        assert strip_timestamp(direct.output) == strip_timestamp(env.output)

    def test_blocks_override(self):
        result = run(["verify", "lifting", "--trials", "4", "--blocks", "0:2,1:3",
                      "--format", "json"])
        assert result.exit_code == 0
        assert strip_timestamp(result.output)["blocks"] == [[0, 2], [1, 3]]

    def test_report_schema(self):
        result = run(["verify", "mp-sum", "--trials", "3", "--format", "json"])
        doc = json.loads(result.output)
        assert doc["schema"] == 1
        assert "generated_at" in doc
        for check in doc["checks"]:
            assert {"name", "trials", "pass_count", "fail_count", "max_residual", "records"} <= set(check)


class TestQuery:
    def test_mp_inverse_on_fixture(self):
        result = run(["query", "mp-inverse", str(FIXTURES / "matrix_diag_2_0.json"),
                      "--format", "json"])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        data = doc["result"]["pseudoinverse"]["data"]
        assert data[0] == [0.5, -0.0] or data[0] == [0.5, 0.0]
        assert doc["result"]["verdicts"] == {k: True for k in "abcde"}

    def test_disk_obstruction_fixture(self):
        result = run(["query", "disk-obstruction", str(FIXTURES / "disk_coordinate_function.json"),
                      "--format", "json"])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["result"]["verdict"] == "obstructed"
        assert 0 in doc["result"]["windings"] and 1 in doc["result"]["windings"]

    def test_interval_lift_fixture(self):
        result = run(["query", "interval-mp-lift", str(FIXTURES / "interval_shift_function.json")])
        assert result.exit_code == 0
        assert "extension" in result.output

    def test_nonlift_witness_fixture(self):
        result = run(["query", "nonlift-witness", str(FIXTURES / "interval_ramp_function.json"),
                      "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["result"]["defect"] >= 0.125

    def test_mp_lift_fixture(self):
        result = run(["query", "mp-lift", str(FIXTURES / "block_singular_inside_ideal.json")])
        assert result.exit_code == 0

    def test_truncated_json_exit_two(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"matrix": {"rows": 2')
        result = run(["query", "mp-inverse", str(bad)])
        assert result.exit_code == 2
        assert "error" in result.output

    def test_missing_file_exit_two(self):
        result = run(["query", "mp-inverse", "/nonexistent/nope.json"])
        assert result.exit_code == 2

    def test_unknown_operation_exit_two(self, tmp_path):
        f = tmp_path / "x.json"
        f.write_text("{}")
        result = run(["query", "frobnicate", str(f)])
        assert result.exit_code == 2
        assert "unknown operation" in result.output

    def test_schema_violation_exit_two(self, tmp_path):
        f = tmp_path / "x.json"
        f.write_text(json.dumps({"matrix": {"rows": 2, "cols": 2, "data": []}}))
        result = run(["query", "mp-inverse", str(f)])
        assert result.exit_code == 2

    def test_mathematical_failure_exit_one(self, tmp_path):
        # vanishing curve: winding is mathematically undefined
        from mpideals import serialize
        from mpideals.commutative import Circle, GridFunction

        f = GridFunction.sample(Circle(64), lambda z: z - 1.0)
        doc = {"grid": serialize.grid_to_json(f)}
        path = tmp_path / "vanish.json"
        path.write_text(json.dumps(doc))
        result = run(["query", "winding", str(path)])
        assert result.exit_code == 1
        assert "VanishingValue" in result.output

    def test_winding_query(self, tmp_path):
        from mpideals import serialize
        from mpideals.commutative import Circle, GridFunction

        f = GridFunction.sample(Circle(64), lambda z: z**2, lipschitz=5.0)
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"grid": serialize.grid_to_json(f)}))
        result = run(["query", "winding", str(path), "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["result"]["winding"] == 2

    def test_tolerance_override_applies(self, tmp_path):
        # an absurdly large wind_tol turns every curve into a vanishing one
        from mpideals import serialize
        from mpideals.commutative import Circle, GridFunction

        f = GridFunction.sample(Circle(64), lambda z: z)
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"grid": serialize.grid_to_json(f)}))
        ok = run(["query", "winding", str(path)])
        assert ok.exit_code == 0
        flipped = run(["query", "winding", str(path), "--tol", "wind_tol=2.0"])
        assert flipped.exit_code == 1
